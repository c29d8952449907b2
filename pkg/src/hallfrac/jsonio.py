"""Canonical JSON conventions shared by certificates, reports and the CLI.

Rationals are always objects ``{"num": "<decimal>", "den": "<decimal>"}`` so
no precision is lost; every serializer in the package goes through
:func:`dumps_canonical`, which fixes separators and indentation so equal
inputs produce byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction

SCHEMA_VERSION = 1


def frac_to_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def frac_from_json(obj) -> Fraction:
    if not isinstance(obj, dict) or set(obj) != {"num", "den"}:
        raise ValueError(f"not a rational object: {obj!r}")
    return Fraction(int(obj["num"]), int(obj["den"]))


def dumps_canonical(obj) -> str:
    return json.dumps(obj, indent=2, separators=(",", ": "),
                      ensure_ascii=True) + "\n"
