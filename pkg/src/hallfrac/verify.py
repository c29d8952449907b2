"""Seeded verification suites: every inequality the lab can check exactly is
packaged as a suite that builds a deterministic corpus from one seed, runs the
exact solvers on both sides, and reports per-case results.

The same functions back the ``verify`` CLI command and the acceptance tests;
given the same seed the emitted JSON is byte-identical run to run.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from . import ackermann
from .construct import (join, mycielski, random_graph,
                        sample_triangle_free, search_gadget)
from .fraclp import (check_composition_upper, check_fracprod, chi_f,
                     chi_f_full_enumeration, verify_certificate)
from .graph import (Graph, cycle_graph, is_triangle_free, kneser_graph,
                    new_graph)
from .hall import hall_ratio
from .invariants import (alpha, check_prop_col, check_sparse_three_colorable,
                         chromatic_number)
from .jsonio import SCHEMA_VERSION, frac_to_json
from .rng import SplitMix64, derive_seed

SUITE_NAMES = ("duality", "fracprod", "composition-upper", "prop-col",
               "obs-sparse", "chain", "fact31", "gadget")

_PROBS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


# -- corpora -------------------------------------------------------------------

def duality_corpus(seed: int, count: int = 100) -> list[tuple[str, Graph]]:
    """Seeded random graphs with n <= 14 and p in {1/4, 1/2, 3/4}."""
    out = []
    for i in range(count):
        n = 6 + i % 9
        p = _PROBS[i % 3]
        g = random_graph(n, p, derive_seed(seed, i))
        out.append((f"random(n={n},p={p},i={i})", g))
    return out


def named_graphs() -> list[tuple[str, Graph]]:
    grotzsch = mycielski(cycle_graph(5))
    return [
        ("C5", cycle_graph(5)),
        ("C7", cycle_graph(7)),
        ("petersen", kneser_graph(5, 2)),
        ("grotzsch", grotzsch),
        ("join(C5,C7)", join(cycle_graph(5), cycle_graph(7))),
    ]


def composition_corpus(seed: int, count: int = 25,
                       identical_parts: bool = False
                       ) -> list[tuple[str, Graph, list[Graph]]]:
    """Seeded (host, parts) pairs with host on at most 5 vertices and parts on
    at most 6 vertices each."""
    out = []
    for i in range(count):
        gen = SplitMix64(derive_seed(seed, i))
        n_host = 2 + gen.next_below(4)
        host = random_graph(n_host, Fraction(1, 2), gen.next_u64())
        if identical_parts and i % 5 == 0:
            size = 2 + gen.next_below(5)
            part = random_graph(size, _PROBS[gen.next_below(3)], gen.next_u64())
            parts = [part] * n_host
        else:
            parts = []
            for _ in range(n_host):
                size = 2 + gen.next_below(5)
                parts.append(random_graph(size, _PROBS[gen.next_below(3)],
                                          gen.next_u64()))
        name = f"compose(host_n={n_host},parts={[p.n for p in parts]},i={i})"
        out.append((name, host, parts))
    return out


def sparse_corpus(seed: int, count: int = 100) -> list[tuple[str, Graph]]:
    """Graphs whose components are trees or unicyclic."""
    out = []
    for i in range(count):
        gen = SplitMix64(derive_seed(seed, i))
        ncomp = 1 + gen.next_below(3)
        edges: list[tuple[int, int]] = []
        edge_set: set[tuple[int, int]] = set()
        offset = 0
        for _ in range(ncomp):
            size = 1 + gen.next_below(12)
            for v in range(1, size):
                u = gen.next_below(v)
                edges.append((offset + u, offset + v))
                edge_set.add((offset + u, offset + v))
            if size >= 3 and gen.next_below(2) == 1:
                while True:  # a tree on >= 3 vertices always has a non-edge
                    u = gen.next_below(size)
                    v = gen.next_below(size)
                    if u == v:
                        continue
                    a, b = offset + min(u, v), offset + max(u, v)
                    if (a, b) not in edge_set:
                        edges.append((a, b))
                        edge_set.add((a, b))
                        break
            offset += size
        out.append((f"sparse(i={i},n={offset})", new_graph(offset, edges)))
    return out


# -- suites --------------------------------------------------------------------

def _suite(name: str, seed: int, cases: list[dict]) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "suite": name,
        "seed": seed,
        "passed": all(c["ok"] for c in cases),
        "cases": cases,
    }


def suite_duality(seed: int) -> dict:
    cases = []
    for name, g in duality_corpus(seed):
        cert = chi_f(g)
        oracle = chi_f_full_enumeration(g)
        ok = (cert.value == oracle.value
              and verify_certificate(g, cert).ok
              and verify_certificate(g, oracle).ok)
        cases.append({"case": name, "chi_f": frac_to_json(cert.value),
                      "ok": ok})
    return _suite("duality", seed, cases)


def suite_fracprod(seed: int) -> dict:
    cases = []
    for name, host, parts in composition_corpus(seed):
        res = check_fracprod(host, parts)
        cases.append({
            "case": name,
            "lhs": frac_to_json(res.lhs),
            "rhs": frac_to_json(res.rhs),
            "dual_value": frac_to_json(res.dual_value),
            "ok": res.ok and res.dual_ok,
        })
    return _suite("fracprod", seed, cases)


def suite_composition_upper(seed: int) -> dict:
    cases = []
    for name, host, parts in composition_corpus(seed, identical_parts=True):
        res = check_composition_upper(host, parts)
        cases.append({
            "case": name,
            "bound": frac_to_json(res.bound),
            "rhs": frac_to_json(res.rhs),
            "ok": res.ok,
        })
    return _suite("composition-upper", seed, cases)


def suite_prop_col(seed: int) -> dict:
    cases = []
    for name, host, parts in composition_corpus(seed):
        res = check_prop_col(host, parts)
        cases.append({"case": name, "lhs": res.lhs, "rhs": res.rhs,
                      "ok": res.ok})
    return _suite("prop-col", seed, cases)


def suite_obs_sparse(seed: int) -> dict:
    cases = []
    for name, g in sparse_corpus(seed):
        ok = check_sparse_three_colorable(g)
        cases.append({"case": name, "ok": ok})
    return _suite("obs-sparse", seed, cases)


def suite_chain(seed: int) -> dict:
    cases = []
    for name, g in duality_corpus(seed) + named_graphs():
        a, _ = alpha(g)
        rho = hall_ratio(g).value
        cf = chi_f(g).value
        chi, _ = chromatic_number(g)
        ok = Fraction(g.n, a) <= rho <= cf <= chi
        cases.append({
            "case": name,
            "n_over_alpha": frac_to_json(Fraction(g.n, a)),
            "rho": frac_to_json(rho),
            "chi_f": frac_to_json(cf),
            "chi": chi,
            "ok": ok,
        })
    return _suite("chain", seed, cases)


def suite_fact31(seed: int) -> dict:
    cases = []

    def record(case: str, outcome, expect_overflow: bool = False):
        if isinstance(outcome, ackermann.Overflow):
            cases.append({"case": case, "outcome": "overflow",
                          "ok": expect_overflow})
        else:
            cases.append({"case": case, "outcome": bool(outcome),
                          "ok": (outcome is True) and not expect_overflow})

    for n in (1, 2, 3):
        record(f"fact1(k=1,n={n})", ackermann.check_fact1(1, n))
    record("fact1(k=2,n=1)", ackermann.check_fact1(2, 1))
    record("fact1(k=2,n=2)-overflow", ackermann.check_fact1(2, 2),
           expect_overflow=True)
    for label, m in (("2^128", 1 << 128), ("2^128+1", (1 << 128) + 1),
                     ("2^200", 1 << 200)):
        record(f"fact2(k=1,M={label})", ackermann.check_fact2(1, m))
    record("fact2(k=2)-overflow", ackermann.check_fact2(2, 1),
           expect_overflow=True)
    for n in range(31):
        record(f"fact3(k=1,n={n})", ackermann.check_fact3(1, n))
    for n in range(5):
        record(f"fact3(k=2,n={n})", ackermann.check_fact3(2, n))
    record("appendix(k=1,n<=30)",
           ackermann.check_appendix_basics(1, 30, seed=derive_seed(seed, 0)))
    record("appendix(k=2,n<=4)",
           ackermann.check_appendix_basics(2, 4, seed=derive_seed(seed, 1)))
    return _suite("fact31", seed, cases)


def suite_gadget(seed: int) -> dict:
    cases = []
    sample = sample_triangle_free(100, Fraction(4), derive_seed(seed, 0),
                                  10 ** 5)
    ok = is_triangle_free(sample.graph) and sample.graph.m > 0
    cases.append({"case": "sample_triangle_free(100,4)",
                  "tries_used": sample.tries_used,
                  "edges": sample.graph.m, "ok": ok})
    report = search_gadget(24, Fraction(2), derive_seed(seed, 1), 500)
    g = report.graph
    a, _ = alpha(g)
    chi, _ = chromatic_number(g)
    consistent = (
        report.triangle_free == is_triangle_free(g)
        and report.alpha == a
        and report.chi == chi
        and report.property_a_holds == (Fraction(1001, 1000) * report.target_c > chi
                                        and Fraction(g.n, a) > report.target_c)
        and 1 <= report.tries_used <= 500)
    cases.append({
        "case": "search_gadget(24,2,budget=500)",
        "alpha": report.alpha,
        "chi": report.chi,
        "triangle_free": report.triangle_free,
        "property_a": report.property_a_holds,
        "property_b": report.property_b_holds,
        "property_b_sampled": report.property_b_sampled,
        "tries_used": report.tries_used,
        "ok": consistent,
    })
    return _suite("gadget", seed, cases)


_SUITE_FUNCS: dict[str, Callable[[int], dict]] = {
    "duality": suite_duality,
    "fracprod": suite_fracprod,
    "composition-upper": suite_composition_upper,
    "prop-col": suite_prop_col,
    "obs-sparse": suite_obs_sparse,
    "chain": suite_chain,
    "fact31": suite_fact31,
    "gadget": suite_gadget,
}


def run_suite(name: str, seed: int) -> dict:
    if name not in _SUITE_FUNCS:
        raise ValueError(f"unknown suite {name!r}; choose from "
                         f"{', '.join(SUITE_NAMES)} or 'all'")
    return _SUITE_FUNCS[name](seed)


def run_battery(seed: int, names: Sequence[str] = SUITE_NAMES) -> dict:
    suites = [run_suite(name, seed) for name in names]
    return {
        "schema": SCHEMA_VERSION,
        "seed": seed,
        "passed": all(s["passed"] for s in suites),
        "suites": suites,
    }


__all__ = [
    "SUITE_NAMES", "composition_corpus", "duality_corpus", "named_graphs",
    "run_battery", "run_suite", "sparse_corpus", "suite_chain",
    "suite_composition_upper", "suite_duality", "suite_fact31",
    "suite_fracprod", "suite_gadget", "suite_obs_sparse", "suite_prop_col",
]
