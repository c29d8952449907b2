"""Exact Hall ratio: the maximum of |X| / alpha(G[X]) over nonempty vertex
subsets, with a witness subset.

Induced subgraphs suffice: deleting edges can only grow an independent set,
so for fixed X the induced subgraph maximizes the ratio.  The sweep fills one
byte of alpha per subset with the classic recurrence

    alpha(S) = max(alpha(S minus v), 1 + alpha(S minus N[v]))   (v = low bit)

and both referenced subsets are numerically smaller than S once grouped by
lowest set bit, so the whole table vectorizes with numpy, processed highest
pivot first.  Memory is one byte per subset, which is what the default cap of
26 vertices is about; beyond the cap only the sampling lower bound is offered.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import rng
from .graph import Graph, SizeLimitError, components, induced, is_connected_mask
from .invariants import alpha

HALL_N_CAP = 26
_CHUNK = 1 << 20


def alpha_table(g: Graph, cap: int = HALL_N_CAP) -> np.ndarray:
    """uint8 array of length 2**n with alpha of every induced subset."""
    n = g.n
    if n > cap:
        raise SizeLimitError(
            f"subset sweep capped at n <= {cap} (memory is 2**n bytes); "
            f"use hall_ratio_lower_bound for larger graphs")
    table = np.zeros(1 << n, dtype=np.uint8)
    for v in range(n - 1, -1, -1):
        closed = g.adj[v] | (1 << v)
        bitv = 1 << v
        group = 1 << (n - v - 1)  # subsets whose lowest set bit is v
        for start in range(0, group, _CHUNK):
            stop = min(start + _CHUNK, group)
            masks = (np.arange(start, stop, dtype=np.int64) << (v + 1)) | bitv
            drop_v = masks ^ bitv
            drop_closed = masks & ~np.int64(closed)
            table[masks] = np.maximum(table[drop_v],
                                      table[drop_closed] + np.uint8(1))
    return table


@dataclass(frozen=True)
class HallResult:
    value: Fraction
    witness: int
    alpha_of_witness: int


def _best_ratio_from_table(n: int, table: np.ndarray) -> tuple[int, int]:
    """Scan the (|S|, alpha(S)) combinations present and return the pair
    (popcount, alpha) of the maximal ratio, smallest popcount on ties."""
    combos = np.zeros((n + 1) * 32, dtype=np.int64)
    size = 1 << n
    for start in range(0, size, _CHUNK):
        stop = min(start + _CHUNK, size)
        masks = np.arange(start, stop, dtype=np.uint64)
        pc = np.bitwise_count(masks).astype(np.int64)
        combo = pc * 32 + table[start:stop].astype(np.int64)
        combos += np.bincount(combo, minlength=(n + 1) * 32)
    best: Fraction | None = None
    best_pair = (0, 1)
    for p in range(1, n + 1):
        for a in range(1, min(p, 26) + 1):
            if combos[p * 32 + a] == 0:
                continue
            ratio = Fraction(p, a)
            if best is None or ratio > best or (ratio == best
                                                and p < best_pair[0]):
                best = ratio
                best_pair = (p, a)
    if best is None:
        raise AssertionError("no nonempty subset found")
    return best_pair


def _first_mask_with(n: int, table: np.ndarray, popcount: int,
                     alpha_val: int) -> int:
    size = 1 << n
    for start in range(0, size, _CHUNK):
        stop = min(start + _CHUNK, size)
        masks = np.arange(start, stop, dtype=np.uint64)
        hit = (np.bitwise_count(masks) == popcount) \
            & (table[start:stop] == alpha_val)
        idx = np.nonzero(hit)[0]
        if idx.size:
            return start + int(idx[0])
    raise AssertionError("witness combination vanished between passes")


def hall_ratio(g: Graph, cap: int = HALL_N_CAP,
               connected_only: bool = False) -> HallResult:
    """Exact Hall ratio with deterministic witness (smallest cardinality,
    then smallest bitmask, among ratio maximizers).

    ``connected_only`` restricts the sweep to subsets inducing connected
    subgraphs; by the mediant inequality the maximum is unchanged, and the
    flag exists so tests can assert exactly that.  It is evaluated in pure
    Python and is only suitable for small n.
    """
    if g.n < 1:
        raise ValueError("Hall ratio needs n >= 1")
    table = alpha_table(g, cap)
    if connected_only:
        best: Fraction | None = None
        best_key = None
        for mask in range(1, 1 << g.n):
            if not is_connected_mask(g, mask):
                continue
            ratio = Fraction(mask.bit_count(), int(table[mask]))
            key = (ratio, -mask.bit_count(), -mask)
            if best_key is None or key > best_key:
                best_key = key
                best = ratio
                witness = mask
        assert best is not None
        return HallResult(best, witness, int(table[witness]))
    p, a = _best_ratio_from_table(g.n, table)
    witness = _first_mask_with(g.n, table, p, a)
    return HallResult(Fraction(p, a), witness, a)


def hall_ratio_lower_bound(g: Graph, samples: int, seed: int) -> Fraction:
    """Best ratio over the full vertex set, every component, and seeded
    random subsets.  Strictly a lower bound on the Hall ratio."""
    if g.n < 1:
        raise ValueError("Hall ratio needs n >= 1")
    candidates = [g.vertex_mask()]
    candidates.extend(components(g))
    gen = rng.SplitMix64(seed)
    words = (g.n + 63) // 64
    for _ in range(samples):
        mask = 0
        for _ in range(words):
            mask = (mask << 64) | gen.next_u64()
        mask &= g.vertex_mask()
        if mask:
            candidates.append(mask)
    best = Fraction(0)
    for mask in candidates:
        sub = induced(g, mask)
        a, _ = alpha(sub)
        best = max(best, Fraction(sub.n, a))
    return best


@dataclass(frozen=True)
class GapReport:
    rho: Fraction
    chi_f: Fraction
    ratio: Fraction
    chain_ok: bool


def gap_report(g: Graph, hall_cap: int = HALL_N_CAP,
               bit_cap: int | None = None,
               lp_cap: int | None = None) -> GapReport:
    """Exact rho and chi_f side by side, their ratio, and the sanity chain
    n/alpha <= rho <= chi_f <= chi."""
    from .fraclp import DEFAULT_BIT_CAP, LP_N_CAP, chi_f
    from .invariants import chromatic_number

    hall = hall_ratio(g, cap=hall_cap)
    cert = chi_f(g, bit_cap=bit_cap if bit_cap is not None else DEFAULT_BIT_CAP,
                 n_cap=lp_cap if lp_cap is not None else LP_N_CAP)
    a, _ = alpha(g)
    chi, _ = chromatic_number(g)
    chain_ok = (Fraction(g.n, a) <= hall.value <= cert.value <= chi)
    return GapReport(hall.value, cert.value, cert.value / hall.value, chain_ok)


def gap_report_to_json(report: GapReport) -> dict:
    from .jsonio import SCHEMA_VERSION, frac_to_json

    return {
        "schema": SCHEMA_VERSION,
        "rho": frac_to_json(report.rho),
        "chi_f": frac_to_json(report.chi_f),
        "ratio": frac_to_json(report.ratio),
        "chain_ok": report.chain_ok,
    }


def hall_result_to_json(result: HallResult) -> dict:
    from .graph import bits
    from .jsonio import SCHEMA_VERSION, frac_to_json

    return {
        "schema": SCHEMA_VERSION,
        "value": frac_to_json(result.value),
        "witness": sorted(bits(result.witness)),
        "alpha_of_witness": result.alpha_of_witness,
    }


__all__ = [
    "GapReport", "HALL_N_CAP", "HallResult", "alpha_table", "gap_report",
    "gap_report_to_json", "hall_ratio", "hall_ratio_lower_bound",
    "hall_result_to_json",
]
