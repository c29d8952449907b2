"""Exact fractional chromatic number by column generation.

The covering LP (minimize total weight of independent sets so every vertex
gets weight at least one) is solved on a restricted master that starts from
the n singleton columns, always a feasible basis.  The master is optimized by
a primal simplex over ``fractions.Fraction`` with Bland's anti-cycling rule;
no floating point appears anywhere on the optimality path.  The pricing step
asks the exact maximum-weight-independent-set oracle for a set whose dual
weight exceeds one; when none exists the duals are feasible for the covering
LP's dual over *all* independent sets, and equal primal and dual values
certify the optimum.

Certificates carry both sides and re-verify from scratch, including dual
feasibility through a fresh oracle call, so nothing rests on solver state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph import Graph, SizeLimitError, bits
from .invariants import alpha_weighted

LP_N_CAP = 60
FULL_ENUM_CAP = 20
DEFAULT_BIT_CAP = 4096


class BitBudgetError(RuntimeError):
    """Tableau entries outgrew the configured bit-length cap."""

    def __init__(self, bits_seen: int, cap: int):
        super().__init__(
            f"simplex tableau entry reached {bits_seen} bits (cap {cap}); "
            f"raise the cap to continue exactly")
        self.bits_seen = bits_seen
        self.cap = cap


def _bitlen(x) -> int:
    if isinstance(x, Fraction):
        return max(x.numerator.bit_length(), x.denominator.bit_length())
    return abs(x).bit_length()


def _div(a, b):
    """Exact division; two ints must not fall into float territory."""
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


class _Master:
    """Restricted master LP in standard form  A x - s = 1,  x, s >= 0.

    Variable ids: 0..n-1 are the surplus variables, n+j is the j-th
    independent-set column.  Ids are stable as columns are appended, which is
    what Bland's smallest-index rule pivots on.
    """

    def __init__(self, g: Graph, bit_cap: int = DEFAULT_BIT_CAP):
        self.g = g
        self.n = g.n
        self.bit_cap = bit_cap
        self.max_bits_seen = 1
        self.set_masks: list[int] = []
        self.mask_index: dict[int, int] = {}
        # tableau rows: surplus part (length n) then one entry per set column
        self.rows: list[list] = [[-1 if j == i else 0 for j in range(self.n)]
                                 for i in range(self.n)]
        self.rhs: list = [1] * self.n
        self.basis: list[int] = []
        for v in range(self.n):
            self.add_column(1 << v)
            self.basis.append(self.n + v)

    def add_column(self, mask: int) -> None:
        if mask in self.mask_index:
            raise AssertionError("column generated twice; pricing is broken")
        self.mask_index[mask] = len(self.set_masks)
        self.set_masks.append(mask)
        # tableau entry = B^{-1} a; B^{-1} is minus the surplus block
        for i, row in enumerate(self.rows):
            entry = 0
            for v in bits(mask):
                coef = row[v]
                if coef:
                    entry -= coef
            row.append(entry)

    def _is_set_var(self, var: int) -> bool:
        return var >= self.n

    def duals(self) -> list[Fraction]:
        """y^T = c_B^T B^{-1}; the surplus block of the tableau is -B^{-1}."""
        y = []
        for v in range(self.n):
            total = 0
            for i, var in enumerate(self.basis):
                if self._is_set_var(var):
                    coef = self.rows[i][v]
                    if coef:
                        total -= coef
            y.append(Fraction(total))
        return y

    def _reduced_cost(self, var: int, y: Sequence[Fraction]):
        if self._is_set_var(var):
            mask = self.set_masks[var - self.n]
            return 1 - sum((y[v] for v in bits(mask)), Fraction(0))
        return y[var]

    def _pivot(self, row: int, col_var: int) -> None:
        col = col_var  # variable ids coincide with tableau column positions
        prow = self.rows[row]
        piv = prow[col]
        assert piv > 0
        max_bits = self.max_bits_seen
        if piv != 1:
            new_prow = []
            for e in prow:
                val = _div(e, piv) if e else 0
                if val:
                    b = _bitlen(val)
                    if b > max_bits:
                        max_bits = b
                new_prow.append(val)
            self.rows[row] = prow = new_prow
            self.rhs[row] = _div(self.rhs[row], piv)
        for k, krow in enumerate(self.rows):
            if k == row:
                continue
            f = krow[col]
            if not f:
                continue
            for j, b_ in enumerate(prow):
                if b_:
                    val = krow[j] - f * b_
                    krow[j] = val
                    if val:
                        bl = _bitlen(val)
                        if bl > max_bits:
                            max_bits = bl
            self.rhs[k] = self.rhs[k] - f * self.rhs[row]
        self.max_bits_seen = max_bits
        if max_bits > self.bit_cap:
            raise BitBudgetError(max_bits, self.bit_cap)
        self.basis[row] = col_var

    def solve(self) -> None:
        """Primal simplex to optimality under Bland's rule."""
        nvars = self.n + len(self.set_masks)
        while True:
            y = self.duals()
            entering = -1
            for var in range(nvars):
                rc = self._reduced_cost(var, y)
                if rc < 0:
                    entering = var
                    break
            if entering == -1:
                return
            col = entering
            best_row = -1
            best_ratio = None
            for i, row in enumerate(self.rows):
                coef = row[col]
                if coef > 0:
                    ratio = _div(self.rhs[i], coef)
                    if (best_ratio is None or ratio < best_ratio
                            or (ratio == best_ratio
                                and self.basis[i] < self.basis[best_row])):
                        best_ratio = ratio
                        best_row = i
            if best_row == -1:
                raise RuntimeError("covering LP cannot be unbounded; "
                                   "solver state is corrupt")
            self._pivot(best_row, entering)

    def objective(self) -> Fraction:
        total = Fraction(0)
        for i, var in enumerate(self.basis):
            if self._is_set_var(var):
                total += self.rhs[i]
        return total

    def primal_support(self) -> list[tuple[int, Fraction]]:
        weights: dict[int, Fraction] = {}
        for i, var in enumerate(self.basis):
            if self._is_set_var(var) and self.rhs[i] > 0:
                mask = self.set_masks[var - self.n]
                weights[mask] = weights.get(mask, Fraction(0)) + self.rhs[i]
        return sorted(weights.items())


@dataclass(frozen=True)
class FractionalCertificate:
    """Primal/dual optimum pair for the covering LP.

    ``primal`` is the support of the set weights (mask, weight > 0);
    ``dual`` gives one nonnegative weight per vertex.  Equal primal and dual
    totals plus dual feasibility make optimality self-evident.
    """

    value: Fraction
    primal: tuple[tuple[int, Fraction], ...]
    dual: tuple[Fraction, ...]


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def _certificate(master: _Master) -> FractionalCertificate:
    value = master.objective()
    dual = master.duals()
    dual_total = sum(dual, Fraction(0))
    if dual_total != value:
        raise AssertionError("primal and dual values differ at optimality; "
                             "solver state is corrupt")
    return FractionalCertificate(value, tuple(master.primal_support()),
                                 tuple(dual))


def chi_f(g: Graph, bit_cap: int = DEFAULT_BIT_CAP,
          n_cap: int = LP_N_CAP) -> FractionalCertificate:
    """Exact fractional chromatic number with certificate, by column
    generation as described in the module docstring."""
    if g.n < 1:
        raise ValueError("fractional chromatic number needs n >= 1")
    if g.n > n_cap:
        raise SizeLimitError(f"LP solver capped at n <= {n_cap}")
    master = _Master(g, bit_cap)
    while True:
        master.solve()
        y = master.duals()
        weight, mask = alpha_weighted(g, y)
        if weight > 1:
            master.add_column(mask)
        else:
            return _certificate(master)


def maximal_independent_sets(g: Graph) -> list[int]:
    """All maximal independent sets (Bron-Kerbosch with pivoting on the
    complement), sorted by bitmask; guarded for enumeration scale."""
    if g.n > FULL_ENUM_CAP:
        raise SizeLimitError(
            f"maximal-set enumeration capped at n <= {FULL_ENUM_CAP}")
    full = g.vertex_mask()
    comp = [full ^ row ^ (1 << v) for v, row in enumerate(g.adj)]
    out: list[int] = []

    def bk(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            out.append(r)
            return
        pivot = -1
        best = -1
        for u in bits(p | x):
            d = (comp[u] & p).bit_count()
            if d > best:
                best = d
                pivot = u
        for v in bits(p & ~comp[pivot]):
            bk(r | (1 << v), p & comp[v], x & comp[v])
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        bk(0, full, 0)
    return sorted(out)


def chi_f_full_enumeration(g: Graph,
                           bit_cap: int = DEFAULT_BIT_CAP) -> FractionalCertificate:
    """Oracle route: one master LP holding every maximal independent set
    (plus the singleton start basis), no pricing."""
    if g.n < 1:
        raise ValueError("fractional chromatic number needs n >= 1")
    if g.n > FULL_ENUM_CAP:
        raise SizeLimitError(f"full enumeration capped at n <= {FULL_ENUM_CAP}")
    master = _Master(g, bit_cap)
    for mask in maximal_independent_sets(g):
        if mask not in master.mask_index:
            master.add_column(mask)
    master.solve()
    return _certificate(master)


def max_weight_independent_set(g: Graph,
                               weights: Sequence[Fraction]) -> tuple[int, Fraction]:
    """Pricing oracle, shared with the invariants module; returns the
    lexicographically smallest optimal set and its weight."""
    weight, mask = alpha_weighted(g, weights)
    return mask, weight


def verify_certificate(g: Graph, cert: FractionalCertificate) -> VerifyResult:
    """Re-check every certificate invariant from scratch.

    Dual feasibility and tightness use a fresh exact oracle call: the best
    dual-weighted independent set must weigh exactly one.
    """
    if len(cert.dual) != g.n:
        return VerifyResult(False, "dual-length")
    full = g.vertex_mask()
    coverage = [Fraction(0)] * g.n
    primal_total = Fraction(0)
    for mask, weight in cert.primal:
        if mask == 0 or mask & ~full:
            return VerifyResult(False, "primal-set-range")
        for v in bits(mask):
            if g.adj[v] & mask:
                return VerifyResult(False, "primal-set-not-independent")
            coverage[v] += weight
        if weight <= 0:
            return VerifyResult(False, "primal-weight-not-positive")
        primal_total += weight
    if any(c < 1 for c in coverage):
        return VerifyResult(False, "coverage-violated")
    if primal_total != cert.value:
        return VerifyResult(False, "primal-sum-mismatch")
    if any(y < 0 for y in cert.dual):
        return VerifyResult(False, "dual-negative")
    if sum(cert.dual, Fraction(0)) != cert.value:
        return VerifyResult(False, "dual-sum-mismatch")
    best_weight, _ = alpha_weighted(g, list(cert.dual))
    if best_weight > 1:
        return VerifyResult(False, "dual-infeasible")
    if best_weight != 1:
        return VerifyResult(False, "dual-not-tight")
    return VerifyResult(True, "ok")


# -- composition inequalities --------------------------------------------------

@dataclass(frozen=True)
class FracprodResult:
    lhs: Fraction
    rhs: Fraction
    ok: bool
    dual_value: Fraction
    dual_ok: bool


def check_fracprod(host: Graph, parts: Sequence[Graph],
                   bit_cap: int = DEFAULT_BIT_CAP) -> FracprodResult:
    """chi_f(host) * min chi_f(part) <= chi_f(blowup), both sides exact.

    Additionally composes the component duals into a dual solution for the
    blowup (vertex (i,j) gets host dual i times part-i dual j) and checks it
    is feasible with value at least the left-hand side, mirroring how the
    inequality is proved.
    """
    from .construct import compose

    cert_host = chi_f(host, bit_cap)
    certs = [chi_f(p, bit_cap) for p in parts]
    lhs = cert_host.value * min(c.value for c in certs)
    blowup = compose(host, parts)
    rhs = chi_f(blowup, bit_cap).value
    y: list[Fraction] = []
    for i, part in enumerate(parts):
        wh = cert_host.dual[i]
        y.extend(wh * wj for wj in certs[i].dual)
    dual_value = sum(y, Fraction(0))
    best_weight, _ = alpha_weighted(blowup, y)
    dual_ok = (all(v >= 0 for v in y) and best_weight <= 1
               and dual_value >= lhs)
    return FracprodResult(lhs, rhs, lhs <= rhs, dual_value, dual_ok)


@dataclass(frozen=True)
class CompositionUpperResult:
    bound: Fraction
    rhs: Fraction
    ok: bool


def check_composition_upper(host: Graph, parts: Sequence[Graph],
                            bit_cap: int = DEFAULT_BIT_CAP) -> CompositionUpperResult:
    """chi_f(blowup) <= chi_f(host) * max chi_f(part), both sides exact."""
    from .construct import compose

    cert_host = chi_f(host, bit_cap)
    certs = [chi_f(p, bit_cap) for p in parts]
    bound = cert_host.value * max(c.value for c in certs)
    rhs = chi_f(compose(host, parts), bit_cap).value
    return CompositionUpperResult(bound, rhs, rhs <= bound)


# -- serialization ---------------------------------------------------------------

def certificate_to_json(cert: FractionalCertificate) -> dict:
    from .jsonio import SCHEMA_VERSION, frac_to_json

    primal = [{"vertices": sorted(bits(mask)), "weight": frac_to_json(w)}
              for mask, w in cert.primal]
    primal.sort(key=lambda entry: entry["vertices"])
    return {
        "schema": SCHEMA_VERSION,
        "value": frac_to_json(cert.value),
        "primal": primal,
        "dual": [frac_to_json(y) for y in cert.dual],
    }


def certificate_from_json(obj: dict) -> FractionalCertificate:
    from .graph import mask_of
    from .jsonio import frac_from_json

    if obj.get("schema") != 1:
        raise ValueError("unsupported certificate schema")
    primal = tuple(sorted(
        (mask_of(entry["vertices"]), frac_from_json(entry["weight"]))
        for entry in obj["primal"]))
    dual = tuple(frac_from_json(y) for y in obj["dual"])
    return FractionalCertificate(frac_from_json(obj["value"]), primal, dual)


__all__ = [
    "BitBudgetError", "CompositionUpperResult", "DEFAULT_BIT_CAP",
    "FULL_ENUM_CAP", "FracprodResult", "FractionalCertificate", "LP_N_CAP",
    "VerifyResult", "certificate_from_json", "certificate_to_json",
    "check_composition_upper", "check_fracprod", "chi_f",
    "chi_f_full_enumeration", "max_weight_independent_set",
    "maximal_independent_sets", "verify_certificate",
]
