"""Graph construction algebra: join, block composition, lexicographic
product, Mycielskian, seeded random graphs, triangle-free rejection sampling,
a small gadget search, and the miniature builders for the join-of-gadgets and
recursive-composition shapes (including their big-integer size bookkeeping).

Everything stochastic runs off the SplitMix64 stream in :mod:`hallfrac.rng`;
identical arguments give identical graphs on every platform and thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from . import rng
from .ackermann import F, Overflow
from .graph import (Graph, SizeLimitError, bits, complete_graph, count_triangles,
                    cycle_graph, kneser_graph, new_graph)
from .invariants import alpha, chromatic_number, is_k_colorable


class BudgetExhaustedError(RuntimeError):
    """A rejection sampler ran out of tries; carries what it saw."""

    def __init__(self, message: str, tries: int, best_triangles: int | None = None):
        super().__init__(message)
        self.tries = tries
        self.best_triangles = best_triangles


# -- deterministic combinators -----------------------------------------------

def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus all edges between the two sides."""
    shift = g1.n
    full1 = g1.vertex_mask()
    rows = [row | (((1 << g2.n) - 1) << shift) for row in g1.adj]
    rows += [(row << shift) | full1 for row in g2.adj]
    labels = None
    if g1.labels is not None or g2.labels is not None:
        left = g1.labels or tuple(str(v) for v in range(g1.n))
        right = g2.labels or tuple(str(v) for v in range(g2.n))
        labels = left + right
    return Graph(g1.n + g2.n, tuple(rows), labels)


def join_many(parts: Sequence[Graph]) -> Graph:
    if not parts:
        raise ValueError("join of zero graphs is undefined")
    out = parts[0]
    for part in parts[1:]:
        out = join(out, part)
    return out


def compose(host: Graph, parts: Sequence[Graph]) -> Graph:
    """Blow up vertex i of ``host`` into ``parts[i]``; blocks are fully joined
    exactly when the corresponding host vertices are adjacent.  Labels record
    the block index and the original label."""
    if host.n != len(parts):
        raise ValueError(
            f"host has {host.n} vertices but {len(parts)} parts were given")
    offsets = []
    total = 0
    for p in parts:
        offsets.append(total)
        total += p.n
    block_mask = [((1 << p.n) - 1) << off for p, off in zip(parts, offsets)]
    rows = []
    labels = []
    for i, p in enumerate(parts):
        cross = 0
        for j in bits(host.adj[i]):
            cross |= block_mask[j]
        for v in range(p.n):
            rows.append((p.adj[v] << offsets[i]) | cross)
            orig = p.labels[v] if p.labels is not None else str(v)
            labels.append(f"{i}:{orig}")
    return Graph(total, tuple(rows), tuple(labels))


def lex_product(host: Graph, part: Graph) -> Graph:
    """Composition with identical parts (the lexicographic product)."""
    return compose(host, [part] * host.n)


def mycielski(g: Graph) -> Graph:
    """Standard Mycielskian: shadow vertex u'=n+u adjacent to N(u), apex 2n
    adjacent to all shadows.  Preserves triangle-freeness, raises chi."""
    n = g.n
    out_edges = list(g.edges())
    for u in range(n):
        for v in bits(g.adj[u]):
            out_edges.append((n + u, v))
    apex = 2 * n
    out_edges += [(apex, n + u) for u in range(n)]
    return new_graph(2 * n + 1, out_edges)


# -- seeded random graphs ------------------------------------------------------

def _pair_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    iu, ju = np.triu_indices(n, k=1)
    order = np.lexsort((ju, iu))  # (0,1),(0,2),...,(n-2,n-1)
    return iu[order], ju[order]


def _edge_threshold(p: Fraction) -> int:
    # u < T  <=>  u * den < num * 2**64, for u uniform on [0, 2**64)
    return -((-p.numerator << 64) // p.denominator)


def random_graph(n: int, p: Fraction, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) from the SplitMix64 stream of ``seed``.

    One 64-bit draw per unordered pair, consumed in the fixed order
    (0,1),(0,2),...,(n-2,n-1); the pair is an edge iff draw/2**64 < p, so the
    realized probability is p rounded to a multiple of 2**-64.
    """
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("edge probability must lie in [0, 1]")
    rows = _random_rows(n, p, seed)
    return Graph(n, tuple(rows))


def _random_rows(n: int, p: Fraction, seed: int) -> list[int]:
    npairs = n * (n - 1) // 2
    thr = _edge_threshold(p)
    rows = [0] * n
    if npairs == 0 or thr == 0:
        return rows
    if npairs >= 256:
        draws = rng.stream_u64(seed, npairs)
        if thr >= 1 << 64:
            picked = np.arange(npairs)
        else:
            picked = np.nonzero(draws < np.uint64(thr))[0]
        iu, ju = _pair_arrays(n)
        for idx in picked:
            i = int(iu[idx])
            j = int(ju[idx])
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    else:
        gen = rng.SplitMix64(seed)
        for i in range(n - 1):
            for j in range(i + 1, n):
                if gen.next_u64() < thr:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
    return rows


@dataclass(frozen=True)
class TriangleFreeSample:
    graph: Graph
    tries_used: int


def sample_triangle_free(n: int, d: Fraction, seed: int,
                         max_tries: int) -> TriangleFreeSample:
    """Draw G(n, D/n) repeatedly until a triangle-free graph appears.

    Try t uses the derived seed ``derive_seed(seed, t)``; the result records
    how many tries were spent.  Raises :class:`BudgetExhaustedError` with the
    number of tries and the smallest triangle count seen when the budget runs
    out.
    """
    d = Fraction(d)
    if d >= n:
        raise ValueError("expected degree D must be smaller than n")
    if max_tries < 1:
        raise ValueError("need at least one try")
    p = d / n
    if not 0 <= p <= 1:
        raise ValueError("D/n must lie in [0, 1]")
    best = None
    for t in range(max_tries):
        rows = _random_rows(n, p, rng.derive_seed(seed, t))
        tri = count_triangles(rows)
        if tri == 0:
            return TriangleFreeSample(Graph(n, tuple(rows)), t + 1)
        best = tri if best is None else min(best, tri)
    raise BudgetExhaustedError(
        f"no triangle-free G({n},{p}) in {max_tries} tries "
        f"(fewest triangles seen: {best})", max_tries, best)


# -- gadget search --------------------------------------------------------------

GADGET_N_CAP = 40
_SUBSET_ENUM_CAP = 10 ** 6
_SUBSET_SAMPLES = 10 ** 4


def solve_degree_for_target(c: float, n: int, tol: float = 1e-9) -> float:
    """Invert C = D / (2 ln D) for D by bisection.

    The map has two branches around its minimum at D = e; only the branch
    D in (1, e] yields densities sparse enough for triangle-free sampling at
    desk scale, so that branch is used (the asymptotic regime of the source
    construction lives on the other one).
    """
    if c < math.e / 2:
        raise ValueError("no solution: C below the minimum of D/(2 ln D)")

    def f(d: float) -> float:
        return d / (2.0 * math.log(d))

    lo, hi = 1.0 + 1e-12, math.e
    # f decreases from +inf to e/2 on this bracket
    for _ in range(200):
        mid = (lo + hi) / 2.0
        val = f(mid)
        if abs(val - c) <= tol:
            return mid
        if val > c:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


@dataclass(frozen=True)
class GadgetReport:
    """Best candidate found by :func:`search_gadget`.

    ``tries_used`` is the 1-based draw index at which the winning candidate
    appeared; the search itself always consumes its full budget so the
    winner is the global maximum over all triangle-free draws.
    ``property_b_sampled`` flags that the small-subgraph 3-colorability check
    was sampled rather than exhaustive, in which case it certifies nothing.
    """

    graph: Graph
    target_c: Fraction
    alpha: int
    chi: int
    triangle_free: bool
    property_a_holds: bool
    property_b_holds: bool
    property_b_sampled: bool
    tries_used: int


def small_subgraphs_three_colorable(g: Graph, seed: int,
                                    k: int | None = None,
                                    enum_cap: int = _SUBSET_ENUM_CAP
                                    ) -> tuple[bool, bool]:
    """Whether every induced subgraph on at most k = floor(sqrt(ln n))
    vertices is 3-colorable; returns (holds, sampled).

    Exhaustive over all subsets of every size up to k when their total count
    fits ``enum_cap``; otherwise 10**4 seeded random subsets are tried and
    the result is flagged as sampled, certifying nothing.
    """
    from itertools import combinations

    from .graph import induced, mask_of

    if k is None:
        k = int(math.floor(math.sqrt(math.log(g.n)))) if g.n > 1 else 0
    k = min(k, g.n)
    if k <= 3:
        # any graph on <= 3 vertices is 3-colorable
        return True, False
    total = sum(math.comb(g.n, size) for size in range(1, k + 1))
    if total <= enum_cap:
        for size in range(4, k + 1):
            for combo in combinations(range(g.n), size):
                if is_k_colorable(induced(g, mask_of(combo)), 3) is None:
                    return False, False
        return True, False
    gen = rng.SplitMix64(seed)
    for _ in range(_SUBSET_SAMPLES):
        size = 4 + gen.next_below(k - 3)
        mask = 0
        while mask.bit_count() < size:
            mask |= 1 << gen.next_below(g.n)
        if is_k_colorable(induced(g, mask), 3) is None:
            return False, True
    return True, True


def search_gadget(n: int, c: Fraction, seed: int, budget: int) -> GadgetReport:
    """Sample triangle-free G(n, D/n) candidates and report the best one.

    D comes from inverting C = D/(2 ln D).  Each triangle-free draw gets
    exact alpha and chi; the winner maximizes (property A, property B, n/alpha)
    lexicographically, with the earliest try index breaking ties.  Property
    flags are recorded honestly; at desk scale property A usually fails.
    """
    c = Fraction(c)
    if c < 2:
        raise ValueError("target C must be at least 2")
    if n > GADGET_N_CAP:
        raise SizeLimitError(f"gadget search capped at n <= {GADGET_N_CAP}")
    d = solve_degree_for_target(float(c), n)
    p = Fraction(d) / n
    best: GadgetReport | None = None
    best_key = None
    tries_used = 0
    for t in range(budget):
        tries_used = t + 1
        rows = _random_rows(n, p, rng.derive_seed(seed, t))
        if count_triangles(rows) != 0:
            continue
        g = Graph(n, tuple(rows))
        a, _ = alpha(g)
        chi, _ = chromatic_number(g)
        prop_a = Fraction(1001, 1000) * c > chi and Fraction(n, a) > c
        prop_b, sampled = small_subgraphs_three_colorable(
            g, rng.derive_seed(seed, budget + t))
        key = (prop_a, prop_b, Fraction(n, a), -t)
        if best_key is None or key > best_key:
            best_key = key
            best = GadgetReport(g, c, a, chi, True, prop_a, prop_b, sampled,
                                tries_used)
    if best is None:
        raise BudgetExhaustedError(
            f"no triangle-free candidate among {budget} draws of G({n},{p})",
            budget)
    return best


# -- miniature builders ----------------------------------------------------------

MINIATURE_CAP = 60


def theorem_join_miniature(part_specs: Sequence["ConstructionExpr"],
                           c: Fraction = Fraction(2),
                           size_cap: int = MINIATURE_CAP) -> Graph:
    """Desk-scale stand-in for the join-of-gadgets counterexample shape: build
    the parts, join them all, and label every vertex with its part index.

    ``c`` is the nominal gadget target; the miniature keeps it only as
    metadata since parts are explicit specs (odd cycles by default upstream)
    rather than true random gadgets of astronomical size.
    """
    if not part_specs:
        raise ValueError("need at least one part")
    parts = [build(spec) for spec in part_specs]
    total = sum(p.n for p in parts)
    if total > size_cap:
        raise SizeLimitError(f"{total} vertices exceeds the miniature cap {size_cap}")
    joined = join_many(parts)
    labels = []
    for i, p in enumerate(parts):
        labels += [f"{i}:{v}" for v in range(p.n)]
    return joined.with_labels(labels)


def recursive_composition_sizes(n: int, k: int):
    """Size bookkeeping for the recursive K_{2^k+1}-free shape.

    Returns the largest m with  m + sum_{i=2..m} F_k(m+3i-6) <= n,  the block
    sizes b (b_1 = m, middle blocks F_k(m+3i-6), last block the remainder so
    that sum(b) = n), and the certificate that F_k(4m-1) > n.  All arithmetic
    is exact; tower terms larger than n short-circuit instead of materializing.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if n < 2:
        raise ValueError("n must be >= 2")
    budget = max(n.bit_length() + 2, 64)

    def cond(m: int) -> bool:
        # m + sum_{i=2..m} F_k(m+3i-6) <= n, short-circuiting past n
        total = m
        for i in range(2, m + 1):
            term = F(k, m + 3 * i - 6, bit_budget=budget)
            if isinstance(term, Overflow):
                return False
            total += term
            if total > n:
                return False
        return total <= n

    if not cond(1):
        raise ValueError(f"no valid m for n={n}")
    m = 1
    while cond(m + 1):
        m += 1
    b = [m]
    for i in range(2, m):
        term = F(k, m + 3 * i - 6, bit_budget=budget)
        assert not isinstance(term, Overflow)
        b.append(term)
    if m >= 2:
        b.append(n - sum(b))
    else:
        b = [n]
    cert_val = F(k, 4 * m - 1, bit_budget=budget)
    certificate = isinstance(cert_val, Overflow) or cert_val > n
    return SizeRecurrenceResult(m, tuple(b), certificate)


@dataclass(frozen=True)
class SizeRecurrenceResult:
    m: int
    blocks: tuple[int, ...]
    tower_exceeds_n: bool


def recursive_composition_miniature(k: int, host_spec: "ConstructionExpr",
                                    part_specs: Sequence["ConstructionExpr"],
                                    size_cap: int = MINIATURE_CAP) -> Graph:
    """Desk-scale recursive-composition shape: compose(host, parts) with
    provenance labels.  With k = 2 and triangle-free host and parts the result
    is K_5-free, which callers check with the exact clique search."""
    if k < 2:
        raise ValueError("k must be >= 2")
    host = build(host_spec)
    if host.n != len(part_specs):
        raise ValueError(
            f"host has {host.n} vertices but {len(part_specs)} parts were given")
    parts = [build(spec) for spec in part_specs]
    total = sum(p.n for p in parts)
    if total > size_cap:
        raise SizeLimitError(f"{total} vertices exceeds the miniature cap {size_cap}")
    return compose(host, parts)


# -- construction expressions -----------------------------------------------------

@dataclass(frozen=True)
class Base:
    graph: Graph


@dataclass(frozen=True)
class Cycle:
    n: int


@dataclass(frozen=True)
class Complete:
    n: int


@dataclass(frozen=True)
class Kneser:
    n: int
    k: int


@dataclass(frozen=True)
class Join:
    parts: tuple["ConstructionExpr", ...]


@dataclass(frozen=True)
class Compose:
    host: "ConstructionExpr"
    parts: tuple["ConstructionExpr", ...]


@dataclass(frozen=True)
class Lex:
    host: "ConstructionExpr"
    part: "ConstructionExpr"


@dataclass(frozen=True)
class Mycielski:
    inner: "ConstructionExpr"


@dataclass(frozen=True)
class Random:
    n: int
    p: Fraction
    seed: int


@dataclass(frozen=True)
class TriangleFreeGadget:
    n: int
    d: Fraction
    seed: int
    budget: int


ConstructionExpr = Union[Base, Cycle, Complete, Kneser, Join, Compose, Lex,
                         Mycielski, Random, TriangleFreeGadget]


def expr_size(expr: ConstructionExpr) -> int:
    """Vertex count of the built graph, computed without building it."""
    if isinstance(expr, Base):
        return expr.graph.n
    if isinstance(expr, (Cycle, Complete, Random, TriangleFreeGadget)):
        return expr.n
    if isinstance(expr, Kneser):
        return math.comb(expr.n, expr.k)
    if isinstance(expr, Join):
        return sum(expr_size(e) for e in expr.parts)
    if isinstance(expr, Compose):
        return sum(expr_size(e) for e in expr.parts)
    if isinstance(expr, Lex):
        return expr_size(expr.host) * expr_size(expr.part)
    if isinstance(expr, Mycielski):
        return 2 * expr_size(expr.inner) + 1
    raise TypeError(f"not a construction expression: {expr!r}")


def build(expr: ConstructionExpr) -> Graph:
    if isinstance(expr, Base):
        return expr.graph
    if isinstance(expr, Cycle):
        return cycle_graph(expr.n)
    if isinstance(expr, Complete):
        return complete_graph(expr.n)
    if isinstance(expr, Kneser):
        return kneser_graph(expr.n, expr.k)
    if isinstance(expr, Join):
        return join_many([build(e) for e in expr.parts])
    if isinstance(expr, Compose):
        return compose(build(expr.host), [build(e) for e in expr.parts])
    if isinstance(expr, Lex):
        return lex_product(build(expr.host), build(expr.part))
    if isinstance(expr, Mycielski):
        return mycielski(build(expr.inner))
    if isinstance(expr, Random):
        return random_graph(expr.n, expr.p, expr.seed)
    if isinstance(expr, TriangleFreeGadget):
        return sample_triangle_free(expr.n, expr.d, expr.seed, expr.budget).graph
    raise TypeError(f"not a construction expression: {expr!r}")


class ExprSyntaxError(ValueError):
    """Parse failure with the byte offset of the offending character."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class _Parser:
    """Recursive-descent parser for the construction grammar:

        expr     := cycle(N) | complete(N) | kneser(N,N) | join(expr{,expr})
                  | compose(expr; expr{,expr}) | lex(expr,expr)
                  | mycielski(expr) | random(N,RAT,seed=N)
                  | trianglefree(N,RAT,seed=N,tries=N)
        RAT      := N | N/N

    Whitespace-insensitive; all numbers are nonnegative decimal integers.
    """

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise ExprSyntaxError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def ident(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalpha()
                                             or self.text[self.pos] == "_"):
            self.pos += 1
        if self.pos == start:
            self.error("expected a constructor name")
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def rational(self) -> Fraction:
        num = self.integer()
        if self.peek() == "/":
            self.expect("/")
            den = self.integer()
            if den == 0:
                self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def keyword_int(self, name: str) -> int:
        self.skip_ws()
        at = self.pos
        word = self.ident()
        if word != name:
            self.pos = at
            self.error(f"expected {name}=<int>")
        self.expect("=")
        return self.integer()

    def expr(self) -> ConstructionExpr:
        self.skip_ws()
        at = self.pos
        name = self.ident()
        self.expect("(")
        out = self.dispatch(name, at)
        self.expect(")")
        return out

    def dispatch(self, name: str, at: int) -> ConstructionExpr:
        if name == "cycle":
            n = self.integer()
            if n < 3:
                self.pos = at
                self.error("cycle needs n >= 3")
            return Cycle(n)
        if name == "complete":
            n = self.integer()
            if n < 1:
                self.pos = at
                self.error("complete needs n >= 1")
            return Complete(n)
        if name == "kneser":
            n = self.integer()
            self.expect(",")
            k = self.integer()
            if not 1 <= k <= n:
                self.pos = at
                self.error("kneser needs 1 <= k <= n")
            return Kneser(n, k)
        if name == "join":
            parts = [self.expr()]
            while self.peek() == ",":
                self.expect(",")
                parts.append(self.expr())
            return Join(tuple(parts))
        if name == "compose":
            host = self.expr()
            self.expect(";")
            parts = [self.expr()]
            while self.peek() == ",":
                self.expect(",")
                parts.append(self.expr())
            if expr_size(host) != len(parts):
                self.pos = at
                self.error(f"compose host has {expr_size(host)} vertices "
                           f"but {len(parts)} parts")
            return Compose(host, tuple(parts))
        if name == "lex":
            host = self.expr()
            self.expect(",")
            part = self.expr()
            return Lex(host, part)
        if name == "mycielski":
            return Mycielski(self.expr())
        if name == "random":
            n = self.integer()
            self.expect(",")
            p = self.rational()
            self.expect(",")
            seed = self.keyword_int("seed")
            if p > 1:
                self.pos = at
                self.error("edge probability must lie in [0, 1]")
            return Random(n, p, seed)
        if name == "trianglefree":
            n = self.integer()
            self.expect(",")
            d = self.rational()
            self.expect(",")
            seed = self.keyword_int("seed")
            self.expect(",")
            tries = self.keyword_int("tries")
            return TriangleFreeGadget(n, d, seed, tries)
        self.pos = at
        self.error(f"unknown constructor {name!r}")
        raise AssertionError  # unreachable

    def parse(self) -> ConstructionExpr:
        out = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input after expression")
        return out


def parse_expression(text: str) -> ConstructionExpr:
    return _Parser(text).parse()


__all__ = [
    "Base", "BudgetExhaustedError", "Complete", "Compose", "ConstructionExpr",
    "Cycle", "ExprSyntaxError", "GadgetReport", "Join", "Kneser", "Lex",
    "MINIATURE_CAP", "Mycielski", "Random", "SizeRecurrenceResult",
    "TriangleFreeGadget", "TriangleFreeSample", "build", "compose",
    "expr_size", "join", "join_many",
    "lex_product", "mycielski", "parse_expression", "random_graph",
    "recursive_composition_miniature", "recursive_composition_sizes",
    "sample_triangle_free", "search_gadget",
    "small_subgraphs_three_colorable", "solve_degree_for_target",
    "theorem_join_miniature",
]
