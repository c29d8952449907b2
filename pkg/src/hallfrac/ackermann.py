"""Knuth up-arrow towers over exact big integers, their lower inverses, and
machine checks of the bookkeeping identities the recursive construction needs.

Values explode past any memory almost immediately, so every evaluation takes
a bit-length budget and returns a typed :class:`Overflow` outcome instead of
materializing a monster.  An overflowed value is known to exceed ``2**budget``
bits, so comparisons against representable quantities stay decidable; the
check functions exploit exactly that and report honestly when a claim cannot
be decided within the budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import rng

DEFAULT_BIT_BUDGET = 1 << 20  # F_2(5) (65537 bits) fits; F_2(6) overflows


@dataclass(frozen=True)
class Overflow:
    """Typed outcome: the exact value needs more than ``bit_budget`` bits.

    ``completed_height`` counts hyper-operation steps finished before the
    budget was exceeded.  Truthiness is forbidden so an Overflow never slips
    through a boolean check unnoticed.
    """

    bit_budget: int
    completed_height: int = 0

    def __bool__(self):
        raise TypeError("Overflow outcome used as a boolean; match on the "
                        "type instead")


Value = Union[int, Overflow]


def _pow_checked(a: int, b: int, budget: int) -> Value:
    """a**b, or Overflow if the result would exceed ``budget`` bits.
    Never materializes more than about twice the budget."""
    if b == 0 or a == 1:
        return 1
    if a == 0:
        return 0
    la = a.bit_length()
    if (la - 1) * b + 1 > budget:
        return Overflow(budget)
    value = a ** b
    if value.bit_length() > budget:
        return Overflow(budget)
    return value


def up_arrow(a: int, k: int, b: int,
             bit_budget: int = DEFAULT_BIT_BUDGET) -> Value:
    """a ^(k) b in Knuth arrow notation:

        a ^(1) b = a**b,  a ^(k) 0 = 1,  a ^(k) b = a ^(k-1) (a ^(k) (b-1)).

    Exact within the bit budget, Overflow beyond it.
    """
    if k < 1:
        raise ValueError("arrow count k must be >= 1")
    if a < 0 or b < 0:
        raise ValueError("arguments must be natural numbers")
    if k == 1:
        return _pow_checked(a, b, bit_budget)
    if b == 0:
        return 1
    if a == 0:
        return 1 - (b & 1)  # 0,1,0,1,... from the recursion
    if a == 1:
        return 1
    acc: Value = 1
    for height in range(b):
        acc = up_arrow(a, k - 1, acc, bit_budget)
        if isinstance(acc, Overflow):
            # every further application only grows the tower
            return Overflow(bit_budget, completed_height=height)
    return acc


def F(k: int, b: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> Value:
    """The base-2 tower hierarchy F_k(b) = 2 ^(k) b."""
    return up_arrow(2, k, b, bit_budget)


def f_inv(k: int, n: int) -> int:
    """Largest b with F_k(b) <= n, by ascending evaluation that short-circuits
    as soon as the running tower exceeds n (never builds anything larger than
    n plus one doubling)."""
    if k < 1:
        raise ValueError("arrow count k must be >= 1")
    if n < 1:
        raise ValueError("f_k is defined for n >= 1")
    if k == 1:
        # F_1(b) = 2**b, so the ascent stops exactly at floor(log2 n)
        return n.bit_length() - 1
    budget = n.bit_length() + 1
    b = 0
    while True:
        nxt = F(k, b + 1, bit_budget=budget)
        if isinstance(nxt, Overflow) or nxt > n:
            return b
        b += 1


def check_fact1(k: int, n: int,
                bit_budget: int = DEFAULT_BIT_BUDGET) -> Union[bool, Overflow]:
    """f_k(f_k(F_{k+1}(n+2))) == F_{k+1}(n), exactly."""
    big = F(k + 1, n + 2, bit_budget)
    if isinstance(big, Overflow):
        return big
    expect = F(k + 1, n, bit_budget)
    assert not isinstance(expect, Overflow)
    return f_inv(k, f_inv(k, big)) == expect


def check_fact2(k: int, m: int,
                bit_budget: int = DEFAULT_BIT_BUDGET) -> Union[bool, Overflow]:
    """f_{k+1}(4M) < f_k(f_k(M)) for M >= F_k(F_k(7)).

    The threshold itself is representable only for k = 1 (it is 2**128);
    for larger k the precondition cannot be certified and the outcome is
    Overflow rather than a guess.
    """
    inner = F(k, 7, bit_budget)
    if isinstance(inner, Overflow):
        return inner
    threshold = F(k, inner, bit_budget)
    if isinstance(threshold, Overflow):
        return threshold
    if m < threshold:
        raise ValueError(f"precondition M >= F_{k}(F_{k}(7)) = {threshold} fails")
    return f_inv(k + 1, 4 * m) < f_inv(k, f_inv(k, m))


def check_fact3(k: int, n: int,
                bit_budget: int = DEFAULT_BIT_BUDGET) -> Union[bool, Overflow]:
    """sum_{b=0..n} F_k(b) < F_k(n+1), exactly."""
    total = 0
    for b in range(n + 1):
        term = F(k, b, bit_budget)
        if isinstance(term, Overflow):
            return term
        total += term
    bound = F(k, n + 1, bit_budget)
    if isinstance(bound, Overflow):
        # the sum was representable, the bound is beyond the budget: strictly larger
        return True
    return total < bound


def _seeded_naturals(seed: int, samples: int, max_bits: int = 200) -> list[int]:
    """Deterministic positive integers of widely varying bit lengths."""
    gen = rng.SplitMix64(seed)
    out = []
    for _ in range(samples):
        nbits = 1 + gen.next_below(max_bits)
        m = 0
        for _ in range((nbits + 63) // 64):
            m = (m << 64) | gen.next_u64()
        m &= (1 << nbits) - 1
        m |= 1 << (nbits - 1)
        out.append(m)
    return out


def check_appendix_basics(k: int, n_max: int, seed: int = 0, samples: int = 100,
                          bit_budget: int = DEFAULT_BIT_BUDGET) -> Union[bool, Overflow]:
    """Grab-bag of base facts: F_k(n) >= n+1; F_k monotone non-decreasing;
    F_{k+1}(n) >= 2**n; f_k monotone on seeded values; and the inverse
    sandwich F_k(f_k(M)+1) > M >= F_k(f_k(M)) on seeded values of M.

    An overflowed tower counts as larger than any representable comparand,
    so most claims stay decidable past the budget; a monotonicity pair where
    both sides overflow is skipped (it cannot be falsified at this budget).
    The outcome is Overflow only when a claim is genuinely undecidable.
    """
    for kk in (k, k + 1):
        last: Value | None = None
        for n in range(n_max + 1):
            val = F(kk, n, bit_budget)
            if kk == k:
                if not isinstance(val, Overflow) and val < n + 1:
                    return False
            else:
                if isinstance(val, Overflow):
                    if n > bit_budget:
                        return Overflow(bit_budget)  # 2**n also beyond budget
                elif val < (1 << n):
                    return False
            if last is not None:
                if isinstance(last, Overflow) and not isinstance(val, Overflow):
                    return False  # overflow must be monotone
                if (not isinstance(last, Overflow)
                        and not isinstance(val, Overflow) and val < last):
                    return False
            last = val
    ms = _seeded_naturals(seed, samples)
    inverses = [(m, f_inv(k, m)) for m in ms]
    by_m = sorted(inverses)
    for (m1, b1), (m2, b2) in zip(by_m, by_m[1:]):
        if b1 > b2:
            return False
    for m, b in inverses:
        lower = F(k, b, m.bit_length() + 1)
        if isinstance(lower, Overflow) or lower > m:
            return False
        upper = F(k, b + 1, m.bit_length() + 1)
        if not isinstance(upper, Overflow) and upper <= m:
            return False
    return True


def _ge(a: Value, b: Value) -> Union[bool, None]:
    """a >= b with overflow-as-huge semantics; None when undecidable
    (both sides overflowed the budget)."""
    if isinstance(a, Overflow) and isinstance(b, Overflow):
        return None
    if isinstance(a, Overflow):
        return True
    if isinstance(b, Overflow):
        return False
    return a >= b


def appendix_chain_report(k: int, n_lo: int = 7, n_hi: int = 12,
                          bit_budget: int = DEFAULT_BIT_BUDGET) -> dict[int, dict]:
    """Per-n status of the chain

        F_{k+1}(n) = F_k^{(4)}(F_{k+1}(n-4)) >= 2**(F_k(F_k(2**(n-4))+1))
                                            >= 4*F_k(F_k(n+1)+1)

    Each link is reported as True, False, or "untestable" when both sides
    exceed the bit budget; nothing is guessed.  The equality link is checked
    whenever each iterate is representable.
    """
    if k < 1:
        raise ValueError("arrow count k must be >= 1")
    out: dict[int, dict] = {}
    for n in range(n_lo, n_hi + 1):
        lhs = F(k + 1, n, bit_budget)
        iterate: Value = F(k + 1, n - 4, bit_budget)
        for _ in range(4):
            if isinstance(iterate, Overflow):
                break
            iterate = up_arrow(2, k, iterate, bit_budget)
        if isinstance(lhs, Overflow) or isinstance(iterate, Overflow):
            equality: Union[bool, str] = "untestable"
        else:
            equality = lhs == iterate
        pow_inner = _pow_checked(2, n - 4, bit_budget)
        middle: Value = Overflow(bit_budget)
        if not isinstance(pow_inner, Overflow):
            a = F(k, pow_inner, bit_budget)
            if not isinstance(a, Overflow):
                b = F(k, a + 1, bit_budget)
                if not isinstance(b, Overflow):
                    middle = _pow_checked(2, b, bit_budget)
        inner_r = F(k, n + 1, bit_budget)
        rhs: Value = Overflow(bit_budget)
        if not isinstance(inner_r, Overflow):
            r = F(k, inner_r + 1, bit_budget)
            if not isinstance(r, Overflow):
                rhs = 4 * r if r.bit_length() + 2 <= bit_budget \
                    else Overflow(bit_budget)
        first = _ge(lhs, middle)
        second = _ge(middle, rhs)
        out[n] = {
            "equality": equality,
            "lhs_ge_middle": "untestable" if first is None else first,
            "middle_ge_rhs": "untestable" if second is None else second,
        }
    return out


__all__ = [
    "DEFAULT_BIT_BUDGET", "F", "Overflow", "Value", "appendix_chain_report",
    "check_appendix_basics", "check_fact1", "check_fact2", "check_fact3",
    "f_inv", "up_arrow",
]
