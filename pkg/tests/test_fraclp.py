"""Exact LP route: column generation against the full-enumeration oracle,
certificate verification, the composition inequalities, and serialization."""

import json
from fractions import Fraction

import pytest

from hallfrac import rng
from hallfrac.construct import join, lex_product, random_graph
from hallfrac.fraclp import (BitBudgetError, certificate_from_json,
                             certificate_to_json, check_composition_upper,
                             check_fracprod, chi_f, chi_f_full_enumeration,
                             max_weight_independent_set,
                             maximal_independent_sets, verify_certificate)
from hallfrac.graph import (SizeLimitError, bits, complete_graph, cycle_graph,
                            empty_graph, kneser_graph, mask_of)
from hallfrac.invariants import alpha, chromatic_number
from hallfrac.jsonio import dumps_canonical


def seeded_corpus(count, seed, n_lo=4, n_hi=16):
    span = n_hi - n_lo + 1
    for i in range(count):
        n = n_lo + i % span
        p = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))[i % 3]
        yield random_graph(n, p, rng.derive_seed(seed, i))


class TestOddCycles:
    @pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
    def test_exact_value_both_routes(self, k):
        g = cycle_graph(2 * k + 1)
        expect = Fraction(2 * k + 1, k)
        assert chi_f(g).value == expect
        assert chi_f_full_enumeration(g).value == expect

    def test_c5_hand_lp(self, c5):
        # oracle sanity: the 5 maximal independent sets of C5 are the pairs,
        # and weighting each by 1/2 covers every vertex exactly once
        maximal = maximal_independent_sets(c5)
        assert len(maximal) == 5
        assert all(m.bit_count() == 2 for m in maximal)
        cover = [0] * 5
        for m in maximal:
            for v in bits(m):
                cover[v] += 1
        assert cover == [2] * 5  # weight 1/2 each -> coverage 1, value 5/2


class TestCompleteAndEmpty:
    @pytest.mark.parametrize("n", [1, 2, 4, 7])
    def test_complete(self, n):
        cert = chi_f(complete_graph(n))
        assert cert.value == n
        assert cert.dual == (Fraction(1),) * n
        assert len(cert.primal) == n
        assert all(w == 1 for _, w in cert.primal)

    @pytest.mark.parametrize("n", [1, 3, 8])
    def test_empty(self, n):
        assert chi_f(empty_graph(n)).value == 1
        assert chi_f_full_enumeration(empty_graph(n)).value == 1

    def test_k3_oracle(self):
        assert chi_f_full_enumeration(complete_graph(3)).value == 3


class TestAgainstOracle:
    def test_corpus_agreement(self):
        # chi_f == full enumeration exactly, and both certificates verify
        for g in seeded_corpus(100, seed=606, n_hi=16):
            cert = chi_f(g)
            oracle = chi_f_full_enumeration(g)
            assert cert.value == oracle.value
            assert verify_certificate(g, cert).ok
            assert verify_certificate(g, oracle).ok

    def test_petersen_and_kneser(self, petersen):
        assert chi_f(petersen).value == Fraction(5, 2)
        assert chi_f_full_enumeration(petersen).value == Fraction(5, 2)
        assert chi_f(kneser_graph(5, 2)).value == Fraction(5, 2)

    def test_grotzsch(self, grotzsch):
        assert chi_f(grotzsch).value == Fraction(29, 10)
        assert chi_f_full_enumeration(grotzsch).value == Fraction(29, 10)


class TestChain:
    def test_basic_chain_on_corpus(self):
        for g in seeded_corpus(30, seed=707, n_hi=12):
            a, _ = alpha(g)
            chi, _ = chromatic_number(g)
            value = chi_f(g).value
            assert Fraction(g.n, a) <= value <= chi


class TestJoinAdditivity:
    def test_twenty_seeded_pairs(self):
        for i in range(20):
            gen = rng.SplitMix64(rng.derive_seed(808, i))
            g1 = random_graph(2 + gen.next_below(7), Fraction(1, 2), gen.next_u64())
            g2 = random_graph(2 + gen.next_below(7), Fraction(1, 2), gen.next_u64())
            assert chi_f(join(g1, g2)).value == chi_f(g1).value + chi_f(g2).value

    def test_named_join(self, join_c5_c7):
        assert chi_f(join_c5_c7).value == Fraction(29, 6)


class TestCertificates:
    def test_round_trip_verification(self, c5):
        cert = chi_f(c5)
        assert verify_certificate(c5, cert).ok

    def test_halved_primal_weight_breaks_coverage(self, c5):
        cert = chi_f(c5)
        mask0, w0 = cert.primal[0]
        tampered = cert.__class__(
            cert.value, ((mask0, w0 / 2),) + cert.primal[1:], cert.dual)
        res = verify_certificate(c5, tampered)
        assert not res.ok
        assert res.reason in ("coverage-violated", "primal-sum-mismatch")

    def test_wrong_value_with_all_one_dual(self):
        k3 = complete_graph(3)
        cert = chi_f(k3)
        lying = cert.__class__(Fraction(2), cert.primal, (Fraction(1),) * 3)
        res = verify_certificate(k3, lying)
        assert not res.ok and res.reason in ("primal-sum-mismatch",
                                             "dual-sum-mismatch")

    def test_dependent_set_rejected(self, c5):
        cert = chi_f(c5)
        bad = cert.__class__(
            cert.value, ((mask_of([0, 1]), Fraction(1)),) + cert.primal,
            cert.dual)
        assert verify_certificate(c5, bad).reason == "primal-set-not-independent"

    def test_negative_dual_rejected(self, c5):
        cert = chi_f(c5)
        bad_dual = (Fraction(-1),) + cert.dual[1:]
        assert verify_certificate(
            c5, cert.__class__(cert.value, cert.primal, bad_dual)
        ).reason in ("dual-negative", "dual-sum-mismatch")

    def test_lowest_terms_everywhere(self):
        import math
        for g in seeded_corpus(20, seed=909, n_hi=12):
            cert = chi_f(g)
            entries = [cert.value, *cert.dual, *(w for _, w in cert.primal)]
            for q in entries:
                assert q.denominator > 0
                assert math.gcd(q.numerator, q.denominator) == 1


class TestPricing:
    def test_delegates_to_weighted_alpha(self, c5):
        w = [Fraction(1, 2)] * 5
        mask, weight = max_weight_independent_set(c5, w)
        assert weight == 1
        assert mask == mask_of([0, 2])  # lexicographically smallest optimum


class TestFracprod:
    def test_k2_with_c5_c7(self, c5, c7):
        res = check_fracprod(complete_graph(2), [c5, c7])
        assert res.lhs == Fraction(14, 3)
        assert res.rhs == Fraction(29, 6)
        assert res.ok and res.dual_ok
        assert res.dual_value >= res.lhs

    def test_identity_host(self, petersen):
        res = check_fracprod(complete_graph(1), [petersen])
        assert res.lhs == res.rhs == Fraction(5, 2)
        assert res.ok and res.dual_ok

    def test_c5_host_k2_parts_equality(self, c5):
        res = check_fracprod(c5, [complete_graph(2)] * 5)
        assert res.lhs == 5 and res.rhs == 5
        assert res.ok and res.dual_ok

    def test_seeded_compositions(self):
        for i in range(10):
            gen = rng.SplitMix64(rng.derive_seed(1010, i))
            n_host = 2 + gen.next_below(3)
            host = random_graph(n_host, Fraction(1, 2), gen.next_u64())
            parts = [random_graph(2 + gen.next_below(4), Fraction(1, 2),
                                  gen.next_u64()) for _ in range(n_host)]
            res = check_fracprod(host, parts)
            assert res.ok and res.dual_ok


class TestCompositionUpper:
    def test_k2_with_c5_c7(self, c5, c7):
        res = check_composition_upper(complete_graph(2), [c5, c7])
        assert res.bound == 5 and res.rhs == Fraction(29, 6)
        assert res.ok

    def test_identity_host(self, c5):
        res = check_composition_upper(complete_graph(1), [c5])
        assert res.bound == res.rhs

    def test_lex_square_equality_both_sides(self, c5):
        # identical parts: lower and upper bound coincide, pinning chi_f
        lo = check_fracprod(c5, [c5] * 5)
        hi = check_composition_upper(c5, [c5] * 5)
        assert lo.lhs == hi.bound == Fraction(25, 4)
        assert lo.rhs == hi.rhs == Fraction(25, 4)


class TestLexMultiplicativity:
    @pytest.mark.parametrize("make_host,make_part", [
        (lambda: cycle_graph(5), lambda: complete_graph(2)),
        (lambda: complete_graph(2), lambda: cycle_graph(5)),
        (lambda: cycle_graph(5), lambda: cycle_graph(5)),
        (lambda: complete_graph(3), lambda: cycle_graph(7)),
    ])
    def test_named_pairs(self, make_host, make_part):
        host, part = make_host(), make_part()
        assert chi_f(lex_product(host, part)).value == \
            chi_f(host).value * chi_f(part).value


class TestGuards:
    def test_lp_cap(self):
        with pytest.raises(SizeLimitError):
            chi_f(empty_graph(61))

    def test_enum_cap(self):
        with pytest.raises(SizeLimitError):
            chi_f_full_enumeration(empty_graph(21))

    def test_bit_budget_trips(self):
        g = random_graph(14, Fraction(1, 2), 4242)
        with pytest.raises(BitBudgetError):
            chi_f(g, bit_cap=2)

    def test_n_zero_rejected(self):
        with pytest.raises(ValueError):
            chi_f(empty_graph(0))


class TestSerialization:
    def test_bit_exact_round_trip(self, grotzsch):
        cert = chi_f(grotzsch)
        payload = certificate_to_json(cert)
        text = dumps_canonical(payload)
        back = certificate_from_json(json.loads(text))
        assert back == cert
        assert dumps_canonical(certificate_to_json(back)) == text

    def test_schema_field(self, c5):
        payload = certificate_to_json(chi_f(c5))
        assert payload["schema"] == 1
        assert payload["value"] == {"num": "5", "den": "2"}

    def test_rejects_unknown_schema(self, c5):
        payload = certificate_to_json(chi_f(c5))
        payload["schema"] = 99
        with pytest.raises(ValueError):
            certificate_from_json(payload)
