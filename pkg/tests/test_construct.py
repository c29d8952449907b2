"""Construction algebra: combinator identities, the Mycielskian, seeded
random graphs, the rejection sampler, gadget search, miniature builders and
the big-integer size recurrence."""

import math
from fractions import Fraction

import pytest

from hallfrac import rng
from hallfrac.construct import (Base, BudgetExhaustedError, Complete, Compose,
                                Cycle, ExprSyntaxError, Join, Lex,
                                Mycielski, Random, build, compose, expr_size,
                                join, join_many, lex_product, mycielski,
                                parse_expression, random_graph,
                                recursive_composition_miniature,
                                recursive_composition_sizes,
                                sample_triangle_free, search_gadget,
                                solve_degree_for_target,
                                theorem_join_miniature)
from hallfrac.ackermann import F
from hallfrac.graph import (SizeLimitError, complete_graph, cycle_graph,
                            empty_graph, is_triangle_free)
from hallfrac.invariants import clique_at_least


class TestJoin:
    def test_two_singletons(self):
        g = join(complete_graph(1), complete_graph(1))
        assert g.same_adjacency(complete_graph(2))

    def test_edge_count(self, c5):
        g = join(c5, c5)
        assert g.n == 10 and g.m == 5 + 5 + 25

    def test_bipartite(self):
        g = join(empty_graph(2), empty_graph(3))
        assert g.n == 5 and g.m == 6
        assert g.degree_sequence() == (2, 2, 2, 3, 3)

    def test_edge_count_law_on_corpus(self):
        for i in range(20):
            gen = rng.SplitMix64(rng.derive_seed(41, i))
            g1 = random_graph(2 + gen.next_below(6), Fraction(1, 2), gen.next_u64())
            g2 = random_graph(2 + gen.next_below(6), Fraction(1, 2), gen.next_u64())
            assert join(g1, g2).m == g1.m + g2.m + g1.n * g2.n


class TestJoinMany:
    def test_three_singletons(self):
        g = join_many([complete_graph(1)] * 3)
        assert g.same_adjacency(complete_graph(3))

    def test_pair_matches_binary_join(self, c5, c7):
        assert join_many([c5, c7]).same_adjacency(join(c5, c7))

    def test_triple_edge_count(self, c5, c7):
        g = join_many([c5, c7, cycle_graph(11)])
        assert g.n == 23
        assert g.m == 5 + 7 + 11 + (5 * 7 + 5 * 11 + 7 * 11)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            join_many([])


class TestCompose:
    def test_complete_host_equals_join(self, c5):
        k3 = complete_graph(3)
        assert compose(complete_graph(2), [c5, k3]).same_adjacency(join(c5, k3))

    def test_complete_host_equals_join_many_on_corpus(self):
        for i in range(10):
            gen = rng.SplitMix64(rng.derive_seed(43, i))
            parts = [random_graph(1 + gen.next_below(5), Fraction(1, 2),
                                  gen.next_u64()) for _ in range(3)]
            a = compose(complete_graph(3), parts)
            b = join_many(parts)
            assert a.same_adjacency(b)

    def test_empty_host_is_disjoint_union(self):
        k2 = complete_graph(2)
        g = compose(empty_graph(2), [k2, k2])
        assert g.n == 4 and g.m == 2
        assert not g.has_edge(0, 2)

    def test_singleton_blocks_reproduce_host(self):
        c4 = cycle_graph(4)
        assert compose(c4, [complete_graph(1)] * 4).same_adjacency(c4)

    def test_block_structure(self, c5):
        parts = [complete_graph(2)] * 5
        g = compose(c5, parts)
        for i in range(5):
            for j in range(i + 1, 5):
                expect = c5.has_edge(i, j)
                for a in range(2):
                    for b in range(2):
                        assert g.has_edge(2 * i + a, 2 * j + b) == expect

    def test_labels_record_block(self, c5):
        g = compose(complete_graph(2), [c5, c5])
        assert g.labels[0] == "0:0" and g.labels[5] == "1:0"

    def test_arity_mismatch(self, c5):
        with pytest.raises(ValueError, match="parts"):
            compose(c5, [complete_graph(1)] * 4)


class TestLexProduct:
    def test_k2_lex_k2(self):
        g = lex_product(complete_graph(2), complete_graph(2))
        assert g.same_adjacency(complete_graph(4))

    def test_c5_lex_k2_counts(self, c5):
        g = lex_product(c5, complete_graph(2))
        assert g.n == 10 and g.m == 5 * 1 + 5 * 4

    def test_identity_host(self, c5):
        assert lex_product(complete_graph(1), c5).same_adjacency(c5)


class TestMycielski:
    def test_of_k2_is_c5(self, c5):
        m = mycielski(complete_graph(2))
        assert m.n == 5 and m.m == 5
        assert m.degree_sequence() == (2, 2, 2, 2, 2)
        # explicit relabeling oracle: 0,3,1,2,4 walks a 5-cycle in M(K2)
        walk = [0, 3, 4, 2, 1]
        assert all(m.has_edge(walk[i], walk[(i + 1) % 5]) for i in range(5))

    def test_of_c5_is_grotzsch(self, grotzsch):
        assert grotzsch.n == 11 and grotzsch.m == 3 * 5 + 5
        assert is_triangle_free(grotzsch)

    def test_of_k1(self):
        m = mycielski(complete_graph(1))
        assert m.n == 3 and m.m == 1

    def test_preserves_triangle_freeness(self):
        for i in range(50):
            gen = rng.SplitMix64(rng.derive_seed(47, i))
            n = 6 + gen.next_below(8)
            g = sample_triangle_free(n, Fraction(2), gen.next_u64(), 10 ** 4).graph
            assert is_triangle_free(g)
            assert is_triangle_free(mycielski(g))


class TestRandomGraph:
    def test_p_zero(self):
        assert random_graph(5, Fraction(0), 9).m == 0

    def test_p_one(self):
        assert random_graph(5, Fraction(1), 9).same_adjacency(complete_graph(5))

    def test_determinism(self):
        a = random_graph(10, Fraction(1, 2), 333)
        b = random_graph(10, Fraction(1, 2), 333)
        assert a == b

    def test_seed_sensitivity(self):
        a = random_graph(12, Fraction(1, 2), 1)
        b = random_graph(12, Fraction(1, 2), 2)
        assert a != b

    def test_out_of_range_probability(self):
        with pytest.raises(ValueError):
            random_graph(5, Fraction(3, 2), 0)

    def test_batch_and_sequential_paths_agree(self):
        # n=30 triggers the vectorized path; replay it pair by pair
        g = random_graph(30, Fraction(2, 7), 77)
        gen = rng.SplitMix64(77)
        thr = -((-Fraction(2, 7).numerator << 64) // Fraction(2, 7).denominator)
        for i in range(29):
            for j in range(i + 1, 30):
                assert g.has_edge(i, j) == (gen.next_u64() < thr)


class TestTriangleFreeSampler:
    def test_small_easy_case(self):
        sample = sample_triangle_free(30, Fraction(2), 11, 1000)
        assert is_triangle_free(sample.graph)
        assert sample.graph.n == 30
        assert 1 <= sample.tries_used <= 1000

    def test_zero_degree(self):
        sample = sample_triangle_free(5, Fraction(0), 3, 1)
        assert sample.graph.m == 0 and sample.tries_used == 1

    def test_budget_exhaustion_reports(self):
        # dense regime: triangles are essentially certain
        with pytest.raises(BudgetExhaustedError) as info:
            sample_triangle_free(30, Fraction(20), 5, 3)
        assert info.value.tries == 3
        assert info.value.best_triangles > 0

    def test_deterministic(self):
        a = sample_triangle_free(40, Fraction(3), 123, 5000)
        b = sample_triangle_free(40, Fraction(3), 123, 5000)
        assert a.graph == b.graph and a.tries_used == b.tries_used


class TestDegreeInversion:
    def test_round_trip(self):
        for c in (2.0, 2.5, 5.0):
            d = solve_degree_for_target(c, 100)
            assert 1 < d <= math.e
            assert abs(d / (2 * math.log(d)) - c) <= 1e-9


class TestSearchGadget:
    def test_report_fields(self):
        report = search_gadget(20, Fraction(2), 5, 200)
        g = report.graph
        assert g.n == 20
        assert report.triangle_free and is_triangle_free(g)
        assert report.alpha >= 1 and report.chi >= 1
        assert report.target_c == 2
        assert 1 <= report.tries_used <= 200

    def test_property_b_vacuous_at_small_n(self):
        # floor(sqrt(ln 20)) = 1: one-vertex subgraphs are 3-colorable
        assert int(math.floor(math.sqrt(math.log(20)))) == 1
        report = search_gadget(20, Fraction(2), 5, 200)
        assert report.property_b_holds and not report.property_b_sampled

    def test_property_a_recorded_honestly(self):
        report = search_gadget(30, Fraction(5, 2), 5, 300)
        expect_a = (Fraction(1001, 1000) * report.target_c > report.chi
                    and Fraction(30, report.alpha) > report.target_c)
        assert report.property_a_holds == expect_a

    def test_subgraph_colorability_exhaustive_branch(self, c5, grotzsch):
        from hallfrac.construct import small_subgraphs_three_colorable
        holds, sampled = small_subgraphs_three_colorable(c5, 1, k=4)
        assert holds and not sampled
        # the Grotzsch graph itself is not 3-colorable, and at k = n the
        # full vertex set is among the checked subsets
        holds, sampled = small_subgraphs_three_colorable(grotzsch, 1, k=11)
        assert not holds and not sampled

    def test_subgraph_colorability_sampled_branch(self, grotzsch):
        from hallfrac.construct import small_subgraphs_three_colorable
        holds, sampled = small_subgraphs_three_colorable(
            grotzsch, 1, k=11, enum_cap=0)
        assert sampled
        assert not holds  # 10^4 draws of sizes 4..11 hit a witness

    def test_deterministic(self):
        a = search_gadget(20, Fraction(2), 17, 100)
        b = search_gadget(20, Fraction(2), 17, 100)
        assert a == b


class TestMiniatures:
    def test_join_miniature_values(self, c5, c7):
        g = theorem_join_miniature([Cycle(5), Cycle(7)])
        assert g.same_adjacency(join(c5, c7))
        assert g.labels[0] == "0:0" and g.labels[5] == "1:0"

    def test_single_part(self, c5):
        g = theorem_join_miniature([Cycle(5)])
        assert g.same_adjacency(c5)

    def test_size_cap(self):
        with pytest.raises(SizeLimitError):
            theorem_join_miniature([Complete(40), Complete(40)])

    def test_recursive_miniature_lex_shape(self, c5):
        g = recursive_composition_miniature(2, Cycle(5), [Cycle(5)] * 5)
        assert g.same_adjacency(lex_product(c5, c5))
        assert not clique_at_least(g, 5)[0]

    def test_recursive_miniature_join_shape(self, c5, c7):
        g = recursive_composition_miniature(2, Complete(2), [Cycle(5), Cycle(7)])
        assert g.same_adjacency(join(c5, c7))

    def test_recursive_miniature_disjoint(self):
        g = recursive_composition_miniature(
            2, Base(empty_graph(2)), [Complete(3), Complete(3)])
        assert g.m == 6

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            recursive_composition_miniature(2, Cycle(3), [Cycle(5)] * 2)


class TestSizeRecurrence:
    def test_defining_inequality_and_maximality(self):
        for n in (100, 1000, 10 ** 6):
            res = recursive_composition_sizes(n, 2)
            m = res.m

            def lhs(mm):
                total = mm
                for i in range(2, mm + 1):
                    term = F(2, mm + 3 * i - 6, bit_budget=64)
                    if not isinstance(term, int):
                        return None  # beyond any desk n
                    total += term
                return total

            assert lhs(m) is not None and lhs(m) <= n
            above = lhs(m + 1)
            assert above is None or above > n
            assert sum(res.blocks) == n
            assert res.tower_exceeds_n

    def test_tiny_n(self):
        res = recursive_composition_sizes(2, 2)
        assert res.m == 1
        assert sum(res.blocks) == 2
        assert res.tower_exceeds_n  # F_2(3) = 16 > 2

    def test_blocks_structure(self):
        res = recursive_composition_sizes(10 ** 6, 2)
        assert res.blocks[0] == res.m
        for i in range(2, res.m):
            assert res.blocks[i - 1] == F(2, res.m + 3 * i - 6)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            recursive_composition_sizes(100, 1)
        with pytest.raises(ValueError):
            recursive_composition_sizes(1, 2)


class TestExpressionParser:
    def test_join_of_cycles(self):
        expr = parse_expression("join(cycle(5),cycle(7))")
        assert expr == Join((Cycle(5), Cycle(7)))

    def test_whitespace_insensitive(self):
        a = parse_expression(" join( cycle(5) , cycle(7) ) ")
        assert a == parse_expression("join(cycle(5),cycle(7))")

    def test_nested_mycielski(self, grotzsch):
        expr = parse_expression("mycielski(mycielski(complete(2)))")
        assert expr == Mycielski(Mycielski(Complete(2)))
        g = build(expr)
        assert g.n == grotzsch.n and g.m == grotzsch.m
        assert g.degree_sequence() == grotzsch.degree_sequence()

    def test_compose_arity_error(self):
        with pytest.raises(ExprSyntaxError, match="3 vertices"):
            parse_expression("compose(cycle(3); complete(1), complete(1))")

    def test_compose_valid(self, c5):
        expr = parse_expression(
            "compose(cycle(5); cycle(5),cycle(5),cycle(5),cycle(5),cycle(5))")
        assert isinstance(expr, Compose)
        assert build(expr).same_adjacency(lex_product(c5, c5))

    def test_random_expression(self):
        expr = parse_expression("random(20,1/4,seed=7)")
        assert expr == Random(20, Fraction(1, 4), 7)
        assert build(expr) == random_graph(20, Fraction(1, 4), 7)

    def test_trianglefree_expression(self):
        expr = parse_expression("trianglefree(30,2,seed=11,tries=1000)")
        assert build(expr) == sample_triangle_free(30, Fraction(2), 11, 1000).graph

    def test_lex_and_kneser(self):
        expr = parse_expression("lex(cycle(5),complete(2))")
        assert expr == Lex(Cycle(5), Complete(2))
        assert expr_size(expr) == 10
        assert expr_size(parse_expression("kneser(5,2)")) == 10
        assert build(parse_expression("kneser(5,2)")).m == 15

    def test_unknown_constructor_offset(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse_expression("join(cycle(5),wheel(7))")
        assert info.value.offset == 14

    def test_trailing_garbage(self):
        with pytest.raises(ExprSyntaxError, match="trailing"):
            parse_expression("cycle(5)x")

    def test_bad_probability(self):
        with pytest.raises(ExprSyntaxError, match="probability"):
            parse_expression("random(5,7/2,seed=1)")
