import random

import pytest

from conftest import field_capable
from cycloseq.cyclotomy import build_class_table, class_tables
from cycloseq.gf2ext import (FieldMismatchError, RootEvaluator, build_field,
                             count_pair_sum_values, eval_class_sum, eval_level_sum,
                             eval_poly, eval_window_sum, expected_pair_counts,
                             root_multiplicity_total, verify_decomposition,
                             verify_halfwindow_identities, verify_nonvanishing,
                             verify_simple_roots)
from cycloseq.gf2poly import Gf2Poly, linear_complexity_gcd
from cycloseq.ntheory import ParameterError, cached_ctx
from cycloseq.sequence import SequenceParams, generate


@pytest.fixture(scope="module")
def f3():
    return build_field(3, 1)


class TestBuildField:
    def test_gf4(self, f3):
        assert f3.degree == 2
        assert f3.modulus == 0b111
        # alpha has order 3 and satisfies 1 + a + a^2 = 0
        a = f3.alpha
        assert (a * a * a).value == 1
        assert (f3.one + a + a * a).value == 0

    def test_gf8_for_p7(self):
        field = build_field(7, 1)
        assert field.degree == 3
        a = field.alpha
        assert (a**7).value == 1 and (a**1).value != 1

    def test_degree20_for_p25(self):
        field = build_field(5, 2)
        assert field.degree == 20
        assert (field.alpha ** 25).value == 1
        assert (field.alpha ** 5).value != 1

    def test_guard_rejects_large_degree(self):
        with pytest.raises(ParameterError):
            build_field(11, 2)  # ord_121(2) = 110

    def test_alpha_levels(self):
        field = build_field(7, 2)
        a1 = field.alpha_level(1)
        assert (a1**7).value == 1 and a1.value != 1
        assert field.alpha_level(2).value == field.alpha.value

    def test_mismatched_contexts_rejected(self, f3):
        other = build_field(7, 1)
        with pytest.raises(FieldMismatchError):
            f3.alpha + other.alpha


class TestEvalPoly:
    def test_minimal_polynomial_of_alpha(self, f3):
        assert eval_poly(Gf2Poly(0b111), f3.alpha).value == 0

    def test_weight_parity_at_one(self, f3):
        rng = random.Random(5)
        for _ in range(20):
            v = rng.getrandbits(24)
            assert eval_poly(Gf2Poly(v), f3.one).value == v.bit_count() & 1

    def test_tilde_hand_value(self, f3):
        # 1 + x + x^4 at a root of order 3: x^4 folds to x
        assert eval_poly(Gf2Poly(0b10011), f3.alpha).value == 1

    def test_frobenius_consistency(self):
        field = build_field(5, 1)
        rng = random.Random(11)
        for _ in range(25):
            q = Gf2Poly(rng.getrandbits(16))
            pt = field.alpha ** rng.randrange(5)
            assert eval_poly(q, pt).square() == eval_poly(q, pt * pt)


class TestClassAndWindowSums:
    def test_class_sums_p3(self, f3):
        ctx = cached_ctx(3, 1, 2)
        table = build_class_table(ctx, 1)
        a = f3.alpha
        assert eval_class_sum(table, 0, a) == a
        assert eval_class_sum(table, 1, a) == a * a

    def test_parity_of_e_at_one(self):
        ctx = cached_ctx(7, 1, 2)  # e = 3
        field = build_field(7, 1)
        table = build_class_table(ctx, 1)
        assert eval_class_sum(table, 0, field.one).value == 1

    def test_window_sum_p3(self, f3):
        ctx = cached_ctx(3, 1, 2)
        table = build_class_table(ctx, 1)
        assert eval_window_sum(table, 0, f3.alpha) == f3.alpha

    def test_window_complement_sums_to_one(self):
        # H_k + H_{k+d/2} collapses to the full unit sum, which is 1 at a
        # nontrivial root of unity of prime order
        ctx = cached_ctx(5, 1, 4)
        field = build_field(5, 1)
        table = build_class_table(ctx, 1)
        for k in range(4):
            for i in range(1, 5):
                pt = field.alpha ** i
                total = eval_window_sum(table, k, pt) + eval_window_sum(table, k + 2, pt)
                assert total.value == 1

    def test_window_parity_at_one(self):
        ctx = cached_ctx(7, 1, 2)  # e*d/2 = 3
        field = build_field(7, 1)
        table = build_class_table(ctx, 1)
        assert eval_window_sum(table, 0, field.one).value == 1

    def test_level_sum_p3(self, f3):
        ctx = cached_ctx(3, 1, 2)
        tables = class_tables(ctx)
        assert eval_level_sum(f3, tables, 0, 1, f3.alpha) == f3.alpha

    def test_level_sum_pairing_p3(self, f3):
        ctx = cached_ctx(3, 1, 2)
        tables = class_tables(ctx)
        t0 = eval_level_sum(f3, tables, 0, 1, f3.alpha)
        t1 = eval_level_sum(f3, tables, 1, 1, f3.alpha)
        assert (t0 + t1).value == 1

    def test_level_sum_frobenius_shift(self):
        # squaring doubles the exponent, which shifts the window by u
        for (p, n, f) in [(3, 1, 2), (7, 1, 2), (5, 2, 2), (7, 2, 6)]:
            ctx = cached_ctx(p, n, f)
            field = build_field(p, n)
            tables = class_tables(ctx)
            for k in range(min(ctx.dn, 6)):
                squared = eval_level_sum(field, tables, k, ctx.n, field.alpha).square()
                at_alpha_sq = eval_level_sum(field, tables, k, ctx.n, field.alpha * field.alpha)
                shifted = eval_level_sum(field, tables, k + ctx.u, ctx.n, field.alpha)
                assert squared == at_alpha_sq == shifted

    def test_fast_evaluator_matches_generic(self):
        for (p, n, f) in [(3, 2, 2), (5, 1, 4), (7, 1, 6), (7, 2, 2)]:
            ctx = cached_ctx(p, n, f)
            field = build_field(p, n)
            tables = class_tables(ctx)
            ev = RootEvaluator(field, tables)
            rng = random.Random(p * 100 + n)
            for _ in range(30):
                m = rng.randint(1, n)
                k = rng.randrange(2 * ctx.dn)
                c = rng.randrange(p**m)
                generic = eval_level_sum(field, tables, k, m, field.alpha_level(m) ** c)
                assert ev.level_sum(k, m, c) == generic.value


class TestRootGeometry:
    def test_geometric_sums(self):
        for (p, n) in [(3, 1), (3, 2), (5, 1), (7, 2)]:
            field = build_field(p, n)
            pn = p**n
            tab = field.alpha_powers()
            for i in range(pn):
                total = 0
                for t in range(pn):
                    total ^= tab[i * t % pn]
                assert total == (1 if i % pn == 0 else 0), (p, n, i)

    def test_multiplicity_count_matches_gcd_complexity(self, small_grid_ctxs):
        for ctx in small_grid_ctxs:
            if not field_capable(ctx.p, ctx.n):
                continue
            field = build_field(ctx.p, ctx.n)
            for b in sorted({0, 1, ctx.dn // 2}):
                for variant in ("s", "stilde"):
                    seq = generate(SequenceParams(ctx, b, variant))
                    got = root_multiplicity_total(field, seq)
                    assert got == ctx.period - linear_complexity_gcd(seq)


class TestVerifiers:
    def test_halfwindow_suite_small(self):
        for (p, n, f) in [(3, 1, 2), (3, 2, 2), (5, 2, 2), (5, 2, 4), (7, 2, 2), (7, 2, 6)]:
            ctx = cached_ctx(p, n, f)
            rep = verify_halfwindow_identities(build_field(p, n), ctx)
            assert rep.ok, "\n".join(rep.lines())

    def test_decomposition_suite(self):
        for (p, n, f) in [(3, 1, 2), (5, 1, 2), (5, 1, 4), (7, 1, 2), (7, 1, 6)]:
            ctx = cached_ctx(p, n, f)
            field = build_field(p, n)
            for b in sorted({0, 1, ctx.dn // 2}):
                rep = verify_decomposition(field, ctx, b)
                assert rep.ok, "\n".join(rep.lines())

    def test_nonvanishing_exhaustive_n2(self):
        for (p, f) in [(5, 2), (5, 4), (7, 2), (7, 6)]:
            ctx = cached_ctx(p, 2, f)
            rep = verify_nonvanishing(build_field(p, 2), ctx, 0)
            assert rep.ok
            assert all(item.checked == p * p - p for item in rep.items)

    def test_nonvanishing_vacuous_at_n1(self):
        ctx = cached_ctx(5, 1, 2)
        rep = verify_nonvanishing(build_field(5, 1), ctx, 0)
        assert rep.ok
        assert all(item.checked == 0 for item in rep.items)
        assert "vacuous" in rep.items[0].note

    def test_simple_roots_p3(self, f3):
        ctx = cached_ctx(3, 1, 2)
        rep = verify_simple_roots(f3, SequenceParams(ctx, 0, "s"))
        assert rep.ok

    def test_simple_roots_p17_count(self):
        # v = f/2: sixteen simple zeros, complexity 34 - 16 = 18
        ctx = cached_ctx(17, 1, 4)
        field = build_field(17, 1)
        seq = generate(SequenceParams(ctx, 0, "s"))
        assert root_multiplicity_total(field, seq) == 16
        assert linear_complexity_gcd(seq) == 18
        assert verify_simple_roots(field, SequenceParams(ctx, 0, "s")).ok

    def test_tilde_zero_count_p7(self):
        ctx = cached_ctx(7, 1, 2)
        rep = verify_simple_roots(build_field(7, 1), SequenceParams(ctx, 0, "stilde"))
        assert rep.ok
        assert any("found 3" in item.note for item in rep.items)


class TestPairCounts:
    def test_case_table_examples(self):
        assert expected_pair_counts(2, 2) == (2, 0)    # v = f
        assert expected_pair_counts(1, 2) == (0, 2)    # v = 1 = f/2
        assert expected_pair_counts(2, 4) == (0, 4)    # v = f/2
        assert expected_pair_counts(4, 4) == (4, 0)    # v = f
        assert expected_pair_counts(3, 6) == (0, 6)    # v = f/2 and v | f/2
        assert expected_pair_counts(4, 12) == (None, None)  # no clause fires

    def test_counts_match_measurements(self):
        for (p, f) in [(3, 2), (7, 2), (17, 4), (73, 4)]:
            ctx = cached_ctx(p, 1, f)
            field = build_field(p, 1)
            table = build_class_table(ctx, 1)
            c0, c1 = count_pair_sum_values(field, table, ctx.u)
            e0, e1 = expected_pair_counts(ctx.v, ctx.f)
            if e0 is not None:
                assert c0 == e0, (p, f)
            if e1 is not None:
                assert c1 == e1, (p, f)

    def test_level_requirement(self):
        ctx = cached_ctx(5, 2, 2)
        field = build_field(5, 2)
        with pytest.raises(ParameterError):
            count_pair_sum_values(field, build_class_table(ctx, 2), ctx.u)
