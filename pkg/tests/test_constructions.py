from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_rank
from lisfmat.constructions import (
    EXAMPLE2_DISKS,
    DirectSumDecomposition,
    Reason,
    dim_lower_bound,
    direction_matrix,
    example2_disk_checks,
    example2_family,
    example3_family,
    example3_region_checks,
    lisf_matroid,
    random_mixed_family,
    random_theorem3_instance,
    random_theorem4_instance,
    theorem3_hypotheses,
    theorem4_hypotheses,
)
from lisfmat.errors import BudgetExceeded, GroundTooLarge, HypothesesNotMet, ParamError
from lisfmat.exactalg import GF, Q, Vector, span
from lisfmat.instance import dumps
from lisfmat.matroid import MAX_GROUND, check_axioms, vector_matroid
from lisfmat.setfamily import SetFamily, finite, is_lisf, punctured

NON_MATROID = [(), (1,), (2,), (3,), (1, 3)]


def e(i, l):
    return tuple(int(j == i) for j in range(l))


def decomposition(field=Q):
    w1 = span([Vector(field, e(0, 4)), Vector(field, e(1, 4))])
    w2 = span([Vector(field, e(2, 4)), Vector(field, e(3, 4))])
    return DirectSumDecomposition(field, 4, (w1, w2), 2)


class TestLisfMatroid:
    def test_single_set(self):
        assert lisf_matroid(SetFamily(Q, 2, (finite(Q, (1, 0)),))).sets() == [(), (1,)]

    def test_three_lines_in_plane(self):
        f = SetFamily(Q, 2, (finite(Q, (1, 0), (2, 0)), finite(Q, (0, 1)), finite(Q, (1, 1), (-1, -1))))
        assert lisf_matroid(f).sets() == [(), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3)]

    def test_budget_names_subset(self):
        big = finite(Q, *[(1, k, k * k, k**3) for k in range(1, 6)])
        f = SetFamily(Q, 4, (big, big, big))
        with pytest.raises(BudgetExceeded) as exc:
            lisf_matroid(f, budget=20)
        assert exc.value.labels

    def test_ground_cap(self):
        f = SetFamily(Q, 1, tuple(finite(Q, (1,)) for _ in range(MAX_GROUND + 1)))
        with pytest.raises(GroundTooLarge):
            lisf_matroid(f)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32), st.sampled_from([Q, GF(2), GF(3)]))
    def test_members_match_definition(self, seed, field):
        f = random_mixed_family(seed, 4, 3, field, 3, punctured_probability=0)
        ind = lisf_matroid(f)
        p = field.characteristic
        for r in range(len(f.sets) + 1):
            for sub in combinations(range(len(f.sets)), r):
                sets = [f.sets[i] for i in sub]
                brute = all(
                    naive_rank([v.coords for v in sel], p) == len(sel)
                    for sel in product(*(s.vectors for s in sets))
                )
                assert (tuple(i + 1 for i in sub) in ind) == brute

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32))
    def test_always_downward_closed(self, seed):
        rep = check_axioms(lisf_matroid(random_mixed_family(seed, 5, 3)))
        assert rep.i1_holds and rep.i2_holds


class TestLineFamilies:
    def test_hypothesis_examples(self):
        ok = SetFamily(Q, 2, (finite(Q, (1, 0), (2, 0), (0, 0)),))
        assert theorem3_hypotheses(ok).satisfied
        bad = SetFamily(Q, 2, (finite(Q, (1, 0), (0, 1)),))
        assert theorem3_hypotheses(bad).reasons() == [(1, "NotInOneDimSubspace")]
        line = SetFamily(Q, 3, (punctured(Q, (1, 1, 0)),))
        assert theorem3_hypotheses(line).satisfied
        plane = SetFamily(Q, 3, (punctured(Q, (1, 0, 0), (0, 1, 0)),))
        assert not theorem3_hypotheses(plane).satisfied

    def test_direction_matrix_examples(self):
        f = SetFamily(Q, 2, (finite(Q, (2, 0)), finite(Q, (0, 3), (0, -3))))
        assert [c.coords for c in direction_matrix(f).columns()] == [(1, 0), (0, 1)]
        loop = SetFamily(Q, 2, (finite(Q, (0, 0)),))
        assert direction_matrix(loop).column(0).is_zero()
        assert lisf_matroid(loop).sets() == [()]
        with_zero = SetFamily(Q, 2, (finite(Q, (1, 0), (2, 0), (0, 0)),))
        assert direction_matrix(with_zero).column(0).is_zero()
        assert lisf_matroid(with_zero) == vector_matroid(direction_matrix(with_zero))

    def test_direction_matrix_rejects(self):
        with pytest.raises(HypothesesNotMet):
            direction_matrix(SetFamily(Q, 2, (finite(Q, (1, 0), (0, 1)),)))

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 6), st.integers(1, 4), st.sampled_from([Q, GF(2), GF(5)]))
    def test_generator_and_oracle(self, seed, n, l, field):
        f = random_theorem3_instance(seed, n, l, field)
        assert theorem3_hypotheses(f).satisfied
        ind = lisf_matroid(f)
        assert check_axioms(ind).is_matroid
        assert ind == vector_matroid(direction_matrix(f))

    def test_no_loops_when_disabled(self):
        for seed in range(30):
            f = random_theorem3_instance(seed, 5, 3, Q, 3, loop_probability=0)
            assert all(not v.is_zero() for s in f.sets for v in s.vectors)

    def test_deterministic(self):
        assert dumps(random_theorem3_instance(11, 4, 3)) == dumps(random_theorem3_instance(11, 4, 3))
        assert dumps(random_theorem3_instance(11, 4, 3)) != dumps(random_theorem3_instance(12, 4, 3))

    def test_bad_params(self):
        with pytest.raises(ParamError):
            random_theorem3_instance(0, 0, 2)


class TestDirectSumFamilies:
    def test_bound(self):
        assert [dim_lower_bound(n) for n in (2, 3, 4, 5)] == [2, 3, 3, 4]

    def test_hypothesis_examples(self):
        d = decomposition()
        f = SetFamily(Q, 4, (punctured(Q, e(0, 4), e(1, 4)), punctured(Q, e(2, 4), e(3, 4))))
        assert theorem4_hypotheses(f, d).satisfied
        small = SetFamily(Q, 4, (punctured(Q, e(0, 4)),))
        assert theorem4_hypotheses(small, d).reasons() == [(1, "DimBoundViolated")]

    def test_positive_characteristic(self):
        f5 = GF(5)
        d = decomposition(f5)
        f = SetFamily(f5, 4, (punctured(f5, e(0, 4), e(1, 4)),))
        assert (None, Reason.CHARACTERISTIC_NOT_ZERO.value) in theorem4_hypotheses(f, d).reasons()

    def test_other_failures(self):
        d = decomposition()
        straddle = SetFamily(Q, 4, (punctured(Q, e(0, 4), e(2, 4)),))
        assert theorem4_hypotheses(straddle, d).reasons() == [(1, "NotInsideSummand")]
        fin = SetFamily(Q, 4, (finite(Q, e(0, 4)),))
        assert theorem4_hypotheses(fin, d).reasons() == [(1, "NotPuncturedSubspace")]
        w = span([Vector(Q, e(0, 4)), Vector(Q, e(1, 4))])
        overlap = DirectSumDecomposition(Q, 4, (w, w), 2)
        ok = SetFamily(Q, 4, (punctured(Q, e(0, 4), e(1, 4)),))
        assert (None, "DecompositionNotDirect") in theorem4_hypotheses(ok, overlap).reasons()

    def test_n_one_rejected(self):
        with pytest.raises(ParamError):
            random_theorem4_instance(0, 2, 1, 2, 4)
        with pytest.raises(ParamError):
            random_theorem4_instance(0, 3, 2, 2, 5)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32))
    def test_generator(self, seed):
        f, d = random_theorem4_instance(seed, 2, 2, 3, 4)
        assert theorem4_hypotheses(f, d).satisfied
        assert check_axioms(lisf_matroid(f)).is_matroid

    def test_same_summand_pair_not_lisf(self):
        found = 0
        for seed in range(40):
            f, d = random_theorem4_instance(seed, 2, 3, 4, 7)
            home = [
                next(j for j, w in enumerate(d.summands) if all(v in w for v in s.space.basis_vectors()))
                for s in f.sets
            ]
            for a, b in combinations(range(len(f.sets)), 2):
                if home[a] == home[b]:
                    found += 1
                    assert not is_lisf([f.sets[a], f.sets[b]])
                else:
                    assert is_lisf([f.sets[a], f.sets[b]])
        assert found


class TestExamples:
    def test_example2(self):
        ind = lisf_matroid(example2_family())
        assert ind.sets() == NON_MATROID
        assert check_axioms(ind).i3_witness == ((2,), (1, 3))

    def test_example2_disks(self):
        checks = example2_disk_checks()
        assert len(checks) == sum(len(s) for s in example2_family().sets)
        assert all(c.holds for c in checks)
        half = next(c for c in checks if c.label == 2 and c.point == Vector(Q, (Fraction(1, 2), Fraction(1, 2))))
        assert "1/2 <= 1" in half.description

    def test_disk_check_catches_outsider(self):
        f = SetFamily(Q, 2, (finite(Q, (3, 3)), finite(Q, (0, 0)), finite(Q, (1, -1))))
        holds = [c.holds for c in example2_disk_checks(f)]
        assert holds == [False, False, True]
        assert len(EXAMPLE2_DISKS) == 3

    def test_example3(self):
        f = example3_family()
        ind = lisf_matroid(f)
        assert ind.sets() == NON_MATROID
        assert check_axioms(ind).i3_witness == ((2,), (1, 3))
        assert all(c.holds for c in example3_region_checks(f))
        assert all(v[0] != 0 for v in f.sets[0].vectors)
        assert all(v[2] != 0 for v in f.sets[2].vectors)

    def test_example3_outer_pair(self):
        f = example3_family()
        outer = [f.sets[0], f.sets[2]]
        assert is_lisf(outer)
        assert all(naive_rank([a.coords, b.coords]) == 2 for a in outer[0].vectors for b in outer[1].vectors)
