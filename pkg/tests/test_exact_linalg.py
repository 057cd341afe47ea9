"""Tests for Smith normal form, lattices and lattice cohomology."""

from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from galpairs import exact_linalg as el


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _det(minor)
    return total


class TestSmithNormalForm:
    def test_determinantal_divisor_oracle(self):
        # invariant factors of [[2,4],[6,8]] from gcds of minors: d1 = 2,
        # d1*d2 = |det| = 8, so the diagonal is (2, 4)
        u, d, v = el.smith_normal_form([[2, 4], [6, 8]])
        assert el.diagonal_of(d) == [2, 4]

    def test_transform_is_exact(self):
        m = [[2, 4], [6, 8]]
        u, d, v = el.smith_normal_form(m)
        assert _matmul(_matmul(u, m), v) == d
        assert abs(_det(u)) == 1
        assert abs(_det(v)) == 1

    def test_zero_and_rectangular(self):
        u, d, v = el.smith_normal_form([[0, 0, 0], [0, 0, 0]])
        assert el.diagonal_of(d) == [0, 0]
        u, d, v = el.smith_normal_form([[1, 2, 3]])
        assert el.diagonal_of(d) == [1]

    def test_deterministic(self):
        m = [[12, 8, 3], [-4, 7, 9], [0, 5, -11]]
        assert el.smith_normal_form(m) == el.smith_normal_form(m)

    @settings(max_examples=80, derandomize=True, deadline=None)
    @given(
        st.lists(
            st.lists(st.integers(-20, 20), min_size=1, max_size=5),
            min_size=1,
            max_size=5,
        ).filter(lambda rows: len({len(r) for r in rows}) == 1)
    )
    def test_round_trip_property(self, rows):
        u, d, v = el.smith_normal_form(rows)
        assert _matmul(_matmul(u, rows), v) == d
        assert abs(_det(u)) == 1
        assert abs(_det(v)) == 1
        diag = el.diagonal_of(d)
        assert all(x >= 0 for x in diag)
        for a, b in zip(diag, diag[1:]):
            if a != 0:
                assert b % a == 0
            else:
                assert b == 0
        # off-diagonal entries vanish
        for i, row in enumerate(d):
            for j, x in enumerate(row):
                if i != j:
                    assert x == 0


class TestFiniteAbelianGroup:
    def test_rejects_non_chain(self):
        with pytest.raises(ValueError):
            el.FiniteAbelianGroup((4, 6))
        with pytest.raises(ValueError):
            el.FiniteAbelianGroup((1, 2))

    def test_normalization(self):
        g = el.from_elementary_divisors([6, 4])
        assert g.invariant_factors == (2, 12)
        assert g.order == 24

    def test_direct_sum(self):
        a = el.FiniteAbelianGroup((2,))
        b = el.FiniteAbelianGroup((2, 4))
        assert a.direct_sum(b).invariant_factors == (2, 2, 4)


class TestQuotientGroup:
    def test_index_two(self):
        sup = el.IntLattice.standard(2)
        sub = el.IntLattice(2, ((2, 0), (0, 1)))
        assert el.quotient_group(sup, sub).invariant_factors == (2,)

    def test_trivial_quotient(self):
        sup = el.IntLattice.standard(2)
        assert el.quotient_group(sup, sup).is_trivial

    def test_infinite_index_rejected(self):
        sup = el.IntLattice.standard(2)
        sub = el.IntLattice(2, ((1, 0),))
        with pytest.raises(ValueError):
            el.quotient_group(sup, sub)

    def test_not_a_sublattice_rejected(self):
        sup = el.IntLattice(2, ((2, 0), (0, 2)))
        sub = el.IntLattice(2, ((1, 0), (0, 1)))
        with pytest.raises(ValueError):
            el.quotient_group(sup, sub)


def cyclic_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def klein_table():
    return [[i ^ j for j in range(4)] for i in range(4)]


def symmetric3_table():
    perms = sorted(permutations(range(3)), key=lambda p: (p != tuple(range(3)), p))
    index = {p: i for i, p in enumerate(perms)}
    return [
        [index[tuple(p[q[k]] for k in range(3))] for q in perms]
        for p in perms
    ]


ALL_SMALL_GROUPS = [
    ("C1", cyclic_table(1)),
    ("C2", cyclic_table(2)),
    ("C3", cyclic_table(3)),
    ("C4", cyclic_table(4)),
    ("C5", cyclic_table(5)),
    ("C6", cyclic_table(6)),
    ("V4", klein_table()),
    ("S3", symmetric3_table()),
]


class TestTateCohomology:
    def test_norm_one_torus(self):
        assert el.tate_h_minus1(el.norm_one_torus(1)).invariant_factors == (2,)

    def test_norm_one_products(self):
        for k in range(1, 7):
            g = el.tate_h_minus1(el.norm_one_torus(k))
            assert g.invariant_factors == (2,) * k

    def test_split_torus_trivial(self):
        for r in range(0, 4):
            assert el.tate_h_minus1(el.split_torus(r, group_order=2)).is_trivial

    @pytest.mark.parametrize("name,table", ALL_SMALL_GROUPS)
    def test_regular_representation_vanishes(self, name, table):
        # induced modules have trivial cohomology, for every group of order <= 6
        assert el.tate_h_minus1(el.regular_representation(table)).is_trivial

    @pytest.mark.parametrize("name,table", ALL_SMALL_GROUPS[1:4])
    def test_additivity_over_direct_sums(self, name, table):
        reg = el.regular_representation(table)
        split = el.split_torus(2, group_order=len(table))
        combined = el.direct_sum_action(reg, split)
        assert el.tate_h_minus1(combined).is_trivial

    def test_additivity_with_norm_one(self):
        t = el.norm_one_torus(2)
        s = el.split_torus(1, group_order=2)
        combined = el.direct_sum_action(t, s)
        expect = el.tate_h_minus1(t).direct_sum(el.tate_h_minus1(s))
        assert el.tate_h_minus1(combined) == expect
        assert el.tate_h_minus1(combined).invariant_factors == (2, 2)

    def test_action_validation(self):
        ident = ((1, 0), (0, 1))
        flip = ((0, 1), (1, 0))
        with pytest.raises(ValueError):
            # missing identity
            el.LatticeWithAction(el.IntLattice.standard(2), (flip,))
        with pytest.raises(ValueError):
            # not closed: order-4 rotation without its powers
            rot = ((0, -1), (1, 0))
            el.LatticeWithAction(el.IntLattice.standard(2), (ident, rot))

    def test_fixture_round_trip(self):
        data = {
            "ambient_rank": 1,
            "actions": [[[1]], [[-1]]],
            "label": "norm-one",
        }
        x = el.lattice_with_action_from_dict(data)
        assert el.tate_h_minus1(x).invariant_factors == (2,)


class TestTorusH1:
    def test_alias_agrees(self):
        x = el.norm_one_torus(3)
        assert el.torus_h1(x) == el.tate_h_minus1(x)
