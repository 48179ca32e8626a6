import random

import pytest

from biimplicit.complexes import (
    ComplexSummary,
    InvalidBidegreeError,
    complex_summary,
    in_good_region,
    koszul_slice,
    region,
    suggested_nu,
    syzygy_basis,
    z_dim,
)
from biimplicit.linalg import QMatrix, coeff_vector, graded_basis, multiplication_matrix
from biimplicit.parser import parse_poly
from biimplicit.poly import Bidegree, BigradedPoly, Parametrization

from conftest import random_parametrization


class TestKoszulSlice:
    def test_first_differential_shape(self, golden_F):
        sl = koszul_slice(golden_F, 1, (5, 5))
        assert (sl.matrix.rows, sl.matrix.cols) == (36, 48)
        assert [I for I, _ in sl.col_blocks] == [(1,), (2,), (3,), (4,)]
        assert [J for J, _ in sl.row_blocks] == [()]

    def test_second_differential_shape(self, golden_F):
        # column components of bidegree (3,2) live in module degree (3,2)+2*(2,3)
        sl = koszul_slice(golden_F, 2, Bidegree(3, 2) + 2 * Bidegree(2, 3))
        assert (sl.matrix.rows, sl.matrix.cols) == (4 * 36, 6 * 12)

    def test_block_signs(self, segre_F):
        # block J=(1,) of column block I=(1,2) must be -mult(f2); J=(2,) is +mult(f1)
        sl = koszul_slice(segre_F, 2, (2, 2))
        col_deg = Bidegree(0, 0)
        m1 = multiplication_matrix(segre_F.polys[0], col_deg)
        m2 = multiplication_matrix(segre_F.polys[1], col_deg)
        rdim = sl.row_blocks[0][1].dim
        cdim = sl.col_blocks[0][1].dim
        # column block (1,2) is the first one; row blocks are (1,),(2,),(3,),(4,)
        assert [I for I, _ in sl.col_blocks][0] == (1, 2)
        block_J1 = [row[0:cdim] for row in sl.matrix.data[0:rdim]]
        block_J2 = [row[0:cdim] for row in sl.matrix.data[rdim : 2 * rdim]]
        assert block_J1 == [[-x for x in row] for row in m2.data]
        assert block_J2 == m1.data

    def test_composition_is_zero(self, golden_F):
        rng = random.Random(17)
        for _ in range(20):
            p = rng.choice([2, 3, 4])
            mu = Bidegree(rng.randint(0, 9), rng.randint(0, 12))
            outer = koszul_slice(golden_F, p - 1, mu)
            inner = koszul_slice(golden_F, p, mu)
            assert outer.matrix.matmul(inner.matrix).is_zero()

    def test_bad_index(self, segre_F):
        with pytest.raises(ValueError):
            koszul_slice(segre_F, 5, (1, 1))


class TestZDim:
    def test_golden_dimensions(self, golden_F):
        assert z_dim(golden_F, 1, (3, 2)) == 12
        assert z_dim(golden_F, 2, (3, 2)) == 0
        assert z_dim(golden_F, 3, (3, 2)) == 0

    def test_index_range(self, segre_F):
        with pytest.raises(ValueError):
            z_dim(segre_F, 4, (1, 1))


class TestSyzygyBasis:
    def test_golden_count_and_identity(self, golden_F):
        basis = syzygy_basis(golden_F, (3, 2))
        assert len(basis) == 12
        for a1, a2, a3, a4 in basis.columns:
            total = sum(
                (a * f for a, f in zip((a1, a2, a3, a4), golden_F.polys)),
                BigradedPoly.zero(),
            )
            assert total.is_zero()
            for a in (a1, a2, a3, a4):
                assert a.is_zero() or a.bidegree() == Bidegree(3, 2)

    def test_golden_alternative_degree(self, golden_F):
        basis = syzygy_basis(golden_F, (1, 5))
        assert len(basis) == 12
        for column in basis.columns:
            total = sum(
                (a * f for a, f in zip(column, golden_F.polys)),
                BigradedPoly.zero(),
            )
            assert total.is_zero()

    def test_random_syzygies_vanish(self):
        rng = random.Random(23)
        for _ in range(30):
            deg = Bidegree(rng.randint(1, 2), rng.randint(1, 2))
            F = random_parametrization(rng, deg)
            nu = Bidegree(rng.randint(0, 2), rng.randint(0, 2))
            for column in syzygy_basis(F, nu).columns:
                total = sum(
                    (a * f for a, f in zip(column, F.polys)),
                    BigradedPoly.zero(),
                )
                assert total.is_zero()

    def test_duplicate_polynomial_trivial_syzygy(self):
        # with f1 == f2 the column (f, -f, 0, 0) is a degree-e syzygy and must
        # lie in the span of the computed basis
        f = parse_poly("s*t+s*v")
        g = parse_poly("u*t")
        h = parse_poly("u*v+s*t")
        F = Parametrization.from_polys([f, f, g, h])
        nu = Bidegree(1, 1)
        basis = syzygy_basis(F, nu)
        target = (f, -f, BigradedPoly.zero(), BigradedPoly.zero())
        gb = graded_basis(nu)
        rows = [
            [c for a in column for c in coeff_vector(a, gb)]
            for column in basis.columns
        ]
        from biimplicit.linalg import exact_rank

        base_rank = exact_rank(QMatrix.from_rows(rows))
        rows.append([c for a in target for c in coeff_vector(a, gb)])
        assert exact_rank(QMatrix.from_rows(rows)) == base_rank

    def test_determinism(self, golden_F):
        first = syzygy_basis(golden_F, (3, 2))
        second = syzygy_basis(golden_F, (3, 2))
        assert first == second


def brute_force_in_good_region(e: Bidegree, nu: Bidegree) -> bool:
    """Independent oracle: unions of shifted quadrants for the torsion
    supports, shifted by e and 2e, complemented."""
    x, y = nu.d1, nu.d2
    in_h2_shifted = (x <= e.d1 - 2 and y >= e.d2) or (x >= e.d1 and y <= e.d2 - 2)
    in_h3_shifted = x <= 2 * e.d1 - 2 and y <= 2 * e.d2 - 2
    return not (in_h2_shifted or in_h3_shifted)


class TestRegion:
    def test_golden_corners(self):
        spec = region((2, 3))
        assert set(c.as_pair() for c in spec.corners) == {(3, 2), (1, 5)}

    def test_unit_corners(self):
        spec = region((1, 1))
        assert set(c.as_pair() for c in spec.corners) == {(1, 0), (0, 1)}

    def test_invalid(self):
        with pytest.raises(InvalidBidegreeError):
            region((0, 3))

    def test_membership_examples(self):
        assert not in_good_region((2, 3), (2, 1))
        assert in_good_region((2, 3), (3, 2))
        assert in_good_region((2, 3), (1, 5))
        assert not in_good_region((2, 3), (0, 0))

    def test_brute_force_agreement(self):
        for e1 in (1, 2, 3):
            for e2 in (1, 2, 3):
                e = Bidegree(e1, e2)
                for x in range(-5, 16):
                    for y in range(-5, 16):
                        nu = Bidegree(x, y)
                        assert in_good_region(e, nu) == brute_force_in_good_region(
                            e, nu
                        ), (e, nu)

    def test_suggested_nu(self):
        assert suggested_nu((2, 3)) == Bidegree(3, 2)
        assert in_good_region((2, 3), suggested_nu((2, 3)))


class TestComplexSummary:
    def test_golden(self, golden_F):
        summary = complex_summary(golden_F, (3, 2))
        assert summary.dims == (12, 12, 0, 0)
        assert summary.euler == 0
        assert summary.macrae_degree == 12

    def test_golden_alternative(self, golden_F):
        summary = complex_summary(golden_F, (1, 5))
        assert summary.dims == (12, 12, 0, 0)
        assert summary.euler == 0
        assert summary.macrae_degree == 12

    def test_formula_specialization(self):
        summary = ComplexSummary(
            nu=Bidegree(1, 0), dims=(2, 2, 0, 0), euler=0, macrae_degree=2
        )
        h0, h1, h2, h3 = summary.dims
        assert summary.euler == h0 - h1 + h2 - h3
        assert summary.macrae_degree == h1 - 2 * h2 + 3 * h3

    def test_segre(self, segre_F):
        summary = complex_summary(segre_F, suggested_nu((1, 1)))
        assert summary.dims == (2, 2, 0, 0)
        assert summary.euler == 0
        assert summary.macrae_degree == 2
