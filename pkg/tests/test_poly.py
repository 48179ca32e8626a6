import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biimplicit.parser import parse_poly, parse_tpoly
from biimplicit.poly import (
    Bidegree,
    BigradedPoly,
    NotBihomogeneousError,
    Parametrization,
    TPoly,
    ZeroPolynomialError,
    substitute_T,
)

from conftest import golden_polys


def bp(text):
    return parse_poly(text)


coeffs = st.integers(min_value=-20, max_value=20) | st.fractions(
    min_value=-10, max_value=10, max_denominator=12
)
monos = st.tuples(*([st.integers(min_value=0, max_value=3)] * 4))
bipolys = st.dictionaries(monos, coeffs, max_size=6).map(BigradedPoly)


class TestBidegree:
    def test_arithmetic(self):
        assert Bidegree(1, 2) + Bidegree(3, 4) == Bidegree(4, 6)
        assert Bidegree(3, 4) - Bidegree(1, 2) == Bidegree(2, 2)
        assert 2 * Bidegree(2, 3) == Bidegree(4, 6)
        assert tuple(Bidegree(3, 2)) == (3, 2)

    def test_partial_order(self):
        assert Bidegree(3, 2).dominates(Bidegree(1, 2))
        assert not Bidegree(3, 2).dominates(Bidegree(1, 3))
        assert not Bidegree(1, 3).dominates(Bidegree(3, 2))


class TestAdd:
    def test_cancellation(self):
        p = bp("s^2*t^3")
        q = bp("-s^2*t^3")
        assert (p + q).is_zero()

    def test_golden_sum_coefficient(self):
        f = golden_polys()
        total = f[1] + f[2]
        assert total.coefficient((2, 0, 3, 0)) == 4

    def test_zero_identity(self):
        rng = random.Random(1)
        for _ in range(20):
            terms = {
                tuple(rng.randint(0, 3) for _ in range(4)): rng.randint(-9, 9)
                for _ in range(5)
            }
            p = BigradedPoly(terms)
            assert p + BigradedPoly.zero() == p


class TestMul:
    def test_variables(self):
        st_poly = bp("s*t")
        assert st_poly.bidegree() == Bidegree(1, 1)
        assert st_poly.terms == {(1, 0, 1, 0): 1}

    def test_difference_of_squares(self):
        assert bp("(s+u)*(s-u)") == bp("s^2-u^2")

    def test_bidegree_additivity_golden(self):
        f = golden_polys()
        assert (f[0] * f[1]).bidegree() == Bidegree(4, 6)


class TestBidegreeOf:
    def test_golden(self):
        assert golden_polys()[0].bidegree() == Bidegree(2, 3)

    def test_mixed(self):
        with pytest.raises(NotBihomogeneousError):
            bp("s*t+u").bidegree()

    def test_zero(self):
        with pytest.raises(ZeroPolynomialError):
            BigradedPoly.zero().bidegree()


class TestEvaluate:
    def test_monomial(self):
        assert bp("s^2*t^3").evaluate((1, 0, 1, 0)) == 1

    def test_golden_corner_points(self):
        f1 = golden_polys()[0]
        assert f1.evaluate((1, 0, 1, 0)) == 1
        assert f1.evaluate((0, 1, 0, 1)) == 2

    def test_fraction_point(self):
        p = bp("s*t+u*v")
        assert p.evaluate((Fraction(1, 2), 1, Fraction(1, 3), 1)) == Fraction(7, 6)


class TestSubstituteT:
    def test_projection(self):
        f = golden_polys()
        assert substitute_T(parse_tpoly("T1"), f) == f[0]

    def test_two_by_two(self):
        f = golden_polys()
        expected = f[0] * f[3] - f[1] * f[2]
        assert substitute_T(parse_tpoly("T1*T4-T2*T3"), f) == expected
        assert not expected.is_zero()

    def test_zero_input(self):
        f = golden_polys()
        assert substitute_T(TPoly.zero(), f).is_zero()


class TestRingAxioms:
    @settings(max_examples=100, deadline=None)
    @given(bipolys, bipolys, bipolys)
    def test_mul_associative_and_distributive(self, p, q, r):
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r

    @settings(max_examples=100, deadline=None)
    @given(bipolys, bipolys)
    def test_commutative(self, p, q):
        assert p * q == q * p
        assert p + q == q + p

    @settings(max_examples=100, deadline=None)
    @given(bipolys, bipolys)
    def test_evaluate_is_morphism(self, p, q):
        point = (2, -1, Fraction(1, 2), 3)
        assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
        assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)

    def test_bidegree_additive_on_products(self):
        rng = random.Random(7)
        from conftest import random_bipoly

        for _ in range(50):
            a = Bidegree(rng.randint(0, 3), rng.randint(0, 3))
            b = Bidegree(rng.randint(0, 3), rng.randint(0, 3))
            p = random_bipoly(rng, a)
            q = random_bipoly(rng, b)
            assert (p * q).bidegree() == a + b


def test_fraction_chains_stay_reduced():
    rng = random.Random(11)
    values = [Fraction(rng.randint(-30, 30), rng.randint(1, 30)) for _ in range(6)]
    for _ in range(300):
        a, b = rng.choice(values), rng.choice(values)
        op = rng.randrange(4)
        if op == 0:
            c = a + b
        elif op == 1:
            c = a - b
        elif op == 2:
            c = a * b
        else:
            c = a / b if b else a
        assert c.denominator > 0
        assert math.gcd(abs(c.numerator), c.denominator) == 1
        if c.numerator == 0:
            assert c.denominator == 1
        values.append(c)


class TestTPoly:
    def test_total_degree(self):
        assert parse_tpoly("3*T1^2*T2-T3^3").total_degree() == 3
        assert TPoly.zero().total_degree() == -1

    def test_primitive(self):
        q = parse_tpoly("2*T1*T4-2*T2*T3")
        assert q.primitive() == parse_tpoly("T1*T4-T2*T3")
        neg = parse_tpoly("-3*T1*T4+3*T2*T3")
        assert neg.primitive() == parse_tpoly("T1*T4-T2*T3")

    def test_primitive_fractions(self):
        q = TPoly({(1, 0, 0, 0): Fraction(1, 2), (0, 1, 0, 0): Fraction(3, 4)})
        assert q.primitive() == TPoly({(1, 0, 0, 0): 2, (0, 1, 0, 0): 3})


class TestParametrization:
    def test_golden(self, golden_F):
        assert golden_F.bidegree == Bidegree(2, 3)

    def test_rejects_mixed_degrees(self):
        with pytest.raises(NotBihomogeneousError):
            Parametrization.from_polys(
                [bp("s*t"), bp("s*v"), bp("u*t"), bp("u^2*v")]
            )

    def test_rejects_zero(self):
        with pytest.raises(ZeroPolynomialError):
            Parametrization.from_polys(
                [bp("s*t"), BigradedPoly.zero(), bp("u*t"), bp("u*v")]
            )
