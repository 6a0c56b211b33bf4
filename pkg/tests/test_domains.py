"""Coefficient domains: quadratic orders, norms, divisors, subrings."""

import random
from fractions import Fraction

import pytest

from polydecomp import (CapabilityError, Polynomial, QuadraticField,
                        QuadraticIntRing, QuadraticRat, Tier,
                        QQ, QT, ZT, ZZ, Z_IN_Q, ZT23_IN_ZT, QZT23_IN_QT,
                        descend_element, descend_poly, embed_element,
                        embed_poly, hull_of, integral_sqrt_descent,
                        order_in_field, q_times, rational_sqrt, require_tier)

R5 = QuadraticIntRing(-5)
K5 = QuadraticField(-5)
R6 = QuadraticIntRing(-6)
O15 = QuadraticIntRing(-15)
K15 = QuadraticField(-15)
GAUSS = QuadraticIntRing(-1)
O3 = QuadraticIntRing(-3)


def w5(a, b=0):
    return R5.element(a, b)


class TestIntegerRing:
    def test_basics(self):
        assert ZZ.coerce(3) == 3
        with pytest.raises(TypeError):
            ZZ.coerce(True)
        assert ZZ.norm(-7) == 7
        assert ZZ.units() == (1, -1)
        assert ZZ.are_associates(3, -3)
        assert not ZZ.are_associates(3, 6)
        assert ZZ.associate_representative(-9) == 9

    def test_divides_exact(self):
        assert ZZ.divides_exact(3, 12) == 4
        assert ZZ.divides_exact(-3, 12) == -4
        assert ZZ.divides_exact(5, 12) is None
        assert ZZ.divides_exact(3, 0) == 0

    def test_divisors_and_irreducibles(self):
        assert ZZ.divisors_up_to_associates(12) == [1, 2, 3, 4, 6, 12]
        assert ZZ.is_irreducible(2)
        assert ZZ.is_irreducible(-13)
        assert not ZZ.is_irreducible(6)
        with pytest.raises(ValueError):
            ZZ.is_irreducible(1)
        with pytest.raises(ValueError):
            ZZ.is_irreducible(0)

    def test_elements_of_norm(self):
        assert ZZ.elements_of_norm(0) == [0]
        assert set(ZZ.elements_of_norm(4)) == {4, -4}
        assert ZZ.elements_of_norm(-1) == []


class TestTiers:
    def test_ordering(self):
        assert Tier.RING < Tier.QALGEBRA < Tier.FIELD

    def test_require_tier(self):
        require_tier(QQ, Tier.FIELD, "anything")
        require_tier(QT, Tier.QALGEBRA, "integer division")
        with pytest.raises(CapabilityError):
            require_tier(ZZ, Tier.QALGEBRA, "integer division")
        with pytest.raises(CapabilityError):
            require_tier(QT, Tier.FIELD, "general division")

    def test_div_int(self):
        assert QQ.div_int(Fraction(3), 2) == Fraction(3, 2)
        p = Polynomial(QQ, [Fraction(1), Fraction(3)], "t")
        assert QT.div_int(p, 3) == Polynomial(
            QQ, [Fraction(1, 3), Fraction(1)], "t")
        with pytest.raises(CapabilityError):
            ZT.div_int(Polynomial(ZZ, [2], "t"), 2)


class TestQuadraticRingConstruction:
    def test_cached_singletons(self):
        assert QuadraticIntRing(-5) is R5
        assert QuadraticField(-5) is K5

    def test_rejects_bad_d(self):
        with pytest.raises(ValueError):
            QuadraticIntRing(0)
        with pytest.raises(ValueError):
            QuadraticIntRing(4)
        with pytest.raises(ValueError):
            QuadraticIntRing(-4)      # not squarefree
        with pytest.raises(ValueError):
            QuadraticIntRing(-12)

    def test_names_and_basis(self):
        assert R5.name == "Z[sqrt(-5)]"
        assert not R5.half_basis
        assert O15.name == "O(-15)"
        assert O15.half_basis
        assert K15.name == "Q(sqrt(-15))"


class TestQuadraticArithmetic:
    def test_sqrt_basis_multiplication(self):
        # (1 + w)(1 - w) = 1 - d = 6 for d = -5
        assert w5(1, 1) * w5(1, -1) == w5(6)
        assert w5(0, 1) * w5(0, 1) == w5(-5)

    def test_half_basis_multiplication(self):
        # w = (1 + sqrt(-15))/2 satisfies w^2 = w - 4
        w = O15.element(0, 1)
        assert w * w == O15.element(-4, 1)
        wbar = O15.element(1, -1)
        assert w * wbar == O15.element(4)          # norm of w
        assert wbar * wbar == O15.element(-3, -1)

    def test_norm_values(self):
        assert R5.norm(w5(1, 1)) == 6
        assert R5.norm(w5(2, 3)) == 4 + 45
        assert O15.norm(O15.element(0, 1)) == 4
        assert O15.norm(O15.element(1, -1)) == 4
        assert GAUSS.norm(GAUSS.element(3, 2)) == 13

    def test_norm_is_multiplicative(self):
        rng = random.Random(11)
        for ring in (R5, R6, O15, GAUSS, O3):
            for _ in range(250):
                x = ring.element(rng.randint(-9, 9), rng.randint(-9, 9))
                y = ring.element(rng.randint(-9, 9), rng.randint(-9, 9))
                assert ring.norm(x * y) == ring.norm(x) * ring.norm(y)

    def test_conjugate_gives_norm(self):
        rng = random.Random(13)
        for ring in (R5, O15):
            for _ in range(200):
                x = ring.element(rng.randint(-9, 9), rng.randint(-9, 9))
                assert x * x.conjugate() == ring.element(ring.norm(x))

    def test_int_mixing(self):
        assert w5(2, 1) + 3 == w5(5, 1)
        assert 2 * w5(1, 1) == w5(2, 2)
        assert w5(4) == 4 and hash(w5(4)) == hash(4)
        assert w5(4, 1) != 4


class TestUnitsAndAssociates:
    def test_unit_groups(self):
        assert set(R5.units()) == {w5(1), w5(-1)}
        assert len(GAUSS.units()) == 4
        assert len(O3.units()) == 6

    def test_are_associates(self):
        assert R5.are_associates(w5(1, 1), w5(-1, -1))
        assert not R5.are_associates(w5(1, 1), w5(1, -1))
        i = GAUSS.element(0, 1)
        assert GAUSS.are_associates(GAUSS.element(1, 2), i * GAUSS.element(1, 2))

    def test_representative_is_canonical(self):
        rng = random.Random(17)
        for ring in (R5, GAUSS, O3):
            for _ in range(100):
                x = ring.element(rng.randint(-9, 9), rng.randint(-9, 9))
                if x == ring.element(0):
                    continue
                reps = {ring.associate_representative(x * u)
                        for u in ring.units()}
                assert len(reps) == 1


class TestDividesAndDivisors:
    def test_divides_exact(self):
        # 6 = (1+w)(1-w) in Z[sqrt(-5)]
        assert R5.divides_exact(w5(1, 1), w5(6)) == w5(1, -1)
        assert R5.divides_exact(w5(2), w5(1, 1)) is None
        assert R5.divides_exact(w5(1, -1), w5(-4, -2)) == w5(1, -1)

    def test_elements_of_norm_against_brute_force(self):
        for ring in (R5, O15):
            for k in range(0, 50):
                brute = []
                for a in range(-30, 31):
                    for b in range(-30, 31):
                        x = ring.element(a, b)
                        if ring.norm(x) == k:
                            brute.append(x)
                assert sorted((x.a, x.b) for x in brute) \
                    == [(x.a, x.b) for x in ring.elements_of_norm(k)]

    def test_norm_two_and_three_empty_in_r5(self):
        assert R5.elements_of_norm(2) == []
        assert R5.elements_of_norm(3) == []

    def test_divisor_sets_frozen(self):
        assert R5.divisors_up_to_associates(w5(2)) == [w5(1), w5(2)]
        divs = R5.divisors_up_to_associates(w5(6))
        assert divs == [w5(1), w5(2), w5(1, -1), w5(1, 1), w5(3), w5(6)]
        lead = w5(-4, -2)       # (1 - w)^2
        divs = R5.divisors_up_to_associates(lead)
        assert divs == [w5(1), w5(2), w5(1, -1), w5(2, 1), w5(4, 2)]

    def test_divisors_multiply_back(self):
        rng = random.Random(23)
        for ring in (R5, R6, O15):
            for _ in range(25):
                x = ring.element(rng.randint(-6, 6), rng.randint(-6, 6))
                if ring.norm(x) == 0:
                    continue
                for u in ring.divisors_up_to_associates(x):
                    q = ring.divides_exact(u, x)
                    assert q is not None and u * q == x

    def test_irreducibility_facts(self):
        assert R5.is_irreducible(w5(2))
        assert R5.is_irreducible(w5(3))
        assert R5.is_irreducible(w5(1, 1))
        assert R5.is_irreducible(w5(1, -1))
        assert not R5.is_irreducible(w5(6))
        assert R6.is_irreducible(R6.element(2))
        assert R6.is_irreducible(R6.element(3))
        assert R6.is_irreducible(R6.element(0, 1))
        assert O15.is_irreducible(O15.element(2))
        assert O15.is_irreducible(O15.element(0, 1))
        assert O15.is_irreducible(O15.element(1, -1))
        assert GAUSS.is_irreducible(GAUSS.element(1, 1))
        assert not GAUSS.is_irreducible(GAUSS.element(2))

    def test_two_inequivalent_factorizations_of_six(self):
        assert w5(2) * w5(3) == w5(6)
        assert w5(1, 1) * w5(1, -1) == w5(6)
        assert not R5.are_associates(w5(2), w5(1, 1))
        assert not R5.are_associates(w5(2), w5(1, -1))


class TestFieldElements:
    def test_field_arithmetic(self):
        half = K5.element(Fraction(1, 2), Fraction(1, 2))
        two = K5.element(2)
        assert half * two == K5.element(1, 1)
        assert two / two == K5.element(1)
        x = K5.element(3, -2)
        assert x / x == K5.element(1)
        assert x * x ** -1 == K5.element(1)

    def test_division_and_norm(self):
        a = K5.element(1, 1)
        b = K5.element(2)
        c = a / b
        assert c == K5.element(Fraction(1, 2), Fraction(1, 2))
        assert c.norm() == Fraction(3, 2)

    def test_to_and_from_field(self):
        x = w5(3, -4)
        y = R5.to_field(x)
        assert R5.from_field(y) == x
        assert R5.from_field(K5.element(Fraction(1, 2))) is None

    def test_half_basis_descent(self):
        w = O15.element(0, 1)
        y = O15.to_field(w)
        assert y == K15.element(Fraction(1, 2), Fraction(1, 2))
        assert O15.from_field(y) == w
        # integral but with half coordinates in the field
        z = K15.element(Fraction(3, 2), Fraction(1, 2))
        assert O15.from_field(z) == O15.element(1, 1)
        assert O15.from_field(K15.element(Fraction(1, 2), 0)) is None

    def test_sqrt_descent(self):
        assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
        assert rational_sqrt(Fraction(2)) is None
        # sqrt(-4 - 2w) = +-(1 - w) in Q(sqrt(-5))
        target = K5.element(-4, -2)
        root = integral_sqrt_descent(target)
        assert root is not None and root * root == target
        assert root in (K5.element(1, -1), K5.element(-1, 1))
        assert integral_sqrt_descent(K5.element(1, 1)) is None
        # purely imaginary square root: sqrt(-5) = w
        root = integral_sqrt_descent(K5.element(-5))
        assert root is not None and root * root == K5.element(-5)

    def test_format(self):
        assert str(K5.element(Fraction(1, 2), Fraction(1, 2))) == "1/2+1/2*w"
        assert str(w5(-4, -2)) == "-4-2*w"
        assert str(w5(0, 1)) == "w"
        assert str(w5(0, -1)) == "-w"
        assert str(w5(0, 3)) == "3*w"
        assert str(w5(7)) == "7"


class TestEmbedDescend:
    def test_hulls(self):
        assert hull_of(ZZ) is QQ
        assert hull_of(R5) is K5
        assert hull_of(ZT) == QT
        assert hull_of(QQ) is QQ

    def test_embed_element(self):
        assert embed_element(3, ZZ, QQ) == Fraction(3)
        assert embed_element(w5(1, 2), R5, K5) == K5.element(1, 2)

    def test_descend_element(self):
        assert descend_element(Fraction(4), ZZ) == 4
        assert descend_element(Fraction(1, 2), ZZ) is None
        assert descend_element(K5.element(2, -3), R5) == w5(2, -3)
        assert descend_element(K5.element(Fraction(1, 2)), R5) is None

    def test_poly_roundtrip(self):
        p = Polynomial(ZZ, [1, -2, 3], "x")
        q = embed_poly(p, QQ)
        assert q.domain is QQ
        assert descend_poly(q, ZZ) == p
        assert descend_poly(Polynomial(QQ, [Fraction(1, 3)], "x"), ZZ) is None

    def test_tpoly_descend(self):
        t2 = Polynomial(QQ, [0, 0, 1], "t")
        p = Polynomial(QT, [t2, QT.one], "x")
        q = descend_poly(p, ZT)
        assert q is not None and q.domain == ZT


class TestSubringDescriptors:
    def test_z_in_q(self):
        assert Z_IN_Q.membership(Fraction(4, 2))
        assert not Z_IN_Q.membership(Fraction(1, 2))
        assert Fraction(3) in Z_IN_Q

    def test_no_linear_term_subring(self):
        t = Polynomial.identity(ZZ, "t")
        assert ZT23_IN_ZT.membership(t ** 2 + 5)
        assert ZT23_IN_ZT.membership(t ** 3 - t ** 2)
        assert not ZT23_IN_ZT.membership(t)
        assert not ZT23_IN_ZT.membership(t ** 3 + 2 * t)

    def test_subring_is_multiplicatively_closed(self):
        rng = random.Random(29)
        for _ in range(300):
            a = [rng.randint(-4, 4) for _ in range(5)]
            b = [rng.randint(-4, 4) for _ in range(5)]
            a[1] = b[1] = 0
            p = Polynomial(ZZ, a, "t")
            q = Polynomial(ZZ, b, "t")
            assert ZT23_IN_ZT.membership(p * q)
            assert ZT23_IN_ZT.membership(p + q)

    def test_rational_span_meets_integers_exactly_in_subring(self):
        # (Q.R) intersect Z[t] = R for R the no-linear-term subring
        rng = random.Random(31)
        span = q_times(ZT23_IN_ZT)
        for _ in range(1000):
            coeffs = [rng.randint(-8, 8) for _ in range(rng.randint(0, 7))]
            p = Polynomial(ZZ, coeffs, "t")
            pq = embed_element(p, ZT, QT)
            in_span_and_integral = span.membership(pq)
            in_subring = ZT23_IN_ZT.membership(p)
            assert in_span_and_integral == in_subring

    def test_order_in_field_descriptor(self):
        sub = order_in_field(-15)
        assert sub.membership(K15.element(Fraction(1, 2), Fraction(1, 2)))
        assert sub.membership(K15.element(3, -2))
        assert not sub.membership(K15.element(Fraction(1, 2), 0))

    def test_qzt23_descriptor(self):
        t = Polynomial.identity(QQ, "t")
        assert QZT23_IN_QT.membership(t ** 2 * Fraction(1, 2))
        assert not QZT23_IN_QT.membership(t * Fraction(1, 3))


class TestCapLimits:
    def test_divisor_bound_is_enforced(self):
        big = w5(2 ** 20)                  # norm 2^40 > default bound
        with pytest.raises(ValueError):
            R5.divisors_up_to_associates(big)
        assert R5.divisors_up_to_associates(w5(6), bound=10 ** 8) \
            == R5.divisors_up_to_associates(w5(6))

    def test_divisors_of_zero_rejected(self):
        with pytest.raises(ValueError):
            R5.divisors_up_to_associates(w5(0))
        with pytest.raises(ValueError):
            ZZ.divisors_up_to_associates(0)
