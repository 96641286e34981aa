"""Exact cyclotomic scalar arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgcheck.scalars import Cyc, cyclotomic_polynomial


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == [-1, 1]
    assert cyclotomic_polynomial(2) == [1, 1]
    assert cyclotomic_polynomial(3) == [1, 1, 1]
    assert cyclotomic_polynomial(4) == [1, 0, 1]
    assert cyclotomic_polynomial(6) == [1, -1, 1]
    assert cyclotomic_polynomial(12) == [1, 0, -1, 0, 1]


def test_zeta_relations():
    for n in (2, 3, 4, 6):
        z = Cyc.zeta(n)
        assert z**n == 1
        prim = all((z**k) != 1 for k in range(1, n))
        assert prim
        # geometric sum of a primitive root vanishes
        total = Cyc.zero(n)
        for k in range(n):
            total = total + z**k
        assert total.is_zero()


def test_conjugation_is_inverse_root():
    for n in (3, 4, 6):
        z = Cyc.zeta(n)
        assert z.conj() == z ** (n - 1)
        assert (z * z.conj()) == 1
        a = Cyc(n, [Fraction(1, 2), Fraction(-2, 3)])
        assert a.conj().conj() == a


def test_rational_fast_paths():
    a = Cyc.rational(Fraction(3, 4))
    b = Cyc.rational(2)
    assert (a + b).rational_value() == Fraction(11, 4)
    assert (a * b).rational_value() == Fraction(3, 2)
    assert (a / b).rational_value() == Fraction(3, 8)
    assert a.conj() == a
    assert a.is_real()


def test_cross_order_promotion():
    z3 = Cyc.zeta(3)
    r = Cyc.rational(Fraction(1, 2))
    assert (z3 + r).order == 3
    assert z3 + r == r + z3
    with pytest.raises(ValueError):
        _ = Cyc.zeta(3) + Cyc.zeta(4)


def test_inverse_nontrivial():
    z = Cyc.zeta(3)
    a = 1 + 2 * z
    assert a * a.inverse() == 1
    b = Cyc(4, [Fraction(2, 3), Fraction(-1, 5)])
    assert (b / b) == 1
    with pytest.raises(ZeroDivisionError):
        Cyc.zero(3).inverse()


def test_embedding_matches_float():
    z = Cyc.zeta(6)
    a = 2 + z - 3 * z**2
    b = z**4 / (1 + z)
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-12
    assert abs((a + b).to_complex() - (a.to_complex() + b.to_complex())) < 1e-12
    assert abs(a.conj().to_complex() - a.to_complex().conjugate()) < 1e-12


def test_serialization_round_trip():
    a = Cyc(3, [Fraction(1, 3), Fraction(-5, 7)])
    assert Cyc.from_strings(3, a.to_strings()) == a
    r = Cyc.rational(Fraction(-2, 9))
    assert Cyc.from_strings(1, r.to_strings()) == r


small_rats = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)


def cyc_elements(order):
    from qgcheck.scalars import _context

    deg = _context(order).degree
    return st.lists(small_rats, min_size=deg, max_size=deg).map(
        lambda cs: Cyc(order, cs)
    )


@settings(max_examples=60, deadline=None)
@given(cyc_elements(6), cyc_elements(6), cyc_elements(6))
def test_field_axioms_hold(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert (a + b).conj() == a.conj() + b.conj()
    assert (a * b).conj() == a.conj() * b.conj()
    if not b.is_zero():
        assert (a / b) * b == a


@settings(max_examples=40, deadline=None)
@given(cyc_elements(4))
def test_hash_eq_consistency(a):
    same = Cyc(4, list(a.coeffs))
    assert same == a and hash(same) == hash(a)
