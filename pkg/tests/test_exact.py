"""Exact Gaussian-integer/rational arithmetic and matrix inversion."""

from fractions import Fraction

import pytest

from pseudoplanar.exact import (
    GaussInt,
    GaussRat,
    I,
    I_POWERS,
    mat_inverse,
    mat_mul,
)


def test_gauss_int_arithmetic():
    a = GaussInt(3, -2)
    b = GaussInt(-1, 5)
    assert a + b == GaussInt(2, 3)
    assert a - b == GaussInt(4, -7)
    assert a * b == GaussInt(3 * -1 - (-2) * 5, 3 * 5 + (-2) * -1)
    assert -a == GaussInt(-3, 2)
    assert a.conj() == GaussInt(3, 2)
    assert a.norm() == 13
    assert a * a.conj() == GaussInt(13)
    assert I * I == GaussInt(-1)
    # i^k cycle
    x = GaussInt(1)
    for k in range(8):
        assert x == I_POWERS[k % 4]
        x = x * I


def test_gauss_int_int_interop():
    assert GaussInt(2, 1) * 3 == GaussInt(6, 3)
    assert 5 - GaussInt(2, 1) == GaussInt(3, -1)
    assert str(GaussInt(0)) == "0"
    assert GaussInt(1, 2).sort_key() == (1, 2)


def test_gauss_rat_field_ops():
    a = GaussRat(Fraction(1, 2), Fraction(3, 4))
    b = GaussRat.of(GaussInt(2, -1))
    assert (a * b) / b == a
    assert a + b - b == a
    assert (-a) + a == GaussRat()
    assert a / a == GaussRat.of(1)
    assert GaussRat.of(7).is_gauss_int()
    assert not a.is_gauss_int()
    assert GaussRat.of(GaussInt(4, -5)).to_gauss_int() == GaussInt(4, -5)
    with pytest.raises(ValueError):
        a.to_gauss_int()
    assert GaussRat().is_zero()


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussRat.of(1) / GaussRat()


def test_mat_inverse_roundtrip():
    M = [
        [GaussInt(1), GaussInt(2, 1), GaussInt(0)],
        [GaussInt(0, 1), GaussInt(1), GaussInt(3)],
        [GaussInt(2), GaussInt(0), GaussInt(1, -1)],
    ]
    inv = mat_inverse(M)
    prod = mat_mul(M, inv)
    for i in range(3):
        for j in range(3):
            assert prod[i][j] == GaussRat.of(1 if i == j else 0)


def test_mat_inverse_singular():
    M = [[GaussInt(1), GaussInt(2)], [GaussInt(2), GaussInt(4)]]
    with pytest.raises(ValueError):
        mat_inverse(M)
