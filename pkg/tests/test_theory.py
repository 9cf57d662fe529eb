import math

import mpmath
import pytest

from spinv.theory import (TheoryError, delta, delta_bar, isclose, make_theory,
                          omega, omega_sq, omega_squared, q_sq, quantum_int)


@pytest.fixture(scope="module")
def p8():
    return make_theory(8, 128, 1e-20)


@pytest.fixture(scope="module")
def p12():
    return make_theory(12, 128, 1e-20)


def test_make_theory_principal_root(p8):
    # A = exp(i pi / 16)
    assert isclose(p8, p8.A, mpmath.expjpi(mpmath.mpf(1) / 16))


def test_make_theory_rejects_bad_r():
    with pytest.raises(TheoryError):
        make_theory(6)
    with pytest.raises(TheoryError):
        make_theory(3)
    with pytest.raises(TheoryError):
        make_theory(8, precision=32)


def test_root_of_unity_orders(p12):
    assert isclose(p12, p12.A ** 48, 1)
    assert isclose(p12, p12.A ** 24, -1)
    # primitivity: no smaller power is 1
    for k in range(1, 48):
        assert not isclose(p12, p12.A ** k, 1)


def test_quantum_int_values(p8):
    assert isclose(p8, quantum_int(p8, 1), 1)
    assert isclose(p8, quantum_int(p8, 8), 0)
    assert isclose(p8, quantum_int(p8, 2), 2 * math.cos(math.pi / 8), 1e-15)


def test_quantum_int_matches_root_formula(p8):
    # same values from the A-power definition
    A = p8.A
    for n in range(0, 12):
        direct = (A ** (2 * n) - A ** (-2 * n)) / (A ** 2 - A ** -2)
        assert isclose(p8, quantum_int(p8, n), direct)


def test_omega_sq_values(p8):
    assert isclose(p8, omega_sq(p8, 0), 1)
    assert isclose(p8, omega_sq(p8, 1), -quantum_int(p8, 2))
    for i in p8.colors:
        v = omega_sq(p8, i)
        assert abs(mpmath.im(mpmath.mpmathify(v))) == 0
        assert (v > 0) == (i % 2 == 0)
        assert isclose(p8, abs(v), quantum_int(p8, i + 1))


@pytest.mark.parametrize("r", [8, 12])
def test_parity_symmetries(r):
    p = make_theory(r, 128, 1e-20)
    for i in p.colors:
        assert isclose(p, omega_sq(p, p.r - 2 - i), omega_sq(p, i))
        assert isclose(p, q_sq(p, p.r - 2 - i), (-1) ** (i + 1) * q_sq(p, i))


def test_q_sq_values(p8):
    assert isclose(p8, q_sq(p8, 0), 1)
    assert isclose(p8, q_sq(p8, 2), mpmath.mpc(0, 1))  # A^8 = i at r=8
    for i in p8.colors:
        assert isclose(p8, abs(q_sq(p8, i)), 1)


def test_omega_value(p8):
    target = 4 / math.sin(math.pi / 8) ** 2
    assert isclose(p8, omega_squared(p8), target, 1e-14)
    assert isclose(p8, omega(p8) ** 2, omega_squared(p8))
    assert omega(p8) > 0


@pytest.mark.parametrize("r", [8, 12])
def test_omega_squared_three_ways(r):
    p = make_theory(r, 128, 1e-20)
    s = sum(omega_sq(p, i) ** 2 for i in p.colors)
    closed = -2 * r / (p.A ** 2 - p.A ** -2) ** 2
    assert isclose(p, s, omega_squared(p))
    assert isclose(p, closed, omega_squared(p))


def test_half_sums(p8):
    even = sum(omega_sq(p8, i) ** 2 for i in range(0, p8.r - 1, 2))
    odd = sum(omega_sq(p8, i) ** 2 for i in range(1, p8.r - 1, 2))
    assert isclose(p8, 2 * even, omega_squared(p8))
    assert isclose(p8, 2 * odd, omega_squared(p8))


@pytest.mark.parametrize("r", [8, 12])
def test_gauss_sums(r):
    p = make_theory(r, 128, 1e-20)
    assert isclose(p, delta(p) * delta_bar(p), omega_squared(p))
    odd = sum(q_sq(p, i) * omega_sq(p, i) ** 2 for i in range(1, p.r - 1, 2))
    assert isclose(p, odd, delta(p))
    assert isclose(p, delta_bar(p), mpmath.conj(delta(p)))


def test_determinism():
    a = make_theory(8, 128, 1e-20)
    b = make_theory(8, 128, 1e-20)
    assert a.A == b.A
    assert delta(a) == delta(b)
    assert omega_squared(a) == omega_squared(b)


def test_isclose_scale(p8):
    assert isclose(p8, mpmath.mpf(10) ** 6, mpmath.mpf(10) ** 6 + mpmath.mpf(10) ** -16)
    assert not isclose(p8, 0, 1e-10)
