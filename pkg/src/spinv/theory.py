"""Root-of-unity scalar data underlying the quantum-sl2 recoupling calculus.

Everything in this library is parametrized by an order r (a positive
multiple of 4) and the principal primitive 4r-th root of unity
A = exp(2*pi*i/(4r)).  This module owns every scalar derived from that
choice:

* quantum integers      [n] = (A^(2n) - A^(-2n)) / (A^2 - A^(-2)),
* quantum dimensions    omega_sq(i) = (-1)^i [i+1]   for i in I = {0..r-2},
* twist scalars         q_sq(i) = (-1)^i A^(i^2+2i),
* the global norm       omega = sqrt(-2r / (A^2 - A^(-2))^2) > 0,
* the Gauss sums        delta = sum_i q_sq(i) omega_sq(i)^2 and its
                        conjugate delta_bar, with delta * delta_bar = omega^2.

All complex arithmetic is arbitrary precision (mpmath) at a per-theory bit
count; integer and GF(2) work elsewhere in the package stays exact.  In the
principal embedding [n] = sin(n*pi/r)/sin(pi/r) is real, omega^2 =
r/(2 sin^2(pi/r)) is a positive real, and omega is fixed to its positive
square root, which makes every closed-manifold invariant downstream a
reproducible number rather than a Galois orbit.
"""

from __future__ import annotations

import mpmath
from mpmath import mpf


class TheoryError(ValueError):
    """Raised for invalid theory parameters (bad r or precision)."""


class TheoryParams:
    """Immutable bundle of the order r, working precision and derived scalars.

    Use :func:`make_theory` to construct one.  All cached values are computed
    eagerly at ``precision`` bits and never mutated afterwards, so instances
    are safe to share between threads.
    """

    __slots__ = (
        "r", "precision", "tolerance", "A",
        "_qint", "_qfact", "_omega_sq", "_q_sq",
        "omega2", "_omega", "Delta", "Delta_bar", "loop_value",
    )

    def __init__(self, r: int, precision: int, tolerance: float):
        if not isinstance(r, int) or r < 4:
            raise TheoryError(f"r must be an integer >= 4, got {r!r}")
        if r % 4 != 0:
            raise TheoryError(f"r not = 0 mod 4: {r}")
        if precision < 64:
            raise TheoryError(f"precision must be >= 64 bits, got {precision}")
        if tolerance < 0:
            raise TheoryError(f"tolerance must be nonnegative, got {tolerance}")
        self.r = r
        self.precision = precision
        with mpmath.workprec(precision):
            self.tolerance = mpf(tolerance)
            # Principal primitive 4r-th root, argument 2*pi/(4r).
            self.A = mpmath.expjpi(mpf(1) / (2 * r))
            sin1 = mpmath.sinpi(mpf(1) / r)
            # [n] for 0 <= n <= 2r; real in the principal embedding.
            self._qint = tuple(
                mpmath.sinpi(mpf(n) / r) / sin1 for n in range(2 * r + 1)
            )
            # [n]! with the convention [0]! = 1; identically 0 once n >= r.
            fact = [mpf(1)]
            for n in range(1, 2 * r + 1):
                fact.append(fact[-1] * self._qint[n])
            self._qfact = tuple(fact)
            self._omega_sq = tuple(
                (-1) ** i * self._qint[i + 1] for i in range(r - 1)
            )
            self._q_sq = tuple(
                (-1) ** i * mpmath.expjpi(mpf(i * i + 2 * i) / (2 * r))
                for i in range(r - 1)
            )
            # omega^2 = -2r/(A^2 - A^{-2})^2 = r / (2 sin^2(pi/r)) > 0.
            self.omega2 = mpf(r) / (2 * sin1 ** 2)
            self._omega = mpmath.sqrt(self.omega2)
            self.Delta = sum(
                self._q_sq[i] * self._omega_sq[i] ** 2 for i in range(r - 1)
            )
            self.Delta_bar = sum(
                self._q_sq[i].conjugate() * self._omega_sq[i] ** 2
                for i in range(r - 1)
            )
            # Value of a closed loop in the Kauffman bracket: -A^2 - A^{-2}.
            self.loop_value = -2 * mpmath.cospi(mpf(1) / r)

    @property
    def colors(self) -> range:
        """The color set I = {0, 1, ..., r-2}."""
        return range(self.r - 1)

    def workprec(self):
        """Context manager setting mpmath to this theory's precision."""
        return mpmath.workprec(self.precision)

    def check_color(self, i: int) -> None:
        if not 0 <= i <= self.r - 2:
            raise TheoryError(f"color {i} outside I = 0..{self.r - 2}")

    def __repr__(self):
        return f"TheoryParams(r={self.r}, precision={self.precision})"


def make_theory(r: int, precision: int = 128, tolerance: float = 1e-20) -> TheoryParams:
    """Build the theory at the principal primitive 4r-th root of unity.

    Rejects r < 4, r not divisible by 4, and precision below 64 bits.  Also
    raises the global mpmath working precision to at least ``precision`` so
    that arithmetic on returned scalars done outside an explicit
    ``params.workprec()`` block does not silently truncate to double
    precision.
    """
    params = TheoryParams(r, precision, tolerance)
    mpmath.mp.prec = max(mpmath.mp.prec, precision)
    return params


def quantum_int(params: TheoryParams, n: int):
    """The quantum integer [n]; real, with [1] = 1 and [r] = 0."""
    if n < 0:
        raise TheoryError(f"quantum_int needs n >= 0, got {n}")
    if n <= 2 * params.r:
        return params._qint[n]
    with params.workprec():
        return mpmath.sinpi(mpf(n) / params.r) / mpmath.sinpi(mpf(1) / params.r)


def quantum_factorial(params: TheoryParams, n: int):
    """[n]! = [1][2]...[n]; vanishes for n >= r."""
    if n < 0:
        raise TheoryError(f"quantum_factorial needs n >= 0, got {n}")
    if n <= 2 * params.r:
        return params._qfact[n]
    return mpf(0)


def omega_sq(params: TheoryParams, i: int):
    """Quantum dimension of color i: (-1)^i [i+1] (the value of an
    i-colored 0-framed unknot)."""
    params.check_color(i)
    return params._omega_sq[i]


def q_sq(params: TheoryParams, i: int):
    """Twist scalar (-1)^i A^(i^2+2i); a positive ribbon twist on an
    i-colored strand divides the invariant by this value."""
    params.check_color(i)
    return params._q_sq[i]


def omega_squared(params: TheoryParams):
    """omega^2 = sum_i omega_sq(i)^2 = -2r/(A^2-A^{-2})^2, a positive real."""
    return params.omega2


def omega(params: TheoryParams):
    """The positive real square root of omega^2."""
    return params._omega


def delta(params: TheoryParams):
    """The Gauss sum sum_i q_sq(i) * omega_sq(i)^2."""
    return params.Delta


def delta_bar(params: TheoryParams):
    """The conjugate Gauss sum sum_i q_sq(i)^(-1) * omega_sq(i)^2."""
    return params.Delta_bar


def isclose(params: TheoryParams, x, y, tol=None) -> bool:
    """Hybrid absolute/relative equality: |x-y| <= tol*max(1, |x|, |y|)."""
    if tol is None:
        tol = params.tolerance
    with params.workprec():
        return abs(mpmath.mpmathify(x) - mpmath.mpmathify(y)) <= \
            mpf(tol) * max(mpf(1), abs(x), abs(y))
