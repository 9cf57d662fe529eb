"""Closed-form recoupling data: admissibility, theta and tetrahedral
networks, normalized 6j symbols, the Hopf pairing and the circle relations.

Every closed form here equals the Kauffman-bracket value of the
corresponding cabled network (see :mod:`spinv.bracket`); the generic diagram
evaluator is exponential, so these formulas are what the invariants actually
run on, while the diagram route serves as an independent oracle in the test
suite.

Conventions.  A triple (i, j, k) of colors is admissible when i+j+k is even
and i <= j+k, j <= i+k, k <= i+j, i+j+k <= 2(r-2).  The network values are
written with quantum factorials [n]! = [1][2]...[n]:

    theta(a,b,c) = (-1)^(x+y+z) [x+y+z+1]! [x]! [y]! [z]!
                   / ([x+y]! [y+z]! [x+z]!),
        x = (a+b-c)/2, y = (b+c-a)/2, z = (a+c-b)/2;

    tet(a,b,e,c,d,f) has vertex triples (a,b,e), (c,d,e), (a,d,f), (b,c,f);
    with half-sums a_i over the vertices and b_j over the three
    quadrilaterals it equals

        (prod_{ij} [b_j - a_i]! / prod_edges [edge]!)
        * sum_s (-1)^s [s+1]! / (prod_i [s-a_i]! prod_j [b_j-s]!).

The normalized symbol sixj(a,b,e,c,d,f) divides tet by the square roots of
its four vertex thetas; the square root of each theta is the principal
complex branch taken once per unordered triple, which a closed state sum
always squares away.  With this normalization

    sixj(r/2-1, r-2, r/2-1, r/2-1, r-2, r/2-1) = -1/omega_sq(r/2-1),

and the symbol has full tetrahedral symmetry.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

import mpmath

from . import bracket
from .theory import (TheoryParams, omega_sq, omega_squared, q_sq,
                     quantum_factorial, quantum_int)


def admissible(params: TheoryParams, i: int, j: int, k: int) -> bool:
    """Whether (i, j, k) satisfies the parity and quantum triangle bounds."""
    for c in (i, j, k):
        params.check_color(c)
    if (i + j + k) % 2:
        return False
    return (i <= j + k and j <= i + k and k <= i + j
            and i + j + k <= 2 * (params.r - 2))


class RecouplingTable:
    """Memoized network evaluations for one theory.

    Built once per TheoryParams; afterwards all lookups are pure reads, so a
    table may be shared freely between threads.
    """

    def __init__(self, params: TheoryParams):
        self.params = params
        self._theta: Dict[Tuple[int, int, int], object] = {}
        self._sqrt_theta: Dict[Tuple[int, int, int], object] = {}
        self._tet: Dict[Tuple[int, ...], object] = {}
        self._sixj: Dict[Tuple[int, ...], object] = {}
        self._jw_cache: Dict[int, dict] = {}

    # -- basic data ---------------------------------------------------------

    def admissible(self, i: int, j: int, k: int) -> bool:
        return admissible(self.params, i, j, k)

    def omega_sq(self, i: int):
        return omega_sq(self.params, i)

    def q_sq(self, i: int):
        return q_sq(self.params, i)

    # -- closed-form networks ------------------------------------------------

    def theta(self, a: int, b: int, c: int):
        """Theta network value; 0 for inadmissible triples."""
        key = (a, b, c)
        if key in self._theta:
            return self._theta[key]
        p = self.params
        if not self.admissible(a, b, c):
            val = mpmath.mpf(0)
        else:
            x = (a + b - c) // 2
            y = (b + c - a) // 2
            z = (a + c - b) // 2
            with p.workprec():
                val = ((-1) ** (x + y + z)
                       * quantum_factorial(p, x + y + z + 1)
                       * quantum_factorial(p, x)
                       * quantum_factorial(p, y)
                       * quantum_factorial(p, z)
                       / (quantum_factorial(p, x + y)
                          * quantum_factorial(p, y + z)
                          * quantum_factorial(p, x + z)))
        self._theta[key] = val
        return val

    def sqrt_theta(self, a: int, b: int, c: int):
        """Principal square root of theta, fixed per unordered triple."""
        key = tuple(sorted((a, b, c)))
        if key not in self._sqrt_theta:
            with self.params.workprec():
                self._sqrt_theta[key] = mpmath.sqrt(mpmath.mpmathify(
                    self.theta(*key)))
        return self._sqrt_theta[key]

    def tet(self, a: int, b: int, e: int, c: int, d: int, f: int):
        """Tetrahedral network with vertices (a,b,e), (c,d,e), (a,d,f), (b,c,f)."""
        key = (a, b, e, c, d, f)
        if key in self._tet:
            return self._tet[key]
        p = self.params
        faces = ((a, b, e), (c, d, e), (a, d, f), (b, c, f))
        if not all(self.admissible(*t) for t in faces):
            val = mpmath.mpf(0)
        else:
            av = [sum(t) // 2 for t in faces]
            bv = [(b + d + e + f) // 2, (a + c + e + f) // 2,
                  (a + b + c + d) // 2]
            with p.workprec():
                interior = mpmath.mpf(1)
                for bj in bv:
                    for ai in av:
                        interior *= quantum_factorial(p, bj - ai)
                edges = mpmath.mpf(1)
                for x in (a, b, c, d, e, f):
                    edges *= quantum_factorial(p, x)
                total = mpmath.mpf(0)
                for s in range(max(av), min(bv) + 1):
                    num = (-1) ** s * quantum_factorial(p, s + 1)
                    den = mpmath.mpf(1)
                    for ai in av:
                        den *= quantum_factorial(p, s - ai)
                    for bj in bv:
                        den *= quantum_factorial(p, bj - s)
                    total += num / den
                val = interior / edges * total
        self._tet[key] = val
        return val

    def sixj(self, a: int, b: int, e: int, c: int, d: int, f: int):
        """Vertex-normalized 6j symbol tet / sqrt(product of face thetas)."""
        key = (a, b, e, c, d, f)
        if key in self._sixj:
            return self._sixj[key]
        faces = ((a, b, e), (c, d, e), (a, d, f), (b, c, f))
        if not all(self.admissible(*t) for t in faces):
            val = mpmath.mpf(0)
        else:
            with self.params.workprec():
                val = self.tet(a, b, e, c, d, f)
                for t in faces:
                    val = val / self.sqrt_theta(*t)
        self._sixj[key] = val
        return val

    # -- Hopf pairing and circle relations -----------------------------------

    def hopf(self, i: int, j: int):
        """Bracket of the (i, j)-colored 0-framed Hopf link:
        (-1)^(i+j) [(i+1)(j+1)]."""
        p = self.params
        p.check_color(i)
        p.check_color(j)
        with p.workprec():
            return (-1) ** (i + j) * quantum_int(p, (i + 1) * (j + 1))

    def s_matrix(self) -> List[List[object]]:
        """S[i][j] = omega^{-1} * hopf(i, j); symmetric with S.conj(S) = 1."""
        p = self.params
        with p.workprec():
            w = mpmath.sqrt(p.omega2)
            return [[self.hopf(i, j) / w for j in p.colors] for i in p.colors]

    def encircle_sum(self, parity: str, j: int):
        """Single-parity encircling of a j-strand, normalized by omega_sq(j).

        Returns sum over i of the given parity of omega_sq(i) * hopf(i, j) /
        omega_sq(j), and asserts the circle relations: the result equals
        (omega^2/2)(delta_{j,0} + delta_{j,r-2}) for even parity and
        (omega^2/2)(delta_{j,0} - delta_{j,r-2}) for odd.
        """
        p = self.params
        p.check_color(j)
        if parity not in ("even", "odd"):
            raise ValueError("parity must be 'even' or 'odd'")
        start = 0 if parity == "even" else 1
        with p.workprec():
            total = mpmath.mpf(0)
            for i in range(start, p.r - 1, 2):
                total += self.omega_sq(i) * self.hopf(i, j)
            total = total / self.omega_sq(j)
            sign = 1 if parity == "even" else -1
            expected = omega_squared(p) / 2 * (
                (1 if j == 0 else 0) + sign * (1 if j == p.r - 2 else 0))
            if abs(total - expected) > mpmath.mpf("1e-10") * omega_squared(p):
                raise AssertionError(
                    f"circle relation failed at parity={parity}, j={j}: "
                    f"{total} vs {expected}")
        return total

    def twist(self, i: int):
        """Scalar picked up by one positive kink on an i-colored strand:
        q_sq(i)^{-1}."""
        with self.params.workprec():
            return 1 / self.q_sq(i)

    # -- diagram oracle -------------------------------------------------------

    def bracket(self, diagram: bracket.Diagram,
                width_limit: int = bracket.DEFAULT_WIDTH_LIMIT):
        """Evaluate a slice diagram with this table's projector cache."""
        return bracket.bracket_eval(self.params, diagram,
                                    width_limit=width_limit,
                                    jw_cache=self._jw_cache)
