import random
from itertools import permutations, product

import mpmath
import pytest

from spinv.recoupling import RecouplingTable, admissible
from spinv.theory import isclose, make_theory, omega_sq, omega_squared, q_sq


@pytest.fixture(scope="module")
def table():
    return RecouplingTable(make_theory(8, 128, 1e-20))


@pytest.fixture(scope="module")
def table12():
    return RecouplingTable(make_theory(12, 128, 1e-20))


def test_admissibility(table):
    p = table.params
    assert table.admissible(0, 0, 0)
    assert not table.admissible(0, 1, 2)       # odd sum
    assert not table.admissible(6, 6, 6)       # 18 > 2(r-2) = 12
    assert table.admissible(6, 6, 0)
    assert not table.admissible(0, 0, 2)       # triangle inequality
    assert admissible(p, 1, 1, 2)


def test_theta_loop_reduction(table):
    p = table.params
    for a in p.colors:
        assert isclose(p, table.theta(a, 0, a), omega_sq(p, a))
    assert table.theta(1, 1, 1) == 0


def test_theta_symmetric(table):
    p = table.params
    for a, b, c in product(range(6), repeat=3):
        if not table.admissible(a, b, c):
            continue
        v = table.theta(a, b, c)
        for perm in permutations((a, b, c)):
            assert isclose(p, table.theta(*perm), v)


@pytest.mark.parametrize("r", [8, 12])
def test_sixj_half_color_anchor(r, table, table12):
    t = table if r == 8 else table12
    p = t.params
    h = r // 2 - 1
    v = t.sixj(h, r - 2, h, h, r - 2, h)
    assert isclose(p, v, -1 / omega_sq(p, h), 1e-16)


def test_sixj_vanishes_off_admissible(table):
    assert table.sixj(1, 1, 1, 1, 1, 1) == 0
    assert table.tet(0, 0, 2, 0, 0, 0) == 0


def test_sixj_tetrahedral_symmetry(table):
    p = table.params
    rng = random.Random(3)
    tuples = []
    for tup in product(range(7), repeat=6):
        a, b, e, c, d, f = tup
        faces = ((a, b, e), (c, d, e), (a, d, f), (b, c, f))
        if all(table.admissible(*x) for x in faces):
            tuples.append(tup)
    for tup in rng.sample(tuples, 25):
        a, b, e, c, d, f = tup
        v = table.sixj(*tup)
        # opposite-pair preserving relabelings of the tetrahedron
        for var in ((b, a, e, d, c, f), (c, d, e, a, b, f),
                    (a, d, f, c, b, e), (e, b, a, f, d, c),
                    (d, c, e, b, a, f), (c, b, f, a, d, e)):
            assert isclose(p, table.sixj(*var), v, 1e-18), (tup, var)


def test_sixj_orthogonality(table):
    p = table.params
    rng = random.Random(1)
    colors = list(p.colors)
    done = 0
    while done < 10:
        a, b, c, d = (rng.choice(colors) for _ in range(4))
        fs = [f for f in colors
              if table.admissible(a, d, f) and table.admissible(b, c, f)]
        es = [e for e in colors
              if table.admissible(a, b, e) and table.admissible(c, d, e)]
        if not fs or not es:
            continue
        for f1 in fs:
            for f2 in fs:
                acc = sum(omega_sq(p, e) * omega_sq(p, f1)
                          * table.sixj(a, b, e, c, d, f1)
                          * table.sixj(a, b, e, c, d, f2) for e in es)
                assert isclose(p, acc, 1 if f1 == f2 else 0, 1e-16)
        done += 1


def test_pentagon(table):
    p = table.params
    rng = random.Random(2)
    colors = list(p.colors)
    done = 0
    while done < 12:
        a, b, c, d, e, f = (rng.choice(colors) for _ in range(6))
        ps = [x for x in colors
              if table.admissible(a, d, x) and table.admissible(b, c, x)]
        qs = [x for x in colors
              if table.admissible(c, f, x) and table.admissible(d, e, x)]
        rs = [x for x in colors
              if table.admissible(e, a, x) and table.admissible(f, b, x)]
        if not (ps and qs and rs):
            continue
        pp, qq, rr = rng.choice(ps), rng.choice(qs), rng.choice(rs)
        if not table.admissible(pp, qq, rr):
            continue
        lhs = sum(omega_sq(p, x) * table.sixj(a, b, x, c, d, pp)
                  * table.sixj(c, d, x, e, f, qq)
                  * table.sixj(e, f, x, b, a, rr) for x in colors)
        rhs = table.sixj(pp, qq, rr, e, a, d) * table.sixj(pp, qq, rr, f, b, c)
        assert isclose(p, lhs, rhs, 1e-16)
        done += 1


def test_hopf_values(table):
    p = table.params
    from spinv.theory import quantum_int
    for j in p.colors:
        assert isclose(p, table.hopf(0, j), omega_sq(p, j))
    assert isclose(p, table.hopf(1, 1), quantum_int(p, 4))
    for i, j in product(p.colors, repeat=2):
        assert isclose(p, table.hopf(i, j), table.hopf(j, i))
        assert isclose(p, table.hopf(i, j),
                       (-1) ** (i + j) * quantum_int(p, (i + 1) * (j + 1)))


def test_s_matrix_unitary(table):
    p = table.params
    S = table.s_matrix()
    n = p.r - 1
    for i in range(n):
        for j in range(n):
            assert isclose(p, S[i][j], S[j][i])
            acc = sum(S[i][k] * mpmath.conj(S[k][j]) for k in range(n))
            assert isclose(p, acc, 1 if i == j else 0, 1e-18)


def test_s_matrix_parity_row_sums(table):
    # the even/odd selection rule: the (0, r-2) column pair sums to
    # 2 * omega^{-1} * omega_sq(a) on one parity and vanishes on the other
    p = table.params
    S = table.s_matrix()
    w = mpmath.sqrt(omega_squared(p))
    for a in p.colors:
        plus = S[a][0] + S[a][p.r - 2]
        minus = S[a][0] - S[a][p.r - 2]
        if a % 2 == 0:
            assert isclose(p, plus, 2 * omega_sq(p, a) / w, 1e-18)
            assert isclose(p, minus, 0, 1e-18)
        else:
            assert isclose(p, plus, 0, 1e-18)
            assert isclose(p, minus, 2 * omega_sq(p, a) / w, 1e-18)


def test_encircle_sums(table):
    p = table.params
    w2 = omega_squared(p)
    assert isclose(p, table.encircle_sum("even", 0), w2 / 2)
    assert isclose(p, table.encircle_sum("odd", p.r - 2), -w2 / 2)
    assert isclose(p, table.encircle_sum("even", 2), 0)
    for j in p.colors:
        for parity in ("even", "odd"):
            table.encircle_sum(parity, j)   # internal assertion must hold


def test_twist(table):
    p = table.params
    for i in p.colors:
        assert isclose(p, table.twist(i), 1 / q_sq(p, i))
