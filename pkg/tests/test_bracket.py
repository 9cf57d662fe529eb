import random
from itertools import product

import mpmath
import pytest

from spinv import bracket as B
from spinv.recoupling import RecouplingTable
from spinv.theory import isclose, make_theory, omega_sq, q_sq


@pytest.fixture(scope="module")
def table():
    return RecouplingTable(make_theory(8, 128, 1e-20))


def test_zero_colored_unknot(table):
    assert isclose(table.params, table.bracket(B.unknot_diagram(0)), 1)


def test_unknot_cables_give_quantum_dimensions(table):
    p = table.params
    for i in p.colors:
        assert isclose(p, table.bracket(B.unknot_diagram(i)), omega_sq(p, i))


def test_kink_convention(table):
    p = table.params
    for i in range(4):
        plus = table.bracket(B.kinked_unknot_diagram(i, 1))
        assert isclose(p, plus, omega_sq(p, i) / q_sq(p, i))
        minus = table.bracket(B.kinked_unknot_diagram(i, -1))
        assert isclose(p, minus, omega_sq(p, i) * q_sq(p, i))


def test_jw_idempotence(table):
    p = table.params
    for n in range(1, 7):
        d = B.Diagram()
        for k in range(n):
            d.cup(k)
        d.jw(0, n)
        d.jw(0, n)   # applying the projector twice changes nothing
        for k in reversed(range(n)):
            d.cap(k)
        once = table.bracket(B.unknot_diagram(n))
        assert isclose(p, table.bracket(d), once), n


def test_jw_annihilation(table):
    # capping two adjacent strands of the projector gives zero
    p = table.params
    for n in range(2, 7):
        for k in range(n - 1):
            d = B.Diagram()
            for j in range(n):
                d.cup(j)
            d.jw(0, n)
            d.cap(k)
            while True:
                width = sum(2 if op[0] == "cup" else -2 if op[0] == "cap" else 0
                            for op in d.ops)
                if width == 0:
                    break
                d.cap(0)
            assert abs(table.bracket(d)) < mpmath.mpf("1e-30"), (n, k)


def test_theta_matches_closed_form(table):
    # every admissible triple with color sum <= 10
    p = table.params
    checked = 0
    for a, b, c in product(p.colors, repeat=3):
        if not table.admissible(a, b, c) or a + b + c > 10:
            continue
        diagram = table.bracket(B.theta_diagram(a, b, c))
        assert isclose(p, diagram, table.theta(a, b, c), 1e-20), (a, b, c)
        checked += 1
    assert checked == 56


def test_tet_matches_closed_form(table):
    # every admissible 6-tuple with color sum <= 10
    p = table.params
    checked = 0
    for tup in product(p.colors, repeat=6):
        if sum(tup) > 10:
            continue
        a, b, e, c, d, f = tup
        faces = ((a, b, e), (c, d, e), (a, d, f), (b, c, f))
        if not all(table.admissible(*x) for x in faces):
            continue
        diagram = table.bracket(B.tet_diagram(*tup))
        assert isclose(p, diagram, table.tet(*tup), 1e-18), tup
        checked += 1
    assert checked == 86


def test_hopf_matches_braid_diagram(table):
    p = table.params
    for i, j in product(range(4), repeat=2):
        d = B.braid_closure_diagram([i, j], [1, 1], [0, 1])
        assert isclose(p, table.bracket(d), table.hopf(i, j), 1e-20)


def test_markov_conjugation_invariance(table):
    # cyclically permuting the braid word re-slices the same closed diagram
    p = table.params
    rng = random.Random(0)
    for _ in range(5):
        half = [rng.choice([1, -1, 2, -2]) for _ in range(3)]
        word = half + [-w for w in reversed(half)]  # trivial permutation
        colors = [rng.randint(0, 2) for _ in range(3)]
        base = None
        for shift in range(0, len(word), 2):
            shifted = word[shift:] + word[:shift]
            d = B.braid_closure_diagram(colors, shifted, [0, 1, 2])
            v = table.bracket(d)
            if base is None:
                base = v
            else:
                assert isclose(p, v, base, 1e-18), (word, shift)


def test_distant_generators_commute(table):
    p = table.params
    colors = [1, 2, 1, 2]
    w1 = [1, 3, -1, -3]
    w2 = [3, 1, -3, -1]
    d1 = B.braid_closure_diagram(colors, w1, [0, 1, 2, 3])
    d2 = B.braid_closure_diagram(colors, w2, [0, 1, 2, 3])
    assert isclose(p, table.bracket(d1), table.bracket(d2), 1e-20)


def test_width_limit(table):
    d = B.unknot_diagram(6)
    with pytest.raises(B.WidthLimitExceeded):
        table.bracket(d, width_limit=5)


def test_degenerate_projector_error():
    params = make_theory(8, 128, 1e-20)
    with pytest.raises(B.DegenerateColorError):
        B.jones_wenzl(params, 8)   # [8] = 0 at r = 8


def test_open_diagram_rejected(table):
    d = B.Diagram().cup(0)
    with pytest.raises(ValueError):
        table.bracket(d)
