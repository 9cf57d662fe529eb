import random

import pytest

from spinv.gf2 import (SpinStructureError, SurfaceSpinStructure,
                       all_spin_structures, arf, arf_census, bits_to_tuple,
                       characteristic_sublinks, class_of_cocycle, gf2_nullspace,
                       gf2_rank, gf2_solve, h1_data, is_characteristic,
                       spin_eval_curve)


def test_rank_and_solve():
    rows = [0b011, 0b110, 0b101]
    assert gf2_rank(rows, 3) == 2
    sol, ker = gf2_solve(rows, 3, [1, 1, 0])
    assert sol is not None
    assert len(ker) == 1
    for v in (sol, sol ^ ker[0]):
        for r, b in zip(rows, (1, 1, 0)):
            assert bin(r & v).count("1") % 2 == b
    none_sol, _ = gf2_solve([0b01], 2, [0, 1][:1])
    assert none_sol == 0
    bad, _ = gf2_solve([0b00], 1, [1])
    assert bad is None


def test_characteristic_small_matrices():
    assert characteristic_sublinks([[0]]) == [(0,), (1,)]
    assert characteristic_sublinks([[1]]) == [(1,)]
    assert characteristic_sublinks([[2]]) == [(0,), (1,)]
    assert characteristic_sublinks([]) == [()]


def test_characteristic_counts_random():
    rng = random.Random(0)
    for _ in range(30):
        m = rng.randint(1, 6)
        B = [[0] * m for _ in range(m)]
        for i in range(m):
            B[i][i] = rng.randint(-5, 5)
            for j in range(i + 1, m):
                B[i][j] = B[j][i] = rng.randint(-3, 3)
        sols = characteristic_sublinks(B)
        rows = [sum(((B[i][j] & 1) << j) for j in range(m)) for i in range(m)]
        assert len(sols) == 2 ** len(gf2_nullspace(rows, m))
        for x in sols:
            assert is_characteristic(B, x)


def test_spin_eval_curve_examples():
    B = [[0, 1], [1, 2]]
    for x in characteristic_sublinks(B):
        # trivial 0-framed unknot disjoint from the link
        assert spin_eval_curve(B, x, 0, [0, 0]) == 1
        # framing 1, no linking
        assert spin_eval_curve(B, x, 1, [0, 0]) == 0
        # the defining property on every component
        for i in range(2):
            assert spin_eval_curve(B, x, B[i][i], B[i]) == 1


def test_spin_eval_defining_property_exhaustive():
    rng = random.Random(1)
    for _ in range(20):
        m = rng.randint(1, 5)
        B = [[0] * m for _ in range(m)]
        for i in range(m):
            B[i][i] = rng.randint(-4, 4)
            for j in range(i + 1, m):
                B[i][j] = B[j][i] = rng.randint(-2, 2)
        for x in characteristic_sublinks(B):
            for i in range(m):
                assert spin_eval_curve(B, x, B[i][i],
                                       [B[i][j] for j in range(m)]) == 1


def test_spin_eval_rejects_noncharacteristic():
    with pytest.raises(SpinStructureError):
        spin_eval_curve([[1]], (0,), 0, [0])


def test_arf_values():
    assert arf(SurfaceSpinStructure((0,), (0,))) == 0
    assert arf(SurfaceSpinStructure((1,), (1,))) == 1
    counts = arf_census(2)
    assert counts == (10, 6)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_arf_census(g):
    c0, c1 = arf_census(g)
    assert c0 == 2 ** (g - 1) * (2 ** g + 1)
    assert c1 == 2 ** (g - 1) * (2 ** g - 1)
    assert c0 + c1 == 4 ** g
    assert len(all_spin_structures(g)) == 4 ** g


def test_h1_of_circle_like_complex():
    # cell complex of a circle: one vertex, one edge (both endpoints equal),
    # no faces
    d0 = [0b0]       # the vertex appears twice on the edge: even incidence
    d1 = []
    h, b = h1_data(d0, d1, 1)
    assert len(h) == 1 and len(b) == 0
    assert class_of_cocycle(0b1, h, b, 1) == (1,)
    assert class_of_cocycle(0b0, h, b, 1) == (0,)


def test_h1_of_contractible_complex():
    # interval: two vertices, one edge; every 1-cochain is a coboundary
    d0 = [0b1, 0b1]
    d1 = []
    h, b = h1_data(d0, d1, 1)
    assert len(h) == 0 and len(b) == 1
    assert class_of_cocycle(0b1, h, b, 1) == ()


def test_class_of_cocycle_rejects_noncocycle():
    # a single triangle with three distinct edges: d1 row 0b111
    d0 = [0b011, 0b101, 0b110]
    d1 = [0b111]
    h, b = h1_data(d0, d1, 3)
    with pytest.raises(ValueError):
        class_of_cocycle(0b001, h, b, 3)


def test_bits_roundtrip():
    assert bits_to_tuple(0b101, 3) == (1, 0, 1)
