import random

import mpmath
import pytest

from spinv import links as L
from spinv import surgery as S
from spinv.recoupling import RecouplingTable
from spinv.theory import isclose, make_theory, omega_squared


@pytest.fixture(scope="module")
def table():
    return RecouplingTable(make_theory(8, 128, 1e-20))


@pytest.fixture(scope="module")
def table12():
    return RecouplingTable(make_theory(12, 128, 1e-20))


def omega_inv(table):
    return 1 / mpmath.sqrt(omega_squared(table.params))


@pytest.mark.parametrize("r", [8, 12])
def test_tau_s3_three_presentations(r, table, table12):
    t = table if r == 8 else table12
    p = t.params
    target = omega_inv(t)
    for link in (L.empty_link(), L.unknot_link(1), L.unknot_link(-1)):
        v = S.tau(t, S.SurgeryPresentation(link))
        assert isclose(p, v, target, 1e-18)


def test_tau_s1xs2(table):
    v = S.tau(table, S.SurgeryPresentation(L.unknot_link(0)))
    assert isclose(table.params, v, 1, 1e-20)


def test_tau_spin_values(table):
    p = table.params
    s1s2 = S.SurgeryPresentation(L.unknot_link(0))
    assert S.spin_structures(s1s2) == [(0,), (1,)]
    for K in ((0,), (1,)):
        assert isclose(p, S.tau_spin(table, s1s2, K), mpmath.mpf(1) / 2)
    s3 = S.SurgeryPresentation(L.unknot_link(1))
    assert S.spin_structures(s3) == [(1,)]
    assert isclose(p, S.tau_spin(table, s3, (1,)), omega_inv(table))


def test_tau_spin_rejects_noncharacteristic(table):
    s3 = S.SurgeryPresentation(L.unknot_link(1))
    with pytest.raises(S.SpinStructureError):
        S.tau_spin(table, s3, (0,))
    with pytest.raises(S.SpinStructureError):
        S.tau_spin(table, s3, (1, 0))


@pytest.mark.parametrize("pf", range(2, 7))
def test_splitting_lens_spaces(pf, table):
    rep = S.check_splitting(table, S.SurgeryPresentation(L.unknot_link(pf)))
    assert len(rep.terms) == (2 if pf % 2 == 0 else 1)
    assert rep.residual < mpmath.mpf("1e-20")


def test_splitting_trivial_for_s3(table):
    rep = S.check_splitting(table, S.SurgeryPresentation(L.unknot_link(1)))
    assert len(rep.terms) == 1
    assert rep.residual < mpmath.mpf("1e-30")


def test_splitting_s1xs2(table):
    rep = S.check_splitting(table, S.SurgeryPresentation(L.unknot_link(0)))
    assert sorted(rep.terms) == [(0,), (1,)]
    for v in rep.terms.values():
        assert isclose(table.params, v, mpmath.mpf(1) / 2)
    assert rep.residual < mpmath.mpf("1e-20")


def test_blowup_examples(table):
    p = table.params
    # disjoint +1 circle on S3 = [[1]], K = {L1}
    s3 = S.SurgeryPresentation(L.unknot_link(1))
    pres2, K2 = S.refined_kirby_blowup(s3, (1,), epsilon=1, start=0, count=0)
    assert K2 == (1, 1)
    assert isclose(p, S.tau(table, pres2), omega_inv(table), 1e-18)
    assert isclose(p, S.tau_spin(table, pres2, K2), omega_inv(table), 1e-18)
    # -1 disjoint circle on S1xS2 leaves tau and both refinements unchanged
    s1s2 = S.SurgeryPresentation(L.unknot_link(0))
    for K in S.spin_structures(s1s2):
        pres2, K2 = S.refined_kirby_blowup(s1s2, K, epsilon=-1, start=0, count=0)
        assert isclose(p, S.tau_spin(table, pres2, K2), mpmath.mpf(1) / 2, 1e-18)
    assert isclose(p, S.tau(table, pres2), 1, 1e-18)


def test_blowup_coefficient_rule(table):
    pres = S.SurgeryPresentation(L.unknot_link(3))
    _, K2 = S.refined_kirby_blowup(pres, (1,), 1, start=0, count=1)
    assert K2 == (1, 0)    # 1 + lk(new, K) = 1 + 1 = 0
    _, K3 = S.refined_kirby_blowup(pres, (1,), 1, start=0, count=0)
    assert K3 == (1, 1)    # disjoint: 1 + 0


def test_refined_kirby_randomized(table):
    p = table.params
    rng = random.Random(11)
    cases = 0
    while cases < 10:
        kind = rng.choice(("unknot", "chain2"))
        if kind == "unknot":
            link = L.unknot_link(rng.randint(-3, 5))
            count = rng.choice((0, 1))
        else:
            link = L.hopf_chain([rng.randint(-2, 3), rng.randint(-2, 3)])
            count = 0
        pres = S.SurgeryPresentation(link)
        eps = rng.choice((1, -1))
        start = 0 if count else rng.randint(0, pres.num_components - 1)
        for K in S.spin_structures(pres):
            pres2, K2 = S.refined_kirby_blowup(pres, K, eps, start=start,
                                               count=count)
            v1 = S.tau_spin(table, pres, K)
            v2 = S.tau_spin(table, pres2, K2)
            assert abs(v1 - v2) < mpmath.mpf("1e-20"), (kind, eps, K)
        cases += 1


def test_blowup_linking_bookkeeping(table):
    # encircling both strands of a chain: framings shift by eps, linking by
    # eps, and the new row holds the strand counts
    base = S.SurgeryPresentation(L.hopf_chain([2, 3]))
    K = S.spin_structures(base)[0]
    pres2, _ = S.refined_kirby_blowup(base, K, 1, start=0, count=2)
    assert pres2.matrix == [[3, 2, 1], [2, 4, 1], [1, 1, 1]]
    pres3, _ = S.refined_kirby_blowup(base, K, -1, start=0, count=2)
    assert pres3.matrix == [[1, 0, 1], [0, 2, 1], [1, 1, -1]]


def test_tau_mirror_conjugate(table):
    p = table.params
    for link in (L.unknot_link(3), L.hopf_chain([2, 3]),
                 L.braid_link(2, [1, 1, 1, 1], [0, 1], [1, -2])):
        pres = S.SurgeryPresentation(link)
        v = S.tau(table, pres)
        vm = S.tau(table, S.SurgeryPresentation(L.mirror(link)))
        assert isclose(p, vm, mpmath.conj(v), 1e-18)
        assert isclose(p, S.tau_reversed(table, pres), mpmath.conj(v), 1e-25)


def test_threads_agree(table):
    p = table.params
    pres = S.SurgeryPresentation(L.hopf_chain([2, 3]))
    v1 = S.tau(table, pres, threads=1)
    v2 = S.tau(table, pres, threads=3)
    assert isclose(p, v1, v2, 1e-25)


def test_empty_blowup(table):
    p = table.params
    empty = S.SurgeryPresentation(L.empty_link())
    pres2, K2 = S.refined_kirby_blowup(empty, (), epsilon=1)
    assert K2 == (1,)
    assert isclose(p, S.tau(table, pres2), omega_inv(table), 1e-18)
