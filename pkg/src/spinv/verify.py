"""The acceptance suite: every closed-form identity the library promises,
bundled as ten numbered criteria with pinned tolerances.

Each criterion is an independent function returning a CheckResult; run_all
executes all of them.  The randomized suites (6j identities, characteristic
counts) draw from a seeded generator, so runs are reproducible.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import product
from typing import Callable, List, Optional

import mpmath
import numpy as np

from . import data as shipped
from .gf2 import (SurfaceSpinStructure, all_spin_structures, arf, arf_census,
                  characteristic_sublinks, spin_eval_curve)
from .links import hopf_chain, unknot_link
from .recoupling import RecouplingTable
from .statesum import tv_refined, tv_state_sum
from .surfaces import (enumerate_colorings, projector, solid_torus_refined,
                       spin_dim, verlinde_dim)
from .surgery import (SurgeryPresentation, check_splitting,
                      refined_kirby_blowup, spin_structures, tau, tau_spin)
from .theory import (TheoryParams, delta, delta_bar, make_theory, omega_sq,
                     omega_squared, q_sq)


@dataclass
class CheckResult:
    criterion: int
    name: str
    passed: bool
    detail: str
    seconds: float


def format_result(r: CheckResult) -> str:
    mark = "PASS" if r.passed else "FAIL"
    return f"[{mark}] criterion {r.criterion:2d}: {r.name} " \
           f"({r.seconds:.2f}s) {r.detail}"


def _close(x, y, tol) -> bool:
    return abs(mpmath.mpmathify(x) - mpmath.mpmathify(y)) <= \
        mpmath.mpf(tol) * max(mpmath.mpf(1), abs(x), abs(y))


def _tables(precision: int, rs=(8, 12)):
    out = {}
    for r in rs:
        p = make_theory(r, precision, 1e-20)
        out[r] = RecouplingTable(p)
    return out


# -- criterion 1 -------------------------------------------------------------

def check_ground_identities(seed: int = 0, precision: int = 128) -> CheckResult:
    t0 = time.time()
    tol = "1e-18"
    failures = []
    for r in (8, 12):
        p = make_theory(r, precision, 1e-20)
        w2 = omega_squared(p)
        with p.workprec():
            closed = -2 * r / (p.A ** 2 - p.A ** -2) ** 2
            s4 = sum(omega_sq(p, i) ** 2 for i in p.colors)
            if not _close(s4, w2, tol):
                failures.append(f"r={r}: sum omega^4 != omega^2")
            if not _close(closed, w2, tol):
                failures.append(f"r={r}: closed form != omega^2")
            if not _close(delta(p) * delta_bar(p), w2, tol):
                failures.append(f"r={r}: delta*delta_bar != omega^2")
            for i in p.colors:
                if not _close(q_sq(p, p.r - 2 - i), (-1) ** (i + 1) * q_sq(p, i), tol):
                    failures.append(f"r={r}: q_sq parity at i={i}")
                if not _close(omega_sq(p, p.r - 2 - i), omega_sq(p, i), tol):
                    failures.append(f"r={r}: omega_sq parity at i={i}")
            dodd = sum(q_sq(p, i) * omega_sq(p, i) ** 2
                       for i in range(1, p.r - 1, 2))
            if not _close(dodd, delta(p), tol):
                failures.append(f"r={r}: delta != odd sum")
    return CheckResult(1, "ground identities (r=8,12; tol 1e-18)",
                       not failures, "; ".join(failures) or "all identities hold",
                       time.time() - t0)


# -- criterion 2 -------------------------------------------------------------

def check_circle_relations(seed: int = 0, precision: int = 128) -> CheckResult:
    t0 = time.time()
    table = _tables(precision, (8,))[8]
    p = table.params
    w2 = omega_squared(p)
    failures = []
    for j in p.colors:
        for parity, sign in (("even", 1), ("odd", -1)):
            val = table.encircle_sum(parity, j)
            expected = w2 / 2 * ((1 if j == 0 else 0)
                                 + sign * (1 if j == p.r - 2 else 0))
            if not _close(val, expected, "1e-15"):
                failures.append(f"parity={parity} j={j}")
    return CheckResult(2, "circle relations (r=8, all j; tol 1e-15)",
                       not failures, "; ".join(failures) or
                       f"both parities verified for all {p.r - 1} colors",
                       time.time() - t0)


# -- criterion 3 -------------------------------------------------------------

def _random_be_tuple(table: RecouplingTable, rng: random.Random):
    p = table.params
    colors = list(p.colors)
    while True:
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
        if table.admissible(pp, qq, rr):
            return a, b, c, d, e, f, pp, qq, rr


def check_sixj(seed: int = 0, precision: int = 128) -> CheckResult:
    t0 = time.time()
    tol = "1e-15"
    failures = []
    tables = _tables(precision)
    for r, table in tables.items():
        p = table.params
        h = r // 2 - 1
        anchor = table.sixj(h, r - 2, h, h, r - 2, h)
        if not _close(anchor, -1 / omega_sq(p, h), tol):
            failures.append(f"r={r}: half-color 6j anchor")
    table = tables[8]
    p = table.params
    colors = list(p.colors)
    rng = random.Random(seed)
    # orthogonality on 20 random (a,b,c,d)
    done = 0
    while done < 20:
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
                target = 1 if f1 == f2 else 0
                if not _close(acc, target, tol):
                    failures.append(f"orthogonality at {(a, b, c, d, f1, f2)}")
        done += 1
    # Biedenharn-Elliott on 20 random tuples
    for _ in range(20):
        a, b, c, d, e, f, pp, qq, rr = _random_be_tuple(table, rng)
        lhs = sum(omega_sq(p, x) * table.sixj(a, b, x, c, d, pp)
                  * table.sixj(c, d, x, e, f, qq)
                  * table.sixj(e, f, x, b, a, rr) for x in colors)
        rhs = table.sixj(pp, qq, rr, e, a, d) * table.sixj(pp, qq, rr, f, b, c)
        if not _close(lhs, rhs, tol):
            failures.append(f"pentagon at {(a, b, c, d, e, f, pp, qq, rr)}")
    return CheckResult(3, "6j anchor, orthogonality, pentagon (tol 1e-15)",
                       not failures, "; ".join(failures[:4]) or
                       "anchors at r=8,12; 20+20 seeded identities",
                       time.time() - t0)


# -- criterion 4 -------------------------------------------------------------

def check_rt_values(seed: int = 0, precision: int = 128) -> CheckResult:
    t0 = time.time()
    tol = "1e-12"
    table = _tables(precision, (8,))[8]
    p = table.params
    failures = []
    with p.workprec():
        w_inv = 1 / mpmath.sqrt(omega_squared(p))
    from .links import empty_link
    for name, link in (("empty", empty_link()), ("+1", unknot_link(1)),
                       ("-1", unknot_link(-1))):
        v = tau(table, SurgeryPresentation(link))
        if not _close(v, w_inv, tol):
            failures.append(f"tau(S3 via {name}) = {mpmath.nstr(v, 8)}")
    v = tau(table, SurgeryPresentation(unknot_link(0)))
    if not _close(v, 1, tol):
        failures.append("tau(S1xS2) != 1")
    for pf in (2, 3, 4):
        pres = SurgeryPresentation(unknot_link(pf))
        base = tau(table, pres)
        K = spin_structures(pres)[0]
        pres2, _ = refined_kirby_blowup(pres, K, epsilon=1, start=0, count=1)
        after = tau(table, pres2)
        if not _close(base, after, tol):
            failures.append(f"L({pf},1) blow-up changed tau")
    return CheckResult(4, "surgery invariants and Kirby moves (tol 1e-12)",
                       not failures, "; ".join(failures) or
                       "S3 x3 presentations, S1xS2, L(2..4,1) blow-ups",
                       time.time() - t0)


# -- criterion 5 -------------------------------------------------------------

def check_spin_splitting(seed: int = 0, precision: int = 128) -> CheckResult:
    t0 = time.time()
    tol = "1e-12"
    table = _tables(precision, (8,))[8]
    failures = []
    from .links import empty_link
    manifolds = [("S3", empty_link()), ("S1xS2", unknot_link(0))]
    manifolds += [(f"L({pf},1)", unknot_link(pf)) for pf in range(2, 7)]
    for name, link in manifolds:
        rep = check_splitting(table, SurgeryPresentation(link))
        if rep.residual > mpmath.mpf(tol):
            failures.append(f"{name}: residual {mpmath.nstr(rep.residual, 3)}")
    pres = SurgeryPresentation(unknot_link(0))
    for K in spin_structures(pres):
        v = tau_spin(table, pres, K)
        if not _close(v, mpmath.mpf(1) / 2, tol):
            failures.append(f"S1xS2 spin term {K} != 1/2")
    return CheckResult(5, "spin splitting (tol 1e-12)", not failures,
                       "; ".join(failures) or
                       "S3, S1xS2, L(2..6,1); S1xS2 halves exact",
                       time.time() - t0)


# -- criterion 6 -------------------------------------------------------------

def check_dimensions(seed: int = 0, precision: int = 128) -> CheckResult:
    t0 = time.time()
    table = _tables(precision, (8,))[8]
    failures = []
    if spin_dim(table, 1, 0) != 2 or spin_dim(table, 1, 1) != 1:
        failures.append("genus-1 spin dimensions")
    for g in (1, 2, 3):
        d0, d1 = spin_dim(table, g, 0), spin_dim(table, g, 1)
        census = 2 ** (g - 1) * (2 ** g + 1) * d0 \
            + 2 ** (g - 1) * (2 ** g - 1) * d1
        if census != verlinde_dim(table, g):
            failures.append(f"census identity at g={g}")
    if verlinde_dim(table, 2) != len(enumerate_colorings(table, 2)):
        failures.append("Verlinde vs brute-force count at g=2")
    return CheckResult(6, "Verlinde and spin dimensions", not failures,
                       "; ".join(failures) or
                       f"g=1: (2,1); census g<=3; dim V(2) = "
                       f"{verlinde_dim(table, 2)} by enumeration",
                       time.time() - t0)


# -- criterion 7 -------------------------------------------------------------

def check_projectors(seed: int = 0, precision: int = 128) -> CheckResult:
    t0 = time.time()
    table = _tables(precision, (8,))[8]
    failures = []
    for g in (1, 2):
        projs = [projector(table, g, s) for s in all_spin_structures(g)]
        n = len(projs[0].basis)
        total = np.zeros((n, n))
        for P in projs:
            M = P.matrix
            if np.abs(M @ M - M).max() >= 1e-12:
                failures.append(f"g={g}: idempotence {P.sigma}")
            if abs(np.trace(M) - spin_dim(table, g, arf(P.sigma))) >= 1e-12:
                failures.append(f"g={g}: trace {P.sigma}")
            total += M
        for A in projs:
            for Bp in projs:
                if A.sigma != Bp.sigma and \
                        np.abs(A.matrix @ Bp.matrix).max() >= 1e-12:
                    failures.append(f"g={g}: orthogonality")
        if np.abs(total - np.eye(n)).max() >= 1e-12:
            failures.append(f"g={g}: sum != identity")
    return CheckResult(7, "spin projector family (residuals < 1e-12)",
                       not failures, "; ".join(failures[:4]) or
                       "4 + 16 projectors: idempotent, orthogonal, "
                       "complete, traces match",
                       time.time() - t0)


# -- criterion 8 -------------------------------------------------------------

def check_tv_factorization(seed: int = 0, precision: int = 128) -> CheckResult:
    t0 = time.time()
    tol = "1e-10"
    table = _tables(precision, (8,))[8]
    failures = []
    pairs = (("s3_one_tet", "s3_empty"), ("s3_two_tet", "s3_empty"),
             ("s1xs2", "s1xs2"), ("rp3", "rp3"), ("lens_3_1", "lens_3_1"))
    for tri_name, link_name in pairs:
        T = shipped.load_triangulation(tri_name)
        pres = SurgeryPresentation(shipped.load_link(link_name))
        tv = tv_state_sum(table, T)
        tt = tau(table, pres)
        if not _close(tv, tt * mpmath.conj(tt), tol):
            failures.append(f"{tri_name}: factorization")
        rank = T.h1_rank()
        classes = [tuple((m >> i) & 1 for i in range(rank))
                   for m in range(1 << rank)]
        refined = {h: tv_refined(table, T, h) for h in classes}
        if not _close(sum(refined.values()), tv, tol):
            failures.append(f"{tri_name}: sum over classes")
        if rank == 1:
            sols = spin_structures(pres)
            taus = {K: tau_spin(table, pres, K) for K in sols}
            k0, k1 = sols
            want0 = sum(v * mpmath.conj(v) for v in taus.values())
            want1 = taus[k0] * mpmath.conj(taus[k1]) \
                + taus[k1] * mpmath.conj(taus[k0])
            if not _close(refined[(0,)], want0, tol):
                failures.append(f"{tri_name}: refined h=0")
            if not _close(refined[(1,)], want1, tol):
                failures.append(f"{tri_name}: refined h=1")
    return CheckResult(8, "state-sum factorization (tol 1e-10)", not failures,
                       "; ".join(failures) or
                       "Z = |tau|^2 on 5 pairs; refined classes on "
                       "S1xS2 and RP3", time.time() - t0)


# -- criterion 9 -------------------------------------------------------------

def check_solid_torus(seed: int = 0, precision: int = 128) -> CheckResult:
    t0 = time.time()
    table = _tables(precision, (8,))[8]
    p = table.params
    failures = []
    r = p.r
    quarter = mpmath.mpf(1) / 4

    def d(i, j, si, sj):
        return quarter * ((1 if i == 0 else 0) + si * (1 if i == r - 2 else 0)) \
            * ((1 if j == 0 else 0) + sj * (1 if j == r - 2 else 0))

    for i in p.colors:
        for j in p.colors:
            cases = ((False, False, 1, 1), (True, False, -1, -1),
                     (False, True, 1, -1), (True, True, -1, 1))
            total = mpmath.mpf(0)
            for nb, h, si, sj in cases:
                v = solid_torus_refined(table, i, j, nb, h)
                total += v
                if not _close(v, d(i, j, si, sj), "1e-18"):
                    failures.append(f"value at (i,j,s,h)=({i},{j},{nb},{h})")
            target = 1 if (i == 0 and j == 0) else 0
            if not _close(total, target, "1e-18"):
                failures.append(f"sum at (i,j)=({i},{j})")
    return CheckResult(9, "refined solid-torus values", not failures,
                       "; ".join(failures[:4]) or
                       f"all four sectors on {(r - 1) ** 2} color pairs",
                       time.time() - t0)


# -- criterion 10 ------------------------------------------------------------

def check_spin_algebra(seed: int = 0, precision: int = 128) -> CheckResult:
    t0 = time.time()
    rng = random.Random(seed)
    failures = []
    from .gf2 import gf2_nullspace
    for trial in range(30):
        m = rng.randint(1, 6)
        B = [[0] * m for _ in range(m)]
        for i in range(m):
            B[i][i] = rng.randint(-4, 4)
            for j in range(i + 1, m):
                B[i][j] = B[j][i] = rng.randint(-3, 3)
        sols = characteristic_sublinks(B)
        rows = [sum(((B[i][j] & 1) << j) for j in range(m)) for i in range(m)]
        nullity = len(gf2_nullspace(rows, m))
        if len(sols) != 2 ** nullity:
            failures.append(f"count at trial {trial}")
        # defining property s(L_i) = 1, exhaustively over components
        for x in sols:
            for i in range(m):
                val = spin_eval_curve(B, x, B[i][i],
                                      [B[i][j] for j in range(m)])
                if val != 1:
                    failures.append(f"s(L_{i}) != 1 at trial {trial}")
    for g in (1, 2, 3):
        c0, c1 = arf_census(g)
        if c0 != 2 ** (g - 1) * (2 ** g + 1) or c1 != 2 ** (g - 1) * (2 ** g - 1):
            failures.append(f"Arf census at g={g}")
    return CheckResult(10, "characteristic counts, spin evaluation, Arf census",
                       not failures, "; ".join(failures[:4]) or
                       "30 matrices (m<=6), s(L_i)=1 exhaustive, census g<=3",
                       time.time() - t0)


ALL_CHECKS: List[Callable[..., CheckResult]] = [
    check_ground_identities, check_circle_relations, check_sixj,
    check_rt_values, check_spin_splitting, check_dimensions,
    check_projectors, check_tv_factorization, check_solid_torus,
    check_spin_algebra,
]


def run_all(seed: int = 0, precision: int = 128) -> List[CheckResult]:
    return [check(seed=seed, precision=precision) for check in ALL_CHECKS]
