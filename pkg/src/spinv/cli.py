"""Command-line interface.

Commands: constants, rt, rt-spin, tv, tv-refined, dims, projector, verify.
Exit codes: 0 success, 2 bad configuration, 3 bad spin structure,
4 malformed input file, 5 verification failure.

Output is a text table (default) or canonical JSON (--format json): numbers
are printed with 30 significant digits in JSON and 10 in tables, complex
values as [re, im] pairs of digit strings, keys sorted, so that re-parsing
and re-printing emitted JSON is byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import mpmath

from . import verify as verify_mod
from .gf2 import SurfaceSpinStructure, arf
from .links import LinkFormatError, link_from_json, linking_matrix
from .recoupling import RecouplingTable
from .statesum import (TriangulationError, triangulation_from_json,
                       tv_refined, tv_state_sum)
from .surfaces import projector, spin_dim, verlinde_dim
from .surgery import (SpinStructureError, SurgeryPresentation,
                      check_splitting, spin_structures, tau, tau_spin)
from .theory import (TheoryError, delta, delta_bar, isclose, make_theory,
                     omega_sq, omega_squared, q_sq)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SPIN = 3
EXIT_INPUT = 4
EXIT_VERIFY = 5

TABLE_DIGITS = 10
JSON_DIGITS = 30


def _num(value, digits: int) -> str:
    return mpmath.nstr(mpmath.mpf(value) if not isinstance(
        value, (mpmath.mpf, mpmath.mpc)) else value, digits,
        strip_zeros=True)


def _complex_pair(value, digits: int):
    z = mpmath.mpmathify(value)
    return [mpmath.nstr(mpmath.re(z), digits), mpmath.nstr(mpmath.im(z), digits)]


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _load_json_file(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _theory(args):
    try:
        return make_theory(args.r, args.precision, args.tolerance)
    except TheoryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def cmd_constants(args) -> int:
    p = _theory(args)
    t = RecouplingTable(p)
    checks = []
    s = sum(omega_sq(p, i) ** 2 for i in p.colors)
    checks.append(("sum omega_i^4 = omega^2", isclose(p, s, omega_squared(p))))
    checks.append(("delta * delta_bar = omega^2",
                   isclose(p, delta(p) * delta_bar(p), omega_squared(p))))
    checks.append(("omega_sq parity symmetry", all(
        isclose(p, omega_sq(p, p.r - 2 - i), omega_sq(p, i))
        for i in p.colors)))
    checks.append(("q_sq parity antisymmetry", all(
        isclose(p, q_sq(p, p.r - 2 - i), (-1) ** (i + 1) * q_sq(p, i))
        for i in p.colors)))
    checks.append(("delta = odd-color sum", isclose(
        p, sum(q_sq(p, i) * omega_sq(p, i) ** 2 for i in range(1, p.r - 1, 2)),
        delta(p))))
    if args.format == "json":
        _emit_json({
            "command": "constants", "r": p.r,
            "omega_sq": {str(i): _num(omega_sq(p, i), JSON_DIGITS)
                         for i in p.colors},
            "q_sq": {str(i): _complex_pair(q_sq(p, i), JSON_DIGITS)
                     for i in p.colors},
            "omega_squared": _num(omega_squared(p), JSON_DIGITS),
            "delta": _complex_pair(delta(p), JSON_DIGITS),
            "delta_bar": _complex_pair(delta_bar(p), JSON_DIGITS),
            "checks": {name: bool(ok) for name, ok in checks},
        })
    else:
        print(f"theory r={p.r}, A = exp(2 pi i / {4 * p.r})")
        print(f"{'i':>3} {'omega_sq(i)':>16} {'q_sq(i)':>36}")
        for i in p.colors:
            q = q_sq(p, i)
            print(f"{i:>3} {_num(omega_sq(p, i), TABLE_DIGITS):>16} "
                  f"[{mpmath.nstr(mpmath.re(q), TABLE_DIGITS)}, "
                  f"{mpmath.nstr(mpmath.im(q), TABLE_DIGITS)}]")
        print(f"omega^2 = {_num(omega_squared(p), TABLE_DIGITS)}")
        print(f"delta   = {mpmath.nstr(delta(p), TABLE_DIGITS)}")
        for name, ok in checks:
            print(f"  [{'pass' if ok else 'FAIL'}] {name}")
    return EXIT_OK if all(ok for _, ok in checks) else EXIT_VERIFY


def _parse_link(path: str):
    obj = _load_json_file(path)
    try:
        return link_from_json(obj)
    except LinkFormatError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def cmd_rt(args, force_spin: bool = False) -> int:
    p = _theory(args)
    t = RecouplingTable(p)
    link = _parse_link(args.file)
    pres = SurgeryPresentation(link)
    spin_arg = "all" if force_spin and args.spin is None else args.spin
    value = tau(t, pres, threads=args.threads)
    rows = []
    residual = None
    if spin_arg is not None:
        if spin_arg == "all":
            report = check_splitting(t, pres, threads=args.threads)
            rows = sorted(report.terms.items())
            residual = report.residual
        else:
            bits = tuple(1 if ch == "1" else 0 for ch in spin_arg)
            if len(bits) != pres.num_components or \
                    any(ch not in "01" for ch in spin_arg):
                print(f"error: spin bitstring must have "
                      f"{pres.num_components} bits of 0/1", file=sys.stderr)
                return EXIT_SPIN
            try:
                rows = [(bits, tau_spin(t, pres, bits, threads=args.threads))]
            except SpinStructureError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_SPIN
    if args.format == "json":
        out = {"command": "rt", "r": p.r, "file": args.file,
               "linking_matrix": linking_matrix(link),
               "tau": _complex_pair(value, JSON_DIGITS)}
        if rows:
            out["spin"] = {"".join(map(str, K)): _complex_pair(v, JSON_DIGITS)
                           for K, v in rows}
        if residual is not None:
            out["splitting_residual"] = _num(residual, JSON_DIGITS)
        _emit_json(out)
    else:
        print(f"tau(M) = {mpmath.nstr(value, TABLE_DIGITS)}")
        for K, v in rows:
            print(f"  tau(M, {''.join(map(str, K))}) = "
                  f"{mpmath.nstr(v, TABLE_DIGITS)}")
        if residual is not None:
            print(f"  splitting residual = {_num(residual, 3)}")
    return EXIT_OK


def _parse_triangulation(path: str):
    obj = _load_json_file(path)
    try:
        return triangulation_from_json(obj)
    except TriangulationError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def cmd_tv(args, force_refined: bool = False) -> int:
    p = _theory(args)
    t = RecouplingTable(p)
    T = _parse_triangulation(args.file)
    total = tv_state_sum(t, T)
    h_arg = "all" if force_refined and args.h is None else args.h
    rows = []
    if h_arg is not None:
        rank = T.h1_rank()
        if h_arg == "all":
            classes = [tuple((m >> i) & 1 for i in range(rank))
                       for m in range(1 << rank)]
        else:
            try:
                idx = int(h_arg)
                classes = [tuple((idx >> i) & 1 for i in range(rank))]
            except ValueError:
                print("error: --h must be 'all' or an integer index",
                      file=sys.stderr)
                return EXIT_CONFIG
        for h in classes:
            rows.append((h, tv_refined(t, T, h)))
    if args.format == "json":
        out = {"command": "tv", "r": p.r, "file": args.file,
               "tets": T.num_tets, "h1_rank": T.h1_rank(),
               "state_sum": _complex_pair(total, JSON_DIGITS)}
        if rows:
            out["refined"] = {"".join(map(str, h)): _complex_pair(v, JSON_DIGITS)
                              for h, v in rows}
        _emit_json(out)
    else:
        print(f"Z(M) = {mpmath.nstr(total, TABLE_DIGITS)}   "
              f"({T.num_tets} tets, H^1 rank {T.h1_rank()})")
        for h, v in rows:
            label = "".join(map(str, h)) if h else "0"
            print(f"  Z(M, h={label}) = {mpmath.nstr(v, TABLE_DIGITS)}")
    return EXIT_OK


def cmd_dims(args) -> int:
    p = _theory(args)
    t = RecouplingTable(p)
    gs = range(1, args.genus_max + 1)
    rows = []
    for g in gs:
        rows.append((g, verlinde_dim(t, g), spin_dim(t, g, 0), spin_dim(t, g, 1)))
    if args.format == "json":
        _emit_json({"command": "dims", "r": p.r,
                    "rows": [{"genus": g, "verlinde": d, "arf0": d0, "arf1": d1}
                             for g, d, d0, d1 in rows]})
    else:
        print(f"{'genus':>5} {'dim V':>8} {'dim (Arf 0)':>12} {'dim (Arf 1)':>12}")
        for g, d, d0, d1 in rows:
            print(f"{g:>5} {d:>8} {d0:>12} {d1:>12}")
    return EXIT_OK


def cmd_projector(args) -> int:
    p = _theory(args)
    t = RecouplingTable(p)
    g = args.genus
    rows = []
    for amask in range(1 << g):
        for bmask in range(1 << g):
            qa = tuple((amask >> i) & 1 for i in range(g))
            qb = tuple((bmask >> i) & 1 for i in range(g))
            sigma = SurfaceSpinStructure(qa, qb)
            P = projector(t, g, sigma)
            rows.append((qa, qb, arf(sigma), P.trace()))
    if args.format == "json":
        _emit_json({"command": "projector", "r": p.r, "genus": g,
                    "rows": [{"qa": list(qa), "qb": list(qb), "arf": a,
                              "trace": int(round(tr))}
                             for qa, qb, a, tr in rows]})
    else:
        print(f"{'qa':>8} {'qb':>8} {'Arf':>4} {'trace':>6}")
        for qa, qb, a, tr in rows:
            print(f"{''.join(map(str, qa)):>8} {''.join(map(str, qb)):>8} "
                  f"{a:>4} {int(round(tr)):>6}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify_mod.run_all(seed=args.seed, precision=args.precision)
    if args.format == "json":
        _emit_json({"command": "verify",
                    "results": [{"criterion": r.criterion, "name": r.name,
                                 "passed": r.passed, "detail": r.detail}
                                for r in results]})
    else:
        for r in results:
            print(verify_mod.format_result(r))
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="spinv",
        description="Quantum invariants of closed 3-manifolds with spin "
                    "and Z2-cohomology refinements")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--r", type=int, default=8,
                        help="order parameter, a multiple of 4 (default 8)")
    common.add_argument("--precision", type=int, default=128,
                        help="working precision in bits (default 128)")
    common.add_argument("--tolerance", type=float, default=1e-20,
                        help="approximate-equality tolerance (default 1e-20)")
    common.add_argument("--threads", type=int, default=1,
                        help="parallel workers for coloring sums (default 1)")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized verification suites")
    sub = top.add_subparsers(dest="command", required=True)

    sub.add_parser("constants", parents=[common],
                   help="print theory scalars and their identities")
    q = sub.add_parser("rt", parents=[common],
                       help="surgery invariant of a link JSON file")
    q.add_argument("file")
    q.add_argument("--spin", default=None, metavar="all|BITS",
                   help="also compute spin refinements")
    q = sub.add_parser("rt-spin", parents=[common],
                       help="rt with all spin refinements")
    q.add_argument("file")
    q.add_argument("--spin", default=None, metavar="all|BITS")
    q = sub.add_parser("tv", parents=[common],
                       help="state sum of a triangulation JSON file")
    q.add_argument("file")
    q.add_argument("--h", default=None, metavar="all|INDEX",
                   help="also compute cohomology refinements")
    q = sub.add_parser("tv-refined", parents=[common],
                       help="tv with all cohomology refinements")
    q.add_argument("file")
    q.add_argument("--h", default=None, metavar="all|INDEX")
    q = sub.add_parser("dims", parents=[common],
                       help="Verlinde and spin dimension table")
    q.add_argument("--genus-max", type=int, default=3)
    q = sub.add_parser("projector", parents=[common],
                       help="spin projector traces at one genus")
    q.add_argument("--genus", type=int, default=1)
    sub.add_parser("verify", parents=[common],
                   help="run the full acceptance suite")
    return top


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "constants":
            return cmd_constants(args)
        if args.command == "rt":
            return cmd_rt(args)
        if args.command == "rt-spin":
            return cmd_rt(args, force_spin=True)
        if args.command == "tv":
            return cmd_tv(args)
        if args.command == "tv-refined":
            return cmd_tv(args, force_refined=True)
        if args.command == "dims":
            return cmd_dims(args)
        if args.command == "projector":
            return cmd_projector(args)
        if args.command == "verify":
            return cmd_verify(args)
    except TheoryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
