"""Command-line front end: evaluation subcommands, grid scans, and the
acceptance-suite runner.

Exit codes: 0 ok, 1 test failure, 2 usage error, 3 budget refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Dict, List

import numpy as np

from . import __version__
from .acceptance import SUITES, run_suite
from .charsums import (BudgetError, S4Input, TrigWeight, cubic_form_charsum,
                       s4_closed, s4_direct, weighted_energy)
from .energies import energy_e2, energy_e4, energy_f2
from .expsums import ExpSumValue, esum_jh, gauss_sum_closed, gauss_sum_direct, gcal
from .scan import (ScanSpec, records_to_csv, records_to_json, run_scan,
                   SCAN_OPERATIONS)
from .sieve import (BudgetExceeded, SieveInstance, build_frame, ls_bound_table,
                    ls_lhs, px_monitor)
from .sqrtmod import sqrt_mod_all

DEFAULT_BUDGET = int(os.environ.get("SIEVELAB_BUDGET", 10 ** 9))


def _parse_rational(text: str) -> float:
    if "/" in text:
        return Fraction(text)
    return float(text)


def _parse_weight(text: str) -> TrigWeight:
    kind, _, arg = text.partition(":")
    if kind == "fejer":
        return TrigWeight.fejer(int(arg))
    raise argparse.ArgumentTypeError(f"unknown weight {text!r} (try fejer:<width>)")


def _expsum_payload(v: ExpSumValue) -> Dict[str, object]:
    return {"value_re": v.value.real, "value_im": v.value.imag, "abs": v.abs,
            "margin": v.margin, "terms": v.terms}


def _emit(args, payload) -> None:
    text = json.dumps(payload, indent=1, sort_keys=True, default=str) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_sqrt(args) -> int:
    rs = sqrt_mod_all(args.m, args.r)
    _emit(args, {"m": rs.m, "r": rs.modulus, "roots": list(rs.roots),
                 "count": len(rs)})
    return 0


def _cmd_energy(args) -> int:
    if args.kind == "e2":
        rep = energy_e2(args.R, args.j, args.r, args.method)
    elif args.kind == "e4":
        rep = energy_e4(args.R, args.j, args.r, args.method)
    else:
        if args.h is None:
            raise SystemExit(2)
        rep = energy_f2(args.R, args.j, args.h, args.r, args.method)
    _emit(args, {"kind": rep.kind, "R": rep.R, "j": rep.j, "h": rep.h,
                 "r": rep.r, "energy": rep.energy, "bound": rep.hyp_bound,
                 "ratio": rep.ratio, "method": rep.method})
    return 0


def _cmd_expsum(args) -> int:
    if args.expsum_cmd == "jh":
        v = esum_jh(args.l, args.n, args.j, args.h, args.r, form=args.form)
    elif args.expsum_cmd == "gauss":
        fn = gauss_sum_closed if args.closed else gauss_sum_direct
        v = fn(args.q, args.a, args.b)
    else:
        v = gcal(args.q, args.a, args.b, args.j, args.k, args.u, args.s)
    _emit(args, _expsum_payload(v))
    return 0


def _cmd_sieve(args) -> int:
    rng = np.random.default_rng(args.seed)
    coeffs = rng.standard_normal(args.N) + 1j * rng.standard_normal(args.N)
    inst = SieveInstance(M=args.M, coefficients=tuple(coeffs), Q=args.Q)
    lhs = ls_lhs(inst, moduli=args.moduli, budget=args.budget)
    payload = {"lhs": lhs, "moduli": args.moduli,
               "Z": float(np.sum(np.abs(coeffs) ** 2))}
    payload.update(ls_bound_table(args.Q, args.N))
    _emit(args, payload)
    return 0


def _cmd_px(args) -> int:
    _emit(args, px_monitor(args.x, args.Q, args.N, budget=args.budget))
    return 0


def _cmd_approx(args) -> int:
    frame = build_frame(args.x, args.N)
    _emit(args, {"x": str(frame.x), "N": frame.N, "b": frame.b, "r": frame.r,
                 "z": str(frame.z), "j": frame.j, "Q": frame.Q})
    return 0


def _cmd_charsum(args) -> int:
    if args.charsum_cmd == "s4":
        h = tuple(int(t) for t in args.h.split(","))
        if len(h) != 4:
            raise SystemExit(2)
        fn = s4_closed if args.closed else s4_direct
        _emit(args, _expsum_payload(fn(S4Input(args.j, h, args.r))))
    elif args.charsum_cmd == "cubic":
        _emit(args, cubic_form_charsum(args.M, args.r, args.weight,
                                       budget=args.budget))
    else:
        _emit(args, weighted_energy(args.R, args.j, args.r, args.weight,
                                    budget=args.budget))
    return 0


def _parse_grid(items: List[str]) -> Dict[str, List[int]]:
    grid: Dict[str, List[int]] = {}
    for item in items:
        name, _, spec = item.partition("=")
        if not spec:
            raise SystemExit(2)
        parts = spec.split(":")
        if len(parts) == 1:
            grid[name] = [int(v) for v in parts[0].split(",")]
        else:
            start, stop = int(parts[0]), int(parts[1])
            step = int(parts[2]) if len(parts) > 2 else 1
            grid[name] = list(range(start, stop + 1, step))
    return grid


def _cmd_scan(args) -> int:
    spec = ScanSpec(args.op, _parse_grid(args.param), seed=args.seed,
                    budget=args.budget)
    records = run_scan(spec)
    text = (records_to_csv(records) if args.format == "csv"
            else records_to_json(records))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_accept(args) -> int:
    results = run_suite(args.suite)
    for res in results:
        print(res.line)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sievelab",
        description="verification workbench for modular square roots, "
                    "additive energies, exponential sums and sieve "
                    "inequalities")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="parallelism degree (all operations are pure; "
                             "1 means fully serial)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="work-unit cap (env SIEVELAB_BUDGET)")
    common.add_argument("--out", default=None, help="output path")
    common.add_argument("--format", choices=("csv", "json"), default="json")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("sqrt", parents=[common])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(fn=_cmd_sqrt)

    p = sub.add_parser("energy", parents=[common])
    p.add_argument("--kind", choices=("e2", "e4", "f2"), required=True)
    p.add_argument("--R", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--method", choices=("auto", "conv", "brute"),
                   default="auto")
    p.set_defaults(fn=_cmd_energy)

    p = sub.add_parser("scan", parents=[common])
    p.add_argument("--op", choices=sorted(SCAN_OPERATIONS), required=True)
    p.add_argument("--param", action="append", default=[],
                   metavar="NAME=START:STOP[:STEP] | NAME=v1,v2,...")
    p.set_defaults(fn=_cmd_scan)

    p = sub.add_parser("expsum", parents=[common])
    esub = p.add_subparsers(dest="expsum_cmd", required=True)
    pj = esub.add_parser("jh", parents=[common])
    for flag in ("--l", "--n", "--j", "--h", "--r"):
        pj.add_argument(flag, type=int, required=True)
    pj.add_argument("--form", choices=("paired", "bare"), default="paired")
    pj.set_defaults(fn=_cmd_expsum)
    pg = esub.add_parser("gauss", parents=[common])
    for flag in ("--q", "--a", "--b"):
        pg.add_argument(flag, type=int, required=True)
    pg.add_argument("--closed", action="store_true")
    pg.set_defaults(fn=_cmd_expsum)
    pc = esub.add_parser("gcal", parents=[common])
    for flag in ("--q", "--a", "--b", "--j", "--k", "--u", "--s"):
        pc.add_argument(flag, type=int, required=True)
    pc.set_defaults(fn=_cmd_expsum)

    p = sub.add_parser("sieve", parents=[common])
    ssub = p.add_subparsers(dest="sieve_cmd", required=True)
    pl = ssub.add_parser("lhs", parents=[common])
    pl.add_argument("--Q", type=int, required=True)
    pl.add_argument("--N", type=int, required=True)
    pl.add_argument("--M", type=int, default=0)
    pl.add_argument("--moduli", choices=("classical", "squares"),
                    default="classical")
    pl.set_defaults(fn=_cmd_sieve)

    p = sub.add_parser("px", parents=[common])
    p.add_argument("--x", type=_parse_rational, required=True)
    p.add_argument("--Q", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(fn=_cmd_px)

    p = sub.add_parser("approx", parents=[common])
    p.add_argument("--x", type=_parse_rational, required=True)
    p.add_argument("--N", type=int, required=True,
                   help="window length; tau = floor(sqrt(N))")
    p.set_defaults(fn=_cmd_approx)

    p = sub.add_parser("charsum", parents=[common])
    csub = p.add_subparsers(dest="charsum_cmd", required=True)
    ps = csub.add_parser("s4", parents=[common])
    ps.add_argument("--r", type=int, required=True)
    ps.add_argument("--j", type=int, required=True)
    ps.add_argument("--h", required=True, metavar="h1,h2,h3,h4")
    ps.add_argument("--closed", action="store_true")
    ps.set_defaults(fn=_cmd_charsum)
    pcu = csub.add_parser("cubic", parents=[common])
    pcu.add_argument("--r", type=int, required=True)
    pcu.add_argument("--M", type=int, required=True)
    pcu.add_argument("--weight", type=_parse_weight, default=TrigWeight.fejer(3))
    pcu.set_defaults(fn=_cmd_charsum)
    pe = csub.add_parser("energy", parents=[common])
    pe.add_argument("--r", type=int, required=True)
    pe.add_argument("--R", type=int, required=True)
    pe.add_argument("--j", type=int, required=True)
    pe.add_argument("--weight", type=_parse_weight, default=TrigWeight.fejer(3))
    pe.set_defaults(fn=_cmd_charsum)

    p = sub.add_parser("accept", parents=[common])
    p.add_argument("suite", nargs="?", default="all",
                   choices=sorted(SUITES))
    p.set_defaults(fn=_cmd_accept)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (BudgetError, BudgetExceeded) as exc:
        print(f"budget refusal: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
