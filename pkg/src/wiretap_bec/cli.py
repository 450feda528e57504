"""Command-line front end emitting plot-ready CSV/JSON data files.

Subcommands: ``profile`` (per-bit-channel erasure/TVD tables), ``rate-curve``
(achievable-rate lower bounds vs the second-order benchmark) and
``validate`` (oracle cross-check report).  Exit codes: 0 success, 1 usage
error, 2 validation failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__, bitchannel, codes, oracle, secrecy

_FAMILY = {"polar": codes.POLAR, "rm": codes.REED_MULLER}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt(x) -> str:
    if isinstance(x, float):
        return "%.12g" % x
    return str(x)


def _write_table(path: str, meta: dict, header: list[str], rows: list[tuple],
                 fmt: str) -> None:
    out = Path(path)
    if fmt == "csv":
        lines = ["# %s=%s" % (k, _fmt(v)) for k, v in meta.items()]
        lines.append(",".join(header))
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        out.write_text("\n".join(lines) + "\n")
    else:
        doc = {"meta": {k: v for k, v in meta.items()},
               "rows": [dict(zip(header, row)) for row in rows]}
        out.write_text(json.dumps(doc, indent=2) + "\n")


def _meta(**extra) -> dict:
    meta = {"version": __version__, "generated": time.strftime("%Y-%m-%dT%H:%M:%S")}
    meta.update(extra)
    return meta


def _cmd_profile(args) -> int:
    family = _FAMILY[args.family]
    n = 1 << args.m
    if not 0 <= args.p <= 1:
        raise _UsageError("--p must be in [0, 1]")
    if args.mode == "message":
        if args.k is None:
            raise _UsageError("--mode message requires --k")
        positions = codes.message_positions(family, args.m, args.k, args.p)
        mode = bitchannel.PastMode.message_past(positions)
        code = codes.make_code(family, args.m, args.k, args.p)
    else:
        mode = bitchannel.PastMode.full_past()
        code = codes.make_code(family, args.m, 0, args.p)

    use_exact = (args.trials == 0
                 or (args.trials is None and family == codes.POLAR
                     and mode.kind == bitchannel.FULL_PAST))
    if use_exact:
        prof = bitchannel.exactness_upgrade(code, args.p, mode)
    else:
        trials = args.trials or bitchannel.DEFAULT_TRIALS
        prof = bitchannel.mc_erasure_profile(code, args.p, mode, trials,
                                             args.seed, args.threads)

    meta = _meta(family=args.family, n=n, p=args.p, mode=mode.kind,
                 trials=prof.trials, seed=prof.seed if prof.seed is not None else "")
    header = ["index", "erasure", "tvd", "stderr"]
    rows = list(zip(prof.indices, prof.erasure, prof.tvd, prof.stderr))
    _write_table(args.out, meta, header, rows, args.format)
    sorted_rows = sorted(rows, key=lambda r: (r[2], r[0]))
    stem = Path(args.out)
    sorted_path = stem.with_name(stem.stem + "_sorted" + stem.suffix)
    _write_table(str(sorted_path), meta, header, sorted_rows, args.format)
    return 0


def _cmd_rate_curve(args) -> int:
    family = _FAMILY[args.family]
    if not 0 <= args.p <= 1:
        raise _UsageError("--p must be in [0, 1]")
    if not 0 < args.delta < 1:
        raise _UsageError("--delta must be in (0, 1)")
    budget = secrecy.SecrecyBudget(args.delta)
    bound = secrecy.BOUND1 if args.bound == 1 else secrecy.BOUND2
    trials = args.trials or bitchannel.DEFAULT_TRIALS
    header = ["n", "k", "rate", "bound", "tvd_sum", "second_order_rate", "note"]
    rows = []
    for m in args.m_list:
        res = secrecy.max_rate(family, m, args.p, budget, bound,
                               trials, args.seed, args.threads)
        benchmark = secrecy.second_order_rate(res.n, args.p, budget)
        note = "second-order-negative" if benchmark < 0 else ""
        rows.append((res.n, res.k, res.rate, res.bound, res.tvd_sum,
                     benchmark, note))
    meta = _meta(family=args.family, p=args.p, delta=args.delta,
                 bound=bound, trials=trials, seed=args.seed)
    _write_table(args.out, meta, header, rows, args.format)
    return 0


def _cmd_validate(args) -> int:
    lines = []
    failures = 0

    def check(name: str, ok: bool):
        nonlocal failures
        lines.append("%s %s" % ("PASS" if ok else "FAIL", name))
        if not ok:
            failures += 1

    if args.inject_fault:
        check("injected fault", False)
    ps = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    for family in codes.FAMILIES:
        for m in (2, 3):
            n = 1 << m
            if n > args.max_n:
                continue
            for p in ps:
                for k in range(1, n + 1):
                    code = codes.make_code(family, m, k, float(p))
                    tvd = oracle.exact_joint_tvd(code.generator,
                                                 code.message_positions, p)
                    b1 = sum(
                        (1 - oracle.exact_bitchannel_erasure(
                            code.generator, code.message_positions[:j],
                            code.message_positions[j], p)) / 2
                        for j in range(k))
                    b2 = sum(
                        (1 - oracle.exact_bitchannel_erasure(
                            code.generator, tuple(range(code.message_positions[j])),
                            code.message_positions[j], p)) / 2
                        for j in range(k))
                    ok = tvd <= b1 <= b2
                    check("sandwich %s n=%d p=%s k=%d" % (family, n, p, k), ok)
                full = codes.make_code(family, m, n, float(p))
                leak = oracle.exact_leakage(full.generator,
                                            full.message_positions, p)
                chain = sum(
                    1 - oracle.exact_bitchannel_erasure(
                        full.generator, full.message_positions[:j],
                        full.message_positions[j], p)
                    for j in range(n))
                check("leakage identity %s n=%d p=%s" % (family, n, p),
                      leak == chain)
    # Monte-Carlo calibration against the polar closed form
    for m in (3, 4):
        code = codes.make_code(codes.POLAR, m, 0, 0.4)
        exact = codes.polar_bitchannel_erasure(m, 0.4)
        prof = bitchannel.mc_erasure_profile(
            code, 0.4, bitchannel.PastMode.full_past(), 20_000, args.seed,
            args.threads)
        ok = all(abs(e - x) <= 4 * max(s, 1e-3)
                 for e, x, s in zip(prof.erasure, exact, prof.stderr))
        check("mc calibration polar m=%d" % m, ok)

    report = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(report)
    else:
        sys.stdout.write(report)
    return 2 if failures else 0


def build_parser() -> _Parser:
    parser = _Parser(prog="wiretap-bec", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, out_required=True):
        sp.add_argument("--family", choices=("polar", "rm"), required=True)
        sp.add_argument("--p", type=float, required=True,
                        help="eavesdropper erasure probability")
        sp.add_argument("--trials", type=int, default=None)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--threads", type=int, default=None)
        sp.add_argument("--out", required=out_required)
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("profile", help="per-bit-channel erasure/TVD table")
    common(sp)
    sp.add_argument("--m", type=int, required=True, help="log2 blocklength")
    sp.add_argument("--mode", choices=("full", "message"), default="full")
    sp.add_argument("--k", type=int, default=None,
                    help="message length (message mode only)")
    sp.set_defaults(func=_cmd_profile)

    sp = sub.add_parser("rate-curve", help="achievable-rate lower bounds")
    common(sp)
    sp.add_argument("--m", dest="m_list", required=True,
                    type=lambda s: [int(v) for v in s.split(",")],
                    help="comma-separated log2 blocklengths, e.g. 4,5,6")
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--bound", type=int, choices=(1, 2), default=2)
    sp.set_defaults(func=_cmd_rate_curve)

    sp = sub.add_parser("validate", help="oracle cross-check report")
    sp.add_argument("--max-n", type=int, default=8)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=None)
    sp.add_argument("--out", default=None)
    sp.add_argument("--inject-fault", action="store_true",
                    help=argparse.SUPPRESS)
    sp.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 1
    except (ValueError,) as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 1
    except OSError as exc:
        print("i/o error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
