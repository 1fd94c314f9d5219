"""Command-line front end.

Exit codes: 0 success, 1 usage or parameter error, 2 the fast engines refuse
because an assumption fails, 3 engines disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cyclotomy import all_classes
from .lincomp import ENGINES, EngineDisagreement, infer_prime_power, run_engine
from .numtheory import AssumptionError, ParameterError, Params, check_assumptions, is_prime
from .seqgen import (
    BitSequence,
    SupportSpec,
    generate_sequence,
    load_support,
    read_sequence,
    write_sequence,
    xiao_support,
)
from .sweep import SUPPORT_KINDS, build_grid, rows_to_csv, run_sweep

EXIT_OK, EXIT_USAGE, EXIT_ASSUMPTION, EXIT_DISAGREE = 0, 1, 2, 3


def _dump(obj) -> None:
    print(json.dumps(obj))


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _params(args) -> Params:
    if args.p is None or args.r is None or args.f is None:
        raise ParameterError("--p, --r and --f are required")
    if not is_prime(args.p) or args.p == 2:
        raise ParameterError(f"p={args.p} is not an odd prime")
    return Params.build(args.p, args.r, args.f, args.g)


def _spec_from_args(args) -> SupportSpec | None:
    if getattr(args, "support", None):
        return load_support(args.support)
    if getattr(args, "preset", None) == "xiao":
        return xiao_support(_params(args), args.b)
    return None


def cmd_info(args) -> int:
    prm = _params(args)
    asm = check_assumptions(prm.p, prm.f)
    _dump({
        "p": prm.p, "r": prm.r, "e": prm.e, "f": prm.f, "g": prm.g, "N": prm.N,
        "ord2": prm.ord2, "wieferich": prm.wieferich, "gcd_ok": asm.gcd_ok,
        "assumptions_ok": asm.ok,
    })
    return EXIT_OK


def cmd_classes(args) -> int:
    if args.j < 1:
        raise ParameterError(f"level j must be >= 1, got {args.j}")
    prm = Params.build(args.p, args.j, args.f, args.g)
    _dump(all_classes(prm, args.j))
    return EXIT_OK


def cmd_generate(args) -> int:
    spec = _spec_from_args(args)
    if spec is None:
        raise ParameterError("give --support FILE or --preset xiao with --p/--r/--f")
    seq = generate_sequence(spec)
    if args.output:
        write_sequence(seq, args.output)
    else:
        sys.stderr.write(str(seq) + "\n")
    prm = spec.params
    _dump({"p": prm.p, "r": prm.r, "f": prm.f, "b": spec.b, "g": prm.g, "N": prm.N,
           "weight": seq.weight(), "output": args.output})
    return EXIT_OK


def cmd_lc(args) -> int:
    spec = _spec_from_args(args)
    seq = None
    if args.sequence:
        seq = read_sequence(args.sequence)
        if spec is None:
            pr = infer_prime_power(len(seq))
            if pr is not None and args.f is not None:
                seq.params = Params.build(pr[0], pr[1], args.f, args.g)
    if spec is None and seq is None:
        raise ParameterError("give --support FILE, --sequence FILE or --preset xiao")

    engines = list(ENGINES) if args.engine == "all" else [args.engine]
    if spec is None and any(e in ("fiber", "lemma6") for e in engines):
        if args.engine != "all":
            raise ParameterError(f"engine {args.engine} needs a support spec, not raw bits")
        engines = ["bm", "gcd"]

    reports, refusal = [], None
    for engine in engines:
        try:
            reports.append(run_engine(engine, spec=spec, seq=seq))
        except AssumptionError as exc:
            refusal = exc
    out = [r.to_json() for r in reports]
    if out:
        _dump(out[0] if args.engine != "all" else out)
    if refusal is not None:
        sys.stderr.write(f"refused ({refusal.predicate}): {refusal}\n")
        return EXIT_ASSUMPTION
    if len({r.L for r in reports}) > 1:
        sys.stderr.write("engines disagree: "
                         + ", ".join(f"{r.engine}={r.L}" for r in reports) + "\n")
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_sweep(args) -> int:
    for p in args.p:
        if p < 3 or not is_prime(p):
            raise ParameterError(f"p={p} is not an odd prime")
    specs = build_grid(args.p, args.r_max, args.f_policy, args.support, args.count, args.seed)
    rows = run_sweep(specs, args.period_bound, conjecture=args.support == "xiao", jobs=args.jobs)
    comment = (f"cyclolc sweep seed={args.seed} support={args.support} count={args.count} "
               f"f_policy={args.f_policy} period_bound={args.period_bound}")
    text = rows_to_csv(rows, comment)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    mismatches = sum(not r.all_agree for r in rows)
    print(f"rows={len(rows)} mismatches={mismatches}", file=sys.stderr if not args.output else sys.stdout)
    return EXIT_DISAGREE if mismatches else EXIT_OK


def _add_frame(sp, required: bool = False) -> None:
    sp.add_argument("--p", type=int, required=required)
    sp.add_argument("--r", type=int, required=required)
    sp.add_argument("--f", type=int, required=required)
    sp.add_argument("--g", type=int, default=None, help="primitive root mod p^2 (default: smallest)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclolc",
        description="Generalized cyclotomic sequences of period p^r and their linear complexity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("info", help="parameter summary and assumption verdict")
    _add_frame(sp, required=True)
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("classes", help="dump every cyclotomic class at one level as JSON")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--f", type=int, required=True)
    sp.add_argument("--g", type=int, default=None)
    sp.set_defaults(func=cmd_classes)

    for name, func in (("generate", cmd_generate), ("lc", cmd_lc)):
        sp = sub.add_parser(name)
        sp.add_argument("--support", help="support-set JSON file")
        sp.add_argument("--preset", choices=["xiao"])
        _add_frame(sp)
        sp.add_argument("--b", type=int, default=0, help="shift for the xiao preset")
        if name == "generate":
            sp.add_argument("-o", "--output", help="sequence file to write")
            sp.set_defaults(func=func)
        else:
            sp.add_argument("--sequence", help="sequence file (one line of 0/1)")
            sp.add_argument("--engine", choices=list(ENGINES) + ["all"], default="all")
            sp.set_defaults(func=func)

    sp = sub.add_parser("sweep", help="compare engines over a parameter grid, CSV output")
    sp.add_argument("--p", type=_int_list, required=True, help="comma-separated primes")
    sp.add_argument("--r-max", type=int, default=2)
    sp.add_argument("--f-policy", default="all", help="all | even | comma-separated f values")
    sp.add_argument("--support", choices=SUPPORT_KINDS, default="random")
    sp.add_argument("--count", type=int, default=20, help="specs per configuration")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--period-bound", type=int, default=10_000,
                    help="skip bm/gcd columns when p^r exceeds this")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AssumptionError as exc:
        sys.stderr.write(f"refused ({exc.predicate}): {exc}\n")
        return EXIT_ASSUMPTION
    except EngineDisagreement as exc:
        sys.stderr.write(f"engines disagree: {exc}\n")
        return EXIT_DISAGREE
    except (ParameterError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
