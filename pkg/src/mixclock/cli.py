"""``mixclock`` command line: gen, offline, online, check, experiment.

Exit codes: 0 success / check passed, 1 check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .clock import StampFormatError, offline_clock, read_stamped, stamp, validate, write_stamped
from .experiment import (ConfigError, ExperimentConfig, ExperimentError, SCENARIOS,
                         dominance_violations, order_seed, parse_config, records_to_csv,
                         run_experiment, summarize, summary_to_csv)
from .online import MECHANISMS, Mechanism, run_online, write_decision_log
from .trace import (TraceFormatError, build_bigraph, gen_nonuniform, gen_uniform,
                    graph_to_trace, read_trace, write_trace)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _unit_interval(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not 0.0 <= x <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is outside [0, 1]")
    return x


def _positive_int(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if x < 1:
        raise argparse.ArgumentTypeError(f"{text} must be >= 1")
    return x


def _seed(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not 0 <= x < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return x


def _float_list(text: str) -> List[float]:
    return [_unit_interval(x) for x in text.split(",") if x.strip()]


def _int_list(text: str) -> List[int]:
    return [_positive_int(x) for x in text.split(",") if x.strip()]


def _stamps_path(trace_path: str, out: Optional[str]) -> Path:
    return Path(out) if out else Path(trace_path).with_suffix(".stamps")


def _fmt_members(components) -> str:
    return "{" + ", ".join(f"{tag}{i}" for tag, i in components) + "}"


def cmd_gen(args) -> int:
    if args.scenario == "uniform":
        if args.popular_fraction is not None or args.boost is not None:
            raise UsageError("--popular-fraction/--boost only apply to --scenario nonuniform")
        g = gen_uniform(args.threads, args.objects, args.density, args.seed)
    else:
        pf = 0.2 if args.popular_fraction is None else args.popular_fraction
        boost = 4.0 if args.boost is None else args.boost
        try:
            g = gen_nonuniform(args.threads, args.objects, args.density, pf, boost, args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    t = graph_to_trace(g, order_seed(args.seed))
    write_trace(t, args.out)
    print(f"n_threads={t.n_threads} m_objects={t.m_objects} edges={len(g.edges)} seed={args.seed}")
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_offline(args) -> int:
    t = read_trace(args.trace)
    comps = offline_clock(t)
    st = stamp(t, comps)
    out = _stamps_path(args.trace, args.out)
    write_stamped(st, out)
    g = build_bigraph(t)
    print(f"components {_fmt_members(comps)}")
    print(f"size {len(comps)}")
    print(f"baseline min(threads, objects) = {min(t.n_threads, t.m_objects)} "
          f"(active: {min(len(g.active_threads()), len(g.active_objects()))})")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_online(args) -> int:
    t = read_trace(args.trace)
    res = run_online(t, Mechanism(args.mechanism, args.seed if args.mechanism == "random" else None))
    out = _stamps_path(args.trace, args.out)
    log = Path(args.log) if args.log else out.with_suffix(".log")
    write_stamped(res.stamped, out)
    write_decision_log(res, log)
    print(f"mechanism {args.mechanism}")
    print(f"components {_fmt_members(res.components)}")
    print(f"size {len(res.components)}")
    print(f"decision log {log}")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_check(args) -> int:
    st = read_stamped(args.stamps)
    report = validate(st)
    if report.passed:
        print(f"PASS {report.n_events} events")
        return EXIT_OK
    print(f"FAIL {len(report.violations)} violating pairs")
    for e, f in report.violations:
        print(f"  {e} {f}")
    return EXIT_FAIL


def _config_from_args(args) -> ExperimentConfig:
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        cfg = parse_config(text)
    else:
        cfg = ExperimentConfig()
    overrides = {
        "scenarios": args.scenario, "mechanisms": args.mechanism, "n_threads": args.threads,
        "m_objects": args.objects, "densities": args.density, "nodes": args.nodes,
        "trials": args.trials, "base_seed": args.seed,
        "popular_fraction": args.popular_fraction, "boost": args.boost,
    }
    fields = {k: v for k, v in vars(cfg).items()}
    fields.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig(**fields)


def cmd_experiment(args) -> int:
    cfg = _config_from_args(args)
    records = run_experiment(cfg, n_jobs=args.jobs)
    bad = dominance_violations(records)
    out = Path(args.out)
    out.write_text(records_to_csv(records), encoding="utf-8", newline="\n")
    summary_path = Path(args.summary) if args.summary else out.with_name(out.stem + ".summary.csv")
    summary_path.write_text(summary_to_csv(summarize(records)), encoding="utf-8", newline="\n")
    print(f"rows {len(records)}")
    print(f"wrote {out}")
    print(f"wrote {summary_path}")
    if bad:
        print(f"WARNING: {len(bad)} offline rows exceed an online size", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixclock", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random trace file")
    p.add_argument("--scenario", choices=SCENARIOS, default="uniform")
    p.add_argument("--threads", type=_positive_int, required=True)
    p.add_argument("--objects", type=_positive_int, required=True)
    p.add_argument("--density", type=_unit_interval, required=True)
    p.add_argument("--popular-fraction", type=float)
    p.add_argument("--boost", type=float)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("offline", help="optimal mixed clock for a trace")
    p.add_argument("trace")
    p.add_argument("--out", help="stamped-trace output (default: <trace>.stamps)")
    p.add_argument("--seed", type=_seed, default=0, help="unused; accepted for uniformity")
    p.set_defaults(func=cmd_offline)

    p = sub.add_parser("online", help="online mechanism over a trace")
    p.add_argument("trace")
    p.add_argument("--mechanism", choices=MECHANISMS, required=True)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out", help="stamped-trace output (default: <trace>.stamps)")
    p.add_argument("--log", help="decision log output (default: <out>.log)")
    p.set_defaults(func=cmd_online)

    p = sub.add_parser("check", help="validate a stamped trace against happened-before")
    p.add_argument("stamps")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("experiment", help="clock-size sweep to CSV")
    p.add_argument("--config", help="key=value config file; flags override it")
    p.add_argument("--scenario", type=lambda s: tuple(s.split(",")))
    p.add_argument("--mechanism", type=lambda s: tuple(s.split(",")))
    p.add_argument("--threads", type=_positive_int)
    p.add_argument("--objects", type=_positive_int)
    p.add_argument("--density", type=_float_list, help="comma-separated densities")
    p.add_argument("--nodes", type=_int_list, help="comma-separated per-side node counts")
    p.add_argument("--trials", type=_positive_int)
    p.add_argument("--popular-fraction", type=float)
    p.add_argument("--boost", type=float)
    p.add_argument("--seed", type=_seed, help="base seed; trial k uses seed + k")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--summary", help="per-point means (default: <out stem>.summary.csv)")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        parser.error(str(exc))
    except (TraceFormatError, StampFormatError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ExperimentError as exc:
        print(f"experiment failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
