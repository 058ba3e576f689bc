"""Command-line entry point.

Exit codes: 0 ok, 1 invariant violation, 2 parse error, 3 cyclic covers,
4 size guard, 5 invalid suite config.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import CycleError, PosetFormatError, SizeError
from .harness import MUTATIONS, ConfigError, SuiteConfig, check_poset, run_property_suite
from .io import parse_poset, skeleton_to_dot, skeleton_to_json
from .oracle import normalized_volume
from .polytopes import (
    KINDS,
    check_equivalence,
    enumerate_omega,
    h_description,
    omega_to_psi,
    psi_to_omega,
    skeleton,
)
from .poset import (
    bits,
    count_linear_extensions,
    enumerate_antichains,
    enumerate_ideals,
    find_X_subposet,
    maximal_chains,
)

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_CYCLE, EXIT_SIZE, EXIT_CONFIG = range(6)
ORACLE_GUARD = 6


class CliExit(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _load(args):
    if args.poset is not None:
        text = args.poset.replace(";", "\n")
    elif args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise CliExit(EXIT_PARSE, f"cannot read {args.input}: {exc.strerror}") from None
    try:
        return parse_poset(text)
    except PosetFormatError as exc:
        raise CliExit(EXIT_PARSE, f"parse error: {exc}") from None
    except CycleError as exc:
        raise CliExit(EXIT_CYCLE, f"cycle error: {exc}") from None


def _set(p, mask):
    return "{" + ",".join(p.label(i) for i in bits(mask)) + "}"


def _labels(p, mask):
    return [p.label(i) for i in bits(mask)]


def _emit(args, data: dict, text_lines):
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print("\n".join(text_lines))


def cmd_stats(args) -> int:
    p = _load(args)
    g_order, g_chain = skeleton(p, "order"), skeleton(p, "chain")
    data = {
        "d": p.d,
        "ideals": len(enumerate_ideals(p)),
        "antichains": len(enumerate_antichains(p)),
        "edges_order": len(g_order.edges),
        "edges_chain": len(g_chain.edges),
        "linear_extensions": count_linear_extensions(p),
        "maximal_chains": len(maximal_chains(p)),
        "x_free": find_X_subposet(p) is None,
    }
    lines = [f"{k} {str(v).lower() if isinstance(v, bool) else v}" for k, v in data.items()]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_bijection(args) -> int:
    p = _load(args)
    rows = []
    ok = True
    for pair in enumerate_omega(p):
        image = omega_to_psi(p, pair)
        back = psi_to_omega(p, image) == pair
        ok &= back
        rows.append((pair, image, back))
    n_order = len(skeleton(p, "order").edges)
    n_chain = len(skeleton(p, "chain").edges)
    images = {image for _, image, _ in rows}
    ok &= len(images) == len(rows) == n_order == n_chain
    data = {
        "omega": len(rows),
        "psi": len(images),
        "edges_order": n_order,
        "edges_chain": n_chain,
        "roundtrip_ok": ok,
        "rows": [
            {
                "I": _labels(p, pair.I),
                "J": _labels(p, pair.J),
                "A": _labels(p, image.A),
                "B": _labels(p, image.B),
                "roundtrip": back,
            }
            for pair, image, back in rows
        ],
    }
    lines = [
        f"({_set(p, pair.I)}, {_set(p, pair.J)}) -> ({_set(p, image.A)}, {_set(p, image.B)})"
        + ("" if back else "  ROUNDTRIP FAILED")
        for pair, image, back in rows
    ]
    lines.append(f"rows {len(rows)} edges_order {n_order} edges_chain {n_chain} ok {str(ok).lower()}")
    _emit(args, data, lines)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_check(args) -> int:
    p = _load(args)
    if args.oracle and p.d > args.oracle_max_d:
        raise CliExit(
            EXIT_SIZE,
            f"size error: --oracle is limited to d <= {args.oracle_max_d} (got d = {p.d}); "
            "drop --oracle or raise --oracle-max-d",
        )
    report = check_equivalence(p, facets=True, oracle_max_d=args.oracle_max_d)
    violations = report.violations()
    props = check_poset(p, oracle_max_d=p.d if args.oracle else 0)
    violations += [name for name, passed in props.items() if not passed]
    data = report.to_dict()
    data["checked"] = sorted(props)
    data["violations"] = violations
    if args.oracle:
        data["normalized_volume_order"] = normalized_volume(h_description(p, "order"), p.d)
        data["normalized_volume_chain"] = normalized_volume(h_description(p, "chain"), p.d)
        data["linear_extensions"] = count_linear_extensions(p)
    lines = [f"{k} {_text_value(v)}" for k, v in data.items() if k not in ("checked", "violations")]
    lines.append("violations " + (", ".join(violations) if violations else "none"))
    _emit(args, data, lines)
    return EXIT_VIOLATION if violations else EXIT_OK


def _text_value(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, list):
        return "(" + ",".join(str(x) for x in v) + ")"
    return "-" if v is None else str(v)


def cmd_export(args) -> int:
    p = _load(args)
    g = skeleton(p, args.kind)
    fmt = args.format if args.format in ("json", "dot") else "json"
    out = skeleton_to_json(g) + "\n" if fmt == "json" else skeleton_to_dot(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def _suite_config(args) -> SuiteConfig:
    data = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot load config {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
    flags = {
        "exhaustive_max_d": args.exhaustive_max_d,
        "random_trials": args.random_trials,
        "seed": args.seed,
        "oracle_max_d": args.oracle_max_d,
        "workers": args.workers,
        "mutation": args.mutation,
    }
    data.update({k: v for k, v in flags.items() if v is not None})
    if args.random_d_min is not None or args.random_d_max is not None:
        lo, hi = data.get("random_d_range", SuiteConfig.random_d_range)
        data["random_d_range"] = [
            args.random_d_min if args.random_d_min is not None else lo,
            args.random_d_max if args.random_d_max is not None else hi,
        ]
    if args.edge_density is not None:
        try:
            data["edge_density"] = Fraction(args.edge_density)
        except ValueError:
            raise ConfigError(f"bad edge density {args.edge_density!r}") from None
    return SuiteConfig.from_dict(data)


def cmd_suite(args) -> int:
    try:
        cfg = _suite_config(args)
    except ConfigError as exc:
        raise CliExit(EXIT_CONFIG, f"config error: {exc}") from None
    report = run_property_suite(cfg)
    out = report.to_json(timing=args.timing)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    print(f"{report.posets} posets, {report.runtime_seconds:.1f}s", file=sys.stderr)
    for name in report.failed_properties():
        print(f"FAILED {name}", file=sys.stderr)
    return EXIT_OK if report.all_passed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orderchain",
        description="Edges, degree sequences and facets of order and chain polytopes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def poset_command(name, func, help_, formats=("text", "json")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input", nargs="?", help="poset file ('-' or omitted reads stdin)")
        sp.add_argument("--poset", help="inline poset, lines separated by ';'")
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.set_defaults(func=func)
        return sp

    poset_command("stats", cmd_stats, "vertex, edge and linear-extension counts")
    poset_command("bijection", cmd_bijection, "tabulate the edge bijection (I,J) -> (A,B)")
    sp = poset_command("check", cmd_check, "compare O(P) and C(P) and verify the invariants")
    sp.add_argument("--oracle", action="store_true", help="also run geometric edge and volume checks")
    sp.add_argument("--oracle-max-d", type=int, default=ORACLE_GUARD)
    sp = poset_command("export", cmd_export, "write a 1-skeleton as JSON or DOT", ("json", "dot"))
    sp.add_argument("--kind", choices=KINDS, default="order")
    sp.add_argument("-o", "--output")

    sp = sub.add_parser("suite", help="run the property suite")
    sp.add_argument("--config", help="JSON file with SuiteConfig fields")
    sp.add_argument("--exhaustive-max-d", type=int)
    sp.add_argument("--random-trials", type=int)
    sp.add_argument("--random-d-min", type=int)
    sp.add_argument("--random-d-max", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--oracle-max-d", type=int)
    sp.add_argument("--edge-density")
    sp.add_argument("--workers", type=int)
    sp.add_argument("--mutation", choices=MUTATIONS)
    sp.add_argument("--timing", action="store_true", help="include runtime in the report")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliExit as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except SizeError as exc:
        print(f"size error: {exc}", file=sys.stderr)
        return EXIT_SIZE


if __name__ == "__main__":
    sys.exit(main())
