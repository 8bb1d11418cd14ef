"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or config error,
3 a construction failed its order certificate.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from typing import Sequence

from . import __version__
from .chains import LevelGroupSystem
from .classify import ChainReport, chain_report
from .constructions import (
    CertificationError,
    ProductConfig,
    WreathConfig,
    build,
    config_to_json,
    parse_config,
    preset,
)
from .tree import VertexAddress
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CERT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load(source: str, depth: int | None = None) -> tuple[LevelGroupSystem, str]:
    """A certified system and the canonical text it was built from."""
    if os.path.exists(source):
        try:
            with open(source) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {source}: {exc}") from None
        if isinstance(doc, dict) and "generators" in doc:
            try:
                system = LevelGroupSystem.from_doc(doc)
            except (KeyError, TypeError, ValueError) as exc:
                raise UsageError(f"bad system file {source}: {exc}") from None
            if depth is not None:
                try:
                    system = system.truncated(depth)
                except ValueError as exc:
                    raise UsageError(str(exc)) from None
            return system, system.to_json()
        if isinstance(doc, dict) and depth is not None:
            doc = {**doc, "depth": depth}
        try:
            cfg = parse_config(doc)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        try:
            cfg = preset(source, depth)
        except ValueError as exc:
            raise UsageError(f"{exc} (and no such file)") from None
    return build(cfg), config_to_json(cfg)


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def cmd_build(args: argparse.Namespace) -> int:
    system, _ = _load(args.config)
    for n, order in enumerate(system.level_orders()):
        print(f"level {n}: {order}")
    if args.out:
        _write(system.to_json() + "\n", args.out)
    return EXIT_OK


def _parse_path(text: str | None, depth: int) -> VertexAddress:
    if text is None:
        return VertexAddress((0,) * depth)
    try:
        return VertexAddress.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_diagnose(args: argparse.Namespace) -> int:
    if args.depth is not None and args.n_max + args.buffer > args.depth:
        raise UsageError(
            f"n-max + buffer = {args.n_max + args.buffer} exceeds depth {args.depth}"
        )
    system, _ = _load(args.config, args.depth)
    x = _parse_path(args.path, system.depth)
    if x.level != system.depth:
        raise UsageError(f"path has {x.level} digits, the system has depth {system.depth}")
    try:
        system.tree.validate(x)
        report = chain_report(system, x, args.n_max, args.buffer)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(report.to_csv() if args.format == "csv" else report.to_json(), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    start = time.perf_counter()
    checks = run_suite(args.suite)
    elapsed = time.perf_counter() - start
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status} {c.name}" + (f" ({c.detail})" if c.detail else ""))
    manifest = {
        "suite": args.suite,
        "tool_version": __version__,
        "config_digest": _digest(args.suite),
        "checks": [c.to_doc() for c in checks],
        "passed": all(c.passed for c in checks),
        "wall_time_s": round(elapsed, 3),
    }
    if args.out:
        _write(json.dumps(manifest, indent=2) + "\n", args.out)
    return EXIT_OK if manifest["passed"] else EXIT_FAIL


def cmd_report(args: argparse.Namespace) -> int:
    try:
        with open(args.input) as fh:
            report = ChainReport.from_doc(json.load(fh))
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot read report {args.input}: {exc}") from None
    _write(report.to_csv() if args.format == "csv" else report.to_json(), args.out)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arboreal", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"arboreal {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build and certify a system from a config or preset")
    p.add_argument("--config", required=True, help="config JSON file or preset name")
    p.add_argument("--out", help="write the system JSON here")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("diagnose", help="stabilizer and centralizer chains along a path")
    p.add_argument("--config", required=True, help="system JSON, config JSON, or preset name")
    p.add_argument("--path", help="comma-separated digits of the base path (default all zeros)")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--depth", type=int)
    p.add_argument("--buffer", type=int, default=2)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, help=", ".join(SUITES))
    p.add_argument("--out", help="write the run manifest JSON here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="convert a chain report")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CertificationError as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_CERT


if __name__ == "__main__":
    sys.exit(main())
