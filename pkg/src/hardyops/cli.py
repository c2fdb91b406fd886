"""Command-line front end: ``hardyops verify | bounded | dump``.

Reports are JSON documents written to standard output (or ``--out``); CSV
tables only ever go to the file named by ``--csv``.  Exit status is 0 when
everything passes, 1 when a verification suite fails and 2 for configuration
or precondition errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import operators as op
from .diagnostics import DEFAULT_TOLERANCE, boundedness_report, write_ratio_csv
from .errors import ConfigError, HardyOpsError
from .series import AffineMap
from .suites import MAX_SUITE_HEADROOM, SUITES, SuiteContext, run_suite
from .weights import DEFAULT_N_MAX, WeightSequence, load_weights

EXIT_OK, EXIT_FAILED, EXIT_ERROR = 0, 1, 2

DUMP_KINDS = ("composition", "adjoint-composition", "weighted", "multiplier",
              "differentiation", "generalized")


@dataclass
class SuiteConfig:
    weight_source: str = "fock"
    n_work: int = 48
    n_eval: int = 16
    tolerance: float = DEFAULT_TOLERANCE
    seed: int = 0
    suites: list[str] = field(default_factory=lambda: list(SUITES))

    def validate(self) -> WeightSequence:
        """Check names and sizes; returns the loaded weights."""
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suite(s): {', '.join(unknown)}")
        if self.n_eval < 0 or self.tolerance <= 0:
            raise ConfigError("n_eval must be nonnegative and the tolerance positive")
        xi = _weights(self.weight_source, self.n_work)
        if not self.n_eval + MAX_SUITE_HEADROOM <= self.n_work <= xi.n_max:
            raise ConfigError(
                f"need n_eval + {MAX_SUITE_HEADROOM} <= n_work <= n_max, got "
                f"n_eval={self.n_eval}, n_work={self.n_work}, n_max={xi.n_max}"
            )
        return xi

    def to_dict(self) -> dict:
        return {"weights": self.weight_source, "n_work": self.n_work, "n_eval": self.n_eval,
                "tolerance": self.tolerance, "seed": self.seed, "suites": list(self.suites)}


def _weights(source: str, n_work: int) -> WeightSequence:
    if source == "fock":
        return load_weights("fock", max(DEFAULT_N_MAX, n_work))
    return load_weights(source)


def parse_complex(text: str) -> complex:
    """Accept ``1+i``, ``-0.5i``, ``0.3-0.4j`` and plain reals."""
    s = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_verify(config: SuiteConfig, out: str | None = None, csv_path: str | None = None) -> int:
    xi = config.validate()
    order = list(SUITES)
    results, errors = [], []
    # registry order keeps the report deterministic whatever order --suite used
    for name in sorted(dict.fromkeys(config.suites), key=order.index):
        rng = np.random.default_rng([config.seed, order.index(name)])
        ctx = SuiteContext(xi, config.n_work, config.n_eval, config.tolerance, rng)
        try:
            res = run_suite(name, ctx).to_dict()
        except HardyOpsError as exc:
            res = {"name": name, "statement": "", "passed": False, "metrics": {},
                   "notes": [], "error": f"{type(exc).__name__}: {exc}"}
            errors.append(name)
        results.append(res)
        print(f"{'PASS' if res['passed'] else 'FAIL'} {name}", file=sys.stderr)
    doc = {"command": "verify", "config": config.to_dict(), "weights": xi.descriptor(),
           "all_passed": all(r["passed"] for r in results), "suites": results}
    _emit(doc, out)
    if csv_path:
        with open(csv_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["suite", "passed"])
            for r in results:
                w.writerow([r["name"], r["passed"]])
    if errors:
        return EXIT_ERROR
    return EXIT_OK if doc["all_passed"] else EXIT_FAILED


def cmd_bounded(args: argparse.Namespace) -> int:
    xi = _weights(args.weights, args.n_work)
    phi = AffineMap(*args.phi)
    n_from = args.p if args.n_from is None else args.n_from
    rep = boundedness_report(args.p, phi, args.upsilon, xi, (n_from, args.n_to))
    if args.csv:
        write_ratio_csv(rep, args.csv)
    doc = {"command": "bounded", "weights": xi.descriptor(),
           "phi": [[phi.a.real, phi.a.imag], [phi.b.real, phi.b.imag]],
           "upsilon": [[complex(c).real, complex(c).imag] for c in args.upsilon],
           "n_from": n_from, "n_to": args.n_to, "report": rep.to_dict()}
    _emit(doc, args.out)
    return EXIT_OK


def build_dump_matrix(kind: str, phi: AffineMap, upsilon, p: int, xi: WeightSequence,
                      n: int) -> op.OperatorMatrix:
    if kind == "composition":
        return op.composition_matrix(phi, xi, xi, n)
    if kind == "adjoint-composition":
        return op.adjoint(op.composition_matrix(phi, xi, xi, n))
    if kind == "weighted":
        return op.weighted_composition_matrix(upsilon, phi, xi, n)
    if kind == "multiplier":
        return op.multiplier_matrix(upsilon, xi, n)
    if kind == "differentiation":
        return op.differentiation_matrix(p, xi, n)
    if kind == "generalized":
        return op.generalized_matrix(p, phi, upsilon, xi, n)
    raise ConfigError(f"unknown operator kind {kind!r}")


def cmd_dump(args: argparse.Namespace) -> int:
    xi = _weights(args.weights, args.n_work)
    n = args.n_work if args.n is None else args.n
    t = build_dump_matrix(args.kind, AffineMap(*args.phi), args.upsilon, args.p, xi, n)
    doc = {"command": "dump", "kind": args.kind, **t.to_dict()}
    _emit(doc, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--weights", default="fock", help="'fock' or a JSON weight file")
    common.add_argument("--n-work", type=int, default=48, help="working truncation degree")
    common.add_argument("--n-eval", type=int, default=16, help="degree of the checked block")
    common.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE, help="defect tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--csv", help="write the table to this CSV file")

    parser = argparse.ArgumentParser(prog="hardyops",
                                     description="Operator diagnostics on weighted Hardy spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", action="append", metavar="NAME",
                   help="suite to run (repeatable; default all)")

    symbol = argparse.ArgumentParser(add_help=False)
    symbol.add_argument("--phi", nargs=2, type=parse_complex, default=[1, 0], metavar=("A", "B"),
                        help="phi(z) = A z + B")
    symbol.add_argument("--upsilon", nargs="+", type=parse_complex, default=[1],
                        metavar="C", help="multiplier coefficients, constant term first")
    symbol.add_argument("--p", type=int, default=1, help="derivative order")

    b = sub.add_parser("bounded", parents=[common, symbol], help="tabulate boundedness ratios")
    b.add_argument("--n-from", type=int, default=None, help="first n (default p)")
    b.add_argument("--n-to", type=int, default=60, help="last n")

    d = sub.add_parser("dump", parents=[common, symbol], help="serialize an operator matrix")
    d.add_argument("--kind", choices=DUMP_KINDS, required=True)
    d.add_argument("--n", type=int, default=None, help="domain degree (default --n-work)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            config = SuiteConfig(args.weights, args.n_work, args.n_eval, args.tol, args.seed,
                                 args.suite or list(SUITES))
            return cmd_verify(config, args.out, args.csv)
        if args.command == "bounded":
            return cmd_bounded(args)
        return cmd_dump(args)
    except (HardyOpsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
