"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 violated precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import constructions as C
from .cantor_space import DYADIC, ClopenSet, Odometer, PointPrefix, measure
from .certificates import Certificate, dumps, verify
from .errors import FullGroupError, PreconditionError
from .finite_approx import finite_three_involutions
from .full_group import GroupElement, odometer_map
from . import selftest

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3

KINDS = (
    "glasner-weiss",
    "small-generators",
    "periodic-commutator",
    "two-involutions",
    "many-involutions",
    "minimal-first-step",
    "commutator-expansion",
    "tower",
    "eighteen-cycle",
    "induced-times-involutions",
    "finite-three-involutions",
)


@dataclass(frozen=True)
class RunConfig:
    odometer: Odometer = DYADIC
    seed: int = 0
    max_level: int = 5
    max_cocycle: int = 32
    out: str | None = None

    def __post_init__(self):
        if self.max_level <= 0 or self.max_cocycle <= 0:
            raise ValueError("limits must be positive")


class UsageError(Exception):
    pass


def _json_arg(text: str | None, what: str):
    if text is None:
        return None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--{what} is not valid JSON: {exc}") from None


def _element(args, odo: Odometer) -> GroupElement:
    data = _json_arg(args.element, "element")
    if data is None:
        return odometer_map(odo)
    try:
        return GroupElement.from_json(data, odo)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"--element needs level and cocycle: {exc}") from None


def _set(text: str | None, name: str, odo: Odometer, required: bool = True) -> ClopenSet | None:
    data = _json_arg(text, name)
    if data is None:
        if required:
            raise UsageError(f"--{name} is required")
        return None
    try:
        return ClopenSet.from_json(data, odo)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"--{name} needs level and residues: {exc}") from None


def _decompose(kind: str, args, cfg: RunConfig) -> Certificate:
    odo = cfg.odometer
    if kind == "glasner-weiss":
        B, A = _set(args.B, "B", odo), _set(args.A, "A", odo)
        if measure(B) == measure(A):
            return C.glasner_weiss_eq(B, A)
        return C.glasner_weiss_sub(B, A)
    if kind == "small-generators":
        return C.small_generators(_element(args, odo), Fraction(args.delta))
    if kind == "periodic-commutator":
        return C.periodic_commutator(_element(args, odo))
    if kind == "two-involutions":
        return C.periodic_two_involutions(_element(args, odo), _set(args.A, "A", odo, False))
    if kind == "many-involutions":
        A = _set(args.A, "A", odo)
        point = _json_arg(args.point, "point") or {"level": A.level, "residue": min(A.residues)}
        x = PointPrefix(odo, int(point["level"]), int(point["residue"]))
        return C.many_involutions(A, x, args.n)
    if kind == "minimal-first-step":
        return C.minimal_first_step(_element(args, odo), Fraction(args.delta))
    if kind == "commutator-expansion":
        return C.commutator_expansion(_element(args, odo), args.steps)
    if kind == "tower":
        return C.tower_lemma(args.n, odo)
    if kind == "eighteen-cycle":
        return C.eighteen_cycle(odo)
    if kind == "induced-times-involutions":
        return C.induced_times_involutions(_set(args.A, "A", odo))
    if kind == "finite-three-involutions":
        return finite_three_involutions(args.level, odo)
    raise UsageError(f"unknown kind {kind!r}")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_decompose(args, cfg: RunConfig) -> int:
    try:
        cert = _decompose(args.kind, args, cfg)
    except PreconditionError as exc:
        print(f"precondition failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    result = verify(cert)
    _emit(dumps(cert), cfg.out)
    if not result.ok:
        print(f"verification failed: {result.failures[0]}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        with open(args.path) as fh:
            text = fh.read()
        raw = json.loads(text)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        print(f"cannot parse certificate: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        cert = Certificate.from_json(raw)
    except FullGroupError as exc:
        # well-formed JSON carrying an invalid factor, e.g. a non-bijective table
        print(f"verification failed: invalid certificate data: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        print(f"cannot parse certificate: {exc!r}", file=sys.stderr)
        return EXIT_USAGE
    result = verify(cert)
    if result.ok:
        print(f"{cert.kind}: {len(result.passed)} checks passed")
        return EXIT_OK
    print(f"{cert.kind}: verification failed: {result.failures[0]}")
    return EXIT_VERIFY


def cmd_selftest(args, cfg: RunConfig) -> int:
    limits = selftest.Limits(cfg.odometer, cfg.max_level, cfg.max_cocycle)
    lines, ok = selftest.run(args.cases, cfg.seed, limits)
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topfullgroup",
        description="Factorizations in the topological full group of an odometer, as checkable certificates.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", default=None, help='odometer as JSON, e.g. {"head":[],"tail":[2]}')
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-level", type=int, default=5)
    common.add_argument("--max-cocycle", type=int, default=32)
    common.add_argument("--out", default=None, help="output file (default stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    dec = sub.add_parser("decompose", parents=[common], help="run a construction and emit its certificate")
    dec.add_argument("kind", choices=KINDS)
    dec.add_argument("--element", help='group element JSON {"level":k,"cocycle":[...]}; default phi')
    dec.add_argument("--A", help='clopen set JSON {"level":k,"residues":[...]}')
    dec.add_argument("--B", help="clopen set JSON (glasner-weiss source)")
    dec.add_argument("--point", help='point prefix JSON {"level":k,"residue":r}')
    dec.add_argument("--delta", default="1/4")
    dec.add_argument("--steps", type=int, default=3)
    dec.add_argument("--n", type=int, default=18)
    dec.add_argument("--level", type=int, default=6)

    ver = sub.add_parser("verify", help="recheck a certificate file")
    ver.add_argument("path")

    st = sub.add_parser("selftest", parents=[common], help="run the seeded invariant suites")
    st.add_argument("--cases", type=int, default=20)
    return parser


def _config(args) -> RunConfig:
    odo = DYADIC
    if args.spec:
        data = _json_arg(args.spec, "spec")
        try:
            odo = Odometer.from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad --spec: {exc}") from None
    try:
        return RunConfig(odo, args.seed, args.max_level, args.max_cocycle, args.out)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        cfg = _config(args)
        if args.command == "decompose":
            return cmd_decompose(args, cfg)
        return cmd_selftest(args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"precondition failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
