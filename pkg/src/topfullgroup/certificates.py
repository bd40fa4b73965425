"""Certificates: factorization claims that can be rechecked by multiplication.

A certificate stores a target, a list of named factors and whatever clopen
sets or numbers the claim mentions.  ``verify`` looks up the checker for the
certificate's kind and recomputes every identity; it never reruns the
construction that produced the certificate.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .cantor_space import ClopenSet, Odometer, PointPrefix
from .full_group import GroupElement
from .permutation import FinitePermutation

__all__ = ["Certificate", "Verification", "verify", "register", "dumps", "loads"]

KINDS = (
    "GlasnerWeissSub",
    "GlasnerWeissEq",
    "SmallGenerators",
    "PeriodicCommutator",
    "TwoInvolutions",
    "ManyInvolutions",
    "MinimalFirstStep",
    "CommutatorExpansion",
    "FourConjugates",
    "TowerLemma",
    "EighteenCycle",
    "InducedTimesInvolutions",
    "CyclesLemma",
    "FiniteThreeInvolutions",
)


@dataclass(frozen=True)
class Certificate:
    kind: str
    odometer: Odometer
    target: Any
    factors: tuple = ()
    side_data: dict = field(default_factory=dict)

    def factor(self, name: str):
        for n, e in self.factors:
            if n == name:
                return e
        raise KeyError(name)

    def factor_names(self) -> list[str]:
        return [n for n, _ in self.factors]

    def elements(self) -> list:
        return [e for _, e in self.factors]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "odometer": self.odometer.to_json(),
            "target": _encode(self.target),
            "factors": [{"name": n, "element": _encode(e)} for n, e in self.factors],
            "side_data": _encode(self.side_data),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        odo = Odometer.from_json(data["odometer"])
        return cls(
            kind=data["kind"],
            odometer=odo,
            target=_decode(data["target"], odo),
            factors=tuple((f["name"], _decode(f["element"], odo)) for f in data["factors"]),
            side_data=_decode(data.get("side_data", {}), odo),
        )


_FRACTION = re.compile(r"^-?\d+/\d+$")


def _encode(obj):
    if isinstance(obj, (ClopenSet, GroupElement, FinitePermutation, PointPrefix)):
        return obj.to_json()
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): _encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_encode(v) for v in obj]
    return obj


def _decode(obj, odo: Odometer):
    if isinstance(obj, dict):
        keys = set(obj)
        if keys == {"level", "residues"}:
            return ClopenSet.from_json(obj, odo)
        if keys == {"level", "cocycle"}:
            return GroupElement.from_json(obj, odo)
        if keys == {"m", "images"}:
            return FinitePermutation.from_json(obj)
        if keys == {"level", "residue"}:
            return PointPrefix(odo, int(obj["level"]), int(obj["residue"]))
        return {k: _decode(v, odo) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_decode(v, odo) for v in obj]
    if isinstance(obj, str) and _FRACTION.match(obj):
        return Fraction(obj)
    return obj


def dumps(cert: Certificate) -> str:
    return json.dumps(cert.to_json(), sort_keys=True, indent=1) + "\n"


def loads(text: str) -> Certificate:
    return Certificate.from_json(json.loads(text))


class Checks:
    """Collects named boolean checks; the first failure is kept for reporting."""

    def __init__(self):
        self.results: list[tuple[str, bool]] = []

    def __call__(self, name: str, ok) -> bool:
        ok = bool(ok)
        self.results.append((name, ok))
        return ok

    @property
    def failures(self) -> list[str]:
        return [n for n, ok in self.results if not ok]


@dataclass(frozen=True)
class Verification:
    kind: str
    passed: tuple
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


_CHECKERS: dict[str, Callable[[Certificate, Checks], None]] = {}


def register(kind: str):
    def deco(fn):
        _CHECKERS[kind] = fn
        return fn

    return deco


def verify(cert: Certificate) -> Verification:
    """Recompute every identity and postcondition the certificate claims."""
    from . import constructions, finite_approx  # noqa: F401  (registers checkers)

    checks = Checks()
    checker = _CHECKERS.get(cert.kind)
    if checker is None:
        checks(f"unknown certificate kind {cert.kind!r}", False)
    else:
        try:
            checker(cert, checks)
        except Exception as exc:  # a malformed certificate is a failed one
            checks(f"check raised {type(exc).__name__}: {exc}", False)
    passed = tuple(n for n, ok in checks.results if ok)
    return Verification(cert.kind, passed, tuple(checks.failures))
