"""Permutations of Z/N stored as image tuples."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotBijective, PreconditionError


@dataclass(frozen=True)
class FinitePermutation:
    """A bijection of {0, ..., N-1}; ``m`` records the truncation level it came from."""

    m: int
    images: tuple

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise NotBijective("images do not form a permutation")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, size: int, m: int = -1) -> "FinitePermutation":
        return cls(m, tuple(range(size)))

    @classmethod
    def shift(cls, size: int, m: int = -1) -> "FinitePermutation":
        return cls(m, tuple((a + 1) % size for a in range(size)))

    @classmethod
    def from_mapping(cls, size: int, mapping: dict, m: int = -1) -> "FinitePermutation":
        """Identity except where ``mapping`` says otherwise."""
        images = list(range(size))
        for a, b in mapping.items():
            images[a] = b
        return cls(m, tuple(images))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, a: int) -> int:
        return self.images[a]

    def __mul__(self, other: "FinitePermutation") -> "FinitePermutation":
        """Composition, ``other`` applied first."""
        if self.size != other.size:
            raise PreconditionError("permutations of different sizes")
        im = self.images
        return FinitePermutation(self.m, tuple(im[b] for b in other.images))

    def inverse(self) -> "FinitePermutation":
        inv = [0] * self.size
        for a, b in enumerate(self.images):
            inv[b] = a
        return FinitePermutation(self.m, tuple(inv))

    def __pow__(self, e: int) -> "FinitePermutation":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = FinitePermutation.identity(self.size, self.m)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, FinitePermutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def is_identity(self) -> bool:
        return all(a == b for a, b in enumerate(self.images))

    def is_involution(self) -> bool:
        im = self.images
        return all(im[im[a]] == a for a in range(self.size))

    def support(self) -> frozenset:
        return frozenset(a for a, b in enumerate(self.images) if a != b)

    def cycles(self) -> list[list[int]]:
        seen = [False] * self.size
        out = []
        for start in range(self.size):
            if seen[start]:
                continue
            cyc = []
            a = start
            while not seen[a]:
                seen[a] = True
                cyc.append(a)
                a = self.images[a]
            out.append(cyc)
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.size else 1

    def restricted(self, points) -> "FinitePermutation":
        """Agree with self on ``points`` (which must be invariant), identity elsewhere."""
        points = set(points)
        if {self.images[a] for a in points} != points:
            raise PreconditionError("restriction to a non-invariant set")
        return FinitePermutation.from_mapping(self.size, {a: self.images[a] for a in points}, self.m)

    def to_json(self) -> dict:
        return {"m": self.m, "images": list(self.images)}

    @classmethod
    def from_json(cls, data: dict) -> "FinitePermutation":
        return cls(int(data["m"]), tuple(data["images"]))

    def __repr__(self):
        return f"FinitePermutation(m={self.m}, cycles={[c for c in self.cycles() if len(c) > 1]})"
