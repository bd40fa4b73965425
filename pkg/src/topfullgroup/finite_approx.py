"""Exact computations on the cyclic truncations Z/Q(m).

Some factorizations need elements of the full group whose cocycle is not
continuous.  At a finite level every orbit-preserving bijection is available,
so these run here as permutation arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cantor_space import DYADIC, Odometer, complement, refine, translate, union_all
from .certificates import Certificate, register
from .constructions import _tower_positions, tower_lemma
from .errors import PreconditionError
from .full_group import GroupElement, truncate
from .permutation import FinitePermutation

__all__ = [
    "FinitePermutation",
    "finite_cycles_lemma",
    "finite_three_involutions",
    "local_subgroup_check",
    "local_subgroup_report",
    "LocalSubgroupReport",
    "truncation_coherence",
]

BLOCKS = 18


# -- Cycles Lemma -------------------------------------------------------------


def _check_blocks(g: FinitePermutation, blocks: Sequence[Sequence[int]]) -> None:
    k = len(blocks)
    sets = [frozenset(b) for b in blocks]
    if sum(len(s) for s in sets) != len(frozenset().union(*sets)):
        raise PreconditionError("blocks overlap")
    for i, s in enumerate(sets):
        if frozenset(g(a) for a in s) != sets[(i + 1) % k]:
            raise PreconditionError(f"g does not carry block {i} onto block {(i + 1) % k}")
    covered = frozenset().union(*sets)
    if any(g(a) != a for a in range(g.size) if a not in covered):
        raise PreconditionError("g moves a point outside the blocks")


def finite_cycles_lemma(
    g: FinitePermutation, hs: Sequence[FinitePermutation], blocks: Sequence[Sequence[int]]
) -> tuple[FinitePermutation, Certificate]:
    """Involution d with (g d)^k = id, for g cycling k blocks E_0 -> ... -> E_{k-1} -> E_0.

    Needs involutions h_0..h_{k-1} supported in E_0 whose product
    h_0 h_1 ... h_{k-1} equals g^k on E_0.  Then d_i = g^i h_i^-1 g^-i lives
    on E_i and d = d_0 ... d_{k-1}.
    """
    k = len(blocks)
    if len(hs) != k:
        raise PreconditionError("need one involution per block")
    _check_blocks(g, blocks)
    e0 = frozenset(blocks[0])
    for i, h in enumerate(hs):
        if not h.is_involution():
            raise PreconditionError(f"h_{i} is not an involution")
        if not h.support() <= e0:
            raise PreconditionError(f"h_{i} is not supported in E_0")
    prod = FinitePermutation.identity(g.size, g.m)
    for h in hs:
        prod = prod * h
    if prod != (g**k).restricted(e0):
        raise PreconditionError("h_0 ... h_{k-1} differs from g^k on E_0")
    d = FinitePermutation.identity(g.size, g.m)
    for i, h in enumerate(hs):
        d = d * (g**i * h.inverse() * g ** (-i))
    cert = Certificate(
        "CyclesLemma",
        DYADIC,
        g,
        (("d", d),),
        {"hs": list(hs), "blocks": [sorted(b) for b in blocks]},
    )
    return d, cert


@register("CyclesLemma")
def _check_cycles_lemma(cert: Certificate, ok) -> None:
    g, d = cert.target, cert.factor("d")
    hs, blocks = cert.side_data["hs"], cert.side_data["blocks"]
    k = len(blocks)
    e0 = frozenset(blocks[0])
    ok("d^2 == id", d.is_involution())
    ok("each h_i an involution on E_0", all(h.is_involution() and h.support() <= e0 for h in hs))
    expected = FinitePermutation.identity(g.size)
    for i, h in enumerate(hs):
        expected = expected * (g**i * h.inverse() * g ** (-i))
    ok("d == d_0 ... d_{k-1}", d == expected)
    gd = g * d
    ok("(g d)^k == id", (gd**k).is_identity())
    ok(
        "g d cycles the blocks",
        all(frozenset(gd(a) for a in blocks[i]) == frozenset(blocks[(i + 1) % k]) for i in range(k)),
    )


# -- three involutions ---------------------------------------------------------


def _reversal(size: int, cycle: Sequence[int], offset: int, m: int) -> FinitePermutation:
    """Involution i -> offset - i in the coordinates of ``cycle``."""
    L = len(cycle)
    return FinitePermutation.from_mapping(
        size, {cycle[i]: cycle[(offset - i) % L] for i in range(L)}, m
    )


def _cycle_of(p: FinitePermutation, start: int) -> list[int]:
    cyc = [start]
    a = p(start)
    while a != start:
        cyc.append(a)
        a = p(a)
    return cyc


def _split_sets(odometer: Odometer, m: int) -> tuple[str, list[int], list[int]]:
    """(route, A, B) at level m with B and B+1 disjoint and the complement of B
    a single cycle of b o shift."""
    N = odometer.Q(m)
    tl = tower_lemma(BLOCKS, odometer)
    A = tl.side_data["A"]
    if A.level <= m:
        B = complement(union_all([translate(A, i) for i in range(BLOCKS)], odometer))
        return "tower", sorted(refine(A, m)[1]), sorted(refine(B, m)[1])
    l, r = divmod(N, BLOCKS)
    if l >= r:
        A_cells = _tower_positions(N, BLOCKS)
        covered = {(a + i) % N for a in A_cells for i in range(BLOCKS)}
        return "single-tower", A_cells, sorted(set(range(N)) - covered)
    # too short for the tower formula: r isolated points 1, 3, ..., 2r-1
    return "spread", [0], [2 * i + 1 for i in range(r)]


def finite_three_involutions(m: int, odometer: Odometer | None = None) -> Certificate:
    """Three involutions of Z/Q(m) whose product i_1 i_2 i_3 is a -> a + 1."""
    odo = odometer or DYADIC
    N = odo.Q(m)
    if N < 2 * BLOCKS:
        raise PreconditionError(f"Q(m) = {N} leaves no room for {BLOCKS} blocks of size >= 2")
    route, A, B = _split_sets(odo, m)
    shift = FinitePermutation.shift(N, m)
    bset = set(B)
    if any((x + 1) % N in bset for x in B):
        raise AssertionError("B meets B + 1")
    b = FinitePermutation.from_mapping(
        N, {**{x: (x + 1) % N for x in B}, **{(x + 1) % N: x for x in B}}, m
    )
    g = b * shift
    # g fixes B and runs once through everything else
    start = A[0]
    big = _cycle_of(g, start)
    if len(big) + len(B) != N or len(big) % BLOCKS:
        raise AssertionError("b o shift is not one cycle off B")
    blocks = [big[i::BLOCKS] for i in range(BLOCKS)]
    e0 = blocks[0]
    ident = FinitePermutation.identity(N, m)
    # g^18 on E_0 is the cycle e0[0] -> e0[1] -> ...; it equals sigma rho
    # with rho(i) = -i and sigma(i) = 1 - i.  Nontrivial factors at 0 and 9.
    hs = [ident] * BLOCKS
    hs[0] = _reversal(N, e0, 1, m)
    hs[BLOCKS // 2] = _reversal(N, e0, 0, m)
    d, _ = finite_cycles_lemma(g, hs, blocks)
    gd = g * d
    # reflections of each 18-cycle of gd, in coordinates from its E_0 point
    refl = {0: {}, 1: {}, -1: {}}
    for x in e0:
        cyc = _cycle_of(gd, x)
        for i in range(BLOCKS):
            for off, mp in refl.items():
                mp[cyc[i]] = cyc[(off - i) % BLOCKS]
    rho, sigma, tau = (FinitePermutation.from_mapping(N, refl[k], m) for k in (0, 1, -1))
    # gd = sigma rho = rho tau; rho fixes floors 0 and 9
    if route == "spread":
        # d lives on floors 0 and 9, so rho d^-1 is an involution
        s, t = sigma, rho
        factors = (("i_1", b), ("i_2", s), ("i_3", t * d.inverse()))
    else:
        # B + 1 lies in E_0, which rho fixes, so b rho is an involution
        s, t = rho, tau
        factors = (("i_1", b * s), ("i_2", t), ("i_3", d.inverse()))
    side = {
        "route": route,
        "b": b,
        "g": g,
        "d": d,
        "s": s,
        "t": t,
        "A": A,
        "B": B,
        "blocks": blocks,
        "hs": hs,
    }
    return Certificate("FiniteThreeInvolutions", odo, shift, factors, side)


@register("FiniteThreeInvolutions")
def _check_finite_three_involutions(cert: Certificate, ok) -> None:
    shift = cert.target
    N = shift.size
    i1, i2, i3 = (cert.factor(k) for k in ("i_1", "i_2", "i_3"))
    sd = cert.side_data
    ok("target is a -> a + 1", shift == FinitePermutation.shift(N))
    for name, p in (("i_1", i1), ("i_2", i2), ("i_3", i3)):
        ok(f"{name}^2 == id", p.is_involution())
    ok("i_1 i_2 i_3 == shift", i1 * i2 * i3 == shift)
    b, g, d, s, t = (sd[k] for k in ("b", "g", "d", "s", "t"))
    ok("g == b shift", g == b * shift)
    ok("b^2 == id", b.is_involution())
    ok("d^2 == id", d.is_involution())
    ok("s t == g d", s * t == g * d)
    ok("(g d)^18 == id", ((g * d) ** BLOCKS).is_identity())
    e0 = frozenset(sd["blocks"][0])
    if sd["route"] == "spread":
        ok("supp(t) disjoint from supp(d)", not (t.support() & d.support()))
    else:
        ok("supp(s) disjoint from supp(b)", not (s.support() & b.support()))
        ok("supp(s) avoids E_0", not (s.support() & e0))
        ok("E_0 == A", e0 == frozenset(sd["A"]))


# -- local subgroup ------------------------------------------------------------


@dataclass(frozen=True)
class LocalSubgroupReport:
    """Sizes of the centralizer chain for an involution pi of Sym(N)."""

    pi: tuple
    C: int
    U: int
    V: int
    S: int
    W: int
    pointwise: int
    V_in_C: bool
    S_off_support: bool
    W_equals_pointwise: bool


_ALL_PERMS: dict[int, np.ndarray] = {}


def _all_perms(N: int) -> np.ndarray:
    if N not in _ALL_PERMS:
        _ALL_PERMS[N] = np.array(list(itertools.permutations(range(N))), dtype=np.int8)
    return _ALL_PERMS[N]


def _commuting_with(P: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Rows p of P with p o g == g o p."""
    return np.all(P[:, g] == g[P], axis=1)


def _centralizer(P: np.ndarray, gens) -> np.ndarray:
    out = P
    for g in gens:
        out = out[_commuting_with(out, g)]
    return out


def _inverses(P: np.ndarray) -> np.ndarray:
    inv = np.empty_like(P)
    rows = np.arange(P.shape[0])[:, None]
    inv[rows, P] = np.arange(P.shape[1], dtype=P.dtype)
    return inv


def local_subgroup_report(m: int, pi: FinitePermutation | Sequence[int], odometer: Odometer | None = None) -> LocalSubgroupReport:
    """Compute C, U, V, S, W for pi inside Sym(Z/Q(m)) by enumeration."""
    odo = odometer or DYADIC
    N = odo.Q(m)
    images = tuple(pi.images if isinstance(pi, FinitePermutation) else pi)
    p = FinitePermutation(m, images)
    if p.size != N:
        raise PreconditionError(f"pi acts on {p.size} points, expected {N}")
    if not p.is_involution() or p.is_identity():
        raise PreconditionError("pi must be a non-identity involution")
    if N > 8:
        raise PreconditionError("exhaustive enumeration is limited to Q(m) <= 8")
    P = _all_perms(N)
    pv = np.array(images, dtype=P.dtype)
    ident = np.arange(N, dtype=P.dtype)

    C = P[_commuting_with(P, pv)]
    C_inv = _inverses(C)
    U = []
    for g in C[np.all(np.take_along_axis(C, C, axis=1) == ident, axis=1)]:
        conj = np.take_along_axis(C, g[C_inv], axis=1)  # h g h^-1
        if np.all(conj[:, g] == g[conj]):
            U.append(g)
    V = _centralizer(P, U)
    S = np.unique(np.take_along_axis(V, V, axis=1), axis=0)
    W = _centralizer(P, S)

    supp = np.array(images) != np.arange(N)
    pointwise = int(np.sum(np.all((P == ident) | supp, axis=1)))
    in_C = {r.tobytes() for r in C}
    V_in_C = all(r.tobytes() in in_C for r in V)
    S_off = bool(np.all(S[:, supp] == ident[supp]))
    W_pointwise = bool(len(W) == pointwise and np.all((W == ident) | supp))
    return LocalSubgroupReport(
        pi=images,
        C=len(C),
        U=len(U),
        V=len(V),
        S=len(S),
        W=len(W),
        pointwise=pointwise,
        V_in_C=V_in_C,
        S_off_support=S_off,
        W_equals_pointwise=W_pointwise,
    )


def local_subgroup_check(m: int, pi, odometer: Odometer | None = None) -> bool:
    """Whether W_pi equals the pointwise stabilizer of the complement of supp(pi)."""
    return local_subgroup_report(m, pi, odometer).W_equals_pointwise


def involutions(N: int) -> list[tuple]:
    """All non-identity involutions of Sym(N)."""
    out = []
    for p in _all_perms(N) if N <= 8 else ():
        t = tuple(int(x) for x in p)
        if all(t[t[a]] == a for a in range(N)) and any(t[a] != a for a in range(N)):
            out.append(t)
    return out


# -- truncation ------------------------------------------------------------------


def truncation_coherence(g: GroupElement, m1: int, m2: int) -> bool:
    """Whether the level-m2 permutation reduces to the level-m1 one."""
    if m1 < g.level:
        raise PreconditionError(f"m1 = {m1} is below the level {g.level} of g")
    if m2 <= m1:
        raise PreconditionError("need m1 < m2")
    q1 = g.odometer.Q(m1)
    p1, p2 = truncate(g, m1), truncate(g, m2)
    return all(p2(a) % q1 == p1(a % q1) for a in range(p2.size))
