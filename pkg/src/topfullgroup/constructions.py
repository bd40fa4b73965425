"""Factorizations in the topological full group, each returned as a Certificate.

Everything is computed on residue cycles: at a level where an element's
cocycle is constant on cylinders, the element permutes the cylinders, and a
map defined floor-by-floor on a tower is specified by the phi-shift it applies
to each cylinder.
"""

from __future__ import annotations

import bisect
from fractions import Fraction

from .cantor_space import (
    ClopenSet,
    Odometer,
    PointPrefix,
    canonicalize,
    complement,
    difference,
    find_small_clopen,
    intersect,
    measure,
    refine,
    translate,
    union,
    union_all,
)
from .certificates import Certificate, register
from .errors import (
    MeasureMismatch,
    MeasureNotSmaller,
    NotASubset,
    NotMinimalOnSupport,
    NotPeriodic,
    PreconditionError,
)
from .full_group import (
    GroupElement,
    commutator,
    compose,
    compose_all,
    conjugate,
    equals,
    from_moves,
    image_of_clopen,
    index,
    inverse,
    is_minimal_on_support,
    is_periodic,
    odometer_map,
    path_shifts,
    period_spectrum,
    power,
    residue_cycles,
    restrict,
    support,
)
from .kakutani import induced_map, kr_partition, periodic_quotient

__all__ = [
    "glasner_weiss_sub",
    "glasner_weiss_eq",
    "small_generators",
    "periodic_commutator",
    "periodic_two_involutions",
    "many_involutions",
    "minimal_first_step",
    "commutator_expansion",
    "four_conjugates",
    "tower_lemma",
    "eighteen_cycle",
    "induced_times_involutions",
]


def _lift(d: int, modulus: int) -> int:
    """Representative of d mod modulus with least absolute value, ties to +."""
    r = d % modulus
    return r if 2 * r <= modulus else r - modulus


def _is_involution(g: GroupElement) -> bool:
    return compose(g, g).is_identity()


def _cycle_from(g: GroupElement, start: int, m: int) -> list[int]:
    modulus = g.odometer.Q(m)
    cyc = [start]
    r = (start + g.n(start)) % modulus
    while r != start:
        cyc.append(r)
        r = (r + g.n(r)) % modulus
    return cyc


# -- Glasner-Weiss ------------------------------------------------------------


def _nearest_matching(sources, targets, modulus: int) -> list[tuple[int, int, int]]:
    """Match each source (lowest first) to the free target with the smallest lift."""
    free = sorted(targets)
    out = []
    for b in sorted(sources):
        i = bisect.bisect_left(free, b)
        best = None
        for a in {free[i % len(free)], free[i - 1]}:
            d = _lift(a - b, modulus)
            key = (abs(d), -d)
            if best is None or key < best[0]:
                best = (key, a, d)
        _, a, d = best
        free.remove(a)
        out.append((b, a, d))
    return out


def _matching_involution(B: ClopenSet, A: ClopenSet) -> GroupElement:
    odo = B.odometer
    m = max(A.level, B.level)
    bc, ac = refine(B, m)[1], refine(A, m)[1]
    moves = {}
    for b, a, d in _nearest_matching(bc - ac, ac - bc, odo.Q(m)):
        moves[b] = d
        moves[a] = -d
    return from_moves(odo, m, moves)


def glasner_weiss_sub(B: ClopenSet, A: ClopenSet) -> Certificate:
    """Involution alpha with alpha(B) inside A, for measure(B) < measure(A)."""
    if measure(B) >= measure(A):
        raise MeasureNotSmaller(f"measure(B) = {measure(B)} is not below measure(A) = {measure(A)}")
    alpha = _matching_involution(B, A)
    return Certificate("GlasnerWeissSub", B.odometer, {"B": B, "A": A}, (("alpha", alpha),))


def glasner_weiss_eq(B: ClopenSet, A: ClopenSet) -> Certificate:
    """Involution alpha with alpha(B) = A, for sets of equal measure."""
    if measure(B) != measure(A):
        raise MeasureMismatch(f"measure(B) = {measure(B)} differs from measure(A) = {measure(A)}")
    alpha = _matching_involution(B, A)
    return Certificate("GlasnerWeissEq", B.odometer, {"B": B, "A": A}, (("alpha", alpha),))


def _check_gw(cert: Certificate, ok, exact: bool) -> None:
    B, A = cert.target["B"], cert.target["A"]
    alpha = cert.factor("alpha")
    image = image_of_clopen(alpha, B)
    if exact:
        ok("measure(B) == measure(A)", measure(B) == measure(A))
        ok("alpha(B) == A", image == A)
    else:
        ok("measure(B) < measure(A)", measure(B) < measure(A))
        ok("alpha(B) subset of A", image.issubset(A))
    ok("alpha^2 == id", _is_involution(alpha))
    ok("index(alpha) == 0", index(alpha) == 0)
    ok(
        "supp(alpha) == (B u alpha(B)) minus (B n A)",
        support(alpha) == difference(union(B, image), intersect(B, A)),
    )


register("GlasnerWeissSub")(lambda c, ok: _check_gw(c, ok, exact=False))
register("GlasnerWeissEq")(lambda c, ok: _check_gw(c, ok, exact=True))


# -- small generators ---------------------------------------------------------


def _periodic_pieces(g: GroupElement, delta: Fraction) -> list[tuple[GroupElement, ClopenSet]]:
    """Split a periodic g into commuting pieces, each g on a union of columns
    of total measure below delta."""
    odo = g.odometer
    lengths = [len(c) for c, _ in residue_cycles(g) if len(c) > 1]
    if not lengths:
        return []
    longest = max(lengths)
    m = g.level
    while Fraction(longest, odo.Q(m)) >= delta:
        m += 1
    modulus = odo.Q(m)
    pieces = []
    cells: list[int] = []
    for cyc, _ in residue_cycles(g, m):
        if len(cyc) == 1:
            continue
        if cells and Fraction(len(cells) + len(cyc), modulus) >= delta:
            pieces.append(cells)
            cells = []
        cells = cells + cyc
    if cells:
        pieces.append(cells)
    out = []
    for cells in pieces:
        piece = from_moves(odo, m, {r: g.n(r) for r in cells})
        out.append((piece, canonicalize(odo, m, cells)))
    return out


def _markers(g: GroupElement, k: int) -> ClopenSet:
    """Clopen B with g^i(B) disjoint from B for 0 < i < k, meeting every orbit
    of length >= k.

    Refine until every aperiodic residue cycle has length >= 2k, then take
    every k-th residue along each long cycle, dropping the last marker when it
    sits closer than k to the first.
    """
    odo = g.odometer
    m = g.level
    while True:
        cycles = residue_cycles(g, m)
        if all(len(c) >= 2 * k for c, v in cycles if sum(v) != 0):
            break
        m += 1
        if m > g.level + 64:
            raise PreconditionError("marker refinement did not terminate")
    marks = []
    for cyc, vals in cycles:
        L = len(cyc)
        if L < k:
            continue
        pos = list(range(0, L, k))
        if len(pos) > 1 and L - pos[-1] < k:
            pos.pop()
        marks.extend(cyc[p] for p in pos)
    return canonicalize(odo, m, marks)


def small_generators(g: GroupElement, delta) -> Certificate:
    """Write g = g_1 ... g_m with supp(g_i) inside E_i and measure(E_i) < delta."""
    delta = Fraction(delta)
    if delta <= 0:
        raise PreconditionError("delta must be positive")
    factors: list[tuple[GroupElement, ClopenSet]] = []
    rest = g
    if not is_periodic(g):
        k = int(1 / delta) + 1
        B = _markers(g, k)
        g_B = induced_map(g, B)
        factors.append((g_B, B))
        rest = compose(inverse(g_B), g)
        if not is_periodic(rest):
            raise AssertionError("g_B^-1 g is not periodic")
    factors.extend(_periodic_pieces(rest, delta))
    return Certificate(
        "SmallGenerators",
        g.odometer,
        g,
        tuple((f"g_{i + 1}", e) for i, (e, _) in enumerate(factors)),
        {"delta": delta, "E": [E for _, E in factors]},
    )


@register("SmallGenerators")
def _check_small_generators(cert: Certificate, ok) -> None:
    delta = cert.side_data["delta"]
    E = cert.side_data["E"]
    elems = cert.elements()
    ok("one set E_i per factor", len(E) == len(elems))
    ok("g_1 ... g_m == g", equals(compose_all(elems, cert.odometer), cert.target))
    for i, (e, s) in enumerate(zip(elems, E), 1):
        ok(f"supp(g_{i}) subset of E_{i}", support(e).issubset(s))
        ok(f"measure(E_{i}) < delta", measure(s) < delta)


# -- periodic elements as commutators and products of involutions ------------


def _commutator_pair(g: GroupElement, m: int, singles, pairs) -> tuple[GroupElement, GroupElement]:
    """(g_1, psi) with [g_1, psi] = g, from odd cycles (``singles``, given by a
    start residue) and pairs of equal-length cycles (``pairs``).

    Odd cycle a_0..a_{n-1}: g_1 is g on floors 0..h-1 and returns floor h to
    floor 0, h = (n-1)/2; psi reflects floor j to floor n-1-j.  Pair of cycles:
    g_1 is g on the first one and psi sends floor j of the first to floor -j of
    the second.
    """
    odo = g.odometer
    modulus = odo.Q(m)
    g1_moves: dict[int, int] = {}
    psi_moves: dict[int, int] = {}
    for start in singles:
        cyc = _cycle_from(g, start, m)
        n = len(cyc)
        if n % 2 == 0:
            raise PreconditionError("case 1 needs an odd period")
        if n == 1:
            continue
        P = path_shifts(g, cyc)
        h = (n - 1) // 2
        for j in range(h):
            g1_moves[cyc[j]] = P[j + 1] - P[j]
        g1_moves[cyc[h]] = -P[h]
        for j in range(n):
            psi_moves[cyc[j]] = P[n - 1 - j] - P[j]
    for left, right in pairs:
        c1, c2 = _cycle_from(g, left, m), _cycle_from(g, right, m)
        n = len(c1)
        if len(c2) != n:
            raise PreconditionError("paired cycles have different periods")
        P1, P2 = path_shifts(g, c1), path_shifts(g, c2)
        d = _lift(c2[0] - c1[0], modulus)
        for j in range(n):
            g1_moves[c1[j]] = P1[(j + 1) % n] - P1[j] if j < n - 1 else -P1[j]
            shift = -P1[j] + d + P2[(-j) % n]
            psi_moves[c1[j]] = shift
            psi_moves[c2[(-j) % n]] = -shift
    return from_moves(odo, m, g1_moves), from_moves(odo, m, psi_moves)


def periodic_commutator(g: GroupElement) -> Certificate:
    """g = [g_1, psi] for periodic g.

    Odd cycles are handled one by one; even cycles of equal length are paired,
    refining the level until every even length occurs an even number of times.
    """
    if not is_periodic(g):
        raise NotPeriodic("periodic_commutator needs a periodic element")
    odo = g.odometer
    m = g.level
    while True:
        by_len: dict[int, list[int]] = {}
        for cyc, _ in residue_cycles(g, m):
            by_len.setdefault(len(cyc), []).append(cyc[0])
        if all(len(v) % 2 == 0 for n, v in by_len.items() if n % 2 == 0):
            break
        if not any(q % 2 == 0 for q in odo.bases_after(m)):
            raise PreconditionError("even-period towers cannot be split into equivalent halves")
        m += 1
    singles = [s for n, v in by_len.items() if n % 2 == 1 for s in v]
    pairs = [
        (v[i], v[i + 1]) for n, v in sorted(by_len.items()) if n % 2 == 0 for i in range(0, len(v), 2)
    ]
    g1, psi = _commutator_pair(g, m, singles, pairs)
    return Certificate("PeriodicCommutator", odo, g, (("g_1", g1), ("psi", psi)))


@register("PeriodicCommutator")
def _check_periodic_commutator(cert: Certificate, ok) -> None:
    ok("target is periodic", is_periodic(cert.target))
    g1, psi = cert.factor("g_1"), cert.factor("psi")
    ok("g == [g_1, psi]", equals(cert.target, commutator(g1, psi)))
    ok("psi^2 == id", compose(psi, psi).is_identity())
    supp = support(cert.target)
    ok("supp(g_1), supp(psi) inside supp(g)", support(g1).issubset(supp) and support(psi).issubset(supp))


def _reflections(g: GroupElement, base: ClopenSet | None) -> GroupElement:
    odo = g.odometer
    m = g.level if base is None else max(g.level, base.level)
    cells = None if base is None else refine(base, m)[1]
    moves = {}
    for cyc, _ in residue_cycles(g, m):
        p = len(cyc)
        if p == 1:
            continue
        if cells is not None:
            hits = [i for i, r in enumerate(cyc) if r in cells]
            if len(hits) > 1:
                raise PreconditionError("base meets a cycle more than once")
            if hits:
                cyc = cyc[hits[0]:] + cyc[: hits[0]]
        P = path_shifts(g, cyc)
        for j in range(1, p):
            moves[cyc[j]] = P[(-j) % p] - P[j]
    return from_moves(odo, m, moves)


def periodic_two_involutions(g: GroupElement, base: ClopenSet | None = None) -> Certificate:
    """g = s t with s, t involutions.

    On a cycle with floors 0..p-1, s sends floor j to floor -j mod p and
    t = s g sends floor j to floor -j-1; s fixes floor 0, so supp(s) avoids
    ``base`` when base holds floor 0 of every cycle (default: the cylinder of
    least residue).
    """
    if not is_periodic(g):
        raise NotPeriodic("periodic_two_involutions needs a periodic element")
    s = _reflections(g, base)
    t = compose(s, g)
    side = {} if base is None else {"base": base}
    return Certificate("TwoInvolutions", g.odometer, g, (("s", s), ("t", t)), side)


@register("TwoInvolutions")
def _check_two_involutions(cert: Certificate, ok) -> None:
    s, t = cert.factor("s"), cert.factor("t")
    ok("s^2 == id", _is_involution(s))
    ok("t^2 == id", _is_involution(t))
    ok("s t == g", equals(compose(s, t), cert.target))
    if "base" in cert.side_data:
        ok("supp(s) avoids the base block", support(s).isdisjoint(cert.side_data["base"]))


# -- many involutions ---------------------------------------------------------


def many_involutions(A: ClopenSet, x: PointPrefix, n: int) -> Certificate:
    """h = l r^-1 = [alpha, r] supported in A, moving x, of period n on its support."""
    if n < 2:
        raise PreconditionError("period n must be at least 2")
    if A.is_empty() or not A.contains_prefix(x):
        raise NotASubset("x does not lie in A")
    odo = A.odometer
    mm = max(A.level, x.level)
    cells = refine(A, mm)[1]
    mod_a = odo.Q(mm)
    times, t = [], 0
    while len(times) < 2 * n:
        if (x.residue + t) % mod_a in cells:
            times.append(t)
        t += 1
    lv = odo.level_for(times[-1], mm)
    modulus = odo.Q(lv)
    V = [(x.residue + t) % modulus for t in times]
    l_moves, r_moves, a_moves = {}, {}, {}
    for i in range(n - 1):
        l_moves[V[i]] = times[i + 1] - times[i]
        r_moves[V[n + i]] = times[n + i + 1] - times[n + i]
    l_moves[V[n - 1]] = -times[n - 1]
    r_moves[V[2 * n - 1]] = -(times[2 * n - 1] - times[n])
    for i in range(n):
        a_moves[V[n + i]] = times[i] - times[n + i]
        a_moves[V[i]] = times[n + i] - times[i]
    l = from_moves(odo, lv, l_moves)
    r = from_moves(odo, lv, r_moves)
    alpha = from_moves(odo, lv, a_moves)
    h = compose(l, inverse(r))
    side = {
        "A": A,
        "x": x,
        "n": n,
        "V": ClopenSet(odo, lv, frozenset({V[0]})),
        "visit_times": times,
    }
    return Certificate(
        "ManyInvolutions", odo, h, (("l", l), ("r", r), ("alpha", alpha), ("h", h)), side
    )


@register("ManyInvolutions")
def _check_many_involutions(cert: Certificate, ok) -> None:
    l, r, alpha, h = (cert.factor(k) for k in ("l", "r", "alpha", "h"))
    A, x, n, V = (cert.side_data[k] for k in ("A", "x", "n", "V"))
    ok("h == target", equals(h, cert.target))
    ok("h == l r^-1", equals(h, compose(l, inverse(r))))
    ok("l == alpha r alpha^-1", equals(l, conjugate(r, alpha)))
    ok("h == [alpha, r]", equals(h, commutator(alpha, r)))
    ok("supp(h) subset of A", support(h).issubset(A))
    ok("V lies in the cylinder of x", V.level >= x.level and min(V.residues) % x.odometer.Q(x.level) == x.residue)
    ok("x in supp(h)", V.issubset(support(h)))
    spec = period_spectrum(h)
    periods = {c.period: c.points for c in spec.classes if c.period > 1}
    ok("h has period n on its support", set(periods) == {n} and periods[n] == support(h) and spec.is_periodic())


# -- minimal elements ---------------------------------------------------------


def _require_minimal(f: GroupElement) -> None:
    if not any(f.cocycle) or not is_minimal_on_support(f):
        raise NotMinimalOnSupport("f must have nonempty support and be minimal on it")


def _first_step(f: GroupElement, delta: Fraction) -> dict:
    _require_minimal(f)
    delta = Fraction(delta)
    if delta <= 0:
        raise PreconditionError("delta must be positive")
    odo = f.odometer
    A = find_small_clopen(support(f), delta / 2, [1, 2, 3], element=f)
    partition = kr_partition(f, A)
    mids = [
        _image_power(f, t.base, t.height // 2) for t in partition.towers if t.height % 2 == 0
    ]
    B = union_all([A] + mids, odo)
    f1 = induced_map(f, B)
    g = compose(inverse(f1), f)
    m = max(g.level, A.level)
    singles, pairs = [], []
    for tower in partition.towers:
        h = tower.height
        for b in sorted(refine(tower.base, m)[1]):
            if h % 2:
                singles.append(b)
            else:
                pairs.append((b, f.residue_power(b, m, h // 2)))
    s, t = _commutator_pair(g, m, singles, pairs)
    return {"f_1": f1, "s": s, "t": t, "A": A, "B": B}


def _image_power(g: GroupElement, s: ClopenSet, e: int) -> ClopenSet:
    for _ in range(e):
        s = image_of_clopen(g, s)
    return s


def minimal_first_step(f: GroupElement, delta) -> Certificate:
    """f = f_1 [s, t] with f_1 minimal on a support of measure < delta."""
    step = _first_step(f, Fraction(delta))
    return Certificate(
        "MinimalFirstStep",
        f.odometer,
        f,
        (("f_1", step["f_1"]), ("s", step["s"]), ("t", step["t"])),
        {"delta": Fraction(delta), "A": step["A"], "B": step["B"]},
    )


@register("MinimalFirstStep")
def _check_minimal_first_step(cert: Certificate, ok) -> None:
    f = cert.target
    f1, s, t = cert.factor("f_1"), cert.factor("s"), cert.factor("t")
    sf = support(f)
    ok("f minimal on its support", is_minimal_on_support(f))
    ok("f == f_1 [s, t]", equals(f, compose(f1, commutator(s, t))))
    ok("measure(supp f_1) < delta", measure(support(f1)) < cert.side_data["delta"])
    ok("f_1 minimal on its support", is_minimal_on_support(f1))
    ok("supp(f_1) proper subset of supp(f)", support(f1).issubset(sf) and support(f1) != sf)
    ok("supp(s) u supp(t) subset of supp(f)", union(support(s), support(t)).issubset(sf))


def _shell(P: ClopenSet, depth: int) -> ClopenSet:
    """[P 0^depth] minus [P 0^(depth+1)] for a single cylinder P."""
    odo = P.odometer
    r = min(P.residues)
    outer = ClopenSet(odo, P.level + depth, frozenset({r}))
    inner = ClopenSet(odo, P.level + depth + 1, frozenset({r}))
    return difference(outer, inner)


def commutator_expansion(f: GroupElement, steps: int) -> Certificate:
    """f = f_N c_1 ... c_K with commutators c_j and residual f_N of small support.

    The first step splits off f_1 as in :func:`minimal_first_step`.  Each later
    step writes f_i = fbar [s, t], moves fbar into the next cell C_{i+1} with a
    Glasner-Weiss involution t', and sets f_{i+1} = t' fbar t'^-1, so
    f_i = f_{i+1} [t', fbar^-1] [s, t].  Cells C_2, C_3, ... are nested shells
    shrinking to a point outside supp(f_1).
    """
    if steps < 1:
        raise PreconditionError("at least one step is required")
    _require_minimal(f)
    odo = f.odometer
    total = measure(support(f))
    first = _first_step(f, total / 2)
    residuals = [first["f_1"]]
    pairs = [(first["s"], first["t"])]
    step_pairs = [[0]]
    outside = difference(support(f), support(first["f_1"]))
    r0 = min(refine(outside, outside.level)[1])
    P = ClopenSet(odo, outside.level, frozenset({r0}))
    cells = [support(first["f_1"])]
    for i in range(1, steps):
        nxt = _shell(P, i - 1)
        cells.append(nxt)
        delta = min(total / 2 ** (i + 1), measure(nxt))
        st = _first_step(residuals[-1], delta)
        fbar = st["f_1"]
        tp = glasner_weiss_sub(support(fbar), nxt).factor("alpha")
        residuals.append(conjugate(fbar, tp))
        # newest commutators sit immediately to the right of the residual
        pairs = [(tp, inverse(fbar)), (st["s"], st["t"])] + pairs
        step_pairs = [[0, 1]] + [[j + 2 for j in sp] for sp in step_pairs]
    factors = [("residual", residuals[-1])]
    factors += [(f"f_{i + 1}", e) for i, e in enumerate(residuals)]
    for j, (s, t) in enumerate(pairs, 1):
        factors += [(f"s_{j}", s), (f"t_{j}", t)]
    side = {
        "steps": steps,
        "cells": cells,
        "step_pairs": list(reversed(step_pairs)),
    }
    return Certificate("CommutatorExpansion", odo, f, tuple(factors), side)


@register("CommutatorExpansion")
def _check_commutator_expansion(cert: Certificate, ok) -> None:
    f = cert.target
    N = cert.side_data["steps"]
    cells = cert.side_data["cells"]
    step_pairs = cert.side_data["step_pairs"]
    sf = support(f)
    residual = cert.factor("residual")
    fs = [cert.factor(f"f_{i + 1}") for i in range(N)]
    K = sum(1 for n in cert.factor_names() if n.startswith("s_"))
    pairs = [(cert.factor(f"s_{j}"), cert.factor(f"t_{j}")) for j in range(1, K + 1)]
    comms = [commutator(s, t) for s, t in pairs]
    ok("residual == f_N", equals(residual, fs[-1]))
    ok("f == f_N c_1 ... c_K", equals(f, compose_all([residual] + comms, cert.odometer)))
    bound = measure(sf) * Fraction(2) ** (1 - N)
    ok("measure(supp f_N) < measure(supp f) 2^(1-N)", measure(support(residual)) < bound)
    ok("f_N minimal on its support", is_minimal_on_support(residual))
    ok("one cell per step", len(cells) == N and len(step_pairs) == N)
    for i, a in enumerate(cells):
        for b in cells[i + 1:]:
            ok("cells pairwise disjoint", a.isdisjoint(b))
        ok(f"cell C_{i + 1} inside supp(f)", a.issubset(sf))
    ok("C_1 == supp(f_1)", cells[0] == support(fs[0]))
    for i, fi in enumerate(fs):
        ok(f"supp(f_{i + 1}) inside C_{i + 1}", support(fi).issubset(cells[i]))
        ok(f"f_{i + 1} minimal on its support", is_minimal_on_support(fi))
    # step 0 is f = f_1 [s, t]; step i >= 1 is f_i = f_{i+1} [t', fbar^-1] [s, t]
    for i, idx in enumerate(step_pairs):
        before = f if i == 0 else fs[i - 1]
        after = fs[i]
        ok(f"step {i + 1} identity", equals(before, compose_all([after] + [comms[j] for j in idx], cert.odometer)))
        region = sf if i == 0 else union(cells[i - 1], cells[i])
        for j in idx:
            s, t = pairs[j]
            ok(f"step {i + 1} commutator supports nested", union(support(s), support(t)).issubset(region))


# -- four conjugates ----------------------------------------------------------


def _four_conjugators(h, g, alpha):
    ai = inverse(alpha)
    return [compose(h, ai), ai, compose(g, ai), compose(compose(g, h), ai)]


def four_conjugates(
    h: GroupElement,
    g: GroupElement,
    w: GroupElement,
    E: ClopenSet,
    A_prime: ClopenSet | None = None,
) -> Certificate:
    """[h, g] as a product of four conjugates of the involution w.

    With alpha(A') inside E and q = alpha^-1 w alpha,
    [h, g] = (h q h^-1) q^-1 (g q g^-1) (g h q^-1 h^-1 g^-1).
    """
    odo = w.odometer
    if not _is_involution(w):
        raise PreconditionError("w must be an involution")
    if not image_of_clopen(w, E).isdisjoint(E):
        raise PreconditionError("w(E) must be disjoint from E")
    covered = union(support(h), support(g))
    if A_prime is None:
        A_prime = covered
    elif not covered.issubset(A_prime):
        raise NotASubset("supp(h) u supp(g) is not inside A'")
    alpha = glasner_weiss_sub(A_prime, E).factor("alpha")
    q = conjugate(w, inverse(alpha))
    if not image_of_clopen(q, A_prime).isdisjoint(A_prime):
        raise PreconditionError("q(A') meets A'")
    ks = [conjugate(w, c) for c in _four_conjugators(h, g, alpha)]
    factors = [("h", h), ("g", g), ("w", w), ("alpha", alpha)]
    factors += [(f"k_{i + 1}", k) for i, k in enumerate(ks)]
    return Certificate(
        "FourConjugates", odo, commutator(h, g), tuple(factors), {"E": E, "A_prime": A_prime}
    )


@register("FourConjugates")
def _check_four_conjugates(cert: Certificate, ok) -> None:
    h, g, w, alpha = (cert.factor(k) for k in ("h", "g", "w", "alpha"))
    E, Ap = cert.side_data["E"], cert.side_data["A_prime"]
    ks = [cert.factor(f"k_{i}") for i in range(1, 5)]
    ok("w^2 == id", _is_involution(w))
    ok("w(E) disjoint from E", image_of_clopen(w, E).isdisjoint(E))
    ok("supp(h) u supp(g) inside A'", union(support(h), support(g)).issubset(Ap))
    ok("alpha(A') inside E", image_of_clopen(alpha, Ap).issubset(E))
    for i, (k, c) in enumerate(zip(ks, _four_conjugators(h, g, alpha)), 1):
        ok(f"k_{i} is the prescribed conjugate of w", equals(k, conjugate(w, c)))
    ok("target == [h, g]", equals(cert.target, commutator(h, g)))
    ok("k_1 k_2 k_3 k_4 == [h, g]", equals(compose_all(ks, cert.odometer), commutator(h, g)))


# -- tower lemma and the 18-cycle --------------------------------------------


def _tower_positions(k: int, n: int) -> list[int]:
    """Floors of a height-k tower that go into A (k > n^2 guarantees l >= r)."""
    l, r = divmod(k, n)
    if r == 0:
        return [n * i for i in range(l)]
    if l < r:
        raise PreconditionError(f"tower of height {k} too short for n = {n}")
    return [(n + 1) * i for i in range(r)] + [n * i + r - 1 for i in range(r, l)]


def tower_lemma(n: int, odometer: Odometer | None = None) -> Certificate:
    """Clopen A with A, phi A, ..., phi^{n-1} A disjoint and phi(B) inside A,
    B the complement of their union."""
    from .cantor_space import DYADIC

    odo = odometer or DYADIC
    if n < 2:
        raise PreconditionError("n must be at least 2")
    L = odo.level_for(n * n)
    E = ClopenSet(odo, L, frozenset({0}))
    phi = odometer_map(odo)
    pieces = []
    for tower in kr_partition(phi, E).towers:
        for p in _tower_positions(tower.height, n):
            pieces.append(translate(tower.base, p))
    A = union_all(pieces, odo)
    B = complement(union_all([translate(A, i) for i in range(n)], odo))
    return Certificate("TowerLemma", odo, {"n": n}, (), {"A": A, "B": B, "E": E})


@register("TowerLemma")
def _check_tower_lemma(cert: Certificate, ok) -> None:
    n = cert.target["n"]
    A, B = cert.side_data["A"], cert.side_data["B"]
    odo = cert.odometer
    ok("A nonempty", not A.is_empty())
    floors = [translate(A, i) for i in range(n)]
    covered = union_all(floors, odo)
    ok("A, phi A, ..., phi^{n-1} A pairwise disjoint", measure(covered) == n * measure(A))
    ok("B is the complement", B == complement(covered))
    ok("phi(B) inside A", translate(B, 1).issubset(A))
    ok("n measure(A) + measure(B) == 1", n * measure(A) + measure(B) == 1)


def eighteen_cycle(odometer: Odometer | None = None) -> Certificate:
    """b swapping B and phi(B), and g = b phi, an 18-cycle on A_i = phi^i(A)."""
    tl = tower_lemma(18, odometer)
    odo = tl.odometer
    A, B = tl.side_data["A"], tl.side_data["B"]
    phi = odometer_map(odo)
    b = _swap_with_next(B)
    g = compose(b, phi)
    return Certificate("EighteenCycle", odo, phi, (("b", b), ("g", g)), {"A": A, "B": B})


def _swap_with_next(B: ClopenSet) -> GroupElement:
    odo = B.odometer
    m = B.level
    modulus = odo.Q(m)
    cells = refine(B, m)[1]
    moves = {}
    for r in cells:
        moves[r] = 1
        moves[(r + 1) % modulus] = -1
    if any((r + 1) % modulus in cells for r in cells):
        raise PreconditionError("B meets phi(B)")
    return from_moves(odo, m, moves)


@register("EighteenCycle")
def _check_eighteen_cycle(cert: Certificate, ok) -> None:
    odo = cert.odometer
    b, g = cert.factor("b"), cert.factor("g")
    A, B = cert.side_data["A"], cert.side_data["B"]
    phi = odometer_map(odo)
    ok("target == phi", equals(cert.target, phi))
    ok("b^2 == id", _is_involution(b))
    ok("supp(b) inside B u phi(B)", support(b).issubset(union(B, translate(B, 1))))
    ok("g == b phi", equals(g, compose(b, phi)))
    blocks = [translate(A, i) for i in range(18)]
    ok("blocks pairwise disjoint", measure(union_all(blocks, odo)) == 18 * measure(A))
    for i in range(18):
        ok(f"g(A_{i}) == A_{(i + 1) % 18}", image_of_clopen(g, blocks[i]) == blocks[(i + 1) % 18])
    ok("g == id off the blocks", support(g).issubset(union_all(blocks, odo)))
    first = restrict(power(g, 18), A)
    ok("supp(g^18 on A_0) == A_0", support(first) == A)
    ok("g^18 minimal on A_0", is_minimal_on_support(first))
    ok("index(g) == index(b) + 1 == 1", index(g) == index(b) + 1 == 1)


def induced_times_involutions(A: ClopenSet) -> Certificate:
    """phi = phi_A s t with s, t involutions."""
    if A.is_empty():
        raise PreconditionError("A must be nonempty")
    odo = A.odometer
    phi_A = induced_map(odometer_map(odo), A)
    two = periodic_two_involutions(periodic_quotient(A))
    return Certificate(
        "InducedTimesInvolutions",
        odo,
        odometer_map(odo),
        (("phi_A", phi_A), ("s", two.factor("s")), ("t", two.factor("t"))),
        {"A": A},
    )


@register("InducedTimesInvolutions")
def _check_induced_times_involutions(cert: Certificate, ok) -> None:
    odo = cert.odometer
    phi_A, s, t = (cert.factor(k) for k in ("phi_A", "s", "t"))
    A = cert.side_data["A"]
    phi = odometer_map(odo)
    ok("target == phi", equals(cert.target, phi))
    ok("phi_A is the induced map on A", equals(phi_A, induced_map(phi, A)))
    ok("phi_A minimal on A", support(phi_A) == A and is_minimal_on_support(phi_A))
    ok("s^2 == id", _is_involution(s))
    ok("t^2 == id", _is_involution(t))
    ok("phi == phi_A s t", equals(phi, compose_all([phi_A, s, t], odo)))
