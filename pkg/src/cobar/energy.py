"""Energies of maps, maximal lifts and the lower bounds on bar lengths.

A lift of phi: X -> Y by b is a chain map X -> T_{-b} Y whose push-forward
along tau is homotopic to phi. For interval complexes the push-forward
keeps the entry pattern, so a lift by b exists exactly when some
representative phi + ds + sd has every entry with birth gap >= b. That
turns every lift question here into an F2 linear system.

The tower of lifts for a twisted complex is built by gauge transformations
P = I + S (S strictly upper triangular), which replace each phi_ij by a
homotopic representative and adjust longer maps so that the Maurer-Cartan
relation keeps holding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import f2
from .core import (
    INF,
    ChainMap,
    CobarError,
    GradedMap,
    HomSpace,
    IntervalComplex,
    compose_entries,
    frac,
    transpose,
    translate,
)
from .cones import TwistedComplex, validate_mc


def gap(X: IntervalComplex, Y: IntervalComplex, entry) -> Fraction:
    x, y = entry
    return Y[y].birth - X[x].birth


def map_energy(phi: GradedMap):
    """Smallest birth gap over the nonzero entries; +inf for the zero map."""
    if not phi.entries:
        return INF
    return min(gap(phi.source, phi.target, e) for e in phi.entries)


def entries_energy(X, Y, entries):
    return min((gap(X, Y, e) for e in entries), default=INF)


# ---------------------------------------------------------------------------
# best representative of a homotopy class


def _best_representative(X, Y, shift, entries, cap=INF):
    """Maximise the energy of entries + d s + s d over s of shift - 1.

    Returns (energy, s_entries, new_entries); energy is capped at ``cap``.
    With a finite cap the search only asks for energy >= cap.
    """
    V = HomSpace(X, Y, shift)
    S = HomSpace(X, Y, shift - 1)
    cols = S.differential_columns(V)
    target = V.vec(entries)
    gaps = [gap(X, Y, p) for p in V.positions]
    rows = transpose(cols, V.dim)

    def attempt(b):
        sysm = f2.F2System()
        for r in range(V.dim):
            if gaps[r] < b and not sysm.try_add(rows[r], (target >> r) & 1):
                return None
        return sysm.lex_least(S.dim)

    levels = sorted({g for g in gaps}, reverse=True)
    candidates = [INF] + levels
    if cap != INF:
        candidates = [cap] + [g for g in levels if g < cap]
    for b in candidates:
        s = attempt(b)
        if s is not None:
            s_entries = S.entries(s)
            new = V.entries(target ^ _apply(cols, s))
            energy = entries_energy(X, Y, new)
            return min(energy, cap), s_entries, new
    raise AssertionError("an energy-0 representative always exists")


def _apply(cols, s):
    v = 0
    for k in f2.bits(s):
        v ^= cols[k]
    return v


@dataclass
class LiftCertificate:
    """phi lifted by b, with tau o lift + phi = d s + s d."""

    b: Fraction | float
    lift: GradedMap | None
    witness: GradedMap
    representative: frozenset

    @property
    def unbounded(self) -> bool:
        return self.b == INF


def max_lift_shift(phi: GradedMap) -> LiftCertificate:
    """Largest b with a lift of phi through T_{-b} of its target."""
    X, Y = phi.source, phi.target
    b, s, rep = _best_representative(X, Y, phi.shift, phi.entries)
    witness = GradedMap(X, Y, phi.shift - 1, s)
    lift = None
    if b != INF:
        tgt = translate(Y, -b)
        lift = (ChainMap(X, tgt, rep) if phi.shift == 0 and isinstance(phi, ChainMap)
                else GradedMap(X, tgt, phi.shift, rep))
    return LiftCertificate(b, lift, witness, rep)


def lift_exists(phi: GradedMap, b) -> bool:
    """Independent check: some chain map X -> T_{-b} Y pushes forward to phi."""
    from .core import HomClasses

    b = frac(b)
    X, Y = phi.source, phi.target
    lifted = HomClasses(X, Y, -b)
    base = HomClasses(X, Y, 0)
    v = base.V0.vec(phi.entries)
    for c in range(1 << lifted.dim):
        z = lifted.V0.entries(lifted.rep(c))
        if base.is_null(v ^ base.V0.vec(z)):
            return True
    return False


# ---------------------------------------------------------------------------
# the tower


def _total_index(T: TwistedComplex):
    return [(i, x) for i in range(T.m) for x in T.pieces[i].ids]


def _blocks_to_total(T: TwistedComplex, blocks: dict) -> frozenset:
    return frozenset(((i, x), (j, y)) for (i, j), ents in blocks.items() for x, y in ents)


def _total_differential(T: TwistedComplex) -> frozenset:
    out = set()
    for i, P in enumerate(T.pieces):
        out |= {((i, x), (i, y)) for x, y in P.differential}
    for (i, j), m in T.maps.items():
        out |= {((i, x), (j, y)) for x, y in m.entries}
    return frozenset(out)


def gauge(T: TwistedComplex, S: dict) -> TwistedComplex:
    """Conjugate the total differential by I + S.

    S maps (i, j), i < j, to entry sets G_i -> G_j of shift i - j. Over F2
    (I + S)^{-1} = I + S + S^2 + ...; the result keeps every d_i.
    """
    D = _total_differential(T)
    Sm = _blocks_to_total(T, S)
    P = Sm | {(v, v) for v in _total_index(T)}
    Pinv = {(v, v) for v in _total_index(T)}
    power = frozenset(Sm)
    while power:
        Pinv = set(frozenset(Pinv) ^ power)
        power = compose_entries(Sm, power)
    new = compose_entries(frozenset(Pinv), compose_entries(D, frozenset(P)))
    blocks: dict = {}
    for (i, x), (j, y) in new:
        if i == j:
            continue
        if i > j:
            raise AssertionError("gauge transformation broke triangularity")
        blocks.setdefault((i, j), set()).add((x, y))
    maps = {k: GradedMap(T.pieces[k[0]], T.pieces[k[1]], k[0] - k[1] + 1, v) for k, v in blocks.items()}
    out = TwistedComplex(T.pieces, maps)
    for i, P_ in enumerate(T.pieces):
        assert frozenset((x, y) for (a, x), (b, y) in new if a == b == i) == P_.differential
    return out


@dataclass
class LiftTower:
    base: TwistedComplex
    shifts: dict
    caps: dict
    lifted: TwistedComplex
    gauge_blocks: dict = field(default_factory=dict)

    def tower(self, start: int = 0, end: int | None = None) -> TwistedComplex:
        """[G_start -> T_{-b_{start,start+1}} G_{start+1} -> ...] with lifted maps.

        Infinite shifts are replaced by a common finite stand-in; every map
        into such a piece is zero, so admissibility is unaffected.
        """
        T = self.lifted
        end = T.m - 1 if end is None else end
        finite = [v for v in self.shifts.values() if v != INF]
        births = [g.birth for P in T.pieces for g in P.generators]
        spread = (max(births) - min(births)) if births else 0
        stand_in = sum(finite, Fraction(0)) + spread + 1
        beta = {start: Fraction(0)}
        for t in range(start + 1, end + 1):
            v = self.shifts[(start, t)]
            beta[t] = stand_in if v == INF else v
        idx = list(range(start, end + 1))
        pieces = [translate(T.pieces[t], -beta[t]) for t in idx]
        maps = {}
        for a, s in enumerate(idx):
            for c, t in enumerate(idx):
                if s < t and T.entries(s, t):
                    maps[(a, c)] = GradedMap(pieces[a], pieces[c], a - c + 1, T.entries(s, t))
        return TwistedComplex(pieces, maps)


def lift_tower(T: TwistedComplex) -> LiftTower:
    validate_mc(T)
    m = T.m
    b: dict = {}
    caps: dict = {}
    cur = T
    blocks_all = {}
    for span in range(1, m):
        S = {}
        for i in range(m - span):
            j = i + span
            cap = INF
            if span > 1:
                cap = min(b[(i, k)] + b[(k, j)] for k in range(i + 1, j))
            caps[(i, j)] = cap
            X, Y = cur.pieces[i], cur.pieces[j]
            e, s, _ = _best_representative(X, Y, i - j + 1, cur.entries(i, j), cap)
            b[(i, j)] = e
            if s:
                S[(i, j)] = s
        if S:
            cur = gauge(cur, S)
            blocks_all.update(S)
    validate_mc(cur)
    for (i, j), v in b.items():
        assert entries_energy(cur.pieces[i], cur.pieces[j], cur.entries(i, j)) >= v
    return LiftTower(T, b, caps, cur, blocks_all)


# ---------------------------------------------------------------------------
# action data and the delta bounds


@dataclass(frozen=True)
class ActionData:
    """Actions of N with each L_i (NL) and of L_i with L_j, i < j (LL)."""

    NL: dict
    LL: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "NL", {int(i): tuple(sorted(frac(v) for v in vs)) for i, vs in self.NL.items()})
        object.__setattr__(self, "LL", {(int(i), int(j)): tuple(sorted(frac(v) for v in vs))
                                        for (i, j), vs in self.LL.items()})

    @property
    def m(self) -> int:
        return len(self.NL)

    def nl(self, i):
        return self.NL.get(i, ())

    def ll(self, i, j):
        return self.LL.get((i, j), ())


def _min_positive(values):
    return min((v for v in values if v > 0), default=INF)


def delta_two_ends(A0, A1, A01):
    """min{A1(q) - A0(p) - A01(r) > 0}."""
    A0, A1, A01 = [frac(v) for v in A0], [frac(v) for v in A1], [frac(v) for v in A01]
    return _min_positive(q - p - r for p in A0 for q in A1 for r in A01)


def delta_simple(actions: ActionData):
    """min positive A_j(p_j) - A_i(p_i) over i <= j."""
    vals = []
    for i in range(actions.m):
        for j in range(i, actions.m):
            vals.extend(q - p for p in actions.nl(i) for q in actions.nl(j))
    return _min_positive(vals)


def chain_sums(actions: ActionData, i: int, j: int) -> set:
    """Sums of LL actions along every chain i < i_1 < ... < i_k < j."""
    memo: dict = {}

    def rec(a):
        if a in memo:
            return memo[a]
        out = set(actions.ll(a, j))
        for k in range(a + 1, j):
            tails = rec(k)
            for v in actions.ll(a, k):
                out.update(v + t for t in tails)
        memo[a] = out
        return out

    return rec(i)


def delta_uniform(actions: ActionData):
    vals = []
    for i in range(actions.m):
        Ai = actions.nl(i)
        vals.extend(q - p for p in Ai for q in Ai)
        for j in range(i + 1, actions.m):
            sums = chain_sums(actions, i, j)
            vals.extend(q - p - s for p in Ai for q in actions.nl(j) for s in sums)
    return _min_positive(vals)


def delta_uniform_bruteforce(actions: ActionData):
    """Same minimum by enumerating subsets of intermediate indices."""
    best = INF
    m = actions.m
    for i in range(m):
        for p, q in itertools.product(actions.nl(i), repeat=2):
            if q - p > 0:
                best = min(best, q - p)
        for j in range(i + 1, m):
            mids = range(i + 1, j)
            for r in range(len(mids) + 1):
                for chosen in itertools.combinations(mids, r):
                    path = (i, *chosen, j)
                    legs = [actions.ll(a, c) for a, c in zip(path, path[1:])]
                    for picks in itertools.product(*legs):
                        s = sum(picks, Fraction(0))
                        for p in actions.nl(i):
                            for q in actions.nl(j):
                                v = q - p - s
                                if v > 0:
                                    best = min(best, v)
    return best


def in_action_sums(actions: ActionData, i: int, j: int, b) -> bool:
    return b in chain_sums(actions, i, j)
