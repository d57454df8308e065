"""Interval complexes over F2 and the maps between them.

An interval complex is a finite complex whose terms are direct sums of
half-infinite interval modules k_[a, inf). A generator records the
cohomological degree it sits in and its birth a. A nonzero component
k_[a, inf) -> k_[a', inf) exists only when a' >= a, which is the single
rule behind every admissibility check here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable

from . import f2

INF = math.inf


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; pass an exact rational")
    return Fraction(x)


class CobarError(Exception):
    pass


class InvalidComplex(CobarError, ValueError):
    pass


class DegreeMismatch(InvalidComplex):
    pass


class BirthOrderViolation(InvalidComplex):
    pass


class DifferentialNotSquareZero(InvalidComplex):
    pass


class IdCollision(InvalidComplex):
    pass


class IllegalShiftOrder(CobarError, ValueError):
    pass


class ShapeMismatch(CobarError, ValueError):
    pass


class InvalidMap(CobarError, ValueError):
    pass


class CapExceeded(CobarError, RuntimeError):
    pass


@dataclass(frozen=True)
class Generator:
    id: str
    degree: int
    birth: Fraction
    slope: int | None = None
    tag: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "birth", frac(self.birth))


Entries = frozenset  # frozenset[tuple[str, str]]


@dataclass(frozen=True, eq=False)
class IntervalComplex:
    generators: tuple[Generator, ...] = ()
    differential: frozenset = frozenset()
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "differential", frozenset(self.differential))
        by_id = {}
        for g in self.generators:
            if g.id in by_id:
                raise IdCollision(f"duplicate generator id {g.id!r}")
            by_id[g.id] = g
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_order", {g.id: k for k, g in enumerate(self.generators)})
        succ: dict[str, set] = {g.id: set() for g in self.generators}
        for src, tgt in self.differential:
            if src not in by_id or tgt not in by_id:
                raise InvalidComplex(f"differential entry ({src!r}, {tgt!r}) names an unknown generator")
            succ[src].add(tgt)
        object.__setattr__(self, "_succ", {k: frozenset(v) for k, v in succ.items()})
        if self.check:
            validate(self)

    def __eq__(self, other):
        if not isinstance(other, IntervalComplex):
            return NotImplemented
        return self.generators == other.generators and self.differential == other.differential

    def __hash__(self):
        return hash((self.generators, self.differential))

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, gid: str) -> Generator:
        return self._by_id[gid]

    def __contains__(self, gid: str) -> bool:
        return gid in self._by_id

    @property
    def ids(self) -> list[str]:
        return [g.id for g in self.generators]

    def order(self, gid: str) -> int:
        return self._order[gid]

    def d(self, gid: str) -> frozenset:
        return self._succ[gid]

    def births(self) -> list[Fraction]:
        return [g.birth for g in self.generators]

    def degrees(self) -> list[int]:
        return sorted({g.degree for g in self.generators})



def complex_from(gens: Iterable, differential: Iterable = ()) -> IntervalComplex:
    """Build from (id, degree, birth[, slope[, tag]]) tuples or Generators."""
    out = []
    for g in gens:
        out.append(g if isinstance(g, Generator) else Generator(*g))
    return IntervalComplex(tuple(out), frozenset(map(tuple, differential)))


def validate(c: IntervalComplex) -> None:
    """Raise on the first violated invariant, in a deterministic order."""
    for src, tgt in sorted(c.differential, key=lambda e: (c.order(e[0]), c.order(e[1]))):
        g, h = c[src], c[tgt]
        if h.degree != g.degree + 1:
            raise DegreeMismatch(f"entry {src}->{tgt}: degree {g.degree} -> {h.degree}")
        if h.birth < g.birth:
            raise BirthOrderViolation(f"entry {src}->{tgt}: birth {g.birth} -> {h.birth}")
    for gid in c.ids:
        dd = compose_entries(c.differential, c.differential, restrict={gid})
        if dd:
            src, tgt = min(dd, key=lambda e: c.order(e[1]))
            raise DifferentialNotSquareZero(f"d(d({src})) contains {tgt}")


ZERO = IntervalComplex()


def compose_entries(second, first, restrict=None) -> frozenset:
    """Entries of second o first over F2 (first applied first)."""
    out_of: dict[str, list] = {}
    for y, z in second:
        out_of.setdefault(y, []).append(z)
    acc: set = set()
    for x, y in first:
        if restrict is not None and x not in restrict:
            continue
        for z in out_of.get(y, ()):
            acc ^= {(x, z)}
    return frozenset(acc)


def translate(c: IntervalComplex, shift) -> IntervalComplex:
    shift = frac(shift)
    if shift == 0:
        return c
    gens = tuple(replace(g, birth=g.birth + shift) for g in c.generators)
    return IntervalComplex(gens, c.differential, check=False)


def degree_shift(c: IntervalComplex, k: int) -> IntervalComplex:
    """The complex c[k]: a generator in degree n moves to degree n - k."""
    if k == 0:
        return c
    gens = tuple(replace(g, degree=g.degree - k) for g in c.generators)
    return IntervalComplex(gens, c.differential, check=False)


def direct_sum(a: IntervalComplex, b: IntervalComplex) -> IntervalComplex:
    # F2: block-diagonal differential, no sign twist.
    shared = set(a.ids) & set(b.ids)
    if shared:
        raise IdCollision(f"direct sum with shared ids {sorted(shared)}")
    return IntervalComplex(a.generators + b.generators, a.differential | b.differential, check=False)


def relabel(c: IntervalComplex, prefix: str) -> IntervalComplex:
    gens = tuple(replace(g, id=prefix + g.id) for g in c.generators)
    diff = frozenset((prefix + s, prefix + t) for s, t in c.differential)
    return IntervalComplex(gens, diff, check=False)


@dataclass(frozen=True, eq=False)
class GradedMap:
    source: IntervalComplex
    target: IntervalComplex
    shift: int
    entries: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "entries", frozenset(map(tuple, self.entries)))
        for x, y in self.entries:
            if x not in self.source or y not in self.target:
                raise InvalidMap(f"entry ({x!r}, {y!r}) names an unknown generator")
            g, h = self.source[x], self.target[y]
            if h.degree != g.degree + self.shift:
                raise InvalidMap(f"entry {x}->{y} does not have degree shift {self.shift}")
            if h.birth < g.birth:
                raise InvalidMap(f"entry {x}->{y} lowers birth {g.birth} -> {h.birth}")

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        return (self.shift == other.shift and self.entries == other.entries
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash((self.shift, self.entries))

    def __add__(self, other: "GradedMap") -> "GradedMap":
        _same_shape(self, other)
        return GradedMap(self.source, self.target, self.shift, self.entries ^ other.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def is_chain_map(self) -> bool:
        return commutator(self) == frozenset()


def commutator(m: GradedMap) -> frozenset:
    """Entries of d_target o m + m o d_source."""
    return (compose_entries(m.target.differential, m.entries)
            ^ compose_entries(m.entries, m.source.differential))


class ChainMap(GradedMap):
    def __init__(self, source, target, entries=frozenset()):
        super().__init__(source, target, 0, entries)
        if not self.is_chain_map():
            raise InvalidMap("map does not commute with the differentials")


def as_chain_map(m: GradedMap) -> ChainMap:
    if m.shift != 0:
        raise InvalidMap("chain maps have shift 0")
    return ChainMap(m.source, m.target, m.entries)


def _same_shape(a: GradedMap, b: GradedMap):
    if a.shift != b.shift or a.source != b.source or a.target != b.target:
        raise ShapeMismatch("maps do not share source, target and shift")


def compose(second: GradedMap, first: GradedMap) -> GradedMap:
    if first.target != second.source:
        raise ShapeMismatch("composable maps need first.target == second.source")
    cls = ChainMap if isinstance(first, ChainMap) and isinstance(second, ChainMap) else None
    entries = compose_entries(second.entries, first.entries)
    if cls is ChainMap:
        return ChainMap(first.source, second.target, entries)
    return GradedMap(first.source, second.target, first.shift + second.shift, entries)


def identity(c: IntervalComplex) -> ChainMap:
    return ChainMap(c, c, frozenset((g, g) for g in c.ids))


def zero_map(source, target, shift=0) -> GradedMap:
    if shift == 0:
        return ChainMap(source, target)
    return GradedMap(source, target, shift)


def tau(c: IntervalComplex, lo, hi) -> ChainMap:
    """The canonical map T_lo c -> T_hi c (identity pattern), lo <= hi."""
    lo, hi = frac(lo), frac(hi)
    if lo > hi:
        raise IllegalShiftOrder(f"tau needs lo <= hi, got {lo} > {hi}")
    return ChainMap(translate(c, lo), translate(c, hi), frozenset((g, g) for g in c.ids))


def translate_map(m: GradedMap, shift) -> GradedMap:
    src, tgt = translate(m.source, shift), translate(m.target, shift)
    if isinstance(m, ChainMap):
        return ChainMap(src, tgt, m.entries)
    return GradedMap(src, tgt, m.shift, m.entries)


# ---------------------------------------------------------------------------
# Hom spaces as coordinate vectors


class HomSpace:
    """Graded maps X -> T_offset Y of a fixed shift, as F2 coordinates.

    Coordinates are the admissible positions (x, y): degree rule plus
    birth(y) + offset >= birth(x).
    """

    def __init__(self, X: IntervalComplex, Y: IntervalComplex, shift: int = 0, offset=0):
        self.X, self.Y, self.shift, self.offset = X, Y, shift, frac(offset)
        by_deg: dict[int, list] = {}
        for h in Y.generators:
            by_deg.setdefault(h.degree, []).append(h)
        pos = []
        for g in X.generators:
            for h in by_deg.get(g.degree + shift, ()):
                if h.birth + self.offset >= g.birth:
                    pos.append((g.id, h.id))
        self.positions = pos
        self.index = {p: k for k, p in enumerate(pos)}

    @property
    def dim(self) -> int:
        return len(self.positions)

    def vec(self, entries) -> int:
        v = 0
        for p in entries:
            k = self.index.get(p)
            if k is None:
                raise InvalidMap(f"entry {p} is not admissible in this Hom space")
            v ^= 1 << k
        return v

    def entries(self, v: int) -> frozenset:
        return frozenset(self.positions[k] for k in f2.bits(v))

    def differential(self, v: int, into: "HomSpace") -> int:
        """Coordinates of d_Y m + m d_X in ``into`` (shift + 1)."""
        return into.vec(commutator_entries(self.X, self.Y, self.entries(v)))

    def differential_columns(self, into: "HomSpace") -> list[int]:
        return [self.differential(1 << k, into) for k in range(self.dim)]


def commutator_entries(X, Y, entries) -> frozenset:
    return compose_entries(Y.differential, entries) ^ compose_entries(entries, X.differential)


def transpose(columns: list[int], nrows: int) -> list[int]:
    rows = [0] * nrows
    for c, col in enumerate(columns):
        for r in f2.bits(col):
            rows[r] |= 1 << c
    return rows


def solve_preimage(columns: list[int], nrows: int, target: int):
    """Find x with sum_k x_k columns[k] = target; lex-least, or None."""
    rows = transpose(columns, nrows)
    sysm = f2.F2System()
    for r in range(nrows):
        if not sysm.try_add(rows[r], (target >> r) & 1):
            return None
    return sysm.lex_least(len(columns))


class HomClasses:
    """Degree-0 homology of Hom(X, T_offset Y): chain maps mod homotopy."""

    def __init__(self, X, Y, offset=0):
        self.V0 = HomSpace(X, Y, 0, offset)
        self.V1 = HomSpace(X, Y, 1, offset)
        self.Vm = HomSpace(X, Y, -1, offset)
        cols0 = self.V0.differential_columns(self.V1)
        sysm = f2.F2System()
        for row in transpose(cols0, self.V1.dim):
            sysm.add(row)
        cycles = sysm.nullspace(self.V0.dim)
        self.boundary_columns = self.Vm.differential_columns(self.V0)
        q = f2.F2System()
        for b in self.boundary_columns:
            q.add(b, 0)
        reps = []
        for z in cycles:
            red, _ = q.reduce(z, 0)
            if red:
                q.add(z, 1 << len(reps))
                reps.append(z)
        self.reps = reps
        self._quot = q

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, v: int) -> int:
        red, tag = self._quot.reduce(v, 0)
        if red:
            raise InvalidMap("vector is not a chain map in this Hom space")
        return tag

    def is_null(self, v: int) -> bool:
        return self.coords(v) == 0

    def rep(self, coeffs: int) -> int:
        v = 0
        for k in f2.bits(coeffs):
            v ^= self.reps[k]
        return v

    def homotopy(self, v: int):
        """A homotopy s with d s + s d = v, or None."""
        return solve_preimage(self.boundary_columns, self.V0.dim, v)


def is_homotopic(phi: GradedMap, psi: GradedMap):
    """Return (bool, witness) where witness s satisfies phi + psi = ds + sd."""
    _same_shape(phi, psi)
    S, T, r = phi.source, phi.target, phi.shift
    Vm, V0 = HomSpace(S, T, r - 1), HomSpace(S, T, r)
    target = V0.vec(phi.entries ^ psi.entries)
    s = solve_preimage(Vm.differential_columns(V0), V0.dim, target)
    if s is None:
        return False, None
    return True, GradedMap(S, T, r - 1, Vm.entries(s))
