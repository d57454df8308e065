"""Mapping cones and twisted complexes over F2.

All signs in the cone and twisted differentials vanish in characteristic
2, so the block matrices below are unsigned.

    Cone(phi)^n = X1^n + X0^(n+1),   d = [[d1, phi], [0, d0]]

A twisted complex [G_0 -> ... -> G_{m-1}] totalizes to
G_{m-1} + G_{m-2}[1] + ... + G_0[m-1] with the upper triangular
differential built from d_i and phi_{i,j}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .barcode import decompose
from .core import (
    ChainMap,
    CobarError,
    GradedMap,
    IntervalComplex,
    InvalidMap,
    ZERO,
    commutator,
    compose_entries,
    degree_shift,
    relabel,
)


class MCViolation(CobarError, ValueError):
    def __init__(self, i, j, generator, msg=""):
        self.i, self.j, self.generator = i, j, generator
        super().__init__(msg or f"Maurer-Cartan relation fails at ({i},{j}) on generator {generator!r}")


class NotNullHomotopy(CobarError, ValueError):
    pass


TARGET, SOURCE = "t.", "s."


def cone(phi: ChainMap, labels=(TARGET, SOURCE)) -> IntervalComplex:
    if phi.shift != 0 or not phi.is_chain_map():
        raise InvalidMap("cone needs a chain map")
    tl, sl = labels
    Y = relabel(phi.target, tl)
    X = relabel(degree_shift(phi.source, 1), sl)
    glue = frozenset((sl + x, tl + y) for x, y in phi.entries)
    return IntervalComplex(Y.generators + X.generators, Y.differential | X.differential | glue)


@dataclass(frozen=True, eq=False)
class TwistedComplex:
    pieces: tuple
    maps: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        clean = {}
        for (i, j), m in self.maps.items():
            if not 0 <= i < j < len(self.pieces):
                raise InvalidMap(f"map index ({i},{j}) out of range")
            if m.source != self.pieces[i] or m.target != self.pieces[j]:
                raise InvalidMap(f"map ({i},{j}) does not run G_{i} -> G_{j}")
            if m.shift != i - j + 1:
                raise InvalidMap(f"map ({i},{j}) must have shift {i - j + 1}")
            if m.entries:
                clean[(i, j)] = m
        object.__setattr__(self, "maps", clean)

    @property
    def m(self) -> int:
        return len(self.pieces)

    def entries(self, i, j) -> frozenset:
        m = self.maps.get((i, j))
        return m.entries if m is not None else frozenset()

    def with_map(self, i, j, entries) -> "TwistedComplex":
        maps = dict(self.maps)
        maps[(i, j)] = GradedMap(self.pieces[i], self.pieces[j], i - j + 1, entries)
        return TwistedComplex(self.pieces, maps)


def twisted(pieces, maps: dict) -> TwistedComplex:
    """Convenience constructor taking raw entry sets keyed by (i, j)."""
    pieces = tuple(pieces)
    built = {(i, j): GradedMap(pieces[i], pieces[j], i - j + 1, e) for (i, j), e in maps.items()}
    return TwistedComplex(pieces, built)


def mc_defect(T: TwistedComplex, i: int, j: int) -> frozenset:
    """phi_ij d_i + sum_k phi_kj phi_ik + d_j phi_ij, as an entry set."""
    acc = commutator(GradedMap(T.pieces[i], T.pieces[j], i - j + 1, T.entries(i, j)))
    for k in range(i + 1, j):
        acc = acc ^ compose_entries(T.entries(k, j), T.entries(i, k))
    return acc


def validate_mc(T: TwistedComplex) -> None:
    for gap in range(1, T.m):
        for i in range(T.m - gap):
            j = i + gap
            bad = mc_defect(T, i, j)
            if bad:
                src = min(bad, key=lambda e: (T.pieces[i].order(e[0]), T.pieces[j].order(e[1])))
                raise MCViolation(i, j, src[0])


def piece_label(i: int) -> str:
    return f"G{i}."


def totalize(T: TwistedComplex, check: bool = True) -> IntervalComplex:
    if check:
        validate_mc(T)
    m = T.m
    gens, diff = [], set()
    for i in reversed(range(m)):
        piece = relabel(degree_shift(T.pieces[i], m - 1 - i), piece_label(i))
        gens.extend(piece.generators)
        diff |= piece.differential
    for (i, j), phi in T.maps.items():
        diff |= {(piece_label(i) + x, piece_label(j) + y) for x, y in phi.entries}
    return IntervalComplex(tuple(gens), frozenset(diff))


def left_nested(T: TwistedComplex) -> IntervalComplex:
    """Cone(Cone(...Cone(G_0 -> G_1)...) -> G_{m-1}) built by repeated cones."""
    validate_mc(T)
    if T.m == 0:
        return ZERO
    current = T.pieces[0]
    name = {(0, x): x for x in current.ids}
    for j in range(1, T.m):
        entries = set()
        for i in range(j):
            for x, y in T.entries(i, j):
                entries.add((name[(i, x)], y))
        current = cone(ChainMap(current, T.pieces[j], frozenset(entries)))
        name = {key: SOURCE + v for key, v in name.items()}
        name.update({(j, y): TARGET + y for y in T.pieces[j].ids})
    return current


def right_nested(T: TwistedComplex) -> IntervalComplex:
    """Cone(G_0 -> Cone(G_1 -> ... Cone(G_{m-2} -> G_{m-1})...)) up to regrading."""
    validate_mc(T)
    m = T.m
    if m == 0:
        return ZERO
    current = T.pieces[m - 1]
    name = {(m - 1, y): y for y in current.ids}
    for i in reversed(range(m - 1)):
        X = degree_shift(T.pieces[i], m - 2 - i)
        entries = set()
        for j in range(i + 1, m):
            for x, y in T.entries(i, j):
                entries.add((x, name[(j, y)]))
        current = cone(ChainMap(X, current, frozenset(entries)))
        name = {key: TARGET + v for key, v in name.items()}
        name.update({(i, x): SOURCE + x for x in T.pieces[i].ids})
    return current


def reassociate(T: TwistedComplex):
    """Both nestings and whether their barcodes (and totalize's) agree."""
    left, right = left_nested(T), right_nested(T)
    bl, br, bt = decompose(left), decompose(right), decompose(totalize(T))
    return left, right, bl == br == bt


def homotopy_to_chainmap(psi: ChainMap, s: GradedMap) -> ChainMap:
    """The chain map X[1] -> Cone(psi) with column [s; id]."""
    if s.shift != -1 or s.source != psi.source or s.target != psi.target:
        raise InvalidMap("homotopy must be a shift -1 map with psi's source and target")
    if commutator(s) != psi.entries:
        raise NotNullHomotopy("d s + s d differs from psi")
    X1 = degree_shift(psi.source, 1)
    C = cone(psi)
    entries = {(x, SOURCE + x) for x in X1.ids} | {(x, TARGET + y) for x, y in s.entries}
    return ChainMap(X1, C, frozenset(entries))


def chainmap_to_homotopy(eta: ChainMap, psi: ChainMap) -> GradedMap:
    X, Y = psi.source, psi.target
    proj = {(x, y[len(SOURCE):]) for x, y in eta.entries if y.startswith(SOURCE)}
    if proj != {(x, x) for x in X.ids}:
        raise InvalidMap("composite X[1] -> Cone(psi) -> X[1] is not the identity")
    s = frozenset((x, y[len(TARGET):]) for x, y in eta.entries if y.startswith(TARGET))
    out = GradedMap(X, Y, -1, s)
    if commutator(out) != psi.entries:
        raise NotNullHomotopy("recovered map is not a null homotopy of psi")
    return out


def projection_to_shifted_source(psi: ChainMap) -> ChainMap:
    """Cone(psi) -> X[1]."""
    C = cone(psi)
    X1 = degree_shift(psi.source, 1)
    return ChainMap(C, X1, frozenset((SOURCE + x, x) for x in X1.ids))
