"""Hypothesis strategies for random complexes and chain maps."""

from __future__ import annotations

from fractions import Fraction as Q

from hypothesis import strategies as st

from cobar.core import ChainMap, HomClasses, IntervalComplex, compose_entries, complex_from, translate

HALVES = [Q(k, 2) for k in range(0, 9)]


def births(values=HALVES):
    return st.sampled_from(values)


def conjugate(F: IntervalComplex, i: str, j: str) -> IntervalComplex:
    """Change of basis e_i -> e_i + e_j, allowed when deg and birth fit."""
    P = frozenset((g, g) for g in F.ids) | {(i, j)}
    D = compose_entries(P, compose_entries(F.differential, P))
    return IntervalComplex(F.generators, D)


@st.composite
def complexes(draw, max_bars=4, degrees=(-1, 0, 1), values=HALVES, mixes=6, slopes=None):
    """Random valid complex: a direct sum of bars, then filtered basis changes.

    With ``slopes`` every generator gets a slope label and the differential
    never lowers the slope, so the result splits into a twisted complex.
    """
    gens, diff = [], []
    pick = (lambda lo=None: None) if slopes is None else (
        lambda lo=None: draw(st.sampled_from([v for v in slopes if lo is None or v >= lo])))
    n = draw(st.integers(0, max_bars))
    for k in range(n):
        deg = draw(st.sampled_from(degrees))
        b = draw(st.sampled_from(values))
        sa = pick()
        if draw(st.booleans()):
            d = draw(st.sampled_from([v for v in values if v >= b]))
            gens += [(f"a{k}", deg, b, sa), (f"b{k}", deg + 1, d, pick(sa))]
            diff.append((f"a{k}", f"b{k}"))
        else:
            gens.append((f"a{k}", deg, b, sa))
    F = complex_from(gens, diff)
    for _ in range(draw(st.integers(0, mixes))):
        if len(F) < 2:
            break
        i, j = draw(st.permutations(F.ids).map(lambda p: p[:2]))
        gi, gj = F[i], F[j]
        if gi.degree == gj.degree and gj.birth >= gi.birth and (slopes is None or gj.slope >= gi.slope):
            F = conjugate(F, i, j)
    return F


@st.composite
def chain_maps(draw, X, Y, offset=0):
    """A random chain map X -> T_offset Y: class rep plus a boundary."""
    H = HomClasses(X, Y, offset)
    v = H.rep(draw(st.integers(0, (1 << H.dim) - 1))) if H.dim else 0
    if H.Vm.dim:
        s = draw(st.integers(0, (1 << H.Vm.dim) - 1))
        v ^= H.Vm.differential(s, H.V0)
    return ChainMap(X, translate(Y, offset), H.V0.entries(v))
