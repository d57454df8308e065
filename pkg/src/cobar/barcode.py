"""Structure-theorem decomposition of interval complexes into bars.

Reduction runs on the transposed differential: a generator h "kills" the
latest-born generator g in its reduced column, which yields the bar
[birth(g), birth(h)) in degree(g). Equal births give an empty interval
and are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import INF, IntervalComplex, frac


@dataclass(frozen=True, order=True)
class Bar:
    degree: int
    birth: Fraction
    death: Fraction | float = INF

    def __post_init__(self):
        object.__setattr__(self, "birth", frac(self.birth))
        if self.death != INF:
            object.__setattr__(self, "death", frac(self.death))
        if not self.birth < self.death:
            raise ValueError(f"empty bar [{self.birth}, {self.death})")

    @property
    def finite(self) -> bool:
        return self.death != INF

    @property
    def length(self):
        return self.death - self.birth if self.finite else INF

    def contains(self, r) -> bool:
        return self.birth <= r < self.death


class Barcode(tuple):
    """A multiset of bars, stored sorted so equality is multiset equality."""

    def __new__(cls, bars=()):
        return super().__new__(cls, sorted(bars))

    def rank(self, r, degree: int) -> int:
        return sum(1 for b in self if b.degree == degree and b.contains(r))

    def shifted(self, c) -> "Barcode":
        c = frac(c)
        return Barcode(Bar(b.degree, b.birth + c, b.death + c if b.finite else INF) for b in self)

    def __add__(self, other):
        return Barcode(list(self) + list(other))

    def __repr__(self):
        return "Barcode(" + ", ".join(
            f"[{b.birth},{b.death if b.finite else 'inf'})^{b.degree}" for b in self) + ")"


def _filtration(F: IntervalComplex):
    order = sorted(F.generators, key=lambda g: (g.birth, g.id))
    return order, {g.id: k for k, g in enumerate(order)}


def _columns(F: IntervalComplex, idx):
    cols = {g.id: 0 for g in F.generators}
    for src, tgt in F.differential:
        cols[tgt] |= 1 << idx[src]
    return cols


def pairs(F: IntervalComplex, clearing: bool = True, order=None):
    """Persistence pairs (g, h) and essential generators.

    ``order`` overrides the filtration order; it must sort by birth, ties
    broken arbitrarily.
    """
    if order is None:
        order, idx = _filtration(F)
    else:
        idx = {g.id: k for k, g in enumerate(order)}
    cols = _columns(F, idx)
    low_owner: dict[int, str] = {}
    cleared: set[str] = set()
    if clearing:
        sweep = sorted(order, key=lambda g: (-g.degree, idx[g.id]))
    else:
        sweep = order
    for h in sweep:
        if h.id in cleared:
            continue
        col = cols[h.id]
        while col:
            low = col.bit_length() - 1
            other = low_owner.get(low)
            if other is None:
                break
            col ^= cols[other]
        cols[h.id] = col
        if col:
            low = col.bit_length() - 1
            low_owner[low] = h.id
            if clearing:
                cleared.add(order[low].id)
    paired = []
    killed = set()
    for low, hid in low_owner.items():
        g = order[low]
        paired.append((g.id, hid))
        killed.add(g.id)
        killed.add(hid)
    essential = [g.id for g in order if g.id not in killed]
    return paired, essential


def decompose(F: IntervalComplex, clearing: bool = True, order=None) -> Barcode:
    paired, essential = pairs(F, clearing, order)
    bars = []
    for gid, hid in paired:
        g, h = F[gid], F[hid]
        if g.birth < h.birth:
            bars.append(Bar(g.degree, g.birth, h.birth))
    for gid in essential:
        bars.append(Bar(F[gid].degree, F[gid].birth))
    return Barcode(bars)


def decompose_reference(F: IntervalComplex) -> Barcode:
    return decompose(F, clearing=False)


def endpoints(B: Barcode) -> list:
    """All births and finite deaths, with degrees, sorted."""
    out = []
    for b in B:
        out.append((b.birth, b.degree))
        if b.finite:
            out.append((b.death, b.degree))
    return sorted(out)


def shortest_bar(B: Barcode):
    return min((b.length for b in B if b.finite), default=INF)


def longest_finite_bar(B: Barcode):
    return max((b.length for b in B if b.finite), default=Fraction(0))


def barcode_svg(B: Barcode, width: int = 480, row: int = 14) -> str:
    finite_vals = [v for b in B for v in ((b.birth, b.death) if b.finite else (b.birth,))]
    lo = min(finite_vals, default=Fraction(0))
    hi = max(finite_vals, default=Fraction(1))
    span = hi - lo or Fraction(1)
    pad = 20
    scale = (width - 3 * pad) / float(span)
    lines = []
    y = pad
    for deg in sorted({b.degree for b in B}):
        lines.append(f'<text x="2" y="{y + 4}" font-size="10">H{deg}</text>')
        for b in (b for b in B if b.degree == deg):
            x0 = pad * 1.5 + float(b.birth - lo) * scale
            x1 = pad * 1.5 + float(b.death - lo) * scale if b.finite else width - 4
            dash = "" if b.finite else ' stroke-dasharray="4 2"'
            lines.append(f'<line x1="{x0:.2f}" y1="{y}" x2="{x1:.2f}" y2="{y}" stroke="black" stroke-width="3"{dash}/>')
            y += row
        y += row // 2
    height = y + pad
    body = "\n".join(lines)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">\n'
            f"{body}\n</svg>\n")
