"""Planar shadows of cobordism projections, computed exactly.

The arrangement is cut into vertical slabs at every vertex and crossing.
Inside a slab no two segments cross, so the slab splits into trapezoid
cells stacked by height. Cells in neighbouring slabs are glued across
the shared vertical line wherever their sides overlap in a piece of
positive length not covered by a vertical segment. A component is
unbounded when it contains a cell reaching the top, the bottom or the
far left/right; the shadow is the union of the remaining cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import CobarError, frac


class InvalidShadow(CobarError, ValueError):
    pass


class DegenerateArrangement(CobarError, ValueError):
    pass


class BoundaryNotChainDecomposable(CobarError, ValueError):
    pass


ONE = Fraction(1)


@dataclass(frozen=True)
class ShadowRegion:
    curves: tuple
    ends_minus: tuple = (Fraction(0),)
    ends_plus: tuple = (Fraction(0),)

    def __post_init__(self):
        curves = []
        for c in self.curves:
            pts = tuple((frac(s), frac(y)) for s, y in c)
            if len(pts) < 2:
                raise DegenerateArrangement("a curve needs at least two points")
            if any(p == q for p, q in zip(pts, pts[1:])):
                raise DegenerateArrangement("curve repeats a vertex")
            curves.append(pts)
        object.__setattr__(self, "curves", tuple(curves))
        em = tuple(sorted(frac(h) for h in self.ends_minus))
        ep = tuple(sorted(frac(h) for h in self.ends_plus))
        if len(set(em)) != len(em) or len(set(ep)) != len(ep):
            raise InvalidShadow("end heights must be distinct")
        object.__setattr__(self, "ends_minus", em)
        object.__setattr__(self, "ends_plus", ep)
        for c in curves:
            for (s0, y0), (s1, y1) in zip(c, c[1:]):
                lo, hi = min(s0, s1), max(s0, s1)
                for side, heights, outside in ((-1, em, lo < -1), (1, ep, hi > 1)):
                    if outside and not (y0 == y1 and y0 in heights):
                        raise InvalidShadow(
                            f"segment ({s0},{y0})-({s1},{y1}) leaves the band but is not an end ray")

    @property
    def m(self) -> int:
        return len(self.ends_minus)

    @property
    def n(self) -> int:
        return len(self.ends_plus)

    def segments(self):
        return [(p, q) for c in self.curves for p, q in zip(c, c[1:])]


# ---------------------------------------------------------------------------
# geometry helpers


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p, a, b):
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _intersections(a, b, c, d):
    """Points shared by segments ab and cd (endpoints of the overlap if collinear)."""
    d1, d2 = _cross(c, d, a), _cross(c, d, b)
    d3, d4 = _cross(a, b, c), _cross(a, b, d)
    if d1 == 0 and d2 == 0:
        return [p for p in (a, b, c, d) if _on_segment(p, a, b) and _on_segment(p, c, d)]
    if (d1 > 0) != (d2 > 0) and (d3 > 0) != (d4 > 0) and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0:
        t = d1 / (d1 - d2)
        return [(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))]
    out = []
    for p, s, e in ((a, c, d), (b, c, d), (c, a, b), (d, a, b)):
        if _cross(s, e, p) == 0 and _on_segment(p, s, e):
            out.append(p)
    return out


def _at(seg, x):
    (x0, y0), (x1, y1) = seg
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def _int_min(ya, yb, h, xa, xb):
    """Integral over [xa, xb] of min(line, h), the line running ya -> yb."""
    w = xb - xa
    if ya <= h and yb <= h:
        return w * (ya + yb) / 2
    if ya >= h and yb >= h:
        return w * h
    t = (h - ya) / (yb - ya)
    xm = w * t
    if ya < h:
        return xm * (ya + h) / 2 + (w - xm) * h
    return xm * h + (w - xm) * (h + yb) / 2


@dataclass
class Cell:
    slab: int
    x0: Fraction
    x1: Fraction
    lo: tuple | None  # (y at x0, y at x1) of the lower boundary
    hi: tuple | None

    @property
    def bounded_shape(self) -> bool:
        return self.lo is not None and self.hi is not None

    def area(self) -> Fraction:
        return (self.x1 - self.x0) * ((self.hi[0] - self.lo[0]) + (self.hi[1] - self.lo[1])) / 2

    def area_below(self, h) -> Fraction:
        return (_int_min(self.hi[0], self.hi[1], h, self.x0, self.x1)
                - _int_min(self.lo[0], self.lo[1], h, self.x0, self.x1))

    def polygon(self):
        return [(self.x0, self.lo[0]), (self.x1, self.lo[1]), (self.x1, self.hi[1]), (self.x0, self.hi[0])]


@dataclass
class Arrangement:
    region: ShadowRegion
    xs: list
    slabs: list  # list of lists of Cell, bottom to top
    bounded: set = field(default_factory=set)  # (slab, k)

    def bounded_cells(self):
        return [self.slabs[t][k] for t, k in sorted(self.bounded)]

    def area(self) -> Fraction:
        return sum((c.area() for c in self.bounded_cells()), Fraction(0))


class _DSU:
    def __init__(self):
        self.p = {}

    def find(self, a):
        self.p.setdefault(a, a)
        while self.p[a] != a:
            self.p[a] = self.p[self.p[a]]
            a = self.p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[ra] = rb


def _free_overlap(lo, hi, blockers) -> bool:
    """Does (lo, hi) minus the blocking intervals keep positive length?"""
    if not lo < hi:
        return False
    cur = lo
    for a, b in sorted(blockers):
        if b <= cur:
            continue
        if a > cur:
            return True
        cur = max(cur, b)
        if cur >= hi:
            return False
    return cur < hi


def arrangement(R: ShadowRegion) -> Arrangement:
    segs = []
    for p, q in R.segments():
        segs.append((p, q) if p <= q else (q, p))
    all_s = [p[0] for s in segs for p in s] + [Fraction(-1), ONE]
    XL, XR = min(all_s) - 1, max(all_s) + 1
    segs += [((XL, h), (Fraction(-1), h)) for h in R.ends_minus]
    segs += [((ONE, h), (XR, h)) for h in R.ends_plus]
    xs = {p[0] for s in segs for p in s} | {XL, XR}
    for a in range(len(segs)):
        for b in range(a + 1, len(segs)):
            for p in _intersections(*segs[a], *segs[b]):
                xs.add(p[0])
    xs = sorted(xs)
    vertical = {}
    for (p, q) in segs:
        if p[0] == q[0]:
            vertical.setdefault(p[0], []).append((min(p[1], q[1]), max(p[1], q[1])))
    slabs = []
    for t in range(len(xs) - 1):
        x0, x1 = xs[t], xs[t + 1]
        bounds = set()
        for (p, q) in segs:
            if p[0] < q[0] and p[0] <= x0 and q[0] >= x1:
                bounds.add((_at((p, q), x0), _at((p, q), x1)))
        bounds = sorted(bounds, key=lambda yy: yy[0] + yy[1])
        for u, v in zip(bounds, bounds[1:]):
            if u[0] > v[0] or u[1] > v[1]:
                raise DegenerateArrangement("segments cross inside a slab")
        cells = [Cell(t, x0, x1, None, bounds[0] if bounds else None)]
        for u, v in zip(bounds, bounds[1:]):
            cells.append(Cell(t, x0, x1, u, v))
        if bounds:
            cells.append(Cell(t, x0, x1, bounds[-1], None))
        slabs.append(cells)
    dsu = _DSU()
    outer = ("outer",)
    for t, cells in enumerate(slabs):
        for k, c in enumerate(cells):
            dsu.find((t, k))
            if not c.bounded_shape or t == 0 or t == len(slabs) - 1:
                dsu.union((t, k), outer)
    inf = float("inf")
    for t in range(1, len(slabs)):
        x = xs[t]
        block = vertical.get(x, [])
        left, right = slabs[t - 1], slabs[t]
        for i, a in enumerate(left):
            alo = a.lo[1] if a.lo else -inf
            ahi = a.hi[1] if a.hi else inf
            for j, b in enumerate(right):
                blo = b.lo[0] if b.lo else -inf
                bhi = b.hi[0] if b.hi else inf
                lo, hi = max(alo, blo), min(ahi, bhi)
                if _free_overlap(lo, hi, block):
                    dsu.union((t - 1, i), (t, j))
    root = dsu.find(outer)
    bounded = {(t, k) for t, cells in enumerate(slabs) for k in range(len(cells))
               if dsu.find((t, k)) != root}
    return Arrangement(R, xs, slabs, bounded)


def shadow_area(R: ShadowRegion) -> Fraction:
    return arrangement(R).area()


# ---------------------------------------------------------------------------
# end shifts


def _chains(arr: Arrangement):
    """Per slab, the (lower, upper) boundary of the shadow or None."""
    out = []
    for t, cells in enumerate(arr.slabs):
        ks = sorted(k for (tt, k) in arr.bounded if tt == t)
        if not ks:
            out.append(None)
            continue
        if ks != list(range(ks[0], ks[-1] + 1)):
            raise BoundaryNotChainDecomposable(
                f"shadow has a vertical gap over s in [{arr.xs[t]}, {arr.xs[t + 1]}]")
        out.append((cells[ks[0]].lo, cells[ks[-1]].hi))
    return out


def area_between(arr: Arrangement, lo_h, hi_h) -> Fraction:
    """Area of the shadow within lo_h < sigma <= hi_h."""
    return sum((c.area_below(hi_h) - c.area_below(lo_h) for c in arr.bounded_cells()), Fraction(0))


def lower_integral(arr: Arrangement) -> Fraction:
    """Signed area between the lower boundary of the shadow and sigma = 0."""
    total = Fraction(0)
    for t, ch in enumerate(_chains(arr)):
        if ch is None:
            continue
        lo = ch[0]
        total += (arr.xs[t + 1] - arr.xs[t]) * (lo[0] + lo[1]) / 2
    return total


def with_segment(R: ShadowRegion, side: int, height) -> ShadowRegion:
    """R together with the end segment {(side, sigma) : 0 <= sigma <= height}."""
    height = frac(height)
    if height == 0:
        return R
    seg = ((Fraction(side), Fraction(0)), (Fraction(side), height))
    return ShadowRegion(R.curves + (seg,), R.ends_minus, R.ends_plus)


def enclosed_area(R: ShadowRegion, side: int, height, base=None) -> Fraction:
    """Area closed off by the end segment of the given height on one side."""
    base = shadow_area(R) if base is None else base
    return shadow_area(with_segment(R, side, height)) - base


def end_shifts(R: ShadowRegion):
    """Shifts (c_i) for the ends at s = -1 and (c'_j) for s = +1.

    c_i is the area enclosed between the shadow boundary and the end
    segment of height i at s = -1; c'_j adds the signed area under the
    lower boundary of the shadow to the analogous area at s = +1.
    """
    arr = arrangement(R)
    base = arr.area()
    low = lower_integral(arr)
    c = [enclosed_area(R, -1, h, base) for h in R.ends_minus]
    cp = [low + enclosed_area(R, 1, h, base) for h in R.ends_plus]
    for seq in (c, cp):
        if any(a > b for a, b in zip(seq, seq[1:])):
            raise AssertionError("end shifts must be non-decreasing")
    return c, cp


# ---------------------------------------------------------------------------
# compression


@dataclass
class CompressionResult:
    sigma_plus: list  # [(s, value)] knots of a piecewise-linear profile on [-1, 1]
    area: Fraction
    cover_area: Fraction
    rectangles: list


def _profile_integral(knots):
    return sum(((b[0] - a[0]) * (a[1] + b[1]) / 2 for a, b in zip(knots, knots[1:])), Fraction(0))


def cover(arr: Arrangement, budget) -> list:
    """Axis-aligned rectangles covering the shadow with total excess <= budget."""
    cells = [c for c in arr.bounded_cells() if c.area() > 0]
    rects = []
    if not cells:
        return rects
    per = frac(budget) / len(cells)
    for c in cells:
        w = c.x1 - c.x0
        slope = abs(c.lo[1] - c.lo[0]) + abs(c.hi[1] - c.hi[0])
        k = 1
        # excess of the column cover is w * slope / k
        while w * slope / k > per:
            k *= 2
        for q in range(k):
            xa, xb = c.x0 + w * q / k, c.x0 + w * (q + 1) / k
            lo = min(_at(((c.x0, c.lo[0]), (c.x1, c.lo[1])), x) for x in (xa, xb))
            hi = max(_at(((c.x0, c.hi[0]), (c.x1, c.hi[1])), x) for x in (xa, xb))
            rects.append((xa, lo, xb, hi))
    return rects


def compress(R: ShadowRegion, epsilon) -> CompressionResult:
    epsilon = frac(epsilon)
    if epsilon <= 0:
        raise InvalidShadow("epsilon must be positive")
    arr = arrangement(R)
    rects = cover(arr, epsilon / 3)
    squares = sum(((xb - xa) * (hi - lo) for xa, lo, xb, hi in rects), Fraction(0))
    m, n = R.m, R.n
    w = Fraction(1, 2) if m + n == 0 else min(Fraction(1, 2), 2 * epsilon / (3 * (m + n)))
    h0 = squares / 2
    knots = [(Fraction(-1), max(Fraction(m), h0)), (-1 + w, h0), (1 - w, h0), (ONE, max(Fraction(n), h0))]
    area = _profile_integral(knots)
    shadow = arr.area()
    assert squares <= shadow + epsilon / 3
    assert squares <= area <= squares + epsilon / 3
    assert area <= shadow + epsilon
    return CompressionResult(knots, area, squares, rects)


# ---------------------------------------------------------------------------
# pictures


def arrangement_svg(R: ShadowRegion, size: int = 480) -> str:
    arr = arrangement(R)
    pts = [p for s in R.segments() for p in s] + [(Fraction(-2), h) for h in R.ends_minus] + \
          [(Fraction(2), h) for h in R.ends_plus]
    ys = [p[1] for p in pts] or [Fraction(0)]
    y0, y1 = min(ys) - 1, max(ys) + 1
    x0, x1 = Fraction(-2), Fraction(2)

    def X(v):
        return float((v - x0) / (x1 - x0)) * size

    def Y(v):
        return float((y1 - v) / (y1 - y0)) * size

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
    for c in arr.bounded_cells():
        poly = " ".join(f"{X(s):.2f},{Y(y):.2f}" for s, y in c.polygon())
        out.append(f'<polygon points="{poly}" fill="#c8d7ee" stroke="none"/>')
    for (p, q) in R.segments():
        out.append(f'<line x1="{X(p[0]):.2f}" y1="{Y(p[1]):.2f}" x2="{X(q[0]):.2f}" y2="{Y(q[1]):.2f}" stroke="black"/>')
    for h in R.ends_minus:
        out.append(f'<line x1="0" y1="{Y(h):.2f}" x2="{X(Fraction(-1)):.2f}" y2="{Y(h):.2f}" stroke="black"/>')
    for h in R.ends_plus:
        out.append(f'<line x1="{X(ONE):.2f}" y1="{Y(h):.2f}" x2="{size}" y2="{Y(h):.2f}" stroke="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
