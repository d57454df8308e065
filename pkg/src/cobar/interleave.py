"""Weak (a, b)-isomorphism, the distance d', and movie bounds.

Every condition of a weak (a, b)-isomorphism only sees homotopy classes,
so the search runs over H^0 of the relevant Hom complexes. For fixed
alpha and delta the remaining conditions are linear in (beta, gamma).
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import f2
from .barcode import decompose
from .core import (
    INF,
    CapExceeded,
    ChainMap,
    CobarError,
    Generator,
    GradedMap,
    HomClasses,
    IntervalComplex,
    ZERO,
    compose_entries,
    frac,
    translate,
)

DEFAULT_CAP = 2 ** 16


class NegativeShift(CobarError, ValueError):
    pass


class InvalidMovie(CobarError, ValueError):
    pass


@dataclass
class WeakIsoWitness:
    a: Fraction
    b: Fraction
    alpha: ChainMap
    delta: ChainMap
    beta: ChainMap
    gamma: ChainMap
    homotopies: dict = field(default_factory=dict)


def _coords_of_entries(H: HomClasses, entries) -> int:
    return H.coords(H.V0.vec(entries))


def _nullspace_of_columns(columns: list[int], nrows: int, ncols: int) -> list[int]:
    sysm = f2.F2System()
    for row in _transpose(columns, nrows):
        sysm.add(row)
    return sysm.nullspace(ncols)


def _transpose(columns, nrows):
    rows = [0] * nrows
    for c, col in enumerate(columns):
        for r in f2.bits(col):
            rows[r] |= 1 << c
    return rows


def _span(basis: list[int]):
    for mask in range(1 << len(basis)):
        v = 0
        for k in f2.bits(mask):
            v ^= basis[k]
        yield v


class _Problem:
    def __init__(self, F, G, a, b):
        self.F, self.G, self.a, self.b = F, G, a, b
        self.HFG = HomClasses(F, G, a)
        self.HGF = HomClasses(G, F, b)
        self.HFF = HomClasses(F, F, a + b)
        self.HGG = HomClasses(G, G, a + b)
        self.HFG2 = HomClasses(F, G, 2 * a)
        self.HGF2 = HomClasses(G, F, 2 * b)
        self.tauF = _coords_of_entries(self.HFF, {(x, x) for x in F.ids})
        self.tauG = _coords_of_entries(self.HGG, {(y, y) for y in G.ids})

    def entries(self, H: HomClasses, coeffs: int) -> frozenset:
        return H.V0.entries(H.rep(coeffs))

    def _row_table(self, H_out: HomClasses, first_basis, second_basis, second_first: bool):
        """Per basis vector of the enumerated map, the transposed rows of the
        composite's class coordinates; composition is bilinear on classes."""
        table = []
        for e in first_basis:
            if second_first:
                cols = [_coords_of_entries(H_out, compose_entries(e, f)) for f in second_basis]
            else:
                cols = [_coords_of_entries(H_out, compose_entries(f, e)) for f in second_basis]
            table.append(_transpose(cols, H_out.dim))
        return table

    @staticmethod
    def _combine(table, nrows: int):
        memo = {0: [0] * nrows}

        def rows(c: int):
            if c not in memo:
                low = c & -c
                prev = rows(c ^ low)
                extra = table[low.bit_length() - 1]
                memo[c] = [x ^ y for x, y in zip(prev, extra)]
            return memo[c]
        return rows

    def search(self, cap: int):
        HFG, HGF = self.HFG, self.HGF
        ka, kb = HFG.dim, HGF.dim
        alpha_basis = [HFG.V0.entries(r) for r in HFG.reps]
        beta_basis = [HGF.V0.entries(r) for r in HGF.reps]
        cols_a2 = [_coords_of_entries(self.HFG2, e) for e in alpha_basis]
        K_a = _nullspace_of_columns(cols_a2, self.HFG2.dim, ka)
        combos = (1 << ka) * (1 << len(K_a))
        if combos > cap:
            raise CapExceeded(f"{combos} (alpha, delta) combinations exceed cap {cap}")
        cols_b2 = [_coords_of_entries(self.HGF2, e) for e in beta_basis]
        n = 2 * kb
        # (3b): tau o (beta + gamma) null in Hom(G, T_2b F)
        cond3 = [(row | (row << kb), 0) for row in _transpose(cols_b2, self.HGF2.dim)]
        # (1): beta o alpha ~ tau on F, rows in beta's coordinates
        rows1 = self._combine(self._row_table(self.HFF, alpha_basis, beta_basis, False), self.HFF.dim)
        # (2): delta o gamma ~ tau on G, rows in gamma's coordinates
        rows2 = self._combine(self._row_table(self.HGG, alpha_basis, beta_basis, True), self.HGG.dim)
        tF = [(self.tauF >> r) & 1 for r in range(self.HFF.dim)]
        tG = [(self.tauG >> r) & 1 for r in range(self.HGG.dim)]

        def eqs1(ca):
            return [(row, rhs) for row, rhs in zip(rows1(ca), tF)]

        def eqs2(cd):
            return [(row << kb, rhs) for row, rhs in zip(rows2(cd), tG)]

        def solvable(eqs):
            sysm = f2.F2System()
            return all(sysm.try_add(row, rhs) for row, rhs in eqs)

        good_d: dict[int, bool] = {}
        for ca in range(1 << ka):
            first = eqs1(ca)
            if not solvable(first):
                continue
            base = f2.F2System()
            for row, rhs in itertools.chain(first, cond3):
                if not base.try_add(row, rhs):
                    break
            else:
                for kvec in _span(K_a):
                    cd = ca ^ kvec
                    if cd not in good_d:
                        good_d[cd] = solvable(eqs2(cd))
                    if not good_d[cd]:
                        continue
                    sysm = base.copy()
                    if all(sysm.try_add(row, rhs) for row, rhs in eqs2(cd)):
                        x = sysm.lex_least(n)
                        return ca, cd, x & ((1 << kb) - 1), x >> kb
        return None

    def witness(self, found) -> WeakIsoWitness:
        ca, cd, cb, cg = found
        F, G, a, b = self.F, self.G, self.a, self.b
        TaG, TbF = translate(G, a), translate(F, b)
        alpha = ChainMap(F, TaG, self.entries(self.HFG, ca))
        delta = ChainMap(F, TaG, self.entries(self.HFG, cd))
        beta = ChainMap(G, TbF, self.entries(self.HGF, cb))
        gamma = ChainMap(G, TbF, self.entries(self.HGF, cg))
        hom = {}
        idF = {(x, x) for x in F.ids}
        idG = {(y, y) for y in G.ids}
        pairs = {
            "beta_alpha": (self.HFF, compose_entries(beta.entries, alpha.entries) ^ idF, F, F, a + b),
            "delta_gamma": (self.HGG, compose_entries(delta.entries, gamma.entries) ^ idG, G, G, a + b),
            "alpha_delta": (self.HFG2, alpha.entries ^ delta.entries, F, G, 2 * a),
            "beta_gamma": (self.HGF2, beta.entries ^ gamma.entries, G, F, 2 * b),
        }
        for key, (H, diff, X, Y, off) in pairs.items():
            s = H.homotopy(H.V0.vec(diff))
            hom[key] = GradedMap(X, translate(Y, off), -1, H.Vm.entries(s))
        return WeakIsoWitness(a, b, alpha, delta, beta, gamma, hom)


def _check_shifts(a, b):
    a, b = frac(a), frac(b)
    if a < 0 or b < 0:
        raise NegativeShift(f"shifts must be non-negative, got ({a}, {b})")
    return a, b


def feasible_direct(F, G, a, b, cap: int = DEFAULT_CAP) -> bool:
    """The class-level search run on F and G themselves, without splitting."""
    a, b = _check_shifts(a, b)
    return _Problem(F, G, a, b).search(cap) is not None


# Splitting. Up to homotopy a complex is the direct sum of its bars, and
# every condition of a weak (a, b)-isomorphism passes to cohomology, so the
# question splits by degree. Within one degree an infinite bar never maps
# to a finite one, so block-diagonal solutions suffice: the infinite bars
# must match in sorted order of births, and the finite bars are searched
# on their own (small) bar model.


@dataclass
class BarSplit:
    infinite: dict  # degree -> sorted births
    finite: dict    # degree -> bar model of the finite bars
    model: IntervalComplex


def bar_split(F: IntervalComplex, tag: str = "") -> BarSplit:
    inf: dict = {}
    fin: dict = {}
    for bar in decompose(F):
        if bar.finite:
            fin.setdefault(bar.degree, []).append(bar)
        else:
            inf.setdefault(bar.degree, []).append(bar.birth)
    gens, diff = [], set()
    for deg, births in inf.items():
        births.sort()
        gens += [Generator(f"{tag}n{deg}.i{k}", deg, v) for k, v in enumerate(births)]
    models = {}
    for deg, bars in fin.items():
        part_gens, part_diff = [], set()
        for k, bar in enumerate(sorted(bars)):
            x, y = f"{tag}n{deg}.f{k}.0", f"{tag}n{deg}.f{k}.1"
            part_gens += [Generator(x, deg, bar.birth), Generator(y, deg + 1, bar.death)]
            part_diff.add((x, y))
        models[deg] = IntervalComplex(tuple(part_gens), frozenset(part_diff))
        gens += part_gens
        diff |= part_diff
    return BarSplit(inf, models, IntervalComplex(tuple(gens), frozenset(diff)))


def _matching(fs, gs, a, b) -> bool:
    return len(fs) == len(gs) and all(g + a >= f and f + b >= g for f, g in zip(fs, gs))


def _split_search(SF: BarSplit, SG: BarSplit, a, b, cap):
    """Per-part solutions, or None when some part is infeasible."""
    for deg in set(SF.infinite) | set(SG.infinite):
        if not _matching(SF.infinite.get(deg, []), SG.infinite.get(deg, []), a, b):
            return None
    found = []
    for deg in sorted(set(SF.finite) | set(SG.finite)):
        prob = _Problem(SF.finite.get(deg, ZERO), SG.finite.get(deg, ZERO), a, b)
        hit = prob.search(cap)
        if hit is None:
            return None
        found.append((prob, hit))
    return found


def _assemble(SF: BarSplit, SG: BarSplit, a, b, found) -> WeakIsoWitness:
    """Block-diagonal witness between the two bar models."""
    Fm, Gm = SF.model, SG.model
    TaG, TbF = translate(Gm, a), translate(Fm, b)
    match = set()
    for deg, fs in SF.infinite.items():
        match |= {(f"fn{deg}.i{k}", f"gn{deg}.i{k}") for k in range(len(fs))}
    ents = {"alpha": set(match), "delta": set(match),
            "beta": {(y, x) for x, y in match}, "gamma": {(y, x) for x, y in match}}
    hom: dict = {}
    for prob, hit in found:
        w = prob.witness(hit)
        for key in ents:
            ents[key] |= getattr(w, key).entries
        for key, s in w.homotopies.items():
            hom.setdefault(key, set()).update(s.entries)
    shapes = {"beta_alpha": (Fm, Fm, a + b), "delta_gamma": (Gm, Gm, a + b),
              "alpha_delta": (Fm, Gm, 2 * a), "beta_gamma": (Gm, Fm, 2 * b)}
    homotopies = {key: GradedMap(X, translate(Y, off), -1, hom.get(key, ()))
                  for key, (X, Y, off) in shapes.items()}
    return WeakIsoWitness(a, b, ChainMap(Fm, TaG, ents["alpha"]), ChainMap(Fm, TaG, ents["delta"]),
                          ChainMap(Gm, TbF, ents["beta"]), ChainMap(Gm, TbF, ents["gamma"]), homotopies)


def is_weakly_ab_isomorphic(F: IntervalComplex, G: IntervalComplex, a, b, cap: int = DEFAULT_CAP):
    """Return (bool, witness-or-None).

    The witness lives on the bar models of F and G (``bar_split(F, "f").model``
    and ``bar_split(G, "g").model``), which are homotopy equivalent to F and G.
    """
    a, b = _check_shifts(a, b)
    SF, SG = bar_split(F, "f"), bar_split(G, "g")
    found = _split_search(SF, SG, a, b, cap)
    if found is None:
        return False, None
    return True, _assemble(SF, SG, a, b, found)


def feasible(F, G, a, b, cap: int = DEFAULT_CAP) -> bool:
    a, b = _check_shifts(a, b)
    return _split_search(bar_split(F, "f"), bar_split(G, "g"), a, b, cap) is not None


# ---------------------------------------------------------------------------
# the candidate grid


def gaps(F: IntervalComplex, G: IntervalComplex) -> list[Fraction]:
    """{0} and every positive difference of births in F and G."""
    births = set(F.births()) | set(G.births())
    return sorted({Fraction(0)} | {e1 - e2 for e1 in births for e2 in births if e1 > e2})


def grid(F, G):
    """Axis values A and gap set D.

    Admissibility of every position the search touches flips only where
    a, b, a + b, 2a or 2b crosses a gap, so the feasible region is a union
    of cells of that line arrangement and its minimal a + b sits at a vertex.
    """
    D = gaps(F, G)
    A = sorted(set(D) | {e / 2 for e in D})
    return A, D


def vertices(F, G):
    A, D = grid(F, G)
    pts = {(x, y) for x in A for y in A}
    for e in D:
        for x in A:
            if x <= e:
                pts.add((x, e - x))
                pts.add((e - x, x))
    return sorted(pts, key=lambda p: (p[0] + p[1], p[0]))


@dataclass
class DistanceResult:
    total: Fraction | float
    a: Fraction | None = None
    b: Fraction | None = None
    checks: int = 0


def interleaving_distance(F, G, cap: int = DEFAULT_CAP, detail: bool = False):
    """d'(F, G) on the exact candidate grid; +inf if never weakly isomorphic.

    For each axis value on one side, the minimal feasible value on the other
    side is found by bisection, which is valid because feasibility is
    monotone in each shift.
    """
    A, D = grid(F, G)
    SF, SG = bar_split(F, "f"), bar_split(G, "g")
    memo: dict = {}

    def ok(a, b):
        key = (a, b)
        if key not in memo:
            memo[key] = _split_search(SF, SG, a, b, cap) is not None
        return memo[key]

    best = DistanceResult(INF)

    def scan(fixed, swap):
        nonlocal best
        others = sorted(set(A) | {e - fixed for e in D if e >= fixed})
        pt = (lambda u: (u, fixed)) if swap else (lambda u: (fixed, u))
        if not ok(*pt(others[-1])):
            return
        lo, hi = 0, len(others) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if ok(*pt(others[mid])):
                hi = mid
            else:
                lo = mid + 1
        a, b = pt(others[lo])
        if a + b < best.total or (a + b == best.total and (a, b) < (best.a, best.b)):
            best = DistanceResult(a + b, a, b)

    for x in A:
        if x >= best.total:
            break
        scan(x, swap=False)
        scan(x, swap=True)
    best.checks = len(memo)
    return best if detail else best.total


def distance_bruteforce(F, G, cap: int = DEFAULT_CAP):
    """Minimum a + b over every grid vertex, no early exit."""
    SF, SG = bar_split(F, "f"), bar_split(G, "g")
    best = INF
    for a, b in vertices(F, G):
        if _split_search(SF, SG, a, b, cap) is not None and a + b < best:
            best = a + b
    return best


# ---------------------------------------------------------------------------
# movies


@dataclass(frozen=True, eq=False)
class Movie:
    """Interval complex whose births move piecewise linearly in s."""

    skeleton: IntervalComplex
    trajectories: dict
    domain: tuple = (Fraction(0), Fraction(1))

    def __post_init__(self):
        s0, s1 = frac(self.domain[0]), frac(self.domain[1])
        if not s0 < s1:
            raise InvalidMovie("empty parameter domain")
        object.__setattr__(self, "domain", (s0, s1))
        traj = {}
        for gid in self.skeleton.ids:
            if gid not in self.trajectories:
                raise InvalidMovie(f"no trajectory for generator {gid!r}")
            pts = tuple((frac(s), frac(v)) for s, v in self.trajectories[gid])
            if pts[0][0] != s0 or pts[-1][0] != s1:
                raise InvalidMovie(f"trajectory of {gid!r} must span [{s0}, {s1}]")
            if any(p[0] >= q[0] for p, q in zip(pts, pts[1:])):
                raise InvalidMovie(f"trajectory of {gid!r} has non-increasing s values")
            traj[gid] = pts
        extra = set(self.trajectories) - set(self.skeleton.ids)
        if extra:
            raise InvalidMovie(f"trajectories for unknown generators {sorted(extra)}")
        object.__setattr__(self, "trajectories", traj)
        for s in self.breakpoints():
            try:
                self.slice(s)
            except Exception as exc:
                raise InvalidMovie(f"slice at s={s} is not a valid complex: {exc}") from exc

    def breakpoints(self) -> list[Fraction]:
        return sorted({s for pts in self.trajectories.values() for s, _ in pts})

    def birth(self, gid: str, s) -> Fraction:
        s = frac(s)
        pts = self.trajectories[gid]
        keys = [p[0] for p in pts]
        k = bisect.bisect_right(keys, s) - 1
        if k >= len(pts) - 1:
            return pts[-1][1]
        (sa, va), (sb, vb) = pts[k], pts[k + 1]
        return va + (vb - va) * (s - sa) / (sb - sa)

    def slice(self, s) -> IntervalComplex:
        from dataclasses import replace

        gens = tuple(replace(g, birth=self.birth(g.id, s)) for g in self.skeleton.generators)
        return IntervalComplex(gens, self.skeleton.differential)

    def velocity_pieces(self):
        """[(s_lo, s_hi, {gid: velocity})] over the common refinement."""
        bps = self.breakpoints()
        out = []
        for lo, hi in zip(bps, bps[1:]):
            vel = {gid: (self.birth(gid, hi) - self.birth(gid, lo)) / (hi - lo) for gid in self.skeleton.ids}
            out.append((lo, hi, vel))
        return out

    def speed_bounds(self):
        """Piecewise-constant f = max(0, max v) and g = max(0, -min v)."""
        f, g = [], []
        for lo, hi, vel in self.velocity_pieces():
            vs = list(vel.values()) or [Fraction(0)]
            f.append((lo, hi, max(Fraction(0), max(vs))))
            g.append((lo, hi, max(Fraction(0), -min(vs))))
        return f, g


def integral(step) -> Fraction:
    return sum(((hi - lo) * v for lo, hi, v in step), Fraction(0))


DEFAULT_EPSILON = Fraction(1, 1000)


def movie_bound(M: Movie, epsilon=DEFAULT_EPSILON, cap: int = DEFAULT_CAP):
    """(a*, b*, verified) with a* = int g + eps and b* = int f + eps."""
    epsilon = frac(epsilon)
    if epsilon <= 0:
        raise InvalidMovie("epsilon must be positive")
    f, g = M.speed_bounds()
    a_star, b_star = integral(g) + epsilon, integral(f) + epsilon
    s0, s1 = M.domain
    ok = feasible(M.slice(s0), M.slice(s1), a_star, b_star, cap)
    return a_star, b_star, ok
