"""End-to-end cobordism scenarios at desk scale.

A scenario bundles the planar shadow of a cobordism, an optional movie of
interval complexes running from the s = -1 end to the s = +1 end, and Hom
barcode data between a test object N and the ends. Two checks consume it:
the distance between the shifted end complexes against the shadow area,
and the endpoint-count inequality when the shadow is below the threshold
delta.

Conventions. The projection of a movie to the (s, sigma) plane is the
union of velocity graphs sigma = d birth / ds, and an end of slope i
sits at height sigma = i. Pieces of the s = -1 end are translated by c_i,
pieces of the s = +1 end by -c'_j.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .barcode import Bar, decompose, endpoints, shortest_bar
from .core import (
    INF,
    CapExceeded,
    CobarError,
    GradedMap,
    Generator,
    IntervalComplex,
    degree_shift,
    frac,
    translate,
)
from .cones import TwistedComplex, totalize, twisted, validate_mc
from .energy import (
    ActionData,
    delta_simple,
    delta_uniform,
    entries_energy,
    in_action_sums,
    lift_tower,
)
from .interleave import DEFAULT_CAP, DEFAULT_EPSILON, Movie, interleaving_distance, is_weakly_ab_isomorphic
from .shadow import ShadowRegion, end_shifts, shadow_area


class InconsistentPairing(CobarError, ValueError):
    pass


class SlopeOrderViolation(CobarError, ValueError):
    pass


class InconsistentScenario(CobarError, ValueError):
    pass


class HypothesisViolation(CobarError, ValueError):
    pass


# ---------------------------------------------------------------------------
# Hom barcodes from action data


@dataclass(frozen=True)
class HomData:
    """Intersection points (name, action, degree[, multiplicity]) and bar pairing."""

    points: tuple
    pairs: tuple = ()

    def __post_init__(self):
        pts = []
        for p in self.points:
            name, action, degree, *rest = p
            mult = int(rest[0]) if rest else 1
            pts.append((str(name), frac(action), int(degree), mult))
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "pairs", tuple((str(a), str(b)) for a, b in self.pairs))

    def actions(self) -> list:
        return sorted(a for _, a, _, k in self.points for _ in range(k))


def gen_hom_barcode(data: HomData) -> IntervalComplex:
    """Interval complex whose bar endpoints sit exactly at the given actions."""
    info = {}
    for name, action, degree, mult in data.points:
        if name in info:
            raise InconsistentPairing(f"point {name!r} listed twice")
        info[name] = (action, degree, mult)
    used = set()
    diff = set()
    for p, q in data.pairs:
        for x in (p, q):
            if x not in info:
                raise InconsistentPairing(f"pairing names unknown point {x!r}")
            if x in used:
                raise InconsistentPairing(f"point {x!r} bounds two bars")
            used.add(x)
        (ap, dp, kp), (aq, dq, kq) = info[p], info[q]
        if dq != dp + 1:
            raise InconsistentPairing(f"bar {p}->{q} has degrees {dp} -> {dq}")
        if not aq > ap:
            raise InconsistentPairing(f"bar {p}->{q} has non-positive length {aq - ap}")
        if kp != 1 or kq != 1:
            raise InconsistentPairing("paired points must have multiplicity 1")
        diff.add((p, q))
    gens = []
    for name, action, degree, mult in data.points:
        if mult == 1:
            gens.append(Generator(name, degree, action, tag=name))
        else:
            gens.extend(Generator(f"{name}#{k}", degree, action, tag=name) for k in range(mult))
    return IntervalComplex(tuple(gens), frozenset(diff))


# ---------------------------------------------------------------------------
# slope splitting


@dataclass
class SlopeSplit:
    twisted: TwistedComplex
    slopes: list
    normalized: list  # piece i translated by its slope (the T_i normalization)


def slope_split(F: IntervalComplex, labels: dict | None = None, order: str = "ascending") -> SlopeSplit:
    """Split F into slope pieces joined by the cross-slope differential.

    With order="ascending" the differential may only keep or raise the
    slope, and piece 0 has the smallest slope; "descending" reverses both.
    totalize of the result is F up to renaming of generators.
    """
    if order not in ("ascending", "descending"):
        raise ValueError("order must be 'ascending' or 'descending'")
    slope = {}
    for g in F.generators:
        s = labels.get(g.id) if labels is not None else g.slope
        if s is None:
            raise SlopeOrderViolation(f"generator {g.id!r} has no slope label")
        slope[g.id] = int(s)
    slopes = sorted(set(slope.values()), reverse=(order == "descending"))
    pos = {s: k for k, s in enumerate(slopes)}
    for x, y in sorted(F.differential):
        if pos[slope[y]] < pos[slope[x]]:
            raise SlopeOrderViolation(
                f"entry {x}->{y} runs from slope {slope[x]} to slope {slope[y]} against the {order} order")
    m = len(slopes)
    pieces = []
    for k, s in enumerate(slopes):
        gens = tuple(replace(g, slope=s) for g in F.generators if slope[g.id] == s)
        ids = {g.id for g in gens}
        diff = frozenset(e for e in F.differential if e[0] in ids and e[1] in ids)
        pieces.append(degree_shift(IntervalComplex(gens, diff), -(m - 1 - k)))
    maps = {}
    for x, y in F.differential:
        i, j = pos[slope[x]], pos[slope[y]]
        if i != j:
            maps.setdefault((i, j), set()).add((x, y))
    T = twisted(pieces, maps)
    validate_mc(T)
    normalized = [translate(P, s) for P, s in zip(pieces, slopes)]
    return SlopeSplit(T, slopes, normalized)


def shifted_total(split: SlopeSplit, shifts: dict) -> IntervalComplex:
    """totalize after translating each piece by shifts[slope]."""
    T = split.twisted
    pieces = [translate(P, shifts.get(s, 0)) for P, s in zip(T.pieces, split.slopes)]
    maps = {k: GradedMap(pieces[k[0]], pieces[k[1]], m.shift, m.entries) for k, m in T.maps.items()}
    return totalize(TwistedComplex(pieces, maps))


# ---------------------------------------------------------------------------
# scenarios


@dataclass
class CobordismScenario:
    name: str
    shadow: ShadowRegion
    actions: ActionData | None = None
    hom_minus: list = field(default_factory=list)  # HomData per end L_i
    hom_maps: dict = field(default_factory=dict)  # (i, j) -> entries between Hom pieces
    hom_plus: HomData | None = None
    movie: Movie | None = None
    minus_slope: dict = field(default_factory=dict)
    plus_slope: dict = field(default_factory=dict)
    triple_intersections_empty: bool = True
    epsilon: Fraction = DEFAULT_EPSILON
    cap: int = DEFAULT_CAP

    @property
    def m(self) -> int:
        return self.shadow.m

    @property
    def n(self) -> int:
        return self.shadow.n

    def hom_pieces(self) -> list:
        return [gen_hom_barcode(h) for h in self.hom_minus]

    def hom_twisted(self) -> TwistedComplex:
        return twisted(self.hom_pieces(), self.hom_maps)

    def action_data(self) -> ActionData:
        derived = ActionData({i: h.actions() for i, h in enumerate(self.hom_minus)})
        if self.actions is None:
            return derived
        if self.actions.NL and self.actions.NL != derived.NL:
            raise InconsistentScenario("declared N-L actions differ from the Hom point data")
        return ActionData(derived.NL, self.actions.LL)


def _covered(segment, curves) -> bool:
    """Is the horizontal segment [(s0, y), (s1, y)] contained in the curves?"""
    (s0, y), (s1, _) = segment
    pieces = []
    for c in curves:
        for p, q in zip(c, c[1:]):
            if p[1] == q[1] == y:
                pieces.append((min(p[0], q[0]), max(p[0], q[0])))
    cur = s0
    for a, b in sorted(pieces):
        if a > cur:
            break
        cur = max(cur, b)
        if cur >= s1:
            return True
    return cur >= s1


def projection_segments(M: Movie) -> list:
    """Velocity graph pieces ((s0, v), (s1, v)) of every generator."""
    out = []
    for lo, hi, vel in M.velocity_pieces():
        for gid in M.skeleton.ids:
            out.append(((lo, vel[gid]), (hi, vel[gid])))
    return out


def _check_movie(sc: CobordismScenario):
    M = sc.movie
    if M is None:
        raise InconsistentScenario("scenario has no movie")
    if M.domain != (Fraction(-1), Fraction(1)):
        raise InconsistentScenario("scenario movies run over s in [-1, 1]")
    for seg in projection_segments(M):
        if not _covered(seg, sc.shadow.curves):
            raise InconsistentScenario(f"velocity graph piece {seg} is not on the declared curves")
    ids = set(M.skeleton.ids)
    if set(sc.minus_slope) != ids or set(sc.plus_slope) != ids:
        raise InconsistentScenario("every movie generator needs a slope at both ends")
    if not set(sc.minus_slope.values()) <= {int(h) for h in sc.shadow.ends_minus}:
        raise InconsistentScenario("minus-end slopes do not match the shadow's ends")
    if not set(sc.plus_slope.values()) <= {int(h) for h in sc.shadow.ends_plus}:
        raise InconsistentScenario("plus-end slopes do not match the shadow's ends")


@dataclass
class DistanceReport:
    name: str
    shadow: Fraction
    epsilon: Fraction
    c_minus: list
    c_plus: list
    distance: Fraction | float
    a: Fraction | None
    b: Fraction | None
    holds: bool
    witness_checked: bool

    def as_dict(self):
        return dict(self.__dict__)


def shifted_ends(sc: CobordismScenario):
    """The s = -1 and s = +1 complexes with end pieces shifted."""
    _check_movie(sc)
    c, cp = end_shifts(sc.shadow)
    cmap = {int(h): v for h, v in zip(sc.shadow.ends_minus, c)}
    cpmap = {int(h): -v for h, v in zip(sc.shadow.ends_plus, cp)}
    F_minus = sc.movie.slice(-1)
    F_plus = sc.movie.slice(1)
    lo = slope_split(F_minus, sc.minus_slope, "ascending")
    hi = slope_split(F_plus, sc.plus_slope, "descending")
    return shifted_total(lo, cmap), shifted_total(hi, cpmap), c, cp


def check_distance_vs_shadow(sc: CobordismScenario) -> DistanceReport:
    S = shadow_area(sc.shadow)
    Fm, Fp, c, cp = shifted_ends(sc)
    res = interleaving_distance(Fm, Fp, cap=sc.cap, detail=True)
    bound = S + sc.epsilon
    holds = res.total <= bound
    checked = False
    if res.total != INF:
        ok, _ = is_weakly_ab_isomorphic(Fm, Fp, res.a, res.b, cap=sc.cap)
        checked = ok
    return DistanceReport(sc.name, S, sc.epsilon, c, cp, res.total, res.a, res.b, holds, checked)


# ---------------------------------------------------------------------------
# rigidity


@dataclass
class RigidityReport:
    name: str
    delta: Fraction | float
    shadow: Fraction
    verdict: str  # holds | not-applicable | violated
    end_counts: tuple  # (sum over the -1 ends, the +1 end)
    total_endpoints: int
    shifts: dict
    memberships: dict
    energy: Fraction | float
    shortest_bar: Fraction | float
    witness: list = field(default_factory=list)
    distance: Fraction | float | None = None

    def as_dict(self):
        return dict(self.__dict__)


def rigidity_delta(actions: ActionData):
    return delta_uniform(actions) if actions.m >= 2 else delta_simple(actions)


def check_rigidity(sc: CobordismScenario) -> RigidityReport:
    """Endpoint counts at the two ends when the shadow is below delta.

    The energy lower bound and the distance bound are consequences of the
    geometry that the surrogate data cannot derive, so both are checked as
    preconditions: the gauge-lifted -1 Hom complex must have differential
    energy >= delta, and its distance to the +1 Hom complex must not exceed
    the shadow. Data failing either is reported as inconsistent.
    """
    if not sc.triple_intersections_empty:
        raise HypothesisViolation("some triple intersection is declared non-empty")
    if not sc.hom_minus or sc.hom_plus is None:
        raise InconsistentScenario("rigidity needs Hom data at both ends")
    if len(sc.hom_minus) != sc.m:
        raise InconsistentScenario(f"{len(sc.hom_minus)} Hom pieces for {sc.m} ends at s = -1")
    actions = sc.action_data()
    delta = rigidity_delta(actions)
    S = shadow_area(sc.shadow)
    T = sc.hom_twisted()
    per_end = sum(len(endpoints(decompose(P))) for P in T.pieces)
    plus = gen_hom_barcode(sc.hom_plus)
    plus_count = len(endpoints(decompose(plus)))
    tower = lift_tower(T)
    memberships = {}
    for (i, j), b in tower.shifts.items():
        memberships[(i, j)] = None if b == INF else in_action_sums(actions, i, j, b)
    validate_mc(tower.tower())
    total = totalize(tower.lifted)
    B = decompose(total)
    total_count = len(endpoints(B))
    energy = entries_energy(total, total, total.differential)
    short = shortest_bar(B)
    if short < energy:
        raise AssertionError("a bar is shorter than the energy of the differential")
    if energy < delta:
        raise InconsistentScenario(f"differential energy {energy} is below delta {delta}")
    dist = interleaving_distance(total, plus, cap=sc.cap)
    if dist > S:
        raise InconsistentScenario(f"the +1 Hom complex is at distance {dist} > shadow {S}")
    witness = []
    if S < delta:
        verdict = "holds" if plus_count >= per_end else "violated"
    else:
        verdict = "not-applicable"
        witness = [b for b in B if b.finite and b.length <= S]
    return RigidityReport(sc.name, delta, S, verdict, (per_end, plus_count), total_count,
                          dict(tower.shifts), memberships, energy, short, witness, dist)
