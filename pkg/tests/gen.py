"""Seeded random generators for the acceptance suite (exact sample counts)."""

from __future__ import annotations

import random
from fractions import Fraction as Q

from cobar.core import ChainMap, HomClasses, complex_from, translate
from cobar.interleave import Movie
from oracles import EDGES, H_STEPS, S_STEPS
from strategies import conjugate

HALVES = [Q(k, 2) for k in range(7)]


def bar_list(rng: random.Random, n: int, values=HALVES, degrees=(-1, 0, 1)):
    """(degree, birth, death-or-None) bars using exactly n generators."""
    out, used = [], 0
    while used < n:
        deg, b = rng.choice(degrees), rng.choice(values)
        later = [v for v in values if v > b]
        if n - used >= 2 and later and rng.random() < 0.6:
            out.append((deg, b, rng.choice(later)))
            used += 2
        else:
            out.append((deg, b, None))
            used += 1
    return out


def from_bars(rng: random.Random, bars, mixes: int = 6, slopes=None):
    gens, diff = [], []
    for k, (deg, b, d) in enumerate(bars):
        sa = None if slopes is None else rng.choice(slopes)
        gens.append((f"a{k}", deg, b, sa))
        if d is not None:
            sb = None if slopes is None else rng.choice([s for s in slopes if s >= sa])
            gens.append((f"b{k}", deg + 1, d, sb))
            diff.append((f"a{k}", f"b{k}"))
    F = complex_from(gens, diff)
    for _ in range(mixes):
        if len(F) < 2:
            break
        i, j = rng.sample(F.ids, 2)
        gi, gj = F[i], F[j]
        if gi.degree == gj.degree and gj.birth >= gi.birth and (slopes is None or gj.slope >= gi.slope):
            F = conjugate(F, i, j)
    return F


def complex_(rng: random.Random, max_gens: int = 12, **kw):
    return from_bars(rng, bar_list(rng, rng.randint(0, max_gens)), **kw)


def jitter(rng: random.Random, bars, values=HALVES):
    """Move endpoints by at most 1/2 and drop some finite bars."""
    step = [-Q(1, 2), Q(0), Q(0), Q(1, 2)]
    lo, hi = values[0], values[-1]
    out = []
    for deg, b, d in bars:
        if d is not None and rng.random() < 0.2:
            continue
        nb = min(max(b + rng.choice(step), lo), hi)
        if d is None:
            out.append((deg, nb, None))
            continue
        nd = min(max(d + rng.choice(step), lo), hi)
        if nd > nb:
            out.append((deg, nb, nd))
    return out


def related(rng: random.Random, count: int, max_gens: int = 8):
    """count complexes sharing a skeleton of bars, so distances are usually finite."""
    base = bar_list(rng, rng.randint(1, max_gens))
    out = []
    for _ in range(count):
        bars = jitter(rng, base)
        while sum(1 if d is None else 2 for _, _, d in bars) > max_gens:
            bars.pop()
        out.append(from_bars(rng, bars))
    return out


def twisted_source(rng: random.Random, m: int, per_piece: int = 4):
    """A slope-labelled complex with at most per_piece generators per slope."""
    while True:
        F = from_bars(rng, bar_list(rng, rng.randint(1, m * per_piece)), slopes=list(range(m)))
        counts = {}
        for g in F.generators:
            counts[g.slope] = counts.get(g.slope, 0) + 1
        if max(counts.values()) <= per_piece:
            return F


def chain_map(rng: random.Random, X, Y, offset=0):
    H = HomClasses(X, Y, offset)
    v = H.rep(rng.getrandbits(H.dim)) if H.dim else 0
    if H.Vm.dim:
        v ^= H.Vm.differential(rng.getrandbits(H.Vm.dim), H.V0)
    return ChainMap(X, translate(Y, offset), H.V0.entries(v))


def _valid_births(rng: random.Random, F, spread):
    """Random births making F valid: targets never born before sources."""
    births = {g.id: g.birth + rng.choice(spread) for g in F.generators}
    for g in sorted(F.generators, key=lambda g: g.degree):
        for x, y in F.differential:
            if y == g.id:
                births[y] = max(births[y], births[x])
    return births


def movie(rng: random.Random, max_gens: int = 6):
    """A skeleton with piecewise-linear trajectories valid at every knot."""
    F = complex_(rng, max_gens, mixes=4)
    knots = sorted({Q(0), Q(1)} | {Q(rng.randint(1, 7), 8) for _ in range(rng.randint(0, 2))})
    spread = [Q(k, 4) for k in range(-4, 5)]
    configs = [_valid_births(rng, F, spread) for _ in knots]
    traj = {g: [(s, cfg[g]) for s, cfg in zip(knots, configs)] for g in F.ids}
    return Movie(F, traj)


def rectilinear(rng: random.Random):
    edges = set()
    for _ in range(rng.randint(0, 3)):
        i0, i1 = sorted(rng.sample(range(5), 2))
        j0, j1 = sorted(rng.sample(range(5), 2))
        for i in range(i0, i1):
            for j in (j0, j1):
                edges.add(((S_STEPS[i], H_STEPS[j]), (S_STEPS[i + 1], H_STEPS[j])))
        for j in range(j0, j1):
            for i in (i0, i1):
                edges.add(((S_STEPS[i], H_STEPS[j]), (S_STEPS[i], H_STEPS[j + 1])))
    for e in rng.sample(sorted(edges), min(len(edges), rng.randint(0, 2))):
        edges.discard(e)
    edges |= set(rng.sample(EDGES, rng.randint(0, 6)))
    em = sorted(rng.sample(H_STEPS, rng.randint(0, 2)))
    ep = sorted(rng.sample(H_STEPS, rng.randint(0, 2)))
    return sorted(edges), em, ep
