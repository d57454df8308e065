"""Write the shipped fixture corpus under fixtures/.

Run from the repository root: python3 scripts/make_fixtures.py
"""

from __future__ import annotations

import json
from fractions import Fraction as Q
from pathlib import Path

from cobar import serial
from cobar.core import ChainMap, complex_from
from cobar.cones import twisted
from cobar.energy import ActionData
from cobar.interleave import Movie
from cobar.scenario import CobordismScenario, HomData
from cobar.shadow import ShadowRegion

ROOT = Path(__file__).resolve().parent.parent / "fixtures"
ZERO_SECTION = [(-1, 0), (1, 0)]
BAND = (-1, 1)


def write(rel, doc):
    path = ROOT / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=2) + "\n")
    return path


def scenario(name, shadow, movie=None, minus=None, plus=None, **kw):
    return CobordismScenario(name=name, shadow=shadow, movie=movie,
                             minus_slope=minus or {}, plus_slope=plus or {}, **kw)


def strands(skeleton, trajectories):
    return Movie(skeleton, trajectories, BAND)


# ---------------------------------------------------------------------------


def product():
    sk = complex_from([("g", 0, 0), ("h", 0, 2)])
    M = strands(sk, {"g": [(-1, 0), (1, 0)], "h": [(-1, 2), (1, 2)]})
    R = ShadowRegion([ZERO_SECTION], [0], [0])
    hom = HomData([("a", 0, 0), ("b", 2, 0)])
    return scenario("product", R, M, {"g": 0, "h": 0}, {"g": 0, "h": 0},
                    hom_minus=[hom], hom_plus=hom, actions=ActionData({}, {}))


def single_bar_translation(c=Q(2)):
    sk = complex_from([("g", 0, 0)])
    M = strands(sk, {"g": [(-1, 0), (1, c)]})
    R = ShadowRegion([ZERO_SECTION, [(-1, 0), (-1, c / 2), (1, c / 2), (1, 0)]], [0], [0])
    return scenario("single_bar_translation", R, M, {"g": 0}, {"g": 0})


def step_translation():
    sk = complex_from([("g", 0, 0)])
    M = strands(sk, {"g": [(-1, 0), (0, 1), (1, 1)]})
    R = ShadowRegion([ZERO_SECTION, [(-1, 0), (-1, 1), (0, 1), (0, 0)]], [0], [0])
    return scenario("step_translation", R, M, {"g": 0}, {"g": 0})


def bar_stretch():
    sk = complex_from([("g", 0, 0), ("h", 1, 1)], [("g", "h")])
    M = strands(sk, {"g": [(-1, 0), (1, 0)], "h": [(-1, 1), (1, 2)]})
    R = ShadowRegion([ZERO_SECTION, [(-1, 0), (-1, Q(1, 2)), (1, Q(1, 2)), (1, 0)]], [0], [0])
    return scenario("bar_stretch", R, M, {"g": 0, "h": 0}, {"g": 0, "h": 0})


def bar_shrink_from_left():
    sk = complex_from([("g", 0, 0), ("h", 1, 2)], [("g", "h")])
    M = strands(sk, {"g": [(-1, 0), (1, 1)], "h": [(-1, 2), (1, 2)]})
    R = ShadowRegion([ZERO_SECTION, [(-1, 0), (-1, Q(1, 2)), (1, Q(1, 2)), (1, 0)]], [0], [0])
    return scenario("bar_shrink_from_left", R, M, {"g": 0, "h": 0}, {"g": 0, "h": 0})


def opposite_strands():
    sk = complex_from([("g", 0, 0), ("h", 0, 1)])
    M = strands(sk, {"g": [(-1, 0), (1, 1)], "h": [(-1, 1), (1, 0)]})
    half = Q(1, 2)
    R = ShadowRegion([ZERO_SECTION, [(-1, 0), (-1, half), (1, half), (1, -half), (-1, -half), (-1, 0)]],
                     [0], [0])
    return scenario("opposite_strands", R, M, {"g": 0, "h": 0}, {"g": 0, "h": 0})


def surgery_merge():
    """Two ends (heights 0, 1) merging into one; the bar g -> h crosses slopes."""
    sk = complex_from([("g", 0, 0), ("h", 1, 1)], [("g", "h")])
    M = strands(sk, {"g": [(-1, 0), (1, 0)], "h": [(-1, 1), (0, 2), (1, 2)]})
    R = ShadowRegion([ZERO_SECTION, [(-1, 1), (0, 1), (0, 0)]], [0, 1], [0])
    hom_minus = [HomData([("p", 0, 0)]), HomData([("q", 3, 0)])]
    hom_plus = HomData([("u", 0, -1), ("v", 3, 0)], [("u", "v")])
    return scenario("surgery_merge", R, M, {"g": 0, "h": 1}, {"g": 0, "h": 0},
                    hom_minus=hom_minus, hom_maps={(0, 1): {("p", "q")}}, hom_plus=hom_plus,
                    actions=ActionData({}, {(0, 1): [1, 3]}))


def surgery_merge_with_bump():
    """Surgery trace plus a bump on the slope-0 strand enclosing area 1/2."""
    sk = complex_from([("g", 0, 0), ("h", 1, 1)], [("g", "h")])
    half = Q(1, 2)
    M = strands(sk, {"g": [(-1, 0), (0, 0), (1, half)], "h": [(-1, 1), (0, 2), (1, 2)]})
    R = ShadowRegion([ZERO_SECTION, [(-1, 1), (0, 1), (0, 0)], [(0, 0), (0, half), (1, half), (1, 0)]],
                     [0, 1], [0])
    hom_minus = [HomData([("p", 0, 0)]), HomData([("q", 3, 0)])]
    hom_plus = HomData([("u", 0, -1), ("v", Q(7, 2), 0)], [("u", "v")])
    return scenario("surgery_merge_with_bump", R, M, {"g": 0, "h": 1}, {"g": 0, "h": 0},
                    hom_minus=hom_minus, hom_maps={(0, 1): {("p", "q")}}, hom_plus=hom_plus,
                    actions=ActionData({}, {(0, 1): [1, 3]}))


def surgery_split():
    """One end splitting into two (heights 0, 1) at s = +1."""
    sk = complex_from([("g", 0, 0), ("h", 1, 1)], [("g", "h")])
    M = strands(sk, {"g": [(-1, 0), (0, 0), (1, 1)], "h": [(-1, 1), (1, 1)]})
    R = ShadowRegion([ZERO_SECTION, [(0, 0), (0, 1), (1, 1)]], [0], [0, 1])
    return scenario("surgery_split", R, M, {"g": 0, "h": 0}, {"g": 1, "h": 0})


def triple_merge():
    sk = complex_from([("g0", 0, 0), ("g1", 1, 1), ("g2", 0, 0)], [("g0", "g1")])
    M = strands(sk, {"g0": [(-1, 0), (1, 0)], "g1": [(-1, 1), (0, 2), (1, 2)],
                     "g2": [(-1, 0), (0, 2), (1, 2)]})
    R = ShadowRegion([ZERO_SECTION, [(-1, 1), (0, 1), (0, 0)], [(-1, 2), (0, 2), (0, 0)]], [0, 1, 2], [0])
    hom_minus = [HomData([("p", 0, 0)]), HomData([("q", 3, 0), ("q2", 4, 0)]), HomData([("r", 7, 0)])]
    hom_plus = HomData([("u", 0, -2), ("v", 3, -1), ("w", 4, -1), ("z", 7, 0)], [("u", "v"), ("w", "z")])
    return scenario("triple_merge", R, M, {"g0": 0, "g1": 1, "g2": 2}, {"g0": 0, "g1": 0, "g2": 0},
                    hom_minus=hom_minus, hom_maps={(0, 1): {("p", "q")}, (1, 2): {("q2", "r")}},
                    hom_plus=hom_plus, actions=ActionData({}, {(0, 1): [1, 3], (1, 2): [1, 3]}))


def crossing_pair():
    """Two strands whose velocity graphs cross inside the band."""
    sk = complex_from([("g", 0, 0), ("h", 0, 1)])
    M = strands(sk, {"g": [(-1, 0), (0, 1), (1, 1)], "h": [(-1, 1), (0, 1), (1, 2)]})
    R = ShadowRegion([ZERO_SECTION, [(-1, 0), (-1, 1), (0, 1), (0, 0)], [(0, 0), (0, 1), (1, 1), (1, 0)]],
                     [0], [0])
    return scenario("crossing_pair", R, M, {"g": 0, "h": 0}, {"g": 0, "h": 0})


def rigidity_not_applicable():
    """Shadow above delta: the short bar of the -1 end disappears at +1."""
    base = surgery_merge_with_bump()
    return scenario("rigidity_not_applicable", base.shadow,
                    hom_minus=[HomData([("p", 0, 0)]), HomData([("q", Q(1, 2), 0)])],
                    hom_maps={(0, 1): {("p", "q")}}, hom_plus=HomData([]),
                    actions=ActionData({}, {(0, 1): [Q(1, 2), Q(1, 4)]}))


SCENARIOS = [product, single_bar_translation, step_translation, bar_stretch, bar_shrink_from_left,
             opposite_strands, surgery_merge, surgery_merge_with_bump, surgery_split, triple_merge,
             crossing_pair, rigidity_not_applicable]


def complexes():
    single = complex_from([("g", 0, 0)])
    write("complexes/single_generator.json", serial.complex_to_json(single))
    write("complexes/interval_at_0.json", serial.complex_to_json(complex_from([("g", 0, 0)])))
    write("complexes/interval_at_2.json", serial.complex_to_json(complex_from([("g", 0, 2)])))
    bar = complex_from([("g", 0, 0), ("h", 1, 2)], [("g", "h")])
    write("complexes/bar_0_2.json", serial.complex_to_json(bar))
    tagged = complex_from([("a", -1, 0, 0), ("b", 0, 1, 1), ("c", 0, 2, 1), ("d", 1, 4, 2)],
                          [("a", "b"), ("c", "d")])
    write("complexes/slope_tagged.json", serial.complex_to_json(tagged))
    A, B = complex_from([("a", 0, 0)]), complex_from([("b", 0, 3)])
    write("maps/interval_map_gap_3.json", serial.map_to_json(ChainMap(A, B, {("a", "b")})))
    G0 = complex_from([("x", 0, 0)])
    G1 = complex_from([("y", 0, 1), ("y2", 0, 1)])
    G2 = complex_from([("z", 0, 3)])
    T = twisted([G0, G1, G2], {(0, 1): {("x", "y")}, (1, 2): {("y2", "z")}})
    write("twisted/chain_m3.json", serial.twisted_to_json(T))


def main():
    complexes()
    for make in SCENARIOS:
        sc = make()
        write(f"scenarios/{sc.name}.json", serial.scenario_to_json(sc))
    print(f"wrote {len(SCENARIOS)} scenarios under {ROOT}")


if __name__ == "__main__":
    main()
