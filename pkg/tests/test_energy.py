from fractions import Fraction as Q

from hypothesis import given, settings, strategies as st

from cobar.barcode import decompose, shortest_bar
from cobar.cones import cone, totalize, twisted, validate_mc
from cobar.core import INF, ChainMap, complex_from, is_homotopic
from cobar.energy import (ActionData, chain_sums, delta_simple, delta_two_ends, delta_uniform,
                          delta_uniform_bruteforce, entries_energy, in_action_sums, lift_exists,
                          lift_tower, map_energy, max_lift_shift)
from cobar.scenario import slope_split
from strategies import chain_maps, complexes


def interval_map(a, b):
    A, B = complex_from([("a", 0, a)]), complex_from([("b", 0, b)])
    return ChainMap(A, B, {("a", "b")})


def test_interval_map_energy_and_lift():
    phi = interval_map(0, 3)
    assert map_energy(phi) == 3
    cert = max_lift_shift(phi)
    assert cert.b == 3
    assert lift_exists(phi, 3) and not lift_exists(phi, Q(13, 4))


def test_zero_map_energy():
    A, B = complex_from([("a", 0, 0)]), complex_from([("b", 0, 3)])
    assert map_energy(ChainMap(A, B)) == INF
    assert max_lift_shift(ChainMap(A, B)).unbounded


def test_homotopy_improves_energy():
    # a -> y and a -> z differ by d of the homotopy a -> w
    A = complex_from([("a", 0, 0)])
    B = complex_from([("y", 0, 1), ("z", 0, 4), ("w", -1, 1)], [("w", "y"), ("w", "z")])
    phi = ChainMap(A, B, {("a", "y")})
    cert = max_lift_shift(phi)
    assert cert.b == 4
    assert cert.representative == {("a", "z")}
    ok, _ = is_homotopic(phi, ChainMap(A, B, cert.representative))
    assert ok


def test_three_piece_tower():
    G = [complex_from([("x", 0, 0)]), complex_from([("y", 0, 1), ("y2", 0, 1)]), complex_from([("z", 0, 3)])]
    L = lift_tower(twisted(G, {(0, 1): {("x", "y")}, (1, 2): {("y2", "z")}}))
    assert L.shifts == {(0, 1): 1, (1, 2): 2, (0, 2): 3}
    assert L.caps[(0, 2)] == 3
    validate_mc(L.tower())


def test_delta_values():
    assert delta_uniform(ActionData({0: [Q(1, 5), Q(9, 10), Q(3, 2)]})) == Q(3, 5)
    assert delta_two_ends([0], [5], [1]) == 4
    assert delta_two_ends([0], [1], [1]) == INF
    acts = ActionData({0: [0], 1: [3, 4]}, {(0, 1): [1, 3]})
    assert delta_simple(acts) == 1
    assert delta_uniform(acts) == 1


def test_chain_sums_three():
    acts = ActionData({0: [0], 1: [0], 2: [0]}, {(0, 1): [1], (1, 2): [2], (0, 2): [10]})
    assert chain_sums(acts, 0, 2) == {3, 10}
    assert in_action_sums(acts, 0, 2, 3)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_max_lift_matches_lift_exists(data):
    X = data.draw(complexes(max_bars=3))
    Y = data.draw(complexes(max_bars=3))
    phi = data.draw(chain_maps(X, Y))
    b = max_lift_shift(phi).b
    if b == INF:
        assert lift_exists(phi, 8)
    else:
        assert lift_exists(phi, b)
        assert not lift_exists(phi, b + Q(1, 4))


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_cone_bar_bound(data):
    X = data.draw(complexes(max_bars=3))
    Y = data.draw(complexes(max_bars=3))
    phi = data.draw(chain_maps(X, Y))
    bound = min(entries_energy(X, X, X.differential), entries_energy(Y, Y, Y.differential), map_energy(phi))
    assert shortest_bar(decompose(cone(phi))) >= bound


@settings(max_examples=60, deadline=None)
@given(complexes(max_bars=4, slopes=(0, 1, 2, 3)))
def test_tower_is_valid(F):
    T = slope_split(F).twisted
    L = lift_tower(T)
    validate_mc(L.lifted)
    validate_mc(L.tower())
    assert decompose(totalize(L.lifted)) == decompose(totalize(T))
    for (i, j), b in L.shifts.items():
        assert b <= L.caps[(i, j)]
        assert entries_energy(L.lifted.pieces[i], L.lifted.pieces[j], L.lifted.entries(i, j)) >= b


values = st.lists(st.sampled_from([Q(k, 4) for k in range(0, 13)]), min_size=0, max_size=3)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.data())
def test_delta_uniform_bruteforce(m, data):
    NL = {i: data.draw(values) for i in range(m)}
    LL = {(i, j): data.draw(values) for i in range(m) for j in range(i + 1, m)}
    acts = ActionData(NL, LL)
    assert delta_uniform(acts) == delta_uniform_bruteforce(acts)
