import itertools
from fractions import Fraction as Q

import pytest
from hypothesis import assume, given, settings, strategies as st

from cobar import f2
from cobar.barcode import decompose, longest_finite_bar
from cobar.core import (INF, CapExceeded, ChainMap, HomSpace, ZERO, commutator, compose, compose_entries,
                        complex_from, is_homotopic, tau, translate, translate_map)
from cobar.interleave import (InvalidMovie, Movie, NegativeShift, distance_bruteforce, feasible,
                              feasible_direct, interleaving_distance, is_weakly_ab_isomorphic, movie_bound, vertices)
from strategies import complexes


def cycles(X, Y, offset):
    """Every chain map X -> T_offset Y, by enumerating the cycle space."""
    V0, V1 = HomSpace(X, Y, 0, offset), HomSpace(X, Y, 1, offset)
    sysm = f2.F2System()
    cols = V0.differential_columns(V1)
    for r in range(V1.dim):
        sysm.add(sum(((c >> r) & 1) << k for k, c in enumerate(cols)))
    basis = sysm.nullspace(V0.dim)
    TY = translate(Y, offset)
    for mask in range(1 << len(basis)):
        v = 0
        for k in f2.bits(mask):
            v ^= basis[k]
        yield ChainMap(X, TY, V0.entries(v))


def weak_iso_oracle(F, G, a, b):
    a, b = Q(a), Q(b)
    A = list(cycles(F, G, a))
    B = list(cycles(G, F, b))
    idF, idG = tau(F, 0, a + b), tau(G, 0, a + b)
    up_G, up_F = tau(G, a, 2 * a), tau(F, b, 2 * b)
    for alpha, beta in itertools.product(A, B):
        if not is_homotopic(compose(translate_map(beta, a), alpha), idF)[0]:
            continue
        for delta, gamma in itertools.product(A, B):
            if not is_homotopic(compose(up_G, alpha), compose(up_G, delta))[0]:
                continue
            if not is_homotopic(compose(up_F, beta), compose(up_F, gamma))[0]:
                continue
            if is_homotopic(compose(translate_map(delta, b), gamma), idG)[0]:
                return True
    return False


def interval(b):
    return complex_from([("g", 0, b)])


def bar(b, d, deg=0):
    return complex_from([("g", deg, b), ("h", deg + 1, d)], [("g", "h")])


# frozen values, computed by weak_iso_oracle over the quarter lattice
def test_interval_pair():
    F, G = interval(0), interval(2)
    assert interleaving_distance(F, G) == 2
    assert interleaving_distance(G, F) == 2
    assert is_weakly_ab_isomorphic(F, G, 0, 2)[0]
    assert not is_weakly_ab_isomorphic(F, G, 2, 0)[0]
    assert not is_weakly_ab_isomorphic(F, G, 0, Q(19, 10))[0]


def test_bar_against_zero():
    assert interleaving_distance(bar(0, 3), ZERO) == 3
    assert interleaving_distance(interval(0), ZERO) == INF


def test_self_distance():
    F = complex_from([("a", 0, 0), ("b", 1, 2), ("c", 0, 1)], [("a", "b")])
    assert interleaving_distance(F, F) == 0


def test_bars_of_different_length():
    assert interleaving_distance(bar(0, 1), bar(0, 3)) == 2
    assert weak_iso_oracle(bar(0, 1), bar(0, 3), 0, 2)


def check_witness(w):
    a, b = w.a, w.b
    Fm, Gm = w.alpha.source, w.beta.source
    idF = {(x, x) for x in Fm.ids}
    idG = {(y, y) for y in Gm.ids}
    want = {
        "beta_alpha": compose_entries(w.beta.entries, w.alpha.entries) ^ idF,
        "delta_gamma": compose_entries(w.delta.entries, w.gamma.entries) ^ idG,
        "alpha_delta": w.alpha.entries ^ w.delta.entries,
        "beta_gamma": w.beta.entries ^ w.gamma.entries,
    }
    for key, s in w.homotopies.items():
        assert s.shift == -1
        assert commutator(s) == want[key], key


def test_witness_is_consistent():
    ok, w = is_weakly_ab_isomorphic(interval(0), interval(1), 0, 1)
    assert ok
    assert w.alpha.is_chain_map() and w.beta.is_chain_map()
    check_witness(w)


@settings(max_examples=40, deadline=None)
@given(complexes(max_bars=3), complexes(max_bars=3),
       st.sampled_from([Q(k, 4) for k in range(0, 13)]), st.sampled_from([Q(k, 4) for k in range(0, 13)]))
def test_split_witnesses(F, G, a, b):
    ok, w = is_weakly_ab_isomorphic(F, G, a, b)
    if ok:
        check_witness(w)


@settings(max_examples=80, deadline=None)
@given(complexes(max_bars=3), complexes(max_bars=3),
       st.sampled_from([Q(k, 4) for k in range(0, 13)]), st.sampled_from([Q(k, 4) for k in range(0, 13)]))
def test_split_matches_direct_search(F, G, a, b):
    assert feasible(F, G, a, b) == feasible_direct(F, G, a, b)


def test_negative_shift():
    with pytest.raises(NegativeShift):
        feasible(interval(0), interval(0), -1, 0)


def test_cap():
    F = complex_from([(f"g{k}", 0, 0) for k in range(4)])
    with pytest.raises(CapExceeded):
        feasible_direct(F, F, 0, 0, cap=8)
    # infinite bars are matched directly, repeated finite bars still search
    assert feasible(F, F, 0, 0, cap=8)
    B = complex_from([(f"{c}{k}", 0 if c == "x" else 1, 0 if c == "x" else 4) for k in range(3) for c in "xy"],
                     [(f"x{k}", f"y{k}") for k in range(3)])
    with pytest.raises(CapExceeded):
        feasible(B, B, 0, 0, cap=8)


@settings(max_examples=40, deadline=None)
@given(complexes(max_bars=2, values=[Q(k, 2) for k in range(5)], mixes=2),
       complexes(max_bars=2, values=[Q(k, 2) for k in range(5)], mixes=2),
       st.sampled_from([Q(k, 4) for k in range(0, 9)]), st.sampled_from([Q(k, 4) for k in range(0, 9)]))
def test_feasible_matches_cycle_enumeration(F, G, a, b):
    assume(len(F) + len(G) <= 5)
    assert feasible(F, G, a, b) == weak_iso_oracle(F, G, a, b)


@settings(max_examples=60, deadline=None)
@given(complexes(max_bars=3), complexes(max_bars=3))
def test_distance_matches_grid_bruteforce(F, G):
    assert interleaving_distance(F, G) == distance_bruteforce(F, G)


@settings(max_examples=40, deadline=None)
@given(complexes(max_bars=3), complexes(max_bars=3))
def test_symmetry(F, G):
    assert interleaving_distance(F, G) == interleaving_distance(G, F)


@settings(max_examples=25, deadline=None)
@given(complexes(max_bars=2), complexes(max_bars=2), complexes(max_bars=2))
def test_triangle(F, G, H):
    assert interleaving_distance(F, H) <= interleaving_distance(F, G) + interleaving_distance(G, H)


@settings(max_examples=40, deadline=None)
@given(complexes(max_bars=3), st.sampled_from([Q(1, 2), Q(1), Q(3, 2), Q(-1)]))
def test_translation_bound(F, c):
    assert interleaving_distance(F, translate(F, c)) <= abs(c)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([Q(k, 2) for k in range(5)]), st.sampled_from([Q(k, 2) for k in range(-4, 5)]))
def test_translation_single_interval(b, c):
    assume(b + c >= 0)
    assert interleaving_distance(interval(b), interval(b + c)) == abs(c)


@settings(max_examples=40, deadline=None)
@given(complexes(max_bars=3))
def test_distance_to_zero_is_longest_bar(F):
    B = decompose(F)
    expected = INF if any(not b.finite for b in B) else longest_finite_bar(B)
    assert interleaving_distance(F, ZERO) == expected


def test_vertices_include_axis_grid():
    pts = vertices(interval(0), interval(2))
    assert (0, 2) in pts and (1, 1) in pts


# movies

def test_movie_slices_and_bound():
    sk = complex_from([("g", 0, 0), ("h", 1, 1)], [("g", "h")])
    M = Movie(sk, {"g": [(0, 0), (1, 0)], "h": [(0, 1), (Q(1, 2), 2), (1, 2)]})
    assert M.slice(Q(1, 4)).births() == [0, Q(3, 2)]
    a, b, ok = movie_bound(M)
    assert ok and a == Q(1, 1000) and b == 1 + Q(1, 1000)


def test_movie_rejects_bad_slice():
    sk = complex_from([("g", 0, 0), ("h", 1, 1)], [("g", "h")])
    with pytest.raises(InvalidMovie):
        Movie(sk, {"g": [(0, 0), (1, 2)], "h": [(0, 1), (1, 1)]})


def test_movie_rejects_nonpositive_epsilon():
    M = Movie(interval(0), {"g": [(0, 0), (1, 1)]})
    with pytest.raises(InvalidMovie):
        movie_bound(M, epsilon=0)
