from fractions import Fraction as Q

from hypothesis import given, settings, strategies as st

from cobar.barcode import (Bar, Barcode, barcode_svg, decompose, decompose_reference, endpoints,
                           longest_finite_bar, shortest_bar)
from cobar.core import INF, complex_from, degree_shift, translate
from oracles import bar_rank, stalk_rank
from strategies import HALVES, complexes, conjugate


def test_single_generator():
    assert decompose(complex_from([("g", 0, 0)])) == Barcode([Bar(0, 0)])


def test_bar_and_cancelling_pair():
    F = complex_from([("g", 0, 0), ("h", 1, 2), ("x", 0, 1), ("y", 1, 1)], [("g", "h"), ("x", "y")])
    assert decompose(F) == Barcode([Bar(0, 0, 2)])


def test_elder_rule():
    # two classes born at 0 and 1, killed together at 3: the younger one dies
    F = complex_from([("a", 0, 0), ("b", 0, 1), ("k", 1, 3)], [("a", "k"), ("b", "k")])
    assert decompose(F) == Barcode([Bar(0, 0), Bar(0, 1, 3)])


def test_endpoint_helpers():
    B = Barcode([Bar(0, 0, 2), Bar(1, 1), Bar(-1, Q(1, 2), 1)])
    assert shortest_bar(B) == Q(1, 2)
    assert longest_finite_bar(B) == 2
    assert len(endpoints(B)) == 5
    assert barcode_svg(B).startswith("<svg")


@settings(max_examples=150, deadline=None)
@given(complexes(max_bars=5))
def test_rank_invariant_matches_stalks(F):
    B = decompose(F)
    for deg in (-1, 0, 1, 2):
        for i, r in enumerate(HALVES):
            for s in HALVES[i:]:
                assert bar_rank(B, r, s, deg) == stalk_rank(F, r, s, deg)


@settings(max_examples=100, deadline=None)
@given(complexes(max_bars=5))
def test_clearing_agrees_with_reference(F):
    assert decompose(F) == decompose_reference(F)


@settings(max_examples=60, deadline=None)
@given(complexes(max_bars=4), st.sampled_from([Q(-1), Q(1, 3), Q(5, 2)]), st.integers(-2, 2))
def test_translate_and_shift(F, c, k):
    B = decompose(F)
    assert decompose(translate(F, c)) == B.shifted(c)
    assert decompose(degree_shift(F, k)) == Barcode(Bar(b.degree - k, b.birth, b.death) for b in B)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_basis_change_keeps_barcode(data):
    F = data.draw(complexes(max_bars=4, mixes=0))
    B = decompose(F)
    for _ in range(4):
        if len(F) < 2:
            break
        i, j = data.draw(st.permutations(F.ids).map(lambda p: p[:2]))
        if F[i].degree == F[j].degree and F[j].birth >= F[i].birth:
            F = conjugate(F, i, j)
    assert decompose(F) == B


def test_infinite_bar_length():
    assert Bar(0, 1).length == INF
