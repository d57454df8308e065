from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from cobar.barcode import Bar, Barcode, decompose
from cobar.cones import (MCViolation, NotNullHomotopy, chainmap_to_homotopy, cone,
                         homotopy_to_chainmap, left_nested, mc_defect, projection_to_shifted_source,
                         reassociate, right_nested, totalize, twisted, validate_mc)
from cobar.core import ChainMap, GradedMap, compose, complex_from, is_homotopic, validate
from cobar.scenario import slope_split
from strategies import chain_maps, complexes


def test_cone_of_interval_map():
    A, B = complex_from([("a", 0, 0)]), complex_from([("b", 0, 2)])
    C = cone(ChainMap(A, B, {("a", "b")}))
    validate(C)
    assert decompose(C) == Barcode([Bar(-1, 0, 2)])


def test_cone_of_zero_map_is_sum():
    A, B = complex_from([("a", 0, 0)]), complex_from([("b", 0, 2)])
    assert decompose(cone(ChainMap(A, B))) == Barcode([Bar(-1, 0), Bar(0, 2)])


def test_mc_violation_names_pair():
    G = [complex_from([("x", 0, 0)]), complex_from([("y", 0, 1)]), complex_from([("z", 0, 2)])]
    T = twisted(G, {(0, 1): {("x", "y")}, (1, 2): {("y", "z")}})
    assert mc_defect(T, 0, 2) == {("x", "z")}
    with pytest.raises(MCViolation) as info:
        validate_mc(T)
    assert (info.value.i, info.value.j) == (0, 2)


def test_three_term_chain_totalizes():
    G = [complex_from([("x", 0, 0)]), complex_from([("y", 0, 1), ("y2", 0, 1)]), complex_from([("z", 0, 3)])]
    T = twisted(G, {(0, 1): {("x", "y")}, (1, 2): {("y2", "z")}})
    left, right, same = reassociate(T)
    assert same
    assert decompose(totalize(T)) == Barcode([Bar(-2, 0, 1), Bar(-1, 1, 3)])


@settings(max_examples=80, deadline=None)
@given(complexes(max_bars=4, slopes=(0, 1, 2)))
def test_nestings_agree(F):
    T = slope_split(F).twisted
    validate_mc(T)
    validate(left_nested(T))
    validate(right_nested(T))
    assert reassociate(T)[2]
    assert decompose(totalize(T)) == decompose(F).shifted(0)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_homotopy_chainmap_roundtrip(data):
    X = data.draw(complexes(max_bars=3))
    Y = data.draw(complexes(max_bars=3))
    psi = data.draw(chain_maps(X, Y))
    ok, s = is_homotopic(psi, ChainMap(X, Y))
    if not ok:
        return
    eta = homotopy_to_chainmap(psi, s)
    assert chainmap_to_homotopy(eta, psi) == s
    back = compose(projection_to_shifted_source(psi), eta)
    assert back.entries == {(x, x) for x in back.source.ids}


def test_not_null_homotopy_rejected():
    A, B = complex_from([("a", 0, 0)]), complex_from([("b", 0, 2)])
    psi = ChainMap(A, B, {("a", "b")})
    with pytest.raises(NotNullHomotopy):
        homotopy_to_chainmap(psi, GradedMap(A, B, -1))
