from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from cobar.core import (BirthOrderViolation, ChainMap, DegreeMismatch, DifferentialNotSquareZero,
                        HomClasses, IdCollision, IllegalShiftOrder, InvalidMap,
                        ShapeMismatch, commutator, compose, complex_from, degree_shift, direct_sum,
                        identity, is_homotopic, relabel, tau, translate, validate)
from strategies import chain_maps, complexes


def test_validate_accepts_bar():
    validate(complex_from([("g", 0, 0), ("h", 1, 2)], [("g", "h")]))


@pytest.mark.parametrize("gens,diff,err", [
    ([("g", 0, 0), ("h", 0, 2)], [("g", "h")], DegreeMismatch),
    ([("g", 0, 2), ("h", 1, 0)], [("g", "h")], BirthOrderViolation),
    ([("a", 0, 0), ("b", 1, 0), ("c", 2, 0)], [("a", "b"), ("b", "c")], DifferentialNotSquareZero),
])
def test_validate_rejects(gens, diff, err):
    with pytest.raises(err):
        validate(complex_from(gens, diff))


def test_id_collision():
    with pytest.raises(IdCollision):
        complex_from([("g", 0, 0), ("g", 1, 1)])


def test_tau_order():
    F = complex_from([("g", 0, 0)])
    assert tau(F, 0, 1).is_chain_map()
    with pytest.raises(IllegalShiftOrder):
        tau(F, 1, 0)


def test_map_must_not_lower_birth():
    A, B = complex_from([("a", 0, 1)]), complex_from([("b", 0, 0)])
    with pytest.raises(InvalidMap):
        ChainMap(A, B, {("a", "b")})


def test_compose_shape_mismatch():
    A, B = complex_from([("a", 0, 0)]), complex_from([("b", 0, 1)])
    with pytest.raises(ShapeMismatch):
        compose(identity(A), identity(B))


def test_interval_map_not_null_homotopic():
    A, B = complex_from([("a", 0, 0)]), complex_from([("b", 0, 3)])
    phi = ChainMap(A, B, {("a", "b")})
    assert HomClasses(A, B).dim == 1
    ok, _ = is_homotopic(phi, ChainMap(A, B))
    assert not ok


def test_null_homotopic_through_bar():
    # a -> target bar g -> h factors through a contractible piece once births agree
    A = complex_from([("a", 0, 1)])
    B = complex_from([("g", -1, 0), ("h", 0, 1)], [("g", "h")])
    phi = ChainMap(A, B, {("a", "h")})
    ok, s = is_homotopic(phi, ChainMap(A, B))
    assert not ok
    B2 = complex_from([("g", -1, 1), ("h", 0, 1)], [("g", "h")])
    ok, s = is_homotopic(ChainMap(A, B2, {("a", "h")}), ChainMap(A, B2))
    assert ok and s.shift == -1


@settings(max_examples=60, deadline=None)
@given(complexes())
def test_random_complexes_valid(F):
    validate(F)
    validate(translate(F, Q(3, 2)))
    validate(degree_shift(F, 2))
    validate(direct_sum(relabel(F, "l."), relabel(F, "r.")))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_homotopy_witness(data):
    X = data.draw(complexes(max_bars=3))
    Y = data.draw(complexes(max_bars=3))
    phi = data.draw(chain_maps(X, Y))
    psi = data.draw(chain_maps(X, Y))
    ok, s = is_homotopic(phi, psi)
    H = HomClasses(X, Y)
    same = H.coords(H.V0.vec(phi.entries)) == H.coords(H.V0.vec(psi.entries))
    assert ok == same
    if ok:
        assert commutator(s) == phi.entries ^ psi.entries


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_composition_of_chain_maps(data):
    X = data.draw(complexes(max_bars=2))
    Y = data.draw(complexes(max_bars=2))
    Z = data.draw(complexes(max_bars=2))
    f = data.draw(chain_maps(X, Y))
    g = data.draw(chain_maps(Y, Z))
    assert compose(g, f).is_chain_map()
