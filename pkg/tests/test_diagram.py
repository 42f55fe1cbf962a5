import pytest

from diagalg.diagram import (B, DiagramError, L, R, T, count_all, enumerate_all, identity, make_diagram,
                             parity, reflect, render, serialize, validate)
from diagalg.labelalg import E, FUp, WUp, generator_diagram
from diagalg.cli import parse_diagram

from helpers import all_diagrams

X = ("a", "b")


def test_validate_examples():
    assert validate(identity(3, X)) is None
    assert validate(make_diagram(1, X, ["a", "b"], [], [(L(1), T(1)), (R(1), T(2))])) is None
    with pytest.raises(DiagramError):
        make_diagram(2, X, [], [], [(L(1), R(2)), (L(2), R(1))])


def test_validate_rejects_bad_input():
    with pytest.raises(DiagramError):
        make_diagram(1, X, ["a"], [], [(L(1), T(1))])  # R1 unmatched
    with pytest.raises(DiagramError):
        make_diagram(1, X, ["z"], ["a"], [(L(1), T(1)), (R(1), B(1))])  # label not in X
    with pytest.raises(DiagramError):
        make_diagram(1, X, ["a", "b"], [], [(T(1), T(2)), (L(1), R(1))])  # boundary arc


def test_parity():
    assert parity(identity(2, X)) == "even"
    assert parity(generator_diagram(WUp("a", "b"), 2, X)) == "odd"
    assert parity(generator_diagram(FUp("a", "b"), 2, X)) == "even"


def test_structural_queries():
    assert generator_diagram(E(1), 3, X).has_simple_link("L", 1)
    assert identity(3, X).topmost_left_simple_link() is None
    assert generator_diagram(WUp("a", "b"), 3, X).has_top_boundary_link_at("L", 1)


def test_enumeration_counts():
    assert len(list(enumerate_all(1, ("a",)))) == 5
    assert len(list(enumerate_all(1, X))) == 17
    assert len(list(enumerate_all(2, ("a",)))) == 21
    for n in range(1, 4):
        ds = all_diagrams(n, X)
        assert len(set(ds)) == len(ds) == count_all(n, 2)
        assert all(validate(d) is None for d in ds)


def test_render():
    art = render(identity(2, X))
    assert art.count("|---") == 2
    tikz = render(generator_diagram(FUp("a", "b"), 2, X), "tikz")
    assert tikz.startswith("\\begin{tikzpicture}")
    assert "{a}" in tikz and "{b}" in tikz
    with pytest.raises(ValueError):
        render(identity(1, X), "svg")


def test_canonical_round_trip():
    for n in (1, 2, 3):
        for d in all_diagrams(n, X):
            assert parse_diagram(render(d, "canonical")) == d
            assert parse_diagram(serialize(d)) == d


def test_reflection_is_an_involution():
    for d in all_diagrams(2, X):
        r = reflect(d)
        assert validate(r) is None
        assert reflect(r) == d
        assert (r.t, r.b) == (d.b, d.t)
