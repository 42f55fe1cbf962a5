import pytest

from diagalg.diagram import L, R, identity, make_diagram
from diagalg.decompose import (HasBoundaryLinks, NotEven, NotOdd, decompose, decompose_even, decompose_odd,
                               decompose_tl, jones_normal_form)
from diagalg.labelalg import E, FUp, WDown, WUp, concat, generator_diagram, w_diagram
from diagalg.presentation import Word, count_label_generators, evaluate

from helpers import all_diagrams

X = ("a", "b")


def test_decompose_tl():
    assert decompose_tl(identity(3, X)) == Word()
    assert decompose_tl(generator_diagram(E(1), 2, X)) == Word([E(1)])
    d = make_diagram(3, X, [], [], [(L(1), L(2)), (R(2), R(3)), (L(3), R(1))])
    assert decompose_tl(d) == Word([E(1), E(2)])
    with pytest.raises(HasBoundaryLinks):
        decompose_tl(generator_diagram(FUp("a", "b"), 2, X))


def test_jones_normal_form():
    assert jones_normal_form([2, 1, 3, 2]) == [2, 1, 3, 2]
    assert jones_normal_form([3, 1]) == [1, 3]


def test_decompose_even():
    assert decompose_even(generator_diagram(FUp("a", "b"), 2, X)) == Word([FUp("a", "b")])
    with pytest.raises(NotEven):
        decompose_even(generator_diagram(WUp("a", "b"), 2, X))
    for d in all_diagrams(2, X):
        if d.parity() == "even":
            m, p, trace = evaluate(decompose_even(d), 2, X)
            assert m.is_one() and p == d and trace.clean


def test_middle_block():
    # top links at L1 and L4 with the cup L2-L3 in between
    _, d, _ = evaluate([E(2), FUp("a", "b"), E(2)], 4, X)
    w = decompose_even(d)
    k = w.gens.index(FUp("a", "b"))
    assert w[k + 1] == E(2)


def test_decompose_odd():
    for n in (1, 2, 3):
        assert decompose_odd(generator_diagram(WUp("a", "b"), n, X)) == (0, "a", "b", identity(n, X))
        assert decompose_odd(generator_diagram(WDown("a", "b"), n, X)) == (n, "a", "b", identity(n, X))
    with pytest.raises(NotOdd):
        decompose_odd(identity(2, X))


def test_odd_remainder_is_unique():
    evens = [d for d in all_diagrams(3, X) if d.parity() == "even"]
    for d in all_diagrams(3, X):
        if d.parity() != "odd":
            continue
        j, a, b, t = decompose_odd(d)
        w = w_diagram(a, b, j, 3, X)
        # a clean product keeps every boundary label, so only these can work
        cands = [e for e in evens if e.top == d.top[1:] and e.bottom == d.bottom[1:]]
        hits = [e for e in cands if _clean_product(concat(w, e), d)]
        assert hits == [t]


def _clean_product(result, d):
    m, p, trace = result
    return p == d and not trace.arcs and m.is_one()


def test_small_corpora():
    for n, X_ in ((1, X), (2, ("a",))):
        for d in all_diagrams(n, X_):
            w = decompose(d)
            m, p, trace = evaluate(w, n, X_)
            assert m.is_one() and p == d and trace.clean
            assert 2 * count_label_generators(w) == d.boundary_link_count()
    assert decompose(identity(2, X)) == Word()
