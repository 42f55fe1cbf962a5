import random

import pytest
from hypothesis import given, settings, strategies as st

from diagalg.coeff import BETA, Monomial, alpha_up, delta_down
from diagalg.diagram import identity
from diagalg.labelalg import E, FDown, FUp, WDown, WUp, generator_diagram
from diagalg.presentation import Word, count_label_generators, evaluate
from diagalg.rewrite import (NotEvenDiagram, NotLabelReduced, even_canonical, even_reduced_oracle, is_label_reduced,
                             left_descent_set, reduce_odd_pair, to_wt_form)

from helpers import random_word

X = ("a", "b")
X4 = ("a", "b", "c", "d")


def test_is_label_reduced():
    assert is_label_reduced([FUp("a", "b")], 2, X)
    assert not is_label_reduced([WDown("a", "b"), FUp("a", "b")], 2, X)
    assert is_label_reduced([E(1), E(2), E(1)], 3, X)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_reduce_odd_pair_base_cases(n):
    m, w = reduce_odd_pair(WUp("a", "b"), [], WDown("c", "d"), n, X4)
    assert (m, w) == (Monomial.of(delta_down("b", "d")), Word([FUp("a", "c")]))
    m, w = reduce_odd_pair(WDown("a", "b"), [], WUp("c", "d"), n, X4)
    assert (m, w) == (Monomial.of(alpha_up("a", "c")), Word([FDown("b", "d")]))
    m, w = reduce_odd_pair(WUp("a", "b"), [], WUp("c", "d"), n, X4)
    assert m.is_one()
    assert w == Word([FUp("a", "c")] + [E(i) for i in range(1, n)] + [FDown("b", "d")])


def test_reduce_odd_pair_with_middle():
    rng = random.Random(8)
    evens = [E(1), E(2), FUp("a", "b"), FDown("b", "a")]
    odds = [WUp("a", "b"), WDown("b", "a"), WUp("b", "b")]
    for _ in range(150):
        x, y = rng.choice(odds), rng.choice(odds)
        mid = [rng.choice(evens) for _ in range(rng.randint(0, 4))]
        m, w = reduce_odd_pair(x, mid, y, 3, X)
        assert sum(g.is_odd for g in w) <= 1
        assert count_label_generators(w) <= count_label_generators([x, *mid, y])
        m0, d0, _ = evaluate([x, *mid, y], 3, X)
        m1, d1, _ = evaluate(w, 3, X)
        assert d0 == d1 and m0 == m * m1


def test_wt_form_examples():
    form = to_wt_form(Word(), 2, X)
    assert (form.scalar, form.W, form.T) == (Monomial(), None, Word())
    form = to_wt_form([WUp("a", "b")], 2, X)
    assert (form.scalar, form.W, form.T) == (Monomial(), ("a", "b", 0), Word())
    form = to_wt_form([FDown("c", "d"), E(2), E(1), WUp("a", "b")], 3, X4)
    assert form.scalar.is_one() and form.W == ("a", "c", 3)
    assert form.T[0] == FDown("d", "b")
    assert form.format(3) == "1 | W(a,c,3) | FDN[d,b]"


def test_wt_steps_preserve_phi():
    rng = random.Random(21)
    for k in range(200):
        n = 1 + k % 3
        w = random_word(rng, n, X, 8)
        form = to_wt_form(w, n, X)
        for step in form.steps:
            m1, d1, _ = evaluate(step.before, n, X)
            m2, d2, _ = evaluate(step.after, n, X)
            assert d1 == d2 and m1 == step.scalar * m2, str(step)
        assert count_label_generators(form.word(n)) <= count_label_generators(w)


def test_wt_form_is_canonical_on_equal_words():
    # w_up e_1 w_down and f_up f_down are equal up to a scalar at n=2
    f1 = to_wt_form([WDown("a", "b"), E(1), WUp("c", "d")], 2, X4)
    f2 = to_wt_form([FUp("a", "c"), FDown("b", "d")], 2, X4)
    assert (f1.W, f1.T) == (f2.W, f2.T)


def test_even_canonical():
    assert even_canonical([E(1), E(1)], 2, X) == (Monomial.of(BETA), Word([E(1)]))
    assert even_canonical([FUp("a", "b")], 2, X) == (Monomial(), Word([FUp("a", "b")]))
    assert even_canonical([FDown("a", "b"), FUp("c", "d")], 2, X4) == (
        Monomial(), Word([FUp("c", "d"), FDown("a", "b")]))
    with pytest.raises(NotLabelReduced):
        even_canonical([FUp("a", "b"), FUp("a", "b")], 1, X)


def test_left_descent_set_examples():
    assert left_descent_set([E(1)], 3, X) == {E(1)}
    assert left_descent_set([FUp("a", "b")], 2, X) == {FUp("a", "b")}
    with pytest.raises(NotEvenDiagram):
        left_descent_set([WUp("a", "b")], 2, X)


def test_oracle_examples():
    table = even_reduced_oracle(2, X4[:2], 4)
    assert table[identity(2, X)].min_len == 0
    e1 = table[generator_diagram(E(1), 2, X)]
    assert e1.min_len == 1 and e1.witnesses == [Word([E(1)])]
    # right side of w_up w_up: shortest even word has length 3, not 4
    _, d, _ = evaluate([FUp("a", "b"), E(1), FDown("b", "a")], 2, X)
    entry = table[d]
    assert entry.min_len == 3
    assert Word([FUp("a", "b"), E(1), FDown("b", "a")]) in entry.witnesses


words = st.lists(st.sampled_from([E(1), E(2), FUp("a", "b"), FDown("b", "a"), WUp("a", "b"), WDown("b", "b")]),
                 max_size=8).map(Word)


@settings(max_examples=150, deadline=None)
@given(words)
def test_wt_form_properties(w):
    form = to_wt_form(w, 3, X)
    m, d, trace = evaluate(form.word(3), 3, X)
    assert m.is_one() and trace.clean
    assert (form.W is None) == (d.parity() == "even")
    again = to_wt_form(form.word(3), 3, X)
    assert (again.scalar, again.W, again.T) == (Monomial(), form.W, form.T)
