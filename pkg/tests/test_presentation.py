import random

import pytest

from diagalg.coeff import BETA, Monomial
from diagalg.diagram import identity
from diagalg.labelalg import E, FDown, FUp, LinearCombination, WDown, WUp, generator_diagram, concat
from diagalg.presentation import (ParityMismatch, Word, count_label_generators, evaluate, mutate_relation, phi,
                                  relation_catalogue, special_word, verify_relations, word)

from helpers import random_word

X = ("a", "b")


def test_phi_examples():
    assert phi(Word(), 3, X) == LinearCombination.of(identity(3, X))
    e1 = generator_diagram(E(1), 2, X)
    assert phi([E(1), E(1)], 2, X) == LinearCombination.of(e1, Monomial.of(BETA))
    _, fufd, _ = concat(generator_diagram(FUp("a", "c"), 2, ("a", "b", "c", "d")),
                        generator_diagram(FDown("b", "d"), 2, ("a", "b", "c", "d")))
    lhs = phi([WDown("a", "b"), E(1), WUp("c", "d")], 2, ("a", "b", "c", "d"))
    assert lhs == LinearCombination.of(fufd)


def test_special_words():
    assert special_word("O", 3) == Word([E(1)])
    assert special_word("Theta", 4) == Word([E(1), E(3)])
    assert special_word("W", 3, "a", "b", 0) == Word([WUp("a", "b")])
    assert special_word("W", 3, "a", "b", 2) == word(E(2), E(1), WUp("a", "b"))
    with pytest.raises(ParityMismatch):
        special_word("O", 2)
    with pytest.raises(ParityMismatch):
        special_word("Omega", 3)


def test_catalogue_contents():
    ids1 = {r.id for r in relation_catalogue(1, X)}
    assert {"L20", "L25", "L35", "L36", "L37", "L38"} <= ids1
    assert all(not any(g.kind == "E" for g in r.lhs) for r in relation_catalogue(1, X))
    ids3 = {r.id for r in relation_catalogue(3, X)}
    assert {"L30", "L31", "L32", "L33"} <= ids3 and "L34" not in ids3
    l34 = [r for r in relation_catalogue(2, X) if r.id == "L34"]
    assert l34 and all(r.lhs[0] == E(1) and r.lhs[-1] == E(1) for r in l34)


def test_verify_relations_small():
    for n in (2, 3):
        report = verify_relations(n, X)
        assert report.ok, report.summary()


def test_mutated_relation_fails():
    r = next(r for r in relation_catalogue(2, X) if r.id == "L19")
    report = verify_relations(2, X, [mutate_relation(r, Monomial.of(BETA))])
    assert not report.ok and len(report.failures) == 1


def test_count_label_generators():
    assert count_label_generators(Word()) == 0
    assert count_label_generators([E(1), FUp("a", "b"), E(2)]) == 1
    assert count_label_generators([WUp("a", "b"), WDown("a", "b")]) == 2


def test_homomorphism_and_link_bound():
    rng = random.Random(3)
    for k in range(200):
        n = 1 + k % 3
        u, v = random_word(rng, n, X, 5), random_word(rng, n, X, 5)
        assert phi(u + v, n, X) == phi(u, n, X) * phi(v, n, X)
        m, d, trace = evaluate(u, n, X)
        links, bound = d.boundary_link_count(), 2 * count_label_generators(u)
        assert links <= bound
        assert (links == bound) == (not trace.arcs)


def test_w_words_are_odd():
    for n in (1, 2, 3):
        for j in range(n + 1):
            _, d, _ = evaluate(special_word("W", n, "a", "b", j), n, X)
            assert d.parity() == "odd"
