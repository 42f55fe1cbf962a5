"""One test per acceptance criterion of the package."""

from __future__ import annotations

import random
from collections import defaultdict

import pytest

from diagalg.coeff import BETA, KAPPA, Monomial, sb_alpha, sb_delta
from diagalg.diagram import L, R, count_all
from diagalg.ghostalg import ghost_concat, iso_check
from diagalg.labelalg import concat, dimension
from diagalg.presentation import (count_label_generators, evaluate, mutate_relation, relation_catalogue,
                                  verify_relations)
from diagalg.decompose import decompose
from diagalg.rewrite import (descent_set_of_diagram, even_reduced_oracle, left_descent_set, to_wt_form)
from diagalg.sympblob import (check_sb_relation, make_blob, sb_multiply, sb_relations, sb_verify_relations)

from helpers import all_blobs, all_diagrams, all_ghosts, random_word
from worked_examples import GHOST_EXAMPLES, LABEL_EXAMPLES

LABELS = {1: ("a",), 2: ("a", "b"), 3: ("a", "b", "c")}


def test_dimension_matches_enumeration():
    for n in range(1, 5):
        for k in range(1, 4):
            assert dimension(n, k) == count_all(n, k) == len(all_diagrams(n, LABELS[k]))
    assert (dimension(1, 1), dimension(1, 2), dimension(2, 1)) == (5, 17, 21)


def _s6_example():
    d1 = make_blob(6, [(L(1), R(3), "t"), (L(2), L(3), ""), (L(4), R(4), "b"), (L(5), L(6), ""),
                       (R(1), R(2), "t"), (R(5), R(6), "b")])
    d2 = make_blob(6, [(L(1), L(2), ""), (L(3), L(4), "t"), (L(5), R(5), "t"), (L(6), R(6), "b"),
                       (R(1), R(2), "t"), (R(3), R(4), "")])
    prod = make_blob(6, [(L(1), R(5), "t"), (L(4), R(6), "b"), (L(2), L(3), ""), (L(5), L(6), ""),
                         (R(1), R(2), "t"), (R(3), R(4), "")])
    return d1, d2, prod


def _n2_example():
    d1 = make_blob(2, [(L(1), L(2), ""), (R(1), R(2), "tb")])
    d2 = make_blob(2, [(L(1), L(2), "t"), (R(1), R(2), "")])
    prod = make_blob(2, [(L(1), L(2), ""), (R(1), R(2), "")])
    return d1, d2, prod


def test_worked_multiplication_examples():
    for d1, d2, mono, prod in LABEL_EXAMPLES:
        m, p, _ = concat(d1, d2)
        assert (m, p) == (mono, prod)
    assert str(LABEL_EXAMPLES[0][2]) == "b*aup[1,0]*g[0,1]*g[1,1]"
    assert str(LABEL_EXAMPLES[1][2]) == "aup[0,1]*aup[1,1]*ddo[0,0]*ddo[0,1]*ddo[1,0]"
    for g1, g2, mono, prod in GHOST_EXAMPLES:
        assert ghost_concat(g1, g2) == (mono, prod)
    d1, d2, prod = _s6_example()
    assert sb_multiply(d1, d2) == (Monomial.of(KAPPA, sb_alpha(1), sb_alpha(2), sb_delta(2)), prod)
    d1, d2, prod = _n2_example()
    assert sb_multiply(d1, d2) == (Monomial.of(KAPPA, sb_alpha(2)), prod)


def _label_triple_ok(a, b, c) -> bool:
    m1, ab, _ = concat(a, b)
    m2, ab_c, _ = concat(ab, c)
    m3, bc, _ = concat(b, c)
    m4, a_bc, _ = concat(a, bc)
    return ab_c == a_bc and m1 * m2 == m3 * m4


def _ghost_triple_ok(a, b, c) -> bool:
    m1, ab = ghost_concat(a, b)
    m2, ab_c = ghost_concat(ab, c)
    m3, bc = ghost_concat(b, c)
    m4, a_bc = ghost_concat(a, bc)
    return ab_c == a_bc and m1 * m2 == m3 * m4


def _sb_triple_ok(a, b, c) -> bool:
    m1, ab = sb_multiply(a, b)
    m2, ab_c = sb_multiply(ab, c)
    m3, bc = sb_multiply(b, c)
    m4, a_bc = sb_multiply(a, bc)
    return ab_c == a_bc and m1 * m2 == m3 * m4


def test_associativity():
    rng = random.Random(2024)
    pools = {
        "label": (_label_triple_ok, lambda n: all_diagrams(n, LABELS[1 + n % 2])),
        "ghost": (_ghost_triple_ok, all_ghosts),
        "sb": (_sb_triple_ok, all_blobs),
    }
    for name, (ok, pool) in pools.items():
        for k in range(500):
            basis = pool(1 + k % 3)
            triple = [rng.choice(basis) for _ in range(3)]
            assert ok(*triple), (name, [str(x) for x in triple])
        # fixed n=4 corpus
        corpus_rng = random.Random(4)
        basis = pool(4)
        for _ in range(40):
            triple = [corpus_rng.choice(basis) for _ in range(3)]
            assert ok(*triple), (name, [str(x) for x in triple])


def test_relation_verification():
    for n in range(1, 5):
        report = verify_relations(n, ("a", "b"))
        assert report.checked > 0
        assert report.ok, report.summary()
    for n in range(2, 6):
        report = sb_verify_relations(n)
        assert report.ok, report.summary()


def test_ghost_label_isomorphism():
    rng = random.Random(7)
    for n in range(1, 5):
        basis = all_ghosts(n)
        for _ in range(200):
            g1, g2 = rng.choice(basis), rng.choice(basis)
            assert iso_check(g1, g2) is None, (str(g1), str(g2))


def test_decomposition_round_trip():
    for n in range(1, 4):
        for k in (1, 2):
            for d in all_diagrams(n, LABELS[k]):
                w = decompose(d)
                m, prod, trace = evaluate(w, n, d.X)
                assert m.is_one() and prod == d, str(d)
                assert trace.clean
                assert 2 * count_label_generators(w) == d.boundary_link_count()


def test_wt_form():
    rng = random.Random(11)
    seen: dict = {}
    for k in range(1200):
        n = 1 + k % 3
        X = LABELS[1 + (k // 3) % 2]
        w = random_word(rng, n, X)
        # to_wt_form checks phi at every step and the final basis-diagram
        # and parity conditions; repeat the final checks here.
        form = to_wt_form(w, n, X)
        m, d, trace = evaluate(form.word(n), n, X)
        assert m.is_one() and trace.clean
        assert (d.parity() == "even") == (form.W is None)
        m0, d0, _ = evaluate(w, n, X)
        assert d0 == d and m0 == form.scalar
        key = (n, X, d)
        if key in seen:
            assert seen[key] == (form.W, form.T)
        seen[key] = (form.W, form.T)


def test_descent_sets():
    for n in range(1, 4):
        for k in (1, 2):
            X = LABELS[k]
            table = even_reduced_oracle(n, X, 6)
            for d, entry in table.items():
                if not entry.witnesses:
                    continue
                leading = {w[0] for w in entry.witnesses if len(w)}
                assert descent_set_of_diagram(d) == leading, str(d)
                assert left_descent_set(entry.witnesses[0], n, X) == leading
    rng = random.Random(3)
    for k in range(600):
        n = 1 + k % 3
        X = LABELS[1 + k % 2]
        form = to_wt_form(random_word(rng, n, X), n, X)
        if form.W is None:
            continue
        j = form.W[2]
        lds = left_descent_set(form.T, n, X)
        if j >= 1:
            assert all(g.kind != "FUP" for g in lds)
        assert all(not (g.kind == "E" and g.i < j) for g in lds)
        if j <= n - 1:
            assert all(g.kind != "FDN" for g in lds)


def test_negative_controls():
    rels = [r for r in relation_catalogue(2, ("a", "b")) if r.id == "L19"]
    assert rels
    bad = mutate_relation(rels[0], Monomial.of(BETA))
    assert not verify_relations(2, ("a", "b"), [bad]).ok
    sb_bad = [r for r in sb_relations(3) if r.id == "S3"][0]
    sb_bad = type(sb_bad)(sb_bad.id, sb_bad.lhs, sb_bad.scalar * Monomial.of(BETA), sb_bad.rhs)
    assert check_sb_relation(sb_bad, 3) is not None
    d1, d2, _ = _n2_example()
    wrong, _ = sb_multiply(d1, d2, rules="odd")
    right, _ = sb_multiply(d1, d2)
    assert wrong == Monomial.of(KAPPA, sb_alpha(1))
    assert wrong != right
