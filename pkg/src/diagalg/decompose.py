"""Writing a basis diagram as a product of generator diagrams.

Even diagrams are split as A * M * B where M = f_up(a,b) e_2 e_4 ... e_2k
carries the leftmost two top boundary links and A, B have fewer top links.
Diagrams with only bottom links are handled through the reflection that swaps
top and bottom.  Diagrams with no boundary links are Temperley-Lieb diagrams
and are written in Jones normal form.

An odd diagram D is W(a,b,j) * T with T even; T is read off D through the
strings of W(a,b,j).  Every word produced here multiplies out to its diagram
with coefficient exactly 1.
"""

from __future__ import annotations

from typing import Sequence

from .diagram import B, Diagram, DiagramError, Endpoint, L, R, T, make_diagram, reflect
from .labelalg import E, FDown, FUp, Generator, concat, w_diagram, w_word
from .presentation import Word


class DecomposeError(ValueError):
    pass


class HasBoundaryLinks(DecomposeError):
    pass


class NotEven(DecomposeError):
    pass


class NotOdd(DecomposeError):
    pass


# Temperley-Lieb part ----------------------------------------------------

def tl_potential(d: Diagram) -> int:
    """Twice the length of a reduced word for a diagram without boundary
    links: total span of all links plus total slope of all throughlines."""
    return sum(abs(x.index - y.index) for x, y in d.pairs)


def _peel_candidates(d: Diagram, i: int):
    """Diagrams D' with e_i D' = D, given D has the left link (i, i+1)."""
    cup = (L(i), L(i + 1))
    rest = [p for p in d.pairs if set(p) != set(cup)]
    for k, (x, y) in enumerate(rest):
        others = rest[:k] + rest[k + 1:]
        for u, v in ((x, y), (y, x)):
            pairs = others + [(L(i), u), (L(i + 1), v)]
            try:
                yield make_diagram(d.n, d.X, d.top, d.bottom, pairs)
            except DiagramError:
                continue


def reduced_tl_word(d: Diagram) -> list[int]:
    """A reduced word (as indices) for a diagram without boundary links."""
    if d.t or d.b:
        raise HasBoundaryLinks(f"{d} has boundary links")
    out: list[int] = []
    cur = d
    while True:
        phi_cur = tl_potential(cur)
        if phi_cur == 0:
            return out
        for i in range(1, cur.n):
            if not cur.has_simple_link("L", i):
                continue
            for cand in _peel_candidates(cur, i):
                if tl_potential(cand) == phi_cur - 2:
                    out.append(i)
                    cur = cand
                    break
            else:
                continue
            break
        else:
            raise DecomposeError(f"no reducing step found for {cur}")


def jones_normal_form(indices: Sequence[int]) -> list[int]:
    """Lexicographically least word in the commutation class of a reduced
    word, which is its Jones normal form: descending runs with increasing
    tops and bottoms."""
    rest = list(indices)
    out: list[int] = []
    while rest:
        best = None
        for pos, x in enumerate(rest):
            if all(abs(x - y) >= 2 for y in rest[:pos]) and (best is None or x < rest[best]):
                best = pos
        out.append(rest.pop(best))
    _check_runs(out)
    return out


def _check_runs(word: list[int]) -> None:
    runs: list[list[int]] = []
    for x in word:
        if runs and x == runs[-1][-1] - 1:
            runs[-1].append(x)
        else:
            runs.append([x])
    for r1, r2 in zip(runs, runs[1:]):
        if not (r1[0] < r2[0] and r1[-1] < r2[-1]):
            raise DecomposeError(f"word {word} is not in Jones normal form")


def decompose_tl(d: Diagram) -> Word:
    return Word(E(i) for i in jones_normal_form(reduced_tl_word(d)))


# even diagrams ----------------------------------------------------------

def middle_word(a: str, b: str, k: int) -> list[Generator]:
    return [FUp(a, b)] + [E(2 * i) for i in range(1, k + 1)]


def _cups(side: str, lo: int, hi: int) -> list[tuple[Endpoint, Endpoint]]:
    """Links (lo,lo+1), (lo+2,lo+3), ..., ending at hi."""
    return [(Endpoint(side, i), Endpoint(side, i + 1)) for i in range(lo, hi, 2)]


def _within(d: Diagram, keep) -> list[tuple[Endpoint, Endpoint]]:
    return [(x, y) for x, y in d.pairs if keep(x) and keep(y)]


def split_top(d: Diagram) -> tuple[Diagram, str, str, int, Diagram]:
    """(A, a, b, k, B) with d = A * (f_up(a,b) e_2 ... e_2k) * B, for an even
    diagram with at least two top boundary links."""
    n, X = d.n, d.X
    a, b = d.top[0], d.top[1]
    P, Q = d.partner[T(1)], d.partner[T(2)]
    rest_top = d.top[2:]
    shift_t = [(x, y) for x, y in d.pairs if T(1) not in (x, y) and T(2) not in (x, y)]

    def relabel_top(e: Endpoint) -> Endpoint:
        return T(e.index - 2) if e.side == "T" else e

    if P.side == "L" and Q.side == "L":
        p, q = P.index, Q.index
        k = (q - 2) // 2
        inside = lambda e: e.side == "L" and e.index <= q
        A = _within(d, inside) + [(L(p), R(q - 1)), (L(q), R(q))] + _cups("R", 1, q - 2)
        A += [(L(i), R(i)) for i in range(q + 1, n + 1)]
        Bp = [(relabel_top(x), relabel_top(y)) for x, y in shift_t if not (inside(x) or inside(y))]
        Bp += _cups("L", 1, q)
        da = make_diagram(n, X, (), (), A)
        db = make_diagram(n, X, rest_top, d.bottom, Bp)
        return da, a, b, k, db

    if P.side == "L" and Q.side == "R":
        p, r = P.index, Q.index
        blue = lambda e: e.side == "L" and e.index < p
        orange = lambda e: (e.side == "R" and e.index < r) or (e.side == "T" and e.index > 2)
        pink = lambda e: ((e.side == "L" and e.index > p) or (e.side == "R" and e.index > r)
                          or e.side == "B")
        # Everything right of the string L_p - T1 moves into B, so bottom
        # links land after f_up in the word.
        k = (p - 1) // 2
        A = _within(d, blue) + [(L(p), R(p))] + _cups("R", 1, p - 1)
        A += [(L(i), R(i)) for i in range(p + 1, n + 1)]
        Bp = _cups("L", 1, p - 1) + [(L(p), R(r))] + _within(d, pink)
        Bp += [(relabel_top(x), relabel_top(y)) for x, y in _within(d, orange)]
        da = make_diagram(n, X, (), (), A)
        db = make_diagram(n, X, rest_top, d.bottom, Bp)
        return da, a, b, k, db

    if P.side == "R" and Q.side == "R":
        r1, r2 = P.index, Q.index
        k = (r1 - 2) // 2
        pink = lambda e: e.side in "LB" or (e.side == "R" and e.index > r1)
        right = lambda e: (e.side == "R" and e.index < r1 and e.index != r2) or (e.side == "T" and e.index > 2)
        A = _within(d, pink) + _cups("R", 1, r1)
        Bp = _cups("L", 1, r1 - 2) + [(L(r1 - 1), R(r2)), (L(r1), R(r1))]
        Bp += [(relabel_top(x), relabel_top(y)) for x, y in _within(d, right)]
        Bp += [(L(i), R(i)) for i in range(r1 + 1, n + 1)]
        da = make_diagram(n, X, (), d.bottom, A)
        db = make_diagram(n, X, rest_top, (), Bp)
        return da, a, b, k, db

    raise DecomposeError(f"leftmost top links of {d} attach as {P.side},{Q.side}")


def reflect_word(w: Sequence[Generator], n: int) -> Word:
    """Image of a word under the top/bottom reflection."""
    out = []
    for g in w:
        if g.kind == "E":
            out.append(E(n - g.i))
        elif g.kind == "FUP":
            out.append(FDown(g.a, g.b))
        elif g.kind == "FDN":
            out.append(FUp(g.a, g.b))
        elif g.kind == "WUP":
            out.append(Generator("WDN", 0, g.b, g.a))
        elif g.kind == "WDN":
            out.append(Generator("WUP", 0, g.b, g.a))
        else:
            out.append(g)
    return Word(out)


def decompose_even(d: Diagram) -> Word:
    if d.parity() != "even":
        raise NotEven(f"{d} is odd")
    if d.t:
        da, a, b, k, db = split_top(d)
        return decompose_even(da) + middle_word(a, b, k) + decompose_even(db)
    if d.b:
        return reflect_word(decompose_even(reflect(d)), d.n)
    return decompose_tl(d)


# odd diagrams -----------------------------------------------------------

def odd_index(d: Diagram) -> int:
    """j for the factor W(a,b,j): 0 with a top link at L1, else the topmost
    left simple link, else n."""
    if d.has_top_boundary_link_at("L", 1):
        return 0
    i = d.topmost_left_simple_link()
    return d.n if i is None else i


def solve_remainder(d: Diagram, w: Diagram) -> Diagram | None:
    """The unique T with w * T = d and a clean concatenation, or None.

    ``w`` must have one top and one bottom endpoint and no right links."""
    n = d.n
    wp = w.partner
    pairs = []
    for x, y in d.pairs:
        ends = []
        inside_w = False
        for e in (x, y):
            if e.side == "L" or (e.side in "TB" and e.index == 1):
                q = wp.get(e)
                if q is None:
                    return None
                if q.side == "R":
                    ends.append(L(q.index))
                else:
                    inside_w = True
                    if wp.get(e) != (y if e == x else x):
                        return None
            elif e.side == "R":
                ends.append(e)
            else:
                ends.append(Endpoint(e.side, e.index - 1))
        if inside_w:
            if ends:
                return None
            continue
        if len(ends) != 2:
            return None
        pairs.append(tuple(ends))
    if not d.top or not d.bottom:
        return None
    try:
        t = make_diagram(n, d.X, d.top[1:], d.bottom[1:], pairs)
    except DiagramError:
        return None
    m, prod, _ = concat(w, t)
    if not m.is_one() or prod != d:
        return None
    return t


def decompose_odd(d: Diagram) -> tuple[int, str, str, Diagram]:
    if d.parity() != "odd":
        raise NotOdd(f"{d} is even")
    j = odd_index(d)
    a, b = d.top[0], d.bottom[0]
    t = solve_remainder(d, w_diagram(a, b, j, d.n, d.X))
    if t is None:
        raise DecomposeError(f"no even remainder for {d} at j={j}")
    return j, a, b, t


def decompose(d: Diagram) -> Word:
    if d.parity() == "even":
        return decompose_even(d)
    j, a, b, t = decompose_odd(d)
    return Word(w_word(a, b, j, d.n)) + decompose_even(t)
