"""Normal forms for words in A_n(X).

:func:`to_wt_form` rewrites any word into a scalar times W T, where W is
W(a,b,j) or empty and T uses only even generators.  It works in four stages:

1. pairs of odd generators are merged by :func:`reduce_odd_pair` until at
   most one remains;
2. a surviving w_down next to other generators is turned into w_up;
3. the w_up migrates to the front, becoming W(a,b,j);
4. W and T are replaced by the canonical words of the resulting diagram.

Every local rewrite is checked: phi(before) = scalar * phi(after).
Relations that shorten the label count (the ones that only fire on words
that are not label-reduced) are applied where they appear.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .coeff import BETA, ONE, Monomial, alpha_up, delta_down, gamma
from .decompose import decompose_even, odd_index, reflect_word, solve_remainder
from .diagram import Diagram, identity
from .labelalg import E, FDown, FUp, Generator, WDown, WUp, concat, generator_diagram, w_diagram, w_word
from .presentation import Word, count_label_generators, e_down, e_up, evaluate


class RewriteError(ValueError):
    pass


class NotLabelReduced(RewriteError):
    pass


class NotEvenDiagram(RewriteError):
    pass


class NotEvenReduced(RewriteError):
    pass


class StepMismatch(RewriteError, AssertionError):
    """A rewrite step changed phi by something other than its scalar."""


@dataclass(frozen=True)
class Step:
    rule: str
    scalar: Monomial
    before: Word
    after: Word

    def __str__(self) -> str:
        s = "" if self.scalar.is_one() else f"{self.scalar} "
        return f"[{self.rule}] {self.before} = {s}{self.after}"


@dataclass(frozen=True)
class WTForm:
    scalar: Monomial
    W: tuple[str, str, int] | None
    T: Word
    steps: tuple[Step, ...] = field(default=(), compare=False)
    j_reached: int | None = field(default=None, compare=False)

    def w_word(self, n: int) -> Word:
        if self.W is None:
            return Word()
        a, b, j = self.W
        return Word(w_word(a, b, j, n))

    def word(self, n: int) -> Word:
        return self.w_word(n) + self.T

    def format(self, n: int) -> str:
        w = "Identity" if self.W is None else "W({},{},{})".format(*self.W)
        return f"{self.scalar} | {w} | {self.T}"


def reflect_monomial(m: Monomial) -> Monomial:
    """Image of a scalar under the top/bottom reflection."""
    out = []
    for p, k in m.items:
        if p.kind == "aup":
            q = delta_down(*p.labels)
        elif p.kind == "ddo":
            q = alpha_up(*p.labels)
        elif p.kind == "gamma":
            q = gamma(p.labels[1], p.labels[0])
        else:
            q = p
        out += [q] * k
    return Monomial.of(*out)


class _Recorder:
    """Applies and checks rewrite steps.  With ``reflected`` set, steps are
    computed on reflected words and stored in the original frame."""

    def __init__(self, n: int, X: Sequence[str], check: bool = True):
        self.n, self.X, self.check = n, tuple(X), check
        self.steps: list[Step] = []
        self.reflected = False

    def step(self, rule: str, before, scalar: Monomial, after) -> None:
        before, after = Word(before), Word(after)
        if self.reflected:
            before, after = reflect_word(before, self.n), reflect_word(after, self.n)
            scalar = reflect_monomial(scalar)
            rule = f"{rule}, reflected"
        if self.check:
            m1, d1, _ = evaluate(before, self.n, self.X)
            m2, d2, _ = evaluate(after, self.n, self.X)
            if d1 != d2 or m1 != scalar * m2:
                raise StepMismatch(f"rule {rule}: phi({before}) = {m1} {d1} but "
                                   f"{scalar} phi({after}) = {scalar * m2} {d2}")
        self.steps.append(Step(rule, scalar, before, after))


# predicates ---------------------------------------------------------------

def is_label_reduced(w: Word | Sequence[Generator], n: int, X: Sequence[str]) -> bool:
    _, _, trace = evaluate(w, n, X)
    return not trace.arcs


# stage 1: two odd generators ------------------------------------------------

def _lemma_i(s: Generator, m: int, a: str, b: str, n: int):
    """s e_m ... e_1 w_up(a,b) as (scalar, v, tail): v is None when no odd
    generator survives, else (i, w_up) standing for e_i ... e_1 w_up."""
    if s.kind == "FUP":
        c, d = s.a, s.b
        if m == 0:
            return Monomial.of(alpha_up(d, a)), (0, WUp(c, b)), []
        return ONE, (0, WUp(c, b)), e_down(m - 1, 1) + [FUp(d, a)]
    if s.kind == "FDN":
        c, d = s.a, s.b
        if n == 1:
            return Monomial.of(gamma(a, d)), None, [FDown(c, b)]
        return ONE, (m, WUp(a, c)), [E(n - 1), FDown(d, b)]
    if s.kind != "E":
        raise RewriteError(f"unexpected generator {s}")
    j = s.i
    if m == 0:
        return ONE, (0, WUp(a, b)), [E(j - 1)]
    if j <= m - 1:
        return ONE, (j, WUp(a, b)), e_down(m - 1, j + 1)
    if j == m:
        return Monomial.of(BETA), (m, WUp(a, b)), []
    return ONE, (m, WUp(a, b)), [E(j - 1)]


def _e_tail_length(mid: Word) -> int:
    m = 0
    while m < len(mid) and mid[len(mid) - 1 - m] == E(m + 1):
        m += 1
    return m


def _pair(rec: _Recorder, x: Generator, mid: Word, y: Generator) -> tuple[Monomial, Word]:
    n = rec.n
    if y.kind == "WDN":
        rx, rmid, ry = reflect_word([x], n)[0], reflect_word(mid, n), reflect_word([y], n)[0]
        rec.reflected = not rec.reflected
        try:
            m, w = _pair(rec, rx, rmid, ry)
        finally:
            rec.reflected = not rec.reflected
        return reflect_monomial(m), reflect_word(w, n)

    c, d = y.a, y.b
    k = len(mid)
    m = _e_tail_length(mid)
    before = Word([x, *mid, y])
    if m == k:
        a, b = x.a, x.b
        if x.kind == "WUP":
            if k == 0:
                after, rule = [FUp(a, c), *e_up(1, n - 1), FDown(b, d)], "L16"
            elif k < n - 1:
                after, rule = e_down(k + 1, 2) + [FUp(a, c), *e_up(1, n - 1), FDown(b, d)], "pair-up-up"
            else:
                after, rule = [FUp(a, c), FDown(b, d)], "pair-up-up"
            scalar = ONE
        else:
            if k == 0:
                scalar, after, rule = Monomial.of(alpha_up(a, c)), [FDown(b, d)], "L24"
            else:
                scalar, after, rule = ONE, e_down(k - 1, 1) + [FUp(a, c), FDown(b, d)], "pair-down-up"
        rec.step(rule, before, scalar, after)
        return scalar, Word(after)

    s = mid[k - 1 - m]
    prefix = mid[: k - 1 - m]
    tail = Word(e_down(m, 1))
    if m == n - 1 and s.kind == "FDN":
        e, f = s.a, s.b
        if n == 1:
            scalar = Monomial.of(gamma(c, f))
            rec.step("fdowup1", [s, y], scalar, [FDown(e, d)])
            return scalar, Word([x]) + prefix + [FDown(e, d)]
        rec.step("fdown-to-wdown", [s, *tail, y], ONE, [WDown(c, e), FDown(f, d)])
        mu, w = _pair(rec, x, prefix, WDown(c, e))
        return mu, w + [FDown(f, d)]

    mu, v, rest = _lemma_i(s, m, c, d, n)
    after = [] if v is None else e_down(v[0], 1) + [v[1]]
    rec.step("sw-reduction", [s, *tail, y], mu, after + rest)
    if v is None:
        return mu, Word([x]) + prefix + rest
    nu, w = _pair(rec, x, prefix + e_down(v[0], 1), v[1])
    return mu * nu, w + rest


def reduce_odd_pair(x: Generator, mid: Word | Sequence[Generator], y: Generator, n: int,
                    X: Sequence[str], steps: list[Step] | None = None) -> tuple[Monomial, Word]:
    """x mid y = scalar * word, where the word has at most one odd generator."""
    if not (x.is_odd and y.is_odd):
        raise RewriteError("both ends must be odd generators")
    mid = Word(mid)
    if not mid.is_even():
        raise RewriteError("the middle must contain only even generators")
    rec = _Recorder(n, X)
    out = _pair(rec, x, mid, y)
    if steps is not None:
        steps.extend(rec.steps)
    return out


# stage 2: w_down next to other generators -----------------------------------

def _convert_wdown(rec: _Recorder, w: Word) -> tuple[Monomial, Word]:
    n = rec.n
    scalar = ONE
    while True:
        pos = next((p for p, g in enumerate(w) if g.kind == "WDN"), None)
        if pos is None or len(w) == 1:
            return scalar, w
        a, b = w[pos].a, w[pos].b
        if pos + 1 < len(w):
            g = w[pos + 1]
            lo, hi = pos, pos + 2
            if g.kind == "E":
                mu, after = ONE, e_down(g.i - 1, 1) + [WUp(a, b)] + e_down(n - 1, g.i)
            elif g.kind == "FDN":
                if n == 1:
                    mu, after = Monomial.of(gamma(a, g.a)), [FDown(b, g.b)]
                else:
                    mu, after = ONE, [FDown(b, g.a)] + e_down(n - 1, 1) + [WUp(a, g.b)]
            elif g.kind == "FUP":
                mu, after = Monomial.of(alpha_up(a, g.a)), [WDown(g.b, b)]
            else:
                raise RewriteError(f"two odd generators left in {w}")
        else:
            g = w[pos - 1]
            lo, hi = pos - 1, pos + 1
            if g.kind == "E":
                mu, after = ONE, e_down(g.i, 1) + [WUp(a, b)] + e_down(n - 1, g.i + 1)
            elif g.kind == "FUP":
                if n == 1:
                    mu, after = Monomial.of(gamma(g.b, b)), [FUp(g.a, a)]
                else:
                    mu, after = ONE, [WUp(g.a, b)] + e_down(n - 1, 1) + [FUp(g.b, a)]
            elif g.kind == "FDN":
                mu, after = Monomial.of(delta_down(g.b, b)), [WDown(a, g.a)]
            else:
                raise RewriteError(f"two odd generators left in {w}")
        rec.step("wdown-to-wup", w[lo:hi], mu, after)
        scalar = scalar * mu
        w = w[:lo] + after + w[hi:]


# stage 3: moving w_up to the front ------------------------------------------

def _migrate(rec: _Recorder, w: Word) -> tuple[Monomial, Word, int | None]:
    """Rewrite S w_up(a,b) T' into W(a,b,j) T'.  Returns the scalar, the new
    word and j (None if no odd generator is left)."""
    n = rec.n
    scalar = ONE
    while True:
        pos = next((p for p, g in enumerate(w) if g.kind == "WUP"), None)
        if pos is None:
            if any(g.kind == "WDN" for g in w):
                return scalar, w, n
            return scalar, w, None
        S, odd, rest = w[:pos], w[pos], w[pos + 1:]
        a, b = odd.a, odd.b
        k = len(S)
        m = _e_tail_length(S)
        if m == k:
            return scalar, w, k
        s = S[k - 1 - m]
        tail = e_down(m, 1)
        if m == n - 1 and s.kind == "FDN":
            c, d = s.a, s.b
            if n == 1:
                mu = Monomial.of(gamma(a, d))
                rec.step("fdowup1", [s, odd], mu, [FDown(c, b)])
                return scalar * mu, S[:k - 1] + [FDown(c, b)] + rest, None
            if k == m + 1:
                after = [WDown(a, c), FDown(d, b)]
                rec.step("fdown-to-wdown", [s, *tail, odd], ONE, after)
                return scalar, Word(after) + rest, n
            s2 = S[k - 2 - m]
            pre = S[:k - 2 - m]
            block = [s2, s, *tail, odd]
            if s2.kind == "FDN":
                mu, after = Monomial.of(delta_down(s2.b, c)), [FDown(s2.a, d), *tail, odd]
            elif s2 == E(n - 1):
                mu, after = Monomial.of(delta_down(c, d)), [*tail, odd]
            elif s2.kind == "E" and s2.i == n - 2:
                mu, after = ONE, [s, *e_down(n - 2, 1), odd]
            elif s2.kind == "E":
                mu, after = ONE, [s, *e_down(n - 1, s2.i + 2), *e_down(s2.i, 1), odd]
            else:
                mu, after = ONE, [s, *e_down(n - 1, 2), WUp(s2.a, b), FUp(s2.b, a)]
            rec.step("odd-to-front", block, mu, after)
            scalar = scalar * mu
            w = pre + after + rest
            continue
        mu, v, more = _lemma_i(s, m, a, b, n)
        after = ([] if v is None else e_down(v[0], 1) + [v[1]]) + more
        rec.step("sw-reduction", [s, *tail, odd], mu, after)
        scalar = scalar * mu
        w = S[:k - 1 - m] + after + rest


# stage 4 and driver --------------------------------------------------------

def minimal_odd_factor(d: Diagram) -> tuple[int, str, str, Diagram]:
    """Smallest j with d = W(a,b,j) * T cleanly, and that T."""
    a, b = d.top[0], d.bottom[0]
    for j in range(d.n + 1):
        t = solve_remainder(d, w_diagram(a, b, j, d.n, d.X))
        if t is not None:
            if j != odd_index(d):
                raise RewriteError(f"minimal j={j} disagrees with the diagram rule for {d}")
            return j, a, b, t
    raise RewriteError(f"{d} has no W T factorization")


def to_wt_form(w: Word | Sequence[Generator], n: int, X: Sequence[str], check: bool = True) -> WTForm:
    w = Word(w)
    original = w
    rec = _Recorder(n, X, check)
    scalar = ONE
    while True:
        odd = [p for p, g in enumerate(w) if g.is_odd]
        if len(odd) < 2:
            break
        p, q = odd[0], odd[1]
        mu, r = _pair(rec, w[p], w[p + 1:q], w[q])
        scalar = scalar * mu
        w = w[:p] + r + w[q + 1:]
    mu, w = _convert_wdown(rec, w)
    scalar = scalar * mu
    mu, w, j_reached = _migrate(rec, w)
    scalar = scalar * mu

    nu, d, _ = evaluate(w, n, X)
    if d.parity() == "even":
        W, T = None, decompose_even(d)
        new = T
    else:
        j, a, b, rem = minimal_odd_factor(d)
        if j_reached is not None and j > j_reached:
            raise RewriteError(f"minimal j={j} exceeds the reached j={j_reached}")
        W, T = (a, b, j), decompose_even(rem)
        new = Word(w_word(a, b, j, n)) + T
    if new != w:
        rec.step("normalize", w, nu, new)
    else:
        assert nu.is_one()
    scalar = scalar * nu
    form = WTForm(scalar, W, T, tuple(rec.steps), j_reached)
    if check:
        _check_form(form, original, n, X)
    return form


def _check_form(form: WTForm, original: Word, n: int, X: Sequence[str]) -> None:
    m0, d0, _ = evaluate(original, n, X)
    word = form.word(n)
    m1, d1, trace = evaluate(word, n, X)
    if not m1.is_one() or trace.arcs or trace.loops:
        raise RewriteError(f"phi({word}) is not a basis diagram with coefficient 1")
    if d1 != d0 or m0 != form.scalar:
        raise RewriteError(f"WT form {form.format(n)} does not evaluate like {original}")
    if (d1.parity() == "even") != (form.W is None):
        raise RewriteError("parity of the WT image does not match W")
    if count_label_generators(word) > count_label_generators(original):
        raise RewriteError("WT form has more label generators than the input")


# even words -----------------------------------------------------------------

def even_canonical(w: Word | Sequence[Generator], n: int, X: Sequence[str]) -> tuple[Monomial, Word]:
    w = Word(w)
    if not w.is_even():
        raise RewriteError(f"{w} contains an odd generator")
    m, d, trace = evaluate(w, n, X)
    if trace.arcs:
        raise NotLabelReduced(f"{w} produces boundary arcs")
    return m, decompose_even(d)


def descent_set_of_diagram(d: Diagram) -> set[Generator]:
    if d.parity() != "even":
        raise NotEvenDiagram(f"{d} is odd")
    out: set[Generator] = {E(i) for i in range(1, d.n) if d.has_simple_link("L", i)}
    if d.has_top_boundary_link_at("L", 1):
        out.add(FUp(d.top[0], d.top[1]))
    if d.has_bottom_boundary_link_at("L", d.n):
        out.add(FDown(d.bottom[0], d.bottom[1]))
    return out


def left_descent_set(T: Word | Sequence[Generator], n: int, X: Sequence[str]) -> set[Generator]:
    m, d, _ = evaluate(T, n, X)
    if d.parity() != "even":
        raise NotEvenDiagram(f"phi({Word(T)}) is odd")
    if not m.is_one():
        raise NotEvenReduced(f"phi({Word(T)}) has coefficient {m}")
    return descent_set_of_diagram(d)


def even_generators(n: int, X: Sequence[str]) -> list[Generator]:
    out = [E(i) for i in range(1, n)]
    for a, b in product(X, repeat=2):
        out += [FUp(a, b), FDown(a, b)]
    return out


@dataclass
class OracleEntry:
    min_len: int
    witnesses: list[Word]


def even_reduced_oracle(n: int, X: Sequence[str], max_len: int) -> dict[Diagram, OracleEntry]:
    """Breadth-first search over products of even generator diagrams.

    Each reached diagram records its minimal word length over all
    coefficients and every coefficient-1 word of that length.  A prefix of
    such a word is again one, so witnesses extend level by level."""
    X = tuple(X)
    gens = [(g, generator_diagram(g, n, X)) for g in even_generators(n, X)]
    start = identity(n, X)
    table: dict[Diagram, OracleEntry] = {start: OracleEntry(0, [Word()])}
    frontier = deque([start])
    for length in range(1, max_len + 1):
        nxt: list[Diagram] = []
        for d in frontier:
            entry = table[d]
            for g, gd in gens:
                m, prod, _ = concat(d, gd)
                new = table.get(prod)
                if new is None:
                    new = table[prod] = OracleEntry(length, [])
                    nxt.append(prod)
                if new.min_len == length and m.is_one():
                    new.witnesses.extend(wd + [g] for wd in entry.witnesses)
        frontier = deque(nxt)
    return table
