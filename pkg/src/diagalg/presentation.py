"""The presented algebra A_n(X): words, the defining relations and the
evaluation map phi into L_n(X).

A word is a sequence of generators; the empty word is the identity.  phi
multiplies the generator diagrams left to right.  Every product of basis
diagrams is a monomial times a basis diagram, so phi of a word is a single
term, and :func:`evaluate` returns it in that form along with the trace of
every concatenation step.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Iterator, Sequence

from .coeff import BETA, ONE, Monomial, alpha_up, delta_down, gamma, mono_mul
from .diagram import Diagram, identity
from .labelalg import (ID, ConcatTrace, E, FDown, FUp, Generator, IndexOutOfRange, LinearCombination,
                       WDown, WUp, check_generator, concat, generator_diagram, w_word)


class ParityMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Word:
    gens: tuple[Generator, ...] = ()

    def __init__(self, gens: Iterable[Generator] = ()):
        object.__setattr__(self, "gens", tuple(g for g in gens if g.kind != "ID"))

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.gens)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return Word(self.gens[k])
        return self.gens[k]

    def __add__(self, other: "Word | Sequence[Generator]") -> "Word":
        return Word(self.gens + tuple(other))

    def __radd__(self, other: Sequence[Generator]) -> "Word":
        return Word(tuple(other) + self.gens)

    def __str__(self) -> str:
        return ".".join(map(str, self.gens)) if self.gens else "ID"

    __repr__ = __str__

    def is_even(self) -> bool:
        """True if the word contains no odd generator."""
        return not any(g.is_odd for g in self.gens)


def word(*gens: Generator | Iterable[Generator]) -> Word:
    """Flatten generators and generator sequences into a Word."""
    out: list[Generator] = []
    for g in gens:
        if isinstance(g, Generator):
            out.append(g)
        else:
            out.extend(g)
    return Word(out)


def e_up(lo: int, hi: int) -> list[Generator]:
    """E(lo) E(lo+1) ... E(hi), empty if hi < lo."""
    return [E(i) for i in range(lo, hi + 1)]


def e_down(hi: int, lo: int) -> list[Generator]:
    """E(hi) E(hi-1) ... E(lo), empty if hi < lo."""
    return [E(i) for i in range(hi, lo - 1, -1)]


def check_word(w: Word, n: int, X: Sequence[str]) -> None:
    for g in w:
        check_generator(g, n, X)


@lru_cache(maxsize=4096)
def _gen_diagram(g: Generator, n: int, X: tuple[str, ...]) -> Diagram:
    return generator_diagram(g, n, X)


def evaluate(w: Word | Sequence[Generator], n: int, X: Sequence[str]) -> tuple[Monomial, Diagram, ConcatTrace]:
    """phi(w) as (coefficient, diagram, accumulated trace)."""
    X = tuple(X)
    w = w if isinstance(w, Word) else Word(w)
    check_word(w, n, X)
    coeff, cur, trace = ONE, identity(n, X), ConcatTrace()
    for g in w:
        m, cur, tr = concat(cur, _gen_diagram(g, n, X))
        assert isinstance(m, Monomial)
        coeff = mono_mul(coeff, m)
        trace = trace + tr
    return coeff, cur, trace


def phi(w: Word | Sequence[Generator], n: int, X: Sequence[str]) -> LinearCombination:
    coeff, d, _ = evaluate(w, n, X)
    return LinearCombination.of(d, coeff)


def count_label_generators(w: Word | Sequence[Generator]) -> int:
    return sum(1 for g in w if g.is_label)


# special words -----------------------------------------------------------

def special_word(kind: str, n: int, a: str = "", b: str = "", j: int = 0) -> Word:
    """O, E (n odd), Theta, Omega (n even) or W for W(a,b,j)."""
    if kind == "O":
        if n % 2 == 0:
            raise ParityMismatch("O is defined for n odd")
        return Word(E(2 * k - 1) for k in range(1, (n - 1) // 2 + 1))
    if kind == "E":
        if n % 2 == 0:
            raise ParityMismatch("E is defined for n odd")
        return Word(E(2 * k) for k in range(1, (n - 1) // 2 + 1))
    if kind == "Theta":
        if n % 2:
            raise ParityMismatch("Theta is defined for n even")
        return Word(E(2 * k - 1) for k in range(1, n // 2 + 1))
    if kind == "Omega":
        if n % 2:
            raise ParityMismatch("Omega is defined for n even")
        return Word(E(2 * k) for k in range(1, n // 2))
    if kind == "W":
        if not 0 <= j <= n:
            raise IndexOutOfRange(f"j={j} outside 0..{n}")
        return Word(w_word(a, b, j, n))
    raise ValueError(f"unknown special word {kind!r}")


# relations ---------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    id: str
    lhs: Word
    scalar: Monomial
    rhs: Word
    applies: str  # human-readable range condition, e.g. "n>=2"

    def __str__(self) -> str:
        s = "" if self.scalar.is_one() else f"{self.scalar} "
        return f"{self.id}: {self.lhs} = {s}{self.rhs}"


def _rel(rid: str, lhs, rhs, scalar=ONE, applies: str = "all n") -> Relation:
    if not isinstance(scalar, Monomial):
        scalar = Monomial.of(scalar)
    return Relation(rid, word(*lhs), scalar, word(*rhs), applies)


def relation_catalogue(n: int, X: Sequence[str]) -> list[Relation]:
    """Every defining relation and derived identity that applies at this n,
    instantiated over all admissible indices and all label tuples."""
    X = tuple(X)
    out: list[Relation] = []
    idx = range(1, n)
    ge2 = n >= 2
    odd = n % 2 == 1

    # Relations in e_i only.
    for i in idx:
        for j in idx:
            if abs(i - j) >= 2:
                out.append(_rel("L1", [E(i), E(j)], [E(j), E(i)], applies="|i-j|>=2"))
            if abs(i - j) == 1:
                out.append(_rel("L5", [E(i), E(j), E(i)], [E(i)], applies="|i-j|=1"))
        out.append(_rel("L19", [E(i), E(i)], [E(i)], BETA, applies="1<=j<=n-1"))

    for a, b in product(X, repeat=2):
        for j in range(2, n):
            out.append(_rel("L2", [FUp(a, b), E(j)], [E(j), FUp(a, b)], applies="2<=j<=n-1"))
            out.append(_rel("L6", [E(j), WUp(a, b)], [WUp(a, b), E(j - 1)], applies="2<=j<=n-1"))
        for j in range(1, n - 1):
            out.append(_rel("L3", [FDown(a, b), E(j)], [E(j), FDown(a, b)], applies="1<=j<=n-2"))
            out.append(_rel("L7", [E(j), WDown(a, b)], [WDown(a, b), E(j + 1)], applies="1<=j<=n-2"))
        if ge2:
            fwd, back = e_up(1, n - 1), e_down(n - 1, 1)
            out.append(_rel("L12", [E(1), WUp(a, b)], [fwd, WDown(a, b)], applies="n>=2"))
            out.append(_rel("L13", [WUp(a, b), E(n - 1)], [WDown(a, b), fwd], applies="n>=2"))
            out.append(_rel("L14", [E(n - 1), WDown(a, b)], [back, WUp(a, b)], applies="n>=2"))
            out.append(_rel("L15", [WDown(a, b), E(1)], [WUp(a, b), back], applies="n>=2"))
            out.append(_rel("L21", [E(1), FUp(a, b), E(1)], [E(1)], alpha_up(a, b), applies="n>=2"))
            out.append(_rel("L26", [E(n - 1), FDown(a, b), E(n - 1)], [E(n - 1)], delta_down(a, b),
                            applies="n>=2"))

    for a, b, c, d in product(X, repeat=4):
        if ge2:
            out.append(_rel("L4", [FUp(a, b), FDown(c, d)], [FDown(c, d), FUp(a, b)], applies="n>=2"))
            out.append(_rel("L8", [FDown(a, b), WUp(c, d)], [WUp(c, a), E(n - 1), FDown(b, d)], applies="n>=2"))
            out.append(_rel("L9", [FUp(a, b), WDown(c, d)], [WDown(a, d), E(1), FUp(b, c)], applies="n>=2"))
            out.append(_rel("L10", [WUp(a, b), FUp(c, d)], [FUp(a, c), E(1), WUp(d, b)], applies="n>=2"))
            out.append(_rel("L11", [WDown(a, b), FDown(c, d)], [FDown(b, c), E(n - 1), WDown(a, d)],
                            applies="n>=2"))
            out.append(_rel("L18", [WDown(a, b), E(1), WUp(c, d)], [FUp(a, c), FDown(b, d)], applies="n>=2"))
        out.append(_rel("L16", [WUp(a, b), WUp(c, d)], [FUp(a, c), e_up(1, n - 1), FDown(b, d)]))
        out.append(_rel("L17", [WDown(a, b), WDown(c, d)], [FDown(b, d), e_down(n - 1, 1), FUp(a, c)]))
        out.append(_rel("L20", [FUp(c, a), FUp(b, d)], [FUp(c, d)], alpha_up(a, b)))
        out.append(_rel("L22", [FUp(c, a), WUp(b, d)], [WUp(c, d)], alpha_up(a, b)))
        out.append(_rel("L23", [WDown(a, d), FUp(b, c)], [WDown(c, d)], alpha_up(a, b)))
        out.append(_rel("L24", [WDown(a, c), WUp(b, d)], [FDown(c, d)], alpha_up(a, b)))
        out.append(_rel("L25", [FDown(c, a), FDown(b, d)], [FDown(c, d)], delta_down(a, b)))
        out.append(_rel("L27", [FDown(c, a), WDown(d, b)], [WDown(d, c)], delta_down(a, b)))
        out.append(_rel("L28", [WUp(c, a), FDown(b, d)], [WUp(c, d)], delta_down(a, b)))
        out.append(_rel("L29", [WUp(c, a), WDown(d, b)], [FUp(c, d)], delta_down(a, b)))
        g = gamma(a, b)
        if odd:
            O, Ev = special_word("O", n), special_word("E", n)
            out.append(_rel("L30", [WUp(c, b), O, WUp(a, d), O], [WUp(c, d), O], g, applies="n odd"))
            out.append(_rel("L31", [FUp(c, a), Ev, WDown(d, b), Ev], [FUp(c, d), Ev], g, applies="n odd"))
            out.append(_rel("L32", [WDown(a, d), Ev, WDown(c, b), Ev], [WDown(c, d), Ev], g, applies="n odd"))
            out.append(_rel("L33", [FDown(c, b), O, WUp(a, d), O], [FDown(c, d), O], g, applies="n odd"))
            out.append(_rel("fupEfdoO", [FUp(c, a), Ev, FDown(b, d), O], [WUp(c, d), O], g, applies="n odd"))
            out.append(_rel("fdoOfupE", [FDown(d, b), O, FUp(a, c), Ev], [WDown(c, d), Ev], g, applies="n odd"))
            out.append(_rel("wupOfupE", [WUp(c, b), O, FUp(a, d), Ev], [FUp(c, d), Ev], g, applies="n odd"))
            out.append(_rel("wdoEfdoO", [WDown(a, c), Ev, FDown(b, d), O], [FDown(c, d), O], g, applies="n odd"))
        else:
            Th, Om = special_word("Theta", n), special_word("Omega", n)
            out.append(_rel("wupThetawup", [WUp(a, b), Th, WUp(c, d)], [FUp(a, c), FDown(b, d), Om],
                            applies="n even"))
        if n == 1:
            out.append(_rel("L35", [FUp(c, a), FDown(b, d)], [WUp(c, d)], g, applies="n=1"))
            out.append(_rel("L36", [FDown(d, b), FUp(a, c)], [WDown(c, d)], g, applies="n=1"))
            out.append(_rel("L37", [WUp(c, b), FUp(a, d)], [FUp(c, d)], g, applies="n=1"))
            out.append(_rel("L38", [WDown(a, c), FDown(b, d)], [FDown(c, d)], g, applies="n=1"))
            out.append(_rel("fupwdo1", [FUp(c, a), WDown(d, b)], [FUp(c, d)], g, applies="n=1"))
            out.append(_rel("fdowup1", [FDown(c, b), WUp(a, d)], [FDown(c, d)], g, applies="n=1"))
            out.append(_rel("wupwup1", [WUp(c, b), WUp(a, d)], [WUp(c, d)], g, applies="n=1"))
            out.append(_rel("wdowdo1", [WDown(a, d), WDown(c, b)], [WDown(c, d)], g, applies="n=1"))
        if ge2:
            out.append(_rel("wupen1wdo", [WUp(a, b), E(n - 1), WDown(c, d)], [FUp(a, c), FDown(b, d)],
                            applies="n>=2"))

    for a, b in product(X, repeat=2):
        g = gamma(a, b)
        if odd:
            O, Ev = special_word("O", n), special_word("E", n)
            out.append(_rel("fupE", [FUp(a, b), Ev], [Ev, FUp(a, b)], applies="n odd"))
            out.append(_rel("fdoO", [FDown(a, b), O], [O, FDown(a, b)], applies="n odd"))
            out.append(_rel("wupO", [WUp(a, b), O], [Ev, WUp(a, b)], applies="n odd"))
            out.append(_rel("wdoE", [WDown(a, b), Ev], [O, WDown(a, b)], applies="n odd"))
            if n > 1:
                out.append(_rel("e1wupE", [E(1), WUp(a, b), Ev], [WDown(a, b), Ev], applies="n odd, n>1"))
                out.append(_rel("Owupen1", [O, WUp(a, b), E(n - 1)], [WDown(a, b), Ev], applies="n odd, n>1"))
                out.append(_rel("Ewdoe1", [Ev, WDown(a, b), E(1)], [WUp(a, b), O], applies="n odd, n>1"))
                out.append(_rel("en1wdoO", [E(n - 1), WDown(a, b), O], [WUp(a, b), O], applies="n odd, n>1"))
        else:
            Th, Om = special_word("Theta", n), special_word("Omega", n)
            out.append(_rel("L34", [Th, WUp(a, b), Th], [Th], g, applies="n even"))
            out.append(_rel("Thetawup", [Th, WUp(a, b)], [Th, WDown(a, b)], applies="n even"))
            out.append(_rel("wupTheta", [WUp(a, b), Th], [WDown(a, b), Th], applies="n even"))
            out.append(_rel("e1wupOmega", [E(1), WUp(a, b), Om], [Th, WUp(a, b)], applies="n even"))
            out.append(_rel("en1wdoOmega", [E(n - 1), WDown(a, b), Om], [Th, WDown(a, b)], applies="n even"))
    return out


@dataclass
class RelationReport:
    n: int
    X: tuple[str, ...]
    checked: int
    failures: list[tuple[Relation, str]]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        head = f"n={self.n} X={','.join(self.X)}: {self.checked} relations, {len(self.failures)} failures"
        lines = [head] + [f"  FAIL {r}: {why}" for r, why in self.failures]
        return "\n".join(lines)


def check_relation(r: Relation, n: int, X: Sequence[str]) -> str | None:
    """None if phi(lhs) = scalar * phi(rhs), else a description."""
    ml, dl, _ = evaluate(r.lhs, n, X)
    mr, dr, _ = evaluate(r.rhs, n, X)
    mr = mono_mul(mr, r.scalar)
    if dl != dr:
        return f"diagrams differ: {dl} vs {dr}"
    if ml != mr:
        return f"coefficients differ: {ml} vs {mr}"
    return None


def verify_relations(n: int, X: Sequence[str],
                     relations: Iterable[Relation] | None = None,
                     mapper: Callable | None = None) -> RelationReport:
    """Check every relation through phi.  ``mapper`` may replace the builtin
    map for parallel runs (it is called like ``map(fn, items)``)."""
    X = tuple(X)
    rels = list(relation_catalogue(n, X) if relations is None else relations)
    run = mapper or map
    results = list(run(_check_one, [(r, n, X) for r in rels]))
    failures = [(r, why) for r, why in zip(rels, results) if why is not None]
    return RelationReport(n, X, len(rels), failures)


def _check_one(args: tuple[Relation, int, tuple[str, ...]]) -> str | None:
    r, n, X = args
    return check_relation(r, n, X)


def mutate_relation(r: Relation, extra: Monomial) -> Relation:
    """Copy of r with its scalar multiplied by ``extra``, for negative controls."""
    return Relation(r.id + "*", r.lhs, mono_mul(r.scalar, extra), r.rhs, r.applies)


__all__ = [
    "ID", "ParityMismatch", "Relation", "RelationReport", "Word", "check_relation", "check_word",
    "count_label_generators", "e_down", "e_up", "evaluate", "mutate_relation", "phi",
    "relation_catalogue", "special_word", "verify_relations", "word",
]
