"""The label algebra L_n(X): concatenation, linear combinations, generators.

Multiplying d1 by d2 glues R_i of d1 to L_i of d2 and traces the strings.
Closed loops cost a factor beta.  A string whose two ends both land on
boundaries (a boundary arc) is deleted and costs

    top-top        aup[a,b]   a = label of its left end, b = right end
    bottom-bottom  ddo[a,b]   same convention
    top-bottom     g[a,b]     a = top label, b = bottom label

where left/right refers to the merged boundary: d1's endpoints come first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping, NamedTuple, Sequence

from .coeff import (BETA, ONE, Monomial, Polynomial, alpha_up, delta_down, gamma, mono_mul)
from .diagram import B, Diagram, Endpoint, L, R, T, identity, make_diagram, serialize


class LabelAlgebraError(ValueError):
    pass


class SizeMismatch(LabelAlgebraError):
    pass


class LabelSetMismatch(LabelAlgebraError):
    pass


class IndexOutOfRange(LabelAlgebraError):
    pass


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


@dataclass(frozen=True)
class Arc:
    kind: str  # "top-top", "bottom-bottom" or "top-bottom"
    first: str  # left label (top label for top-bottom)
    second: str
    positions: tuple[int, int]  # merged boundary positions, 1-based


@dataclass(frozen=True)
class ConcatTrace:
    loops: int = 0
    arcs: tuple[Arc, ...] = ()

    @property
    def clean(self) -> bool:
        return self.loops == 0 and not self.arcs

    def __add__(self, other: "ConcatTrace") -> "ConcatTrace":
        return ConcatTrace(self.loops + other.loops, self.arcs + other.arcs)


def _check_compatible(d1: Diagram, d2: Diagram) -> None:
    if d1.n != d2.n:
        raise SizeMismatch(f"cannot multiply n={d1.n} by n={d2.n}")
    if d1.X != d2.X:
        raise LabelSetMismatch(f"label sets differ: {d1.X} vs {d2.X}")


def concat(d1: Diagram, d2: Diagram) -> tuple[Monomial, Diagram, ConcatTrace]:
    _check_compatible(d1, d2)
    n = d1.n
    # Vertex numbering: d1 endpoints, then d2 endpoints.
    verts: list[tuple[int, Endpoint]] = []
    index: dict[tuple[int, Endpoint], int] = {}
    for which, d in ((0, d1), (1, d2)):
        for x, y in d.pairs:
            for e in (x, y):
                index[(which, e)] = len(verts)
                verts.append((which, e))
    uf = _UnionFind(len(verts))
    for which, d in ((0, d1), (1, d2)):
        for x, y in d.pairs:
            uf.union(index[(which, x)], index[(which, y)])
    for i in range(1, n + 1):
        uf.union(index[(0, R(i))], index[(1, L(i))])

    # Free ends and their new names.
    t1, b1 = d1.t, d1.b
    free: dict[int, Endpoint] = {}
    label: dict[int, str] = {}
    for i in range(1, n + 1):
        free[index[(0, L(i))]] = L(i)
        free[index[(1, R(i))]] = R(i)
    for which, d, toff, boff in ((0, d1, 0, 0), (1, d2, t1, b1)):
        for k in range(1, d.t + 1):
            v = index[(which, T(k))]
            free[v] = T(toff + k)
            label[v] = d.top[k - 1]
        for k in range(1, d.b + 1):
            v = index[(which, B(k))]
            free[v] = B(boff + k)
            label[v] = d.bottom[k - 1]

    groups: dict[int, list[int]] = {}
    for v in range(len(verts)):
        groups.setdefault(uf.find(v), []).append(v)

    loops = 0
    arcs: list[Arc] = []
    strings: list[tuple[Endpoint, Endpoint]] = []
    for members in groups.values():
        ends = [v for v in members if v in free]
        if not ends:
            loops += 1
            continue
        assert len(ends) == 2, "a traced string must have exactly two free ends"
        x, y = free[ends[0]], free[ends[1]]
        if x.is_boundary and y.is_boundary:
            lx, ly = label[ends[0]], label[ends[1]]
            if x.side == y.side:
                if x.index > y.index:
                    x, y, lx, ly = y, x, ly, lx
                kind = "top-top" if x.side == "T" else "bottom-bottom"
            else:
                if x.side == "B":
                    x, y, lx, ly = y, x, ly, lx
                kind = "top-bottom"
            arcs.append(Arc(kind, lx, ly, (x.index, y.index)))
        else:
            strings.append((x, y))

    # Re-index the surviving boundary endpoints.
    removed_t = {p for a in arcs for p, side in zip(a.positions, _arc_sides(a)) if side == "T"}
    removed_b = {p for a in arcs for p, side in zip(a.positions, _arc_sides(a)) if side == "B"}
    top_all = list(d1.top) + list(d2.top)
    bot_all = list(d1.bottom) + list(d2.bottom)
    tmap, new_top = _reindex(top_all, removed_t)
    bmap, new_bot = _reindex(bot_all, removed_b)

    def rename(e: Endpoint) -> Endpoint:
        if e.side == "T":
            return T(tmap[e.index])
        if e.side == "B":
            return B(bmap[e.index])
        return e

    result = make_diagram(n, d1.X, new_top, new_bot,
                          [(rename(x), rename(y)) for x, y in strings], check=False)
    arcs.sort(key=lambda a: (a.kind, a.positions))
    coeff = Monomial.of(*([BETA] * loops), *(_arc_param(a) for a in arcs))
    return coeff, result, ConcatTrace(loops, tuple(arcs))


def _arc_sides(a: Arc) -> tuple[str, str]:
    return {"top-top": ("T", "T"), "bottom-bottom": ("B", "B"), "top-bottom": ("T", "B")}[a.kind]


def _reindex(labels: list[str], removed: set[int]) -> tuple[dict[int, int], list[str]]:
    mapping: dict[int, int] = {}
    kept: list[str] = []
    for k, lab in enumerate(labels, 1):
        if k not in removed:
            kept.append(lab)
            mapping[k] = len(kept)
    return mapping, kept


def _arc_param(a: Arc):
    if a.kind == "top-top":
        return alpha_up(a.first, a.second)
    if a.kind == "bottom-bottom":
        return delta_down(a.first, a.second)
    return gamma(a.first, a.second)


def concat_many(diagrams: Sequence[Diagram]) -> tuple[Monomial, Diagram, ConcatTrace]:
    """Left-to-right product of a nonempty sequence of diagrams."""
    if not diagrams:
        raise LabelAlgebraError("empty product needs n and X; use identity()")
    coeff, cur, trace = ONE, diagrams[0], ConcatTrace()
    for d in diagrams[1:]:
        c, cur, tr = concat(cur, d)
        coeff = mono_mul(coeff, c)
        trace = trace + tr
    return coeff, cur, trace


# linear combinations ----------------------------------------------------

class LinearCombination:
    """Finite sum of diagrams with polynomial coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Diagram, Polynomial | Monomial | int] | None = None):
        t: dict[Diagram, Polynomial] = {}
        ctx = None
        for d, c in (terms or {}).items():
            if ctx is None:
                ctx = (d.n, d.X)
            elif (d.n, d.X) != ctx:
                raise LabelAlgebraError("all diagrams must share n and X")
            if isinstance(c, Monomial):
                c = Polynomial.from_monomial(c)
            elif isinstance(c, int):
                c = Polynomial.constant(c)
            if not c.is_zero():
                t[d] = c
        self._terms = t

    @classmethod
    def of(cls, d: Diagram, c: Polynomial | Monomial | int = 1) -> "LinearCombination":
        return cls({d: c})

    @property
    def terms(self) -> dict[Diagram, Polynomial]:
        return dict(self._terms)

    def items(self) -> list[tuple[Diagram, Polynomial]]:
        return sorted(self._terms.items(), key=lambda dc: serialize(dc[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def single(self) -> tuple[Monomial, Diagram] | None:
        """(m, d) when self == m * d for one diagram and one monomial."""
        if len(self._terms) != 1:
            return None
        (d, c), = self._terms.items()
        m = c.as_monomial()
        return None if m is None else (m, d)

    def __add__(self, other: "LinearCombination") -> "LinearCombination":
        t = dict(self._terms)
        for d, c in other._terms.items():
            t[d] = t[d] + c if d in t else c
        return LinearCombination(t)

    def scale(self, c: Polynomial | Monomial | int) -> "LinearCombination":
        if isinstance(c, Monomial):
            c = Polynomial.from_monomial(c)
        elif isinstance(c, int):
            c = Polynomial.constant(c)
        return LinearCombination({d: p * c for d, p in self._terms.items()})

    def __mul__(self, other: "LinearCombination") -> "LinearCombination":
        return multiply(self, other)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinearCombination) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for d, c in self.items():
            cs = str(c)
            if len(c) > 1 or cs.startswith("-"):
                cs = f"({cs})"
            parts.append(f"{cs} * {serialize(d)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LinearCombination({self})"


def multiply(u: LinearCombination, v: LinearCombination) -> LinearCombination:
    out: dict[Diagram, Polynomial] = {}
    for d1, c1 in u._terms.items():
        for d2, c2 in v._terms.items():
            m, d, _ = concat(d1, d2)
            c = c1 * c2 * m
            out[d] = out[d] + c if d in out else c
    return LinearCombination(out)


# generators -------------------------------------------------------------

class Generator(NamedTuple):
    """Generator of A_n(X) (or its diagram).  kind is one of
    ID, E, FUP, FDN, WUP, WDN; ``i`` is used by E only, labels by the rest."""

    kind: str
    i: int = 0
    a: str = ""
    b: str = ""

    def __str__(self) -> str:
        if self.kind == "ID":
            return "ID"
        if self.kind == "E":
            return f"E{self.i}"
        return f"{self.kind}[{self.a},{self.b}]"

    __repr__ = __str__

    @property
    def is_label(self) -> bool:
        return self.kind in ("FUP", "FDN", "WUP", "WDN")

    @property
    def is_odd(self) -> bool:
        return self.kind in ("WUP", "WDN")


def E(i: int) -> Generator:
    return Generator("E", i)


def FUp(a: str, b: str) -> Generator:
    return Generator("FUP", 0, a, b)


def FDown(a: str, b: str) -> Generator:
    return Generator("FDN", 0, a, b)


def WUp(a: str, b: str) -> Generator:
    return Generator("WUP", 0, a, b)


def WDown(a: str, b: str) -> Generator:
    return Generator("WDN", 0, a, b)


ID = Generator("ID")


def check_generator(g: Generator, n: int, X: Sequence[str]) -> None:
    if g.kind == "ID":
        return
    if g.kind == "E":
        if not 1 <= g.i <= n - 1:
            raise IndexOutOfRange(f"E{g.i} needs 1 <= i <= {n - 1}")
        return
    if g.kind not in ("FUP", "FDN", "WUP", "WDN"):
        raise LabelAlgebraError(f"unknown generator kind {g.kind!r}")
    for x in (g.a, g.b):
        if x not in X:
            raise LabelAlgebraError(f"label {x!r} not in X={','.join(X)}")


def generator_diagram(g: Generator, n: int, X: Sequence[str]) -> Diagram:
    X = tuple(X)
    check_generator(g, n, X)
    k = g.kind
    if k == "ID":
        return identity(n, X)
    if k == "E":
        i = g.i
        pairs = [(L(i), L(i + 1)), (R(i), R(i + 1))]
        pairs += [(L(j), R(j)) for j in range(1, n + 1) if j not in (i, i + 1)]
        return make_diagram(n, X, (), (), pairs, check=False)
    a, b = g.a, g.b
    if k == "FUP":
        pairs = [(L(1), T(1)), (R(1), T(2))] + [(L(j), R(j)) for j in range(2, n + 1)]
        return make_diagram(n, X, (a, b), (), pairs, check=False)
    if k == "FDN":
        pairs = [(L(n), B(1)), (R(n), B(2))] + [(L(j), R(j)) for j in range(1, n)]
        return make_diagram(n, X, (), (a, b), pairs, check=False)
    if k == "WUP":
        pairs = [(L(1), T(1)), (R(n), B(1))] + [(L(j), R(j - 1)) for j in range(2, n + 1)]
        return make_diagram(n, X, (a,), (b,), pairs, check=False)
    pairs = [(R(1), T(1)), (L(n), B(1))] + [(L(j), R(j + 1)) for j in range(1, n)]
    return make_diagram(n, X, (a,), (b,), pairs, check=False)


def w_word(a: str, b: str, j: int, n: int) -> list[Generator]:
    """The word W(a,b,j): WUp for j=0, E(j)...E(1).WUp for 0<j<n, WDown for j=n."""
    if not 0 <= j <= n:
        raise IndexOutOfRange(f"j={j} outside 0..{n}")
    if j == 0:
        return [WUp(a, b)]
    if j == n:
        return [WDown(a, b)]
    return [E(i) for i in range(j, 0, -1)] + [WUp(a, b)]


def w_diagram(a: str, b: str, j: int, n: int, X: Sequence[str]) -> Diagram:
    word = w_word(a, b, j, n)
    coeff, d, _ = concat_many([generator_diagram(g, n, X) for g in word])
    assert coeff.is_one()
    return d


def dimension(n: int, xsize: int) -> int:
    """Closed-form number of L_n(X)-diagrams with |X| = xsize."""
    if n < 1 or xsize < 1:
        raise LabelAlgebraError("need n >= 1 and |X| >= 1")
    total = 0
    for d in range(n + 1):
        inner = 0
        for j in range((n - d) // 2 + 1):
            c = comb(n, j) - (comb(n, j - 1) if j >= 1 else 0)
            e = n - 2 * j - d
            inner += xsize ** e * (e + 1) * c
        total += inner * inner
    return total


def identity_combination(n: int, X: Sequence[str]) -> LinearCombination:
    return LinearCombination.of(identity(n, tuple(X)))


def product_of(diagrams: Iterable[Diagram]) -> LinearCombination:
    ds = list(diagrams)
    m, d, _ = concat_many(ds)
    return LinearCombination.of(d, m)
