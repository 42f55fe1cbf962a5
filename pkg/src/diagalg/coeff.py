"""Exact coefficient ring for diagram products.

Every product of basis diagrams in the algebras handled by this package is a
monomial in a small set of parameters (loop weights, boundary-arc weights)
times a basis diagram.  Linear combinations need sums of those, so the ring
here is Z[parameters] with sparse dict storage.

Parameters are identified by :class:`ParamId`.  Text forms::

    b                 loop weight (beta)
    k                 kappa
    aup[a,b]          top-top arc, left label a, right label b
    ddo[a,b]          bottom-bottom arc
    g[a,b]            top-bottom arc, top label a, bottom label b
    ga1 ga2 ga3       ghost top-top arc parameters
    gd1 gd2 gd3       ghost bottom-bottom arc parameters
    gg12 gg3          ghost top-bottom arc parameters
    sa1 sa2 sd1 sd2   blob parameters of the symplectic blob algebra
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


class CoeffError(ValueError):
    pass


class UnmappedParameter(CoeffError):
    pass


# Rank of each parameter family in the canonical factor order.
_KIND_RANK = {
    "beta": 0,
    "kappa": 1,
    "aup": 2,
    "ddo": 3,
    "gamma": 4,
    "ghost_alpha": 5,
    "ghost_delta": 6,
    "ghost_gamma12": 7,
    "ghost_gamma3": 8,
    "sb_alpha": 9,
    "sb_delta": 10,
}

_LABELLED = ("aup", "ddo", "gamma")
_INDEXED = {"ghost_alpha": (1, 3), "ghost_delta": (1, 3), "sb_alpha": (1, 2), "sb_delta": (1, 2)}


@dataclass(frozen=True)
class ParamId:
    """One indeterminate.  ``labels`` is set for the labelled families,
    ``index`` for the numbered ghost / blob families."""

    kind: str
    labels: tuple[str, ...] = ()
    index: int = 0

    def __post_init__(self) -> None:
        if self.kind not in _KIND_RANK:
            raise CoeffError(f"unknown parameter kind {self.kind!r}")
        if self.kind in _LABELLED:
            if len(self.labels) != 2:
                raise CoeffError(f"{self.kind} needs two labels")
        elif self.labels:
            raise CoeffError(f"{self.kind} takes no labels")
        if self.kind in _INDEXED:
            lo, hi = _INDEXED[self.kind]
            if not lo <= self.index <= hi:
                raise CoeffError(f"{self.kind} index {self.index} out of range")
        elif self.index:
            raise CoeffError(f"{self.kind} takes no index")

    def sort_key(self) -> tuple:
        return (_KIND_RANK[self.kind], self.labels, self.index)

    def __lt__(self, other: "ParamId") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        k = self.kind
        if k == "beta":
            return "b"
        if k == "kappa":
            return "k"
        if k in _LABELLED:
            name = {"aup": "aup", "ddo": "ddo", "gamma": "g"}[k]
            return f"{name}[{self.labels[0]},{self.labels[1]}]"
        if k == "ghost_alpha":
            return f"ga{self.index}"
        if k == "ghost_delta":
            return f"gd{self.index}"
        if k == "ghost_gamma12":
            return "gg12"
        if k == "ghost_gamma3":
            return "gg3"
        if k == "sb_alpha":
            return f"sa{self.index}"
        return f"sd{self.index}"

    __repr__ = __str__


# Constructors, named after the parameters they build.
BETA = ParamId("beta")
KAPPA = ParamId("kappa")
GHOST_GAMMA12 = ParamId("ghost_gamma12")
GHOST_GAMMA3 = ParamId("ghost_gamma3")


def alpha_up(a: str, b: str) -> ParamId:
    return ParamId("aup", (a, b))


def delta_down(a: str, b: str) -> ParamId:
    return ParamId("ddo", (a, b))


def gamma(a: str, b: str) -> ParamId:
    return ParamId("gamma", (a, b))


def ghost_alpha(k: int) -> ParamId:
    return ParamId("ghost_alpha", index=k)


def ghost_delta(k: int) -> ParamId:
    return ParamId("ghost_delta", index=k)


def sb_alpha(k: int) -> ParamId:
    return ParamId("sb_alpha", index=k)


def sb_delta(k: int) -> ParamId:
    return ParamId("sb_delta", index=k)


class Monomial:
    """Product of parameters with positive exponents.  Immutable, hashable."""

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents: Mapping[ParamId, int] | Iterable[tuple[ParamId, int]] = ()):
        items = dict(exponents.items() if isinstance(exponents, Mapping) else exponents)
        for p, e in items.items():
            if not isinstance(p, ParamId):
                raise CoeffError(f"not a parameter: {p!r}")
            if not isinstance(e, int) or e < 0:
                raise CoeffError(f"bad exponent {e!r} for {p}")
        self._items = tuple(sorted(((p, e) for p, e in items.items() if e), key=lambda pe: pe[0].sort_key()))
        self._hash = hash(self._items)

    @classmethod
    def of(cls, *params: ParamId) -> "Monomial":
        """Monomial from a list of factors, repeats allowed."""
        exps: dict[ParamId, int] = {}
        for p in params:
            exps[p] = exps.get(p, 0) + 1
        return cls(exps)

    @property
    def items(self) -> tuple[tuple[ParamId, int], ...]:
        return self._items

    def exponent(self, p: ParamId) -> int:
        for q, e in self._items:
            if q == p:
                return e
        return 0

    def params(self) -> list[ParamId]:
        return [p for p, _ in self._items]

    def degree(self) -> int:
        return sum(e for _, e in self._items)

    def is_one(self) -> bool:
        return not self._items

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        return mono_mul(self, other)

    def __pow__(self, k: int) -> "Monomial":
        return Monomial({p: e * k for p, e in self._items})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> tuple:
        return tuple((p.sort_key(), e) for p, e in self._items)

    def __lt__(self, other: "Monomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if not self._items:
            return "1"
        return "*".join(str(p) if e == 1 else f"{p}^{e}" for p, e in self._items)

    def __repr__(self) -> str:
        return f"Monomial({self})"


ONE = Monomial()


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    exps = dict(m1.items)
    for p, e in m2.items:
        exps[p] = exps.get(p, 0) + e
    return Monomial(exps)


class Polynomial:
    """Sparse integer polynomial: Monomial -> nonzero int."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        t = {}
        for m, c in (terms or {}).items():
            if not isinstance(m, Monomial):
                raise CoeffError(f"not a monomial: {m!r}")
            if c:
                t[m] = int(c)
        self._terms = t
        self._hash: int | None = None

    @classmethod
    def constant(cls, c: int) -> "Polynomial":
        return cls({ONE: c})

    @classmethod
    def from_monomial(cls, m: Monomial, c: int = 1) -> "Polynomial":
        return cls({m: c})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(sorted(self._terms.items(), key=lambda mc: mc[0].sort_key()))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def as_monomial(self) -> Monomial | None:
        """The monomial m if self == 1*m, else None."""
        if len(self._terms) == 1:
            (m, c), = self._terms.items()
            if c == 1:
                return m
        return None

    def __add__(self, other: "Polynomial | int") -> "Polynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return poly_arith(self, other, "add")

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Polynomial | int") -> "Polynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return poly_arith(self, -other, "add")

    def __rsub__(self, other: int) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: "Polynomial | Monomial | int") -> "Polynomial":
        if isinstance(other, Monomial):
            other = Polynomial.from_monomial(other)
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return poly_arith(self, other, "mul")

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(other)
        elif isinstance(other, Monomial):
            other = Polynomial.from_monomial(other)
        return isinstance(other, Polynomial) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def params(self) -> set[ParamId]:
        return {p for m in self._terms for p in m.params()}

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if m.is_one():
                body = str(a)
            elif a == 1:
                body = str(m)
            else:
                body = f"{a}*{m}"
            if i == 0:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


ZERO = Polynomial()


def _coerce(x) -> Polynomial | None:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, bool):
        return None
    if isinstance(x, int):
        return Polynomial.constant(x)
    return None


def poly_arith(p1: Polynomial, p2: Polynomial, which: str) -> Polynomial:
    if which == "add":
        t = dict(p1._terms)
        for m, c in p2._terms.items():
            t[m] = t.get(m, 0) + c
        return Polynomial(t)
    if which == "mul":
        t: dict[Monomial, int] = {}
        for m1, c1 in p1._terms.items():
            for m2, c2 in p2._terms.items():
                m = mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return Polynomial(t)
    raise CoeffError(f"unknown operation {which!r}")


def specialize(p: Polynomial | Monomial, mapping: Mapping[ParamId, Monomial]) -> Polynomial:
    """Substitute each parameter by a monomial.  Ring homomorphism."""
    if isinstance(p, Monomial):
        p = Polynomial.from_monomial(p)
    missing = sorted(p.params() - set(mapping), key=ParamId.sort_key)
    if missing:
        raise UnmappedParameter(f"no image for {', '.join(map(str, missing))}")
    t: dict[Monomial, int] = {}
    for m, c in p._terms.items():
        img = ONE
        for q, e in m.items:
            img = mono_mul(img, mapping[q] ** e)
        t[img] = t.get(img, 0) + c
    return Polynomial(t)


def specialize_monomial(m: Monomial, mapping: Mapping[ParamId, Monomial]) -> Monomial:
    img = specialize(m, mapping).as_monomial()
    assert img is not None
    return img
