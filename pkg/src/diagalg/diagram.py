"""Basis diagrams of the label algebra.

A diagram has n nodes on each side (L1..Ln on the left, R1..Rn on the
right, numbered top to bottom) and some endpoints on the top and bottom
boundaries (T1..Tt, B1..Bb, left to right), each carrying a label from X.
Strings pair up all endpoints without crossings; no string joins two
boundary endpoints.

Planarity is tested on the cyclic order L1..Ln, B1..Bb, Rn..R1, Tt..T1:
a perfect matching is drawable without crossings exactly when it is a
balanced nesting in that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, NamedTuple, Sequence


class DiagramError(ValueError):
    pass


class Endpoint(NamedTuple):
    side: str  # "L", "R", "T" or "B"
    index: int

    def __str__(self) -> str:
        return f"{self.side}{self.index}"

    @property
    def is_node(self) -> bool:
        return self.side in "LR"

    @property
    def is_boundary(self) -> bool:
        return self.side in "TB"


def L(i: int) -> Endpoint:
    return Endpoint("L", i)


def R(i: int) -> Endpoint:
    return Endpoint("R", i)


def T(k: int) -> Endpoint:
    return Endpoint("T", k)


def B(k: int) -> Endpoint:
    return Endpoint("B", k)


def cyclic_position(e: Endpoint, n: int, t: int, b: int) -> int:
    """Position in the order L1..Ln, B1..Bb, Rn..R1, Tt..T1."""
    if e.side == "L":
        return e.index - 1
    if e.side == "B":
        return n + e.index - 1
    if e.side == "R":
        return n + b + (n - e.index)
    return 2 * n + b + (t - e.index)


def endpoints_in_order(n: int, t: int, b: int) -> list[Endpoint]:
    return ([L(i) for i in range(1, n + 1)] + [B(k) for k in range(1, b + 1)]
            + [R(i) for i in range(n, 0, -1)] + [T(k) for k in range(t, 0, -1)])


def check_noncrossing(pairs: Sequence[tuple[int, int]], size: int) -> tuple[int, int, int, int] | None:
    """Balanced-nesting test for a perfect matching on positions 0..size-1.

    Returns None if the matching is non-crossing, else the positions of two
    crossing chords as (a, b, c, d).
    """
    partner = [-1] * size
    for a, b in pairs:
        partner[a] = b
        partner[b] = a
    stack: list[int] = []
    for pos in range(size):
        q = partner[pos]
        if q > pos:
            stack.append(pos)
        else:
            top = stack.pop()
            if top != q:
                return (q, pos, top, partner[top])
    return None


def _label_ok(x: str) -> bool:
    return bool(x) and all(ch.isalnum() or ch == "_" for ch in x) and x.isascii()


@dataclass(frozen=True)
class Diagram:
    """An L_n(X)-diagram.  Construct through :func:`make_diagram` to get the
    canonical pair order; the dataclass itself stores already-canonical data."""

    n: int
    X: tuple[str, ...]
    top: tuple[str, ...]
    bottom: tuple[str, ...]
    pairs: tuple[tuple[Endpoint, Endpoint], ...]

    @property
    def t(self) -> int:
        return len(self.top)

    @property
    def b(self) -> int:
        return len(self.bottom)

    def position(self, e: Endpoint) -> int:
        return cyclic_position(e, self.n, self.t, self.b)

    @cached_property
    def partner(self) -> dict[Endpoint, Endpoint]:
        m: dict[Endpoint, Endpoint] = {}
        for x, y in self.pairs:
            m[x] = y
            m[y] = x
        return m

    def label(self, e: Endpoint) -> str:
        if e.side == "T":
            return self.top[e.index - 1]
        if e.side == "B":
            return self.bottom[e.index - 1]
        raise DiagramError(f"{e} carries no label")

    def __str__(self) -> str:
        return serialize(self)

    def __lt__(self, other: "Diagram") -> bool:
        return serialize(self) < serialize(other)

    # structural queries -------------------------------------------------

    def parity(self) -> str:
        return parity(self)

    def boundary_link_count(self) -> int:
        return self.t + self.b

    def has_simple_link(self, side: str, k: int) -> bool:
        return self.partner.get(Endpoint(side, k)) == Endpoint(side, k + 1)

    def has_top_boundary_link_at(self, side: str, i: int) -> bool:
        q = self.partner.get(Endpoint(side, i))
        return q is not None and q.side == "T"

    def has_bottom_boundary_link_at(self, side: str, i: int) -> bool:
        q = self.partner.get(Endpoint(side, i))
        return q is not None and q.side == "B"

    def topmost_left_simple_link(self) -> int | None:
        for k in range(1, self.n):
            if self.has_simple_link("L", k):
                return k
        return None

    def leftmost_top_link(self) -> tuple[str, int, str] | None:
        """(side, node index, label) of the string at T1, if any."""
        if not self.top:
            return None
        q = self.partner[T(1)]
        return (q.side, q.index, self.top[0])

    def leftmost_bottom_link(self) -> tuple[str, int, str] | None:
        if not self.bottom:
            return None
        q = self.partner[B(1)]
        return (q.side, q.index, self.bottom[0])

    def throughlines(self) -> list[tuple[int, int]]:
        return sorted((x.index, y.index) for x, y in self.pairs if x.side == "L" and y.side == "R")

    def links(self, side: str) -> list[tuple[int, int]]:
        return sorted((x.index, y.index) for x, y in self.pairs if x.side == side and y.side == side)


def _canon_pair(x: Endpoint, y: Endpoint, n: int, t: int, b: int) -> tuple[Endpoint, Endpoint]:
    if cyclic_position(x, n, t, b) > cyclic_position(y, n, t, b):
        x, y = y, x
    return (x, y)


def make_diagram(n: int, X: Sequence[str], top: Sequence[str], bottom: Sequence[str],
                 pairs, check: bool = True) -> Diagram:
    """Build a diagram in canonical form.  ``pairs`` is any iterable of
    two-element endpoint collections."""
    top, bottom, X = tuple(top), tuple(bottom), tuple(X)
    t, b = len(top), len(bottom)
    canon = []
    for pr in pairs:
        x, y = tuple(pr)
        x, y = Endpoint(*x), Endpoint(*y)
        canon.append(_canon_pair(x, y, n, t, b))
    canon.sort(key=lambda pr: (cyclic_position(pr[0], n, t, b), cyclic_position(pr[1], n, t, b)))
    d = Diagram(n, X, top, bottom, tuple(canon))
    if check:
        problem = validate(d)
        if problem is not None:
            raise DiagramError(problem)
    return d


def validate(d: Diagram) -> str | None:
    """None if d satisfies every diagram invariant, else a description of the
    first violation found."""
    if d.n < 1:
        return f"n must be positive, got {d.n}"
    if not d.X:
        return "label set is empty"
    if len(set(d.X)) != len(d.X):
        return "label set has duplicates"
    for x in d.X:
        if not _label_ok(x):
            return f"bad label {x!r}"
    for where, labels in (("top", d.top), ("bottom", d.bottom)):
        for k, x in enumerate(labels, 1):
            if x not in d.X:
                return f"{where} label {x!r} at position {k} is not in X"
    t, b = d.t, d.b
    allowed = set(endpoints_in_order(d.n, t, b))
    seen: set[Endpoint] = set()
    for x, y in d.pairs:
        for e in (x, y):
            if e not in allowed:
                return f"endpoint {e} out of range"
            if e in seen:
                return f"endpoint {e} used twice"
            seen.add(e)
        if x == y:
            return f"endpoint {x} paired with itself"
        if x.is_boundary and y.is_boundary:
            return f"string ({x},{y}) joins two boundary points"
    if seen != allowed:
        missing = sorted(allowed - seen, key=lambda e: cyclic_position(e, d.n, t, b))
        return f"unmatched endpoints: {', '.join(map(str, missing))}"
    size = 2 * d.n + t + b
    pos = [(cyclic_position(x, d.n, t, b), cyclic_position(y, d.n, t, b)) for x, y in d.pairs]
    bad = check_noncrossing(pos, size)
    if bad is not None:
        order = endpoints_in_order(d.n, t, b)
        a, bb, c, dd = (order[i] for i in bad)
        return f"strings ({a},{bb}) and ({c},{dd}) cross"
    return None


def parity(d: Diagram) -> str:
    if d.t % 2 == 0 and d.b % 2 == 0:
        return "even"
    return "odd"


def serialize(d: Diagram) -> str:
    pairs = ";".join(f"({x},{y})" for x, y in d.pairs)
    return (f"D(n={d.n};X={','.join(d.X)};top={','.join(d.top)};"
            f"bottom={','.join(d.bottom)};pairs={pairs})")


def identity(n: int, X: Sequence[str]) -> Diagram:
    return make_diagram(n, X, (), (), [(L(i), R(i)) for i in range(1, n + 1)], check=False)


# enumeration ------------------------------------------------------------

def _matchings(seq: list[Endpoint]) -> Iterator[list[tuple[Endpoint, Endpoint]]]:
    """Non-crossing perfect matchings of a linear sequence with no pair of
    two boundary endpoints."""
    if not seq:
        yield []
        return
    first = seq[0]
    for j in range(1, len(seq), 2):
        other = seq[j]
        if first.is_boundary and other.is_boundary:
            continue
        inner, outer = seq[1:j], seq[j + 1:]
        for m1 in _matchings(inner):
            for m2 in _matchings(outer):
                yield [(first, other)] + m1 + m2


def enumerate_matchings(n: int, t: int, b: int) -> Iterator[list[tuple[Endpoint, Endpoint]]]:
    yield from _matchings(endpoints_in_order(n, t, b))


def enumerate_all(n: int, X: Sequence[str]) -> Iterator[Diagram]:
    """Every L_n(X)-diagram exactly once.  Order: by (t, b), then matching,
    then label tuples in the order of X."""
    if n < 1:
        raise DiagramError("n must be positive")
    X = tuple(X)
    for total in range(0, 2 * n + 1, 2):
        for t in range(total + 1):
            b = total - t
            labelings = list(product(product(X, repeat=t), product(X, repeat=b)))
            for m in enumerate_matchings(n, t, b):
                for top, bottom in labelings:
                    yield make_diagram(n, X, top, bottom, m, check=False)


def count_all(n: int, xsize: int) -> int:
    """Number of diagrams, counted by walking the matchings (no labels)."""
    total = 0
    for tb in range(0, 2 * n + 1, 2):
        for t in range(tb + 1):
            b = tb - t
            cnt = sum(1 for _ in enumerate_matchings(n, t, b))
            total += cnt * xsize ** (t + b)
    return total


# reflection -------------------------------------------------------------

def reflect(d: Diagram) -> Diagram:
    """Mirror in a horizontal line: node i <-> n+1-i, top <-> bottom, left to
    right order of boundary endpoints kept."""
    n = d.n

    def f(e: Endpoint) -> Endpoint:
        if e.side in "LR":
            return Endpoint(e.side, n + 1 - e.index)
        return Endpoint("B" if e.side == "T" else "T", e.index)

    return make_diagram(n, d.X, d.bottom, d.top, [(f(x), f(y)) for x, y in d.pairs], check=False)


# rendering --------------------------------------------------------------

def render(d: Diagram, fmt: str = "ascii") -> str:
    if fmt == "ascii":
        return _render_ascii(d)
    if fmt == "tikz":
        return _render_tikz(d)
    if fmt == "canonical":
        return serialize(d) + "\n"
    raise DiagramError(f"unknown render format {fmt!r}")


def _describe(d: Diagram, e: Endpoint) -> str:
    q = d.partner[e]
    if q.is_boundary:
        return f"{q}[{d.label(q)}]"
    return str(q)


def _render_ascii(d: Diagram) -> str:
    """One row per node height.  A throughline to the same height is drawn
    as a bar; every other string end shows where it goes."""
    lines = []
    tops = "  ".join(f"T{k}[{x}]" for k, x in enumerate(d.top, 1))
    bots = "  ".join(f"B{k}[{x}]" for k, x in enumerate(d.bottom, 1))
    width = 24
    lines.append("top:    " + tops if tops else "top:")
    lines.append("     " + "." * (width + 2))
    for i in range(1, d.n + 1):
        q = d.partner[L(i)]
        if q == R(i):
            mid = "-" * width
        else:
            left = "-> " + _describe(d, L(i))
            right = _describe(d, R(i)) + " <-"
            mid = left + " " * max(1, width - len(left) - len(right)) + right
        lines.append(f"{i:>3} |{mid}| {i}")
    lines.append("     " + "." * (width + 2))
    lines.append("bottom: " + bots if bots else "bottom:")
    return "\n".join(lines) + "\n"


def _tikz_point(d: Diagram, e: Endpoint) -> tuple[float, float]:
    w = 3.0
    if e.side == "L":
        return (0.0, -(e.index - 1.0))
    if e.side == "R":
        return (w, -(e.index - 1.0))
    if e.side == "T":
        return (w * e.index / (d.t + 1), 0.5)
    return (w * e.index / (d.b + 1), -(d.n - 0.5))


def _tikz_dir(e: Endpoint) -> int:
    return {"L": 0, "R": 180, "T": 270, "B": 90}[e.side]


def _render_tikz(d: Diagram) -> str:
    top_y, bot_y = 0.5, -(d.n - 0.5)
    out = ["\\begin{tikzpicture}[scale=0.5]",
           f"\\draw [very thick] (0,{bot_y:g})--(0,{top_y:g});",
           f"\\draw [very thick] (3,{bot_y:g})--(3,{top_y:g});",
           f"\\draw [dotted] (0,{top_y:g})--(3,{top_y:g});",
           f"\\draw [dotted] (0,{bot_y:g})--(3,{bot_y:g});"]
    for x, y in d.pairs:
        (x1, y1), (x2, y2) = _tikz_point(d, x), _tikz_point(d, y)
        out.append(f"\\draw ({x1:g},{y1:g}) to[out={_tikz_dir(x)},in={_tikz_dir(y)}] ({x2:g},{y2:g});")
    for k, lab in enumerate(d.top, 1):
        px, py = _tikz_point(d, T(k))
        out.append(f"\\node[font=\\scriptsize,anchor=south] at ({px:g},{py:g}) {{{lab}}};")
    for k, lab in enumerate(d.bottom, 1):
        px, py = _tikz_point(d, B(k))
        out.append(f"\\node[font=\\scriptsize,anchor=north] at ({px:g},{py:g}) {{{lab}}};")
    out.append("\\end{tikzpicture}")
    return "\n".join(out) + "\n"
