"""The ghost algebra Gh_n and its identification with L_n({0,1}).

A ghost diagram has unlabelled boundary endpoints.  Each boundary is split
by its endpoints into domains, and each domain holds a number of ghosts,
stored mod 2.  On every boundary, endpoints plus ghosts is even.

Multiplying numbers the endpoints and ghosts of each merged boundary left to
right.  A removed boundary arc costs a parameter chosen by the parities of the
numbers at its two ends and leaves a ghost where each end was:

    top-top        ga1 left odd / right even, ga2 even / odd, ga3 same parity
    bottom-bottom  gd1, gd2, gd3 likewise
    top-bottom     gg12 opposite parity, gg3 same parity

Relabelling each endpoint 1 (odd number) or 0 (even number) maps Gh_n onto
L_n({0,1}); :func:`ghost_param_map` is the matching parameter identification.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .coeff import (BETA, GHOST_GAMMA3, GHOST_GAMMA12, Monomial, ParamId, alpha_up, delta_down,
                    gamma, ghost_alpha, ghost_delta, specialize_monomial)
from .diagram import Diagram, DiagramError, Endpoint, enumerate_all, make_diagram, validate
from .labelalg import SizeMismatch, concat

BITS = ("0", "1")
_SHAPE_LABEL = ("o",)


@dataclass(frozen=True)
class GhostDiagram:
    """Matching plus one ghost bit per boundary domain.

    ``top_ghosts[k]`` counts (mod 2) the ghosts between top endpoints k and
    k+1, with index 0 before the first endpoint and index t after the last.
    """

    n: int
    top_ghosts: tuple[int, ...]
    bottom_ghosts: tuple[int, ...]
    pairs: tuple[tuple[Endpoint, Endpoint], ...]

    @property
    def t(self) -> int:
        return len(self.top_ghosts) - 1

    @property
    def b(self) -> int:
        return len(self.bottom_ghosts) - 1

    def shape(self) -> Diagram:
        """The underlying matching as a diagram with a one-letter label set."""
        return make_diagram(self.n, _SHAPE_LABEL, _SHAPE_LABEL * self.t, _SHAPE_LABEL * self.b,
                            self.pairs, check=False)

    def parity(self) -> str:
        return "even" if self.t % 2 == 0 and self.b % 2 == 0 else "odd"

    def __str__(self) -> str:
        return serialize_ghost(self)

    def __lt__(self, other: "GhostDiagram") -> bool:
        return str(self) < str(other)


def make_ghost(n: int, top_ghosts: Sequence[int], bottom_ghosts: Sequence[int], pairs,
               check: bool = True) -> GhostDiagram:
    tg = tuple(int(x) % 2 for x in top_ghosts)
    bg = tuple(int(x) % 2 for x in bottom_ghosts)
    if not tg or not bg:
        raise DiagramError("each boundary has at least one domain")
    shape = make_diagram(n, _SHAPE_LABEL, _SHAPE_LABEL * (len(tg) - 1), _SHAPE_LABEL * (len(bg) - 1),
                         pairs, check=False)
    g = GhostDiagram(n, tg, bg, shape.pairs)
    if check:
        problem = validate_ghost(g)
        if problem is not None:
            raise DiagramError(problem)
    return g


def validate_ghost(g: GhostDiagram) -> str | None:
    for name, bits in (("top", g.top_ghosts), ("bottom", g.bottom_ghosts)):
        if any(x not in (0, 1) for x in bits):
            return f"{name} ghosts must be bits"
        if (len(bits) - 1 + sum(bits)) % 2:
            return f"{name} boundary has an odd number of endpoints plus ghosts"
    return validate(g.shape())


def ghost_identity(n: int) -> GhostDiagram:
    return make_ghost(n, (0,), (0,), [(Endpoint("L", i), Endpoint("R", i)) for i in range(1, n + 1)],
                      check=False)


def serialize_ghost(g: GhostDiagram) -> str:
    pairs = ";".join(f"({x},{y})" for x, y in g.pairs)
    tg = "".join(map(str, g.top_ghosts))
    bg = "".join(map(str, g.bottom_ghosts))
    return f"G(n={g.n};topGhosts={tg};bottomGhosts={bg};pairs={pairs})"


def _numbers(ghosts: Sequence[int]) -> list[int]:
    """Left-to-right number of each endpoint, counting ghosts as items."""
    out, pos = [], 0
    for k in range(len(ghosts) - 1):
        pos += ghosts[k] + 1
        out.append(pos)
    return out


def _merged(g1: GhostDiagram, g2: GhostDiagram, side: str) -> tuple[list[int], list[int]]:
    """Merged boundary as (ghost count before each endpoint and after the
    last, endpoint numbers)."""
    a = g1.top_ghosts if side == "T" else g1.bottom_ghosts
    b = g2.top_ghosts if side == "T" else g2.bottom_ghosts
    ghosts = list(a[:-1]) + [a[-1] + b[0]] + list(b[1:])
    return ghosts, _numbers(ghosts)


def _arc_ghost_param(kind: str, p: int, q: int) -> ParamId:
    odd_p, odd_q = p % 2, q % 2
    if kind == "top-bottom":
        return GHOST_GAMMA12 if odd_p != odd_q else GHOST_GAMMA3
    idx = 3 if odd_p == odd_q else (1 if odd_p else 2)
    return ghost_alpha(idx) if kind == "top-top" else ghost_delta(idx)


def _reduce(ghosts: list[int], removed: set[int]) -> list[int]:
    """Drop the removed endpoints (1-based), turning each into a ghost, and
    reduce every domain mod 2."""
    out = [ghosts[0]]
    for k in range(1, len(ghosts)):
        if k in removed:
            out[-1] += 1 + ghosts[k]
        else:
            out.append(ghosts[k])
    return [x % 2 for x in out]


def ghost_concat(g1: GhostDiagram, g2: GhostDiagram) -> tuple[Monomial, GhostDiagram]:
    if g1.n != g2.n:
        raise SizeMismatch(f"cannot multiply n={g1.n} by n={g2.n}")
    _, shape, trace = concat(g1.shape(), g2.shape())
    tg, tnum = _merged(g1, g2, "T")
    bg, bnum = _merged(g1, g2, "B")
    params = [BETA] * trace.loops
    removed = {"T": set(), "B": set()}
    for arc in trace.arcs:
        s1, s2 = {"top-top": "TT", "bottom-bottom": "BB", "top-bottom": "TB"}[arc.kind]
        p, q = arc.positions
        num1 = (tnum if s1 == "T" else bnum)[p - 1]
        num2 = (tnum if s2 == "T" else bnum)[q - 1]
        params.append(_arc_ghost_param(arc.kind, num1, num2))
        removed[s1].add(p)
        removed[s2].add(q)
    result = GhostDiagram(g1.n, tuple(_reduce(tg, removed["T"])), tuple(_reduce(bg, removed["B"])),
                          shape.pairs)
    return Monomial.of(*params), result


def to_label(g: GhostDiagram) -> Diagram:
    top = ["1" if k % 2 else "0" for k in _numbers(g.top_ghosts)]
    bottom = ["1" if k % 2 else "0" for k in _numbers(g.bottom_ghosts)]
    return make_diagram(g.n, BITS, top, bottom, g.pairs, check=False)


def _ghosts_for(labels: Sequence[str]) -> tuple[int, ...]:
    out, pos = [], 0
    for lab in labels:
        want = 1 if lab == "1" else 0
        bit = (want - pos - 1) % 2
        out.append(bit)
        pos += bit + 1
    out.append(pos % 2)
    return tuple(out)


def from_label(d: Diagram) -> GhostDiagram:
    """Inverse of :func:`to_label`.  ``d`` must be over X = (0, 1)."""
    if tuple(d.X) != BITS:
        raise DiagramError(f"ghost diagrams correspond to X=0,1, got X={','.join(d.X)}")
    return GhostDiagram(d.n, _ghosts_for(d.top), _ghosts_for(d.bottom), d.pairs)


def enumerate_ghost(n: int) -> Iterator[GhostDiagram]:
    for d in enumerate_all(n, BITS):
        yield from_label(d)


def ghost_param_map() -> dict[ParamId, Monomial]:
    """Label-algebra parameters over X = (0, 1) in terms of ghost parameters."""
    m: dict[ParamId, Monomial] = {BETA: Monomial.of(BETA)}
    for a in BITS:
        for b in BITS:
            idx = 3 if a == b else (1 if a == "1" else 2)
            m[alpha_up(a, b)] = Monomial.of(ghost_alpha(idx))
            m[delta_down(a, b)] = Monomial.of(ghost_delta(idx))
            m[gamma(a, b)] = Monomial.of(GHOST_GAMMA3 if a == b else GHOST_GAMMA12)
    return m


def iso_check(g1: GhostDiagram, g2: GhostDiagram) -> str | None:
    """Multiply-then-map against map-then-multiply.  None if they agree."""
    mg, pg = ghost_concat(g1, g2)
    ml, pl, _ = concat(to_label(g1), to_label(g2))
    ml = specialize_monomial(ml, ghost_param_map())
    if to_label(pg) != pl:
        return f"{g1} * {g2}: products differ: {to_label(pg)} vs {pl}"
    if mg != ml:
        return f"{g1} * {g2}: coefficients differ: {mg} vs {ml}"
    return None
