"""The symplectic blob algebra S_n.

A basis diagram is a non-crossing matching of L1..Ln, R1..Rn whose strings
carry sequences of blobs: "t" (top blob) and "b" (bottom blob).  A string's
sequence is read from its first endpoint in the order L1 < ... < Ln < R1 <
... < Rn; loops read cyclically.  Multiplying glues R_i to L_i, concatenates
blob sequences along every merged string and simplifies:

    loop with no blobs, [t], [b]      beta, sa1, sd1
    t t  ->  sa2 t;   b b  ->  sd2 b  (adjacent on one string or loop)
    n odd:  t b t -> k t;  b t b -> k b
    n even: loop [t, b] -> k;  a doubly blobbed left link and right link
            become two throughlines, the upper one with t, the lower with b, times k

A diagram is valid when each blob can touch its boundary without strings
crossing.  Validity is decided by search: each blob becomes a point on its
boundary edge where the string passes, and some ordering of those points must
give a non-crossing system of chords.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Sequence

from .coeff import BETA, KAPPA, ONE, Monomial, sb_alpha, sb_delta
from .diagram import Endpoint, L, R, enumerate_matchings
from .labelalg import IndexOutOfRange, SizeMismatch
from .presentation import Word, evaluate


class BlobError(ValueError):
    pass


class InvalidDecoration(BlobError):
    pass


class NotEvenReduced(BlobError):
    pass


TOP, BOT = "t", "b"


def _order(e: Endpoint, n: int) -> int:
    return e.index if e.side == "L" else n + e.index


@dataclass(frozen=True)
class BlobDiagram:
    n: int
    pairs: tuple[tuple[Endpoint, Endpoint], ...]
    decorations: tuple[tuple[str, ...], ...]

    def __str__(self) -> str:
        return serialize_blob(self)

    def __lt__(self, other: "BlobDiagram") -> bool:
        return str(self) < str(other)

    def blob_count(self, kind: str | None = None) -> int:
        return sum(1 for dec in self.decorations for x in dec if kind is None or x == kind)


def make_blob(n: int, strings: Iterable[tuple[Endpoint, Endpoint, Sequence[str]]],
              check: bool = True) -> BlobDiagram:
    """Canonical diagram from (end, end, blobs) triples.  Blobs are read from
    the first end given; they are reversed if that end is the later one."""
    items = []
    for x, y, dec in strings:
        dec = tuple(dec)
        if any(z not in (TOP, BOT) for z in dec):
            raise InvalidDecoration(f"blobs must be {TOP!r} or {BOT!r}, got {dec}")
        if _order(x, n) > _order(y, n):
            x, y, dec = y, x, dec[::-1]
        items.append((x, y, dec))
    items.sort(key=lambda s: _order(s[0], n))
    d = BlobDiagram(n, tuple((x, y) for x, y, _ in items), tuple(dec for _, _, dec in items))
    if check:
        problem = validate_blob(d)
        if problem is not None:
            raise InvalidDecoration(problem)
    return d


def _crosses(a: float, b: float, c: float, d: float) -> bool:
    if len({a, b, c, d}) < 4:
        return False
    lo, hi = min(a, b), max(a, b)
    return (lo < c < hi) != (lo < d < hi)


def _chords(d: BlobDiagram, top_pos: dict, bot_pos: dict) -> list[tuple[float, float]]:
    n = d.n
    pos = {L(i): i - 1 for i in range(1, n + 1)}
    pos.update({R(i): 2 * n - i for i in range(1, n + 1)})
    out = []
    for s, ((x, y), dec) in enumerate(zip(d.pairs, d.decorations)):
        pts = [pos[x]]
        for k, z in enumerate(dec):
            table = top_pos if z == TOP else bot_pos
            pts.append(table.get((s, k)))
        pts.append(pos[y])
        out += list(zip(pts, pts[1:]))
    return out


def _consistent(chords: list[tuple[float | None, float | None]]) -> bool:
    known = [c for c in chords if None not in c]
    for i, (a, b) in enumerate(known):
        for c, e in known[i + 1:]:
            if _crosses(a, b, c, e):
                return False
    return True


def _placements(d: BlobDiagram, kind: str) -> list[dict]:
    """Orders of one kind of blob along its edge that are consistent on their own."""
    n = d.n
    blobs = [(s, k) for s, dec in enumerate(d.decorations) for k, z in enumerate(dec) if z == kind]
    out = []
    for perm in permutations(blobs):
        m = len(perm)
        if kind == TOP:
            # The top edge runs from above R1 back to above L1.
            place = {blob: 2 * n - 1 + (k + 1) / (m + 1) for k, blob in enumerate(perm)}
            chords = _chords(d, place, {})
        else:
            place = {blob: n - 1 + (k + 1) / (m + 1) for k, blob in enumerate(perm)}
            chords = _chords(d, {}, place)
        if _consistent(chords):
            out.append(place)
    return out


@lru_cache(maxsize=65536)
def is_deformable(d: BlobDiagram) -> bool:
    tops = _placements(d, TOP)
    if not tops:
        return False
    bots = _placements(d, BOT)
    return any(_consistent(_chords(d, tp, bp)) for tp, bp in product(tops, bots))


def validate_blob(d: BlobDiagram) -> str | None:
    n = d.n
    ends = [e for p in d.pairs for e in p]
    if sorted(ends) != sorted([L(i) for i in range(1, n + 1)] + [R(i) for i in range(1, n + 1)]):
        return "strings must pair up L1..Ln, R1..Rn exactly once"
    if not _consistent(_chords(d, {}, {})):
        return "strings cross"
    for dec in d.decorations:
        for u, v in zip(dec, dec[1:]):
            if u == v:
                return f"adjacent equal blobs {dec} are not reduced"
        if n % 2 == 1 and any(dec[k:k + 3] in ((TOP, BOT, TOP), (BOT, TOP, BOT)) for k in range(len(dec))):
            return f"blob sequence {dec} is not reduced for n odd"
    if n % 2 == 0 and _two_string_pair(d) is not None:
        return "doubly blobbed left and right links are not reduced for n even"
    if not is_deformable(d):
        return "blobs cannot all reach their boundaries without crossings"
    return None


def serialize_blob(d: BlobDiagram) -> str:
    pairs = ";".join(f"({x},{y})" for x, y in d.pairs)
    dec = ",".join(f"{k}:{''.join(seq)}" for k, seq in enumerate(d.decorations, 1) if seq)
    return f"S(n={d.n};pairs={pairs};dec={dec})"


# generators -------------------------------------------------------------

def sb_identity(n: int) -> BlobDiagram:
    return make_blob(n, [(L(i), R(i), ()) for i in range(1, n + 1)], check=False)


def sb_generator(g: str, n: int) -> BlobDiagram:
    """``g`` is "f0", "fn" or "e<i>"."""
    if g == "f0":
        return make_blob(n, [(L(i), R(i), (TOP,) if i == 1 else ()) for i in range(1, n + 1)],
                         check=False)
    if g == "fn":
        return make_blob(n, [(L(i), R(i), (BOT,) if i == n else ()) for i in range(1, n + 1)],
                         check=False)
    if g.startswith("e") and g[1:].isdigit():
        i = int(g[1:])
        if not 1 <= i <= n - 1:
            raise IndexOutOfRange(f"e{i} needs 1 <= i <= {n - 1}")
        strings = [(L(i), L(i + 1), ()), (R(i), R(i + 1), ())]
        strings += [(L(j), R(j), ()) for j in range(1, n + 1) if j not in (i, i + 1)]
        return make_blob(n, strings, check=False)
    raise BlobError(f"unknown generator {g!r}")


# multiplication ---------------------------------------------------------

def _reduce_line(dec: list[str], odd_rules: bool) -> tuple[list, list[str]]:
    params = []
    changed = True
    while changed:
        changed = False
        for k in range(len(dec) - 1):
            if dec[k] == dec[k + 1]:
                params.append(sb_alpha(2) if dec[k] == TOP else sb_delta(2))
                del dec[k + 1]
                changed = True
                break
        if changed or not odd_rules:
            continue
        for k in range(len(dec) - 2):
            if dec[k] == dec[k + 2] != dec[k + 1]:
                params.append(KAPPA)
                del dec[k + 1:k + 3]
                changed = True
                break
    return params, dec


def _reduce_loop(dec: list[str], odd_rules: bool, even_rules: bool) -> list:
    """Parameters for a closed loop with the given cyclic blob sequence."""
    params = []
    while True:
        m = len(dec)
        if odd_rules and m >= 3:
            hit = next((k for k in range(m)
                        if dec[k] == dec[(k + 2) % m] != dec[(k + 1) % m]), None)
            if hit is not None:
                params.append(KAPPA)
                drop = {(hit + 1) % m, (hit + 2) % m}
                dec = [z for k, z in enumerate(dec) if k not in drop]
                continue
        if m >= 2:
            hit = next((k for k in range(m) if dec[k] == dec[(k + 1) % m]), None)
            if hit is not None:
                params.append(sb_alpha(2) if dec[hit] == TOP else sb_delta(2))
                del dec[(hit + 1) % m]
                continue
        break
    if not dec:
        params.append(BETA)
    elif dec == [TOP]:
        params.append(sb_alpha(1))
    elif dec == [BOT]:
        params.append(sb_delta(1))
    elif even_rules and sorted(dec) == [BOT, TOP]:
        params.append(KAPPA)
    else:
        raise InvalidDecoration(f"loop with blobs {dec} cannot be removed")
    return params


def _two_string_pair(d: BlobDiagram) -> tuple[int, int] | None:
    left = right = None
    for s, ((x, y), dec) in enumerate(zip(d.pairs, d.decorations)):
        if dec == (TOP, BOT):
            if x.side == y.side == "L":
                left = s
            elif x.side == y.side == "R":
                right = s
    return None if left is None or right is None else (left, right)


def sb_multiply(d1: BlobDiagram, d2: BlobDiagram, rules: str | None = None,
                check: bool = True) -> tuple[Monomial, BlobDiagram]:
    """Product d1 d2.  ``rules`` picks the parity-specific rules ("odd" or
    "even"); the default follows n, and overriding it is only for
    demonstrating what goes wrong."""
    if d1.n != d2.n:
        raise SizeMismatch(f"cannot multiply n={d1.n} by n={d2.n}")
    n = d1.n
    rules = rules or ("odd" if n % 2 else "even")
    odd_rules, even_rules = rules == "odd", rules == "even"

    # Pieces: (diagram, string index).  Each node end of a piece leads to
    # the matching node of the other diagram, or is free.
    ends: dict[tuple[int, Endpoint], tuple[int, int]] = {}
    for w, d in ((0, d1), (1, d2)):
        for s, (x, y) in enumerate(d.pairs):
            ends[(w, x)] = (s, 0)
            ends[(w, y)] = (s, 1)
    dia = (d1, d2)

    def glue(w: int, e: Endpoint) -> tuple[int, Endpoint] | None:
        if w == 0 and e.side == "R":
            return 1, L(e.index)
        if w == 1 and e.side == "L":
            return 0, R(e.index)
        return None

    seen: set[tuple[int, int]] = set()

    def walk(w: int, e: Endpoint) -> tuple[Endpoint | None, list[str]]:
        """Follow the string entering diagram w at e.  Returns the free end
        reached (None for a loop back to the start) and the blobs met."""
        dec: list[str] = []
        while True:
            s, side = ends[(w, e)]
            if (w, s) in seen:
                return None, dec
            seen.add((w, s))
            pair = dia[w].pairs[s]
            seq = dia[w].decorations[s]
            dec += list(seq if side == 0 else seq[::-1])
            far = pair[1 - side]
            nxt = glue(w, far)
            if nxt is None:
                return far, dec
            w, e = nxt

    params: list = []
    strings = []
    for w, e in [(0, L(i)) for i in range(1, n + 1)] + [(1, R(i)) for i in range(1, n + 1)]:
        if (w, ends[(w, e)][0]) in seen:
            continue
        far, dec = walk(w, e)
        p, dec = _reduce_line(dec, odd_rules)
        params += p
        strings.append((e, far, dec))
    for w, d in ((0, d1), (1, d2)):
        for s, (x, _) in enumerate(d.pairs):
            if (w, s) not in seen:
                _, dec = walk(w, x)
                params += _reduce_loop(dec, odd_rules, even_rules)

    result = make_blob(n, strings, check=False)
    if even_rules:
        hit = _two_string_pair(result)
        if hit is not None:
            (p, q), (r, s) = result.pairs[hit[0]], result.pairs[hit[1]]
            rest = [(x, y, dec) for k, ((x, y), dec) in enumerate(zip(result.pairs, result.decorations))
                    if k not in hit]
            result = make_blob(n, rest + [(p, r, (TOP,)), (q, s, (BOT,))], check=False)
            params.append(KAPPA)
    if check:
        problem = validate_blob(result)
        if problem is not None:
            raise InvalidDecoration(f"{result}: {problem}")
    return Monomial.of(*params), result


def sb_product(gens: Sequence[str], n: int, rules: str | None = None) -> tuple[Monomial, BlobDiagram]:
    coeff, cur = ONE, sb_identity(n)
    for g in gens:
        m, cur = sb_multiply(cur, sb_generator(g, n), rules)
        coeff = coeff * m
    return coeff, cur


# relations --------------------------------------------------------------

def ij_words(n: int) -> tuple[list[str], list[str]]:
    if n % 2:
        I = ["fn"] + [f"e{2 * k - 1}" for k in range(1, (n - 1) // 2 + 1)]
        J = ["f0"] + [f"e{2 * k}" for k in range(1, (n - 1) // 2 + 1)]
    else:
        I = [f"e{2 * k - 1}" for k in range(1, n // 2 + 1)]
        J = ["f0", "fn"] + [f"e{2 * k}" for k in range(1, n // 2)]
    return I, J


@dataclass(frozen=True)
class SbRelation:
    id: str
    lhs: tuple[str, ...]
    scalar: Monomial
    rhs: tuple[str, ...]

    def __str__(self) -> str:
        s = "" if self.scalar.is_one() else f"{self.scalar} "
        return f"{self.id}: {'.'.join(self.lhs) or 'ID'} = {s}{'.'.join(self.rhs) or 'ID'}"


def sb_relations(n: int) -> list[SbRelation]:
    def rel(rid, lhs, rhs, *params):
        return SbRelation(rid, tuple(lhs), Monomial.of(*params), tuple(rhs))

    out = []
    idx = range(1, n)
    for i in idx:
        for j in idx:
            if abs(i - j) >= 2:
                out.append(rel("S1", [f"e{i}", f"e{j}"], [f"e{j}", f"e{i}"]))
            if abs(i - j) == 1:
                out.append(rel("S2", [f"e{i}", f"e{j}", f"e{i}"], [f"e{i}"]))
        out.append(rel("S3", [f"e{i}", f"e{i}"], [f"e{i}"], BETA))
    for j in range(2, n):
        out.append(rel("S4", ["f0", f"e{j}"], [f"e{j}", "f0"]))
    if n >= 2:
        out.append(rel("S5", ["e1", "f0", "e1"], ["e1"], sb_alpha(1)))
    out.append(rel("S6", ["f0", "f0"], ["f0"], sb_alpha(2)))
    for j in range(1, n - 1):
        out.append(rel("S7", ["fn", f"e{j}"], [f"e{j}", "fn"]))
    if n >= 2:
        out.append(rel("S8", [f"e{n - 1}", "fn", f"e{n - 1}"], [f"e{n - 1}"], sb_delta(1)))
    out.append(rel("S9", ["fn", "fn"], ["fn"], sb_delta(2)))
    if n >= 2:
        out.append(rel("S10", ["f0", "fn"], ["fn", "f0"]))
    I, J = ij_words(n)
    out.append(rel("S11", I + J + I, I, KAPPA))
    out.append(rel("S12", J + I + J, J, KAPPA))
    return out


@dataclass
class SbReport:
    n: int
    checked: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        head = f"sb n={self.n}: {self.checked} relations, {len(self.failures)} failures"
        return "\n".join([head] + self.failures)


def check_sb_relation(r: SbRelation, n: int) -> str | None:
    try:
        m1, d1 = sb_product(r.lhs, n)
        m2, d2 = sb_product(r.rhs, n)
    except BlobError as exc:
        return f"{r}: {exc}"
    if d1 != d2 or m1 != r.scalar * m2:
        return f"{r}: lhs gives {m1} {d1}, rhs gives {r.scalar * m2} {d2}"
    return None


def sb_verify_relations(n: int, relations: Sequence[SbRelation] | None = None) -> SbReport:
    rels = sb_relations(n) if relations is None else list(relations)
    fails = [msg for msg in (check_sb_relation(r, n) for r in rels) if msg]
    return SbReport(n, len(rels), fails)


# enumeration ------------------------------------------------------------

def enumerate_blob(n: int, max_blobs: int = 2) -> list[BlobDiagram]:
    """All valid basis diagrams with at most ``max_blobs`` blobs per string."""
    seqs = [()]
    for k in range(1, max_blobs + 1):
        seqs += [s for s in product((TOP, BOT), repeat=k)
                 if all(u != v for u, v in zip(s, s[1:]))]
    out = []
    for pairs in enumerate_matchings(n, 0, 0):
        for decs in product(seqs, repeat=len(pairs)):
            try:
                out.append(make_blob(n, [(x, y, dec) for (x, y), dec in zip(pairs, decs)]))
            except InvalidDecoration:
                continue
    return sorted(out)


# the map from even words ------------------------------------------------

_SIGMA = {"FUP": "f0", "FDN": "fn"}


def sigma_word(w, n: int) -> list[str]:
    out = []
    for g in w:
        if g.kind == "E":
            out.append(f"e{g.i}")
        elif g.kind in _SIGMA:
            out.append(_SIGMA[g.kind])
        else:
            raise NotEvenReduced(f"{g} has no symplectic blob image")
    return out


@dataclass
class SigmaReport:
    word: str
    image: str
    diagram: str
    coefficient: Monomial
    top_blobs: int
    bottom_blobs: int
    top_links: int
    bottom_links: int

    @property
    def ok(self) -> bool:
        return (self.coefficient.is_one() and 2 * self.top_blobs == self.top_links
                and 2 * self.bottom_blobs == self.bottom_links)


def sigma_check(w, n: int, X: Sequence[str]) -> SigmaReport:
    """Compare an even-reduced word's blob image with its label diagram."""
    m, d, trace = evaluate(w, n, X)
    if not m.is_one() or not trace.clean or d.parity() != "even":
        raise NotEvenReduced(f"{w} does not evaluate to an even diagram with coefficient 1")
    image = sigma_word(w, n)
    coeff, bd = sb_product(image, n)
    return SigmaReport(str(Word(w)), ".".join(image) or "ID", str(bd), coeff, bd.blob_count(TOP), bd.blob_count(BOT),
                       d.t, d.b)
