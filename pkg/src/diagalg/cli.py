"""Command-line interface and text grammars.

Grammars (whitespace-free):

    monomial    1 | factor ("*" factor)*,  factor = name ["^" int]
                names: b k aup[x,y] ddo[x,y] g[x,y] ga1..3 gd1..3 gg12 gg3 sa1 sa2 sd1 sd2
    polynomial  monomials with integer coefficients joined by + and -
    diagram     D(n=3;X=a,b;top=a;bottom=b;pairs=(L1,T1);(L2,L3);...)
    ghost       G(n=..;topGhosts=<bits>;bottomGhosts=<bits>;pairs=...)
    blob        S(n=..;pairs=...;dec=<string>:<t|b>...,...)
    word        E1.WUP[a,b].FDN[c,d], or ID for the empty word
    combination <poly> * <diagram> joined by " + "

Exit codes: 0 success, 1 verification failure, 2 parse or usage error.
DIAGALG_THREADS caps the number of worker processes used by ``verify``.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import Callable, Sequence

from .coeff import (BETA, KAPPA, GHOST_GAMMA3, GHOST_GAMMA12, Monomial, ParamId, Polynomial, alpha_up,
                    delta_down, gamma, ghost_alpha, ghost_delta, sb_alpha, sb_delta)
from .decompose import decompose
from .diagram import Diagram, DiagramError, Endpoint, enumerate_all, make_diagram, render
from .ghostalg import GhostDiagram, enumerate_ghost, ghost_concat, iso_check, make_ghost
from .labelalg import Generator, LabelAlgebraError, LinearCombination, concat, dimension
from .presentation import Word, evaluate, phi, verify_relations
from .rewrite import to_wt_form
from .sympblob import BlobDiagram, BlobError, make_blob, sb_multiply, sb_verify_relations

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, col: int, line: int = 1):
        super().__init__(f"line {line}, column {col}: {msg}\n  {text}\n  {' ' * (col - 1)}^")
        self.line, self.col = line, col


class _Cursor:
    def __init__(self, text: str):
        self.text, self.pos = text.strip(), 0

    def error(self, msg: str, pos: int | None = None) -> ParseError:
        return ParseError(msg, self.text, (self.pos if pos is None else pos) + 1)

    def peek(self, lit: str) -> bool:
        return self.text.startswith(lit, self.pos)

    def accept(self, lit: str) -> bool:
        if self.peek(lit):
            self.pos += len(lit)
            return True
        return False

    def expect(self, lit: str) -> None:
        if not self.accept(lit):
            got = self.text[self.pos:self.pos + len(lit)] or "end of input"
            raise self.error(f"expected {lit!r}, got {got!r}")

    def name(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a name")
        return self.text[start:self.pos]

    def integer(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def names(self, stop: str) -> list[str]:
        out: list[str] = []
        if self.peek(stop):
            return out
        out.append(self.name())
        while self.accept(","):
            out.append(self.name())
        return out

    def end(self) -> None:
        if self.pos != len(self.text):
            raise self.error(f"unexpected {self.text[self.pos]!r}")


# coefficients ------------------------------------------------------------

_PLAIN = {"b": BETA, "k": KAPPA, "gg12": GHOST_GAMMA12, "gg3": GHOST_GAMMA3}
_LABELLED = {"aup": alpha_up, "ddo": delta_down, "g": gamma}
_NUMBERED = {"ga": (ghost_alpha, 3), "gd": (ghost_delta, 3), "sa": (sb_alpha, 2), "sd": (sb_delta, 2)}


def _param(c: _Cursor) -> ParamId:
    start = c.pos
    name = c.name()
    if name in _PLAIN:
        return _PLAIN[name]
    if name in _LABELLED and c.accept("["):
        x = c.name()
        c.expect(",")
        y = c.name()
        c.expect("]")
        return _LABELLED[name](x, y)
    for prefix, (make, top) in _NUMBERED.items():
        rest = name[len(prefix):]
        if name.startswith(prefix) and rest.isdigit() and 1 <= int(rest) <= top:
            return make(int(rest))
    raise c.error(f"unknown parameter {name!r}", start)


def _monomial(c: _Cursor) -> Monomial:
    if c.accept("1") and not c.accept("*"):
        return Monomial()
    factors: list[ParamId] = []
    while True:
        p = _param(c)
        k = c.integer() if c.accept("^") else 1
        factors += [p] * k
        if not c.accept("*"):
            return Monomial.of(*factors)


def parse_monomial(text: str) -> Monomial:
    c = _Cursor(text)
    m = _monomial(c)
    c.end()
    return m


def _polynomial(c: _Cursor) -> Polynomial:
    total = Polynomial()
    sign = -1 if c.accept("-") else 1
    while True:
        coef = 1
        if c.pos < len(c.text) and c.text[c.pos].isdigit():
            coef = c.integer()
            if c.accept("*"):
                m = _monomial(c)
            else:
                m = Monomial()
        else:
            m = _monomial(c)
        total = total + Polynomial.from_monomial(m, sign * coef)
        c.accept(" ")
        if c.accept("+"):
            sign = 1
        elif c.accept("-"):
            sign = -1
        else:
            return total
        c.accept(" ")


def parse_polynomial(text: str) -> Polynomial:
    c = _Cursor(text)
    p = _polynomial(c)
    c.end()
    return p


# diagrams ----------------------------------------------------------------

def _endpoint(c: _Cursor, sides: str) -> Endpoint:
    start = c.pos
    side = c.text[c.pos:c.pos + 1]
    if not side or side not in sides:
        raise c.error(f"expected an endpoint {'|'.join(sides)}<i>")
    c.pos += 1
    idx = c.integer()
    if idx < 1:
        raise c.error("endpoint index must be positive", start)
    return Endpoint(side, idx)


def _pairs(c: _Cursor, sides: str, stop: str) -> list[tuple[Endpoint, Endpoint]]:
    out = []
    if c.peek(stop):
        return out
    while True:
        c.expect("(")
        x = _endpoint(c, sides)
        c.expect(",")
        y = _endpoint(c, sides)
        c.expect(")")
        out.append((x, y))
        if not c.peek(";("):
            return out
        c.expect(";")


def _diagram(c: _Cursor) -> Diagram:
    start = c.pos
    c.expect("D(n=")
    n = c.integer()
    c.expect(";X=")
    X = c.names(";")
    c.expect(";top=")
    top = c.names(";")
    c.expect(";bottom=")
    bottom = c.names(";")
    c.expect(";pairs=")
    pairs = _pairs(c, "LRTB", ")")
    c.expect(")")
    try:
        return make_diagram(n, X, top, bottom, pairs)
    except (DiagramError, TypeError) as exc:
        raise c.error(f"invalid diagram: {exc}", start) from None


def parse_diagram(text: str) -> Diagram:
    c = _Cursor(text)
    d = _diagram(c)
    c.end()
    return d


def _bits(c: _Cursor) -> list[int]:
    start = c.pos
    while c.pos < len(c.text) and c.text[c.pos] in "01":
        c.pos += 1
    if start == c.pos:
        raise c.error("expected ghost bits")
    return [int(x) for x in c.text[start:c.pos]]


def parse_ghost(text: str) -> GhostDiagram:
    c = _Cursor(text)
    c.expect("G(n=")
    n = c.integer()
    c.expect(";topGhosts=")
    tg = _bits(c)
    c.expect(";bottomGhosts=")
    bg = _bits(c)
    c.expect(";pairs=")
    pairs = _pairs(c, "LRTB", ")")
    c.expect(")")
    c.end()
    try:
        return make_ghost(n, tg, bg, pairs)
    except DiagramError as exc:
        raise c.error(f"invalid ghost diagram: {exc}", 0) from None


def parse_blob(text: str) -> BlobDiagram:
    c = _Cursor(text)
    c.expect("S(n=")
    n = c.integer()
    c.expect(";pairs=")
    pairs = _pairs(c, "LR", ";")
    c.expect(";dec=")
    decs: dict[int, str] = {}
    while not c.peek(")"):
        at = c.pos
        k = c.integer()
        c.expect(":")
        start = c.pos
        while c.pos < len(c.text) and c.text[c.pos] in "tb":
            c.pos += 1
        if not 1 <= k <= len(pairs):
            raise c.error(f"string index {k} out of range", at)
        decs[k] = c.text[start:c.pos]
        if not c.accept(","):
            break
    c.expect(")")
    c.end()
    try:
        return make_blob(n, [(x, y, decs.get(k, "")) for k, (x, y) in enumerate(pairs, 1)])
    except BlobError as exc:
        raise c.error(f"invalid blob diagram: {exc}", 0) from None


# words -------------------------------------------------------------------

def _generator(c: _Cursor) -> Generator:
    start = c.pos
    if c.accept("ID"):
        return Generator("ID")
    for kind in ("FUP", "FDN", "WUP", "WDN"):
        if c.accept(kind):
            c.expect("[")
            a = c.name()
            c.expect(",")
            b = c.name()
            c.expect("]")
            return Generator(kind, 0, a, b)
    if c.accept("E"):
        return Generator("E", c.integer())
    raise c.error("expected a generator E<i>, FUP[a,b], FDN[a,b], WUP[a,b], WDN[a,b] or ID", start)


def parse_word(text: str) -> Word:
    c = _Cursor(text)
    gens = [_generator(c)]
    while c.accept("."):
        gens.append(_generator(c))
    c.end()
    return Word(gens)


def parse_combination(text: str) -> LinearCombination:
    c = _Cursor(text)
    if c.accept("0"):
        c.end()
        return LinearCombination()
    out = LinearCombination()
    while True:
        if c.accept("("):
            p = _polynomial(c)
            c.expect(")")
        else:
            p = Polynomial.from_monomial(_monomial(c))
        c.expect(" * ")
        out = out + LinearCombination.of(_diagram(c), p)
        if not c.accept(" + "):
            break
    c.end()
    return out


# subcommands ---------------------------------------------------------------

def _labels(text: str) -> tuple[str, ...]:
    c = _Cursor(text)
    X = c.names("\0")
    c.end()
    return tuple(X)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("DIAGALG_THREADS", "1")))
    except ValueError:
        return 1


def _mapper() -> tuple[Callable, ProcessPoolExecutor | None]:
    k = _threads()
    if k <= 1:
        return map, None
    pool = ProcessPoolExecutor(max_workers=k)
    return (lambda fn, items: pool.map(fn, items, chunksize=64)), pool


def cmd_mul(args, out) -> int:
    if args.algebra == "label":
        m, d, _ = concat(parse_diagram(args.d1), parse_diagram(args.d2))
    elif args.algebra == "ghost":
        m, d = ghost_concat(parse_ghost(args.d1), parse_ghost(args.d2))
    else:
        m, d = sb_multiply(parse_blob(args.d1), parse_blob(args.d2))
    out.write(f"{m}\n{d}\n")
    return EXIT_OK


def cmd_dim(args, out) -> int:
    out.write(f"{dimension(args.n, args.xsize)}\n")
    return EXIT_OK


def cmd_enum(args, out) -> int:
    for d in enumerate_all(args.n, _labels(args.X)):
        out.write(f"{d}\n")
    return EXIT_OK


def cmd_phi(args, out) -> int:
    out.write(f"{phi(parse_word(args.word), args.n, _labels(args.X))}\n")
    return EXIT_OK


def cmd_wt(args, out) -> int:
    form = to_wt_form(parse_word(args.word), args.n, _labels(args.X))
    if args.steps:
        for s in form.steps:
            out.write(f"{s}\n")
    out.write(form.format(args.n) + "\n")
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    out.write(f"{decompose(parse_diagram(args.diagram))}\n")
    return EXIT_OK


def cmd_render(args, out) -> int:
    out.write(render(parse_diagram(args.diagram), args.format))
    return EXIT_OK


def _suite_label(n: int, X, out) -> bool:
    run, pool = _mapper()
    try:
        report = verify_relations(n, X, mapper=run)
    finally:
        if pool:
            pool.shutdown()
    out.write(f"label relations: {report.summary()}\n")
    return report.ok


def _suite_decompose(n: int, X, out) -> bool:
    fails, count = [], 0
    for d in enumerate_all(n, X):
        count += 1
        w = decompose(d)
        m, got, trace = evaluate(w, n, X)
        if got != d or not m.is_one() or not trace.clean:
            fails.append(f"  FAIL {d}: {w} gives {m} {got}")
    out.write(f"decompose round trip: n={n} X={','.join(X)}: {count} diagrams, {len(fails)} failures\n")
    out.writelines(f + "\n" for f in fails)
    return not fails


def _suite_ghost_iso(n: int, out, pairs: int = 200, seed: int = 0) -> bool:
    gs = list(enumerate_ghost(n))
    rng = random.Random(seed)
    if len(gs) ** 2 <= pairs:
        todo = list(product(gs, gs))
    else:
        todo = [(rng.choice(gs), rng.choice(gs)) for _ in range(pairs)]
    fails = [msg for msg in (iso_check(a, b) for a, b in todo) if msg]
    out.write(f"ghost-label isomorphism: n={n}: {len(todo)} pairs, {len(fails)} failures\n")
    out.writelines(f"  FAIL {f}\n" for f in fails)
    return not fails


def _suite_sb(n: int, out) -> bool:
    report = sb_verify_relations(n)
    out.write(report.summary() + "\n")
    return report.ok


def cmd_verify(args, out) -> int:
    X = _labels(args.X)
    suites = ["label", "decompose", "ghost-iso", "sb"] if args.suite == "all" else [args.suite]
    ok = True
    for s in suites:
        if s == "label":
            ok &= _suite_label(args.n, X, out)
        elif s == "decompose":
            ok &= _suite_decompose(args.n, X, out)
        elif s == "ghost-iso":
            ok &= _suite_ghost_iso(args.n, out)
        else:
            ok &= _suite_sb(args.n, out)
    out.write("OK\n" if ok else "FAILED\n")
    return EXIT_OK if ok else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="diagalg", description="Label, ghost and symplectic blob diagram algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("mul", help="multiply two diagrams")
    s.add_argument("d1")
    s.add_argument("d2")
    s.add_argument("--algebra", choices=["label", "ghost", "sb"], default="label")
    s.set_defaults(fn=cmd_mul)

    s = sub.add_parser("dim", help="dimension of L_n(X) for |X| = xsize")
    s.add_argument("n", type=int)
    s.add_argument("xsize", type=int)
    s.set_defaults(fn=cmd_dim)

    s = sub.add_parser("enum", help="list every diagram")
    s.add_argument("n", type=int)
    s.add_argument("X", help="comma-separated labels")
    s.set_defaults(fn=cmd_enum)

    for name, fn, helptext in (("phi", cmd_phi, "evaluate a word"), ("wt", cmd_wt, "WT form of a word")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("word")
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--X", required=True)
        if name == "wt":
            s.add_argument("--steps", action="store_true", help="print every rewrite step")
        s.set_defaults(fn=fn)

    s = sub.add_parser("decompose", help="write a diagram as a word")
    s.add_argument("diagram")
    s.set_defaults(fn=cmd_decompose)

    s = sub.add_parser("verify", help="run relation and oracle suites")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--X", required=True)
    s.add_argument("--suite", choices=["label", "decompose", "ghost-iso", "sb", "all"], default="all")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("render", help="draw a diagram")
    s.add_argument("diagram")
    s.add_argument("--format", choices=["ascii", "tikz", "canonical"], default="ascii")
    s.set_defaults(fn=cmd_render)
    return p


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    try:
        return args.fn(args, out)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except (LabelAlgebraError, DiagramError, BlobError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
