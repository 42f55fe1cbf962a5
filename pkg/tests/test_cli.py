import io
import subprocess
import sys

import pytest

from diagalg.cli import ParseError, main, parse_combination, parse_diagram, parse_monomial, parse_word
from diagalg.coeff import BETA, Monomial, alpha_up
from diagalg.diagram import serialize
from diagalg.labelalg import E, FUp, LinearCombination, WUp
from diagalg.presentation import Word

from worked_examples import LABEL_EXAMPLES


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_dim():
    assert run("dim", "1", "2") == (0, "17\n", "")


def test_mul_worked_example():
    d1, d2, mono, prod = LABEL_EXAMPLES[0]
    code, out, _ = run("mul", str(d1), str(d2))
    assert code == 0
    coeff, diagram = out.splitlines()
    assert coeff == "b*aup[1,0]*g[0,1]*g[1,1]"
    assert parse_monomial(coeff) == mono
    assert parse_diagram(diagram) == prod


def test_mul_other_algebras():
    code, out, _ = run("mul", "S(n=2;pairs=(L1,L2);(R1,R2);dec=2:tb)", "S(n=2;pairs=(L1,L2);(R1,R2);dec=1:t)",
                       "--algebra", "sb")
    assert code == 0 and out.splitlines()[0] == "k*sa2"
    g = "G(n=1;topGhosts=0;bottomGhosts=0;pairs=(L1,R1))"
    code, out, _ = run("mul", g, g, "--algebra", "ghost")
    assert code == 0 and out.splitlines() == ["1", g]


def test_phi_identity():
    code, out, _ = run("phi", "ID", "--n", "3", "--X", "a")
    assert code == 0
    assert out == "1 * D(n=3;X=a;top=;bottom=;pairs=(L1,R1);(L2,R2);(L3,R3))\n"


def test_enum_round_trip():
    code, out, _ = run("enum", "2", "a,b")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 186
    assert all(serialize(parse_diagram(s)) == s for s in lines)


def test_wt_and_decompose():
    code, out, _ = run("wt", "FDN[c,d].E2.E1.WUP[a,b]", "--n", "3", "--X", "a,b,c,d")
    assert (code, out) == (0, "1 | W(a,c,3) | FDN[d,b]\n")
    code, out, _ = run("decompose", "D(n=2;X=a,b;top=a;bottom=b;pairs=(L1,T1);(L2,R1);(B1,R2))")
    assert (code, out) == (0, "WUP[a,b]\n")


def test_render():
    d = "D(n=1;X=a;top=;bottom=;pairs=(L1,R1))"
    code, out, _ = run("render", d, "--format", "canonical")
    assert (code, out.strip()) == (0, d)
    code, out, _ = run("render", d, "--format", "tikz")
    assert code == 0 and "tikzpicture" in out


def test_verify_all_small():
    code, out, _ = run("verify", "--n", "2", "--X", "a,b", "--suite", "all")
    assert code == 0 and out.splitlines()[-1] == "OK"


def test_errors():
    code, _, err = run("mul", "D(n=1;X=a;top=;bottom=;pairs=(L1,R1)", "x")
    assert code == 2 and "column 37" in err
    code, _, err = run("bogus")
    assert code == 2
    code, _, err = run("mul", "D(n=2;X=a;top=;bottom=;pairs=(L1,R2);(L2,R1))", "ID")
    assert code == 2


def test_parsers():
    assert parse_monomial("1") == Monomial()
    assert parse_monomial("b^2*aup[a,b]") == Monomial({BETA: 2, alpha_up("a", "b"): 1})
    assert parse_word("ID") == Word()
    assert parse_word("E1.WUP[a,b].FUP[b,a]") == Word([E(1), WUp("a", "b"), FUp("b", "a")])
    with pytest.raises(ParseError) as info:
        parse_word("E1.XYZ")
    assert info.value.col == 4
    d = "D(n=1;X=a;top=;bottom=;pairs=(L1,R1))"
    c = parse_combination(f"(2*b) * {d}")
    c = c + LinearCombination.of(parse_diagram(d))
    assert str(c) == f"(1 + 2*b) * {d}"
    assert parse_combination(str(c)) == c


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "diagalg", "dim", "2", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "21\n"
