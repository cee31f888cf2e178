import glob
import os
import random
import re
from fractions import Fraction

import pytest

from fdga import data_path
from fdga.dsl import (LEXICAL, SEMANTIC, SYNTACTIC, DSLError, format_definition, parse,
                      parse_file, same_model)
from fdga.hopf import build_e1_u, sphere_models

DATA = os.path.dirname(data_path("E1U.fdga"))
SHIPPED = sorted(glob.glob(os.path.join(DATA, "*.fdga")))
BAD = sorted(glob.glob(os.path.join(os.path.dirname(__file__), "data", "bad", "*.fdga")))


def expectation(path):
    with open(path, encoding="utf-8") as fh:
        m = re.match(r"# expect: (E\d+) (\d+):(\d+)", fh.readline())
    return m.group(1), int(m.group(2)), int(m.group(3))


@pytest.mark.parametrize("path", SHIPPED, ids=os.path.basename)
def test_round_trip_fixed_point(path):
    m1 = parse_file(path)
    s1 = format_definition(m1)
    m2 = parse(s1)
    assert same_model(m1, m2)
    assert format_definition(m2) == s1


def test_shipped_algebras_match_builders():
    m = parse_file(data_path("E1U.fdga"))
    assert m.algebra("E1U") == build_e1_u()
    s = parse_file(data_path("spheres.fdga"))
    MS2, MS3, _, _ = sphere_models()
    assert s.algebra("MS2") == MS2 and s.algebra("MS3") == MS3


def test_corpus_is_large_and_covers_every_class():
    assert len(BAD) >= 10
    kinds = {{"1": LEXICAL, "2": SYNTACTIC, "3": SEMANTIC}[expectation(p)[0][1]] for p in BAD}
    assert kinds == {LEXICAL, SYNTACTIC, SEMANTIC}


@pytest.mark.parametrize("path", BAD, ids=os.path.basename)
def test_negative_corpus(path):
    code, line, col = expectation(path)
    with pytest.raises(DSLError) as e:
        parse_file(path)
    d = e.value.diagnostics[0]
    assert (d.code, d.line, d.col) == (code, line, col)
    assert d.token and d.message
    assert f"{line}:{col}" in str(e.value)


def test_several_errors_are_reported_together():
    text = "[algebra A]\n[generators]\nx : 2$, 0\ny : 3 0\nz % 1, 0\n"
    with pytest.raises(DSLError) as e:
        parse(text)
    codes = [d.code for d in e.value.diagnostics]
    assert codes == ["E101", "E201", "E101"]
    assert e.value.diagnostics[1].expected == "','"


def test_expressions():
    text = """
[algebra A]
[generators]
x : 2, 0
y : 2, 1
z : 3, 1
[d]
z = 2x^2 - 3/2 (x y) + y*x*1/2
"""
    A = parse(text).algebra("A")
    x, y = A.gen("x"), A.gen("y")
    assert A.differential["z"] == x * x * 2 - x * y
    assert str(A.differential["z"]) == "2*x^2 - x*y"


def test_homotopy_and_composition():
    m = parse_file(data_path("hopf.fdga"))
    f = m.morphism("rhop.ftilde")
    assert str(f.images["beta"]) == "-u*a - v*b"
    h = m.homotopies["h"]
    assert (h.start, h.end, h.r) == ("rhop.ftilde", "E1g.rho", 1)
    with pytest.raises(KeyError):
        m.morphism("rhop.nothing")


def test_reserved_names_are_usable_only_in_homotopies():
    text = "[algebra A]\n[generators]\nx : 2, 0\n[relations]\nt*x\n"
    with pytest.raises(DSLError) as e:
        parse(text)
    assert e.value.diagnostics[0].code == "E301"


def random_element_text(rng, names):
    """A homogeneous degree-4 element in degree-2 generators, as text."""
    terms = []
    for _ in range(rng.randint(1, 4)):
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        mono = rng.choice([f"{rng.choice(names)}^2", f"{names[0]}*{names[1]}", f"{names[1]} {names[0]}"])
        lit = f"{c.numerator}/{c.denominator}" if c.denominator != 1 else f"{c}"
        terms.append(f"{lit}*{mono}")
    return " + ".join(terms).replace("+ -", "- ")


def test_random_relations_round_trip():
    rng = random.Random(2)
    for _ in range(30):
        rel = random_element_text(rng, ["x", "y"])
        text = f"[algebra A]\ntruncation = 8\n[generators]\nx : 2, 0\ny : 2, 1\n[relations]\n{rel}\n"
        m = parse(text)
        s = format_definition(m)
        assert format_definition(parse(s)) == s
        assert same_model(m, parse(s))
    with pytest.raises(DSLError) as e:
        parse("[algebra A]\n[generators]\nx : 2, 0\n[relations]\nx + x^2\n")
    assert e.value.diagnostics[0].code == "E302"
