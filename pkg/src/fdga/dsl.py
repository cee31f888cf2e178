"""A small line-oriented definition language for algebras, maps, homotopies and bigradings.

Grammar (one statement per line, ``#`` starts a comment)::

    file       := { header | statement }
    header     := '[' KIND [NAME] ']'
    KIND       := algebra | generators | relations | d | morphism | homotopy | bigrading
    statement  := key '=' value            (algebra, morphism, homotopy, bigrading)
                | NAME ':' INT ',' INT     (generators: degree, weight)
                | expr                     (relations)
                | NAME '=' expr            (d; morphism and homotopy images)
                | INT ':' expr {',' expr}  (bigrading: elements of weight p)
    expr       := ['+'|'-'] term {('+'|'-') term}
    term       := factor {['*'] factor}
    factor     := atom ['^' INT]
    atom       := INT ['/' INT] | NAME | '(' expr ')'

Names are letters, digits, ``_`` and ``'``, not starting with a digit.
``t`` and ``dt`` are reserved for path expressions in homotopy blocks.
"""
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import (CDGA, DEFAULT_TRUNCATION, Element, FreeAlgebra, Generator, Morphism,
                      PresentationError, check_morphism)
from .linalg import Subspace
from .paths import PathElement, PathMorphism

LEXICAL, SYNTACTIC, SEMANTIC = "lexical", "syntactic", "semantic"

RESERVED = {"t", "dt"}
SECTIONS = {"algebra", "generators", "relations", "d", "morphism", "homotopy", "bigrading"}
NAMED = {"algebra", "morphism", "homotopy", "bigrading"}


@dataclass(frozen=True)
class Diagnostic:
    code: str
    line: int
    col: int
    token: str
    message: str
    expected: str = ""

    @property
    def kind(self) -> str:
        return {"1": LEXICAL, "2": SYNTACTIC, "3": SEMANTIC}[self.code[1]]

    def __str__(self):
        s = f"{self.line}:{self.col}: {self.code} {self.kind} error: {self.message}"
        if self.token:
            s += f" at {self.token!r}"
        if self.expected:
            s += f" (expected {self.expected})"
        return s


class DSLError(ValueError):
    def __init__(self, diagnostics: List[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(map(str, self.diagnostics)))


# -- lexer ---------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, OP, EOL
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_']*)|(\d+)|([-+*/^()\[\]:,=.]))")


def tokenize(text: str, diags: List[Diagnostic]) -> List[List[Token]]:
    """Tokens grouped by source line.

    Blank and comment-only lines are dropped, and so are lines with a lexical
    error, so that one bad character gives one diagnostic.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = []
        pos = 0
        bad = False
        while pos < len(body):
            if body[pos].isspace():
                pos += 1
                continue
            m = _TOKEN_RE.match(body, pos)
            if not m or m.end() == pos:
                diags.append(Diagnostic("E101", lineno, pos + 1, body[pos],
                                        "unexpected character"))
                bad = True
                pos += 1
                continue
            start = m.start(m.lastindex)
            if m.group(1):
                toks.append(Token("NAME", m.group(1), lineno, start + 1))
            elif m.group(2):
                toks.append(Token("INT", m.group(2), lineno, start + 1))
            else:
                toks.append(Token("OP", m.group(3), lineno, start + 1))
            pos = m.end()
        if toks and not bad:
            toks.append(Token("EOL", "", lineno, len(body.rstrip()) + 1))
            lines.append(toks)
    return lines


# -- expression syntax trees -----------------------------------------------------

@dataclass
class Num:
    value: Fraction
    tok: Token


@dataclass
class Name:
    name: str
    tok: Token


@dataclass
class Sum:
    terms: list  # (sign, node)
    tok: Token


@dataclass
class Prod:
    factors: list
    tok: Token


@dataclass
class Pow:
    base: object
    exp: int
    tok: Token


class _Syntax(Exception):
    def __init__(self, diag):
        self.diag = diag


class _Cursor:
    def __init__(self, toks: List[Token]):
        self.toks = toks
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "EOL":
            self.i += 1
        return t

    def at(self, kind, text=None) -> bool:
        t = self.peek()
        return t.kind == kind and (text is None or t.text == text)

    def expect(self, kind, text=None, what=None) -> Token:
        t = self.peek()
        if t.kind != kind or (text is not None and t.text != text):
            raise _Syntax(Diagnostic("E201", t.line, t.col, t.text or "end of line",
                                     "unexpected token", what or text or kind.lower()))
        return self.next()

    def expect_end(self):
        t = self.peek()
        if t.kind != "EOL":
            raise _Syntax(Diagnostic("E201", t.line, t.col, t.text, "unexpected token",
                                     "end of line"))


def _int(cur: _Cursor) -> Tuple[int, Token]:
    sign = 1
    first = cur.peek()
    if cur.at("OP", "-"):
        cur.next()
        sign = -1
    elif cur.at("OP", "+"):
        cur.next()
    t = cur.expect("INT", what="integer")
    return sign * int(t.text), first


def parse_expr(cur: _Cursor):
    first = cur.peek()
    terms = []
    sign = 1
    if cur.at("OP", "-") or cur.at("OP", "+"):
        sign = -1 if cur.next().text == "-" else 1
    terms.append((sign, _term(cur)))
    while cur.at("OP", "+") or cur.at("OP", "-"):
        sign = -1 if cur.next().text == "-" else 1
        terms.append((sign, _term(cur)))
    return Sum(terms, first)


def _starts_atom(t: Token) -> bool:
    return t.kind in ("INT", "NAME") or (t.kind == "OP" and t.text == "(")


def _term(cur: _Cursor):
    first = cur.peek()
    factors = [_factor(cur)]
    while True:
        if cur.at("OP", "*"):
            cur.next()
            factors.append(_factor(cur))
        elif _starts_atom(cur.peek()):
            factors.append(_factor(cur))
        else:
            break
    return Prod(factors, first) if len(factors) > 1 else factors[0]


def _factor(cur: _Cursor):
    base = _atom(cur)
    if cur.at("OP", "^"):
        tok = cur.next()
        e = cur.expect("INT", what="exponent")
        return Pow(base, int(e.text), tok)
    return base


def _atom(cur: _Cursor):
    t = cur.peek()
    if t.kind == "INT":
        cur.next()
        value = Fraction(int(t.text))
        if cur.at("OP", "/"):
            cur.next()
            den = cur.expect("INT", what="denominator")
            if int(den.text) == 0:
                raise _Syntax(Diagnostic("E103", den.line, den.col, den.text,
                                         "zero denominator in rational literal"))
            value /= int(den.text)
        return Num(value, t)
    if t.kind == "NAME":
        cur.next()
        return Name(t.text, t)
    if t.kind == "OP" and t.text == "(":
        cur.next()
        e = parse_expr(cur)
        c = cur.peek()
        if not (c.kind == "OP" and c.text == ")"):
            raise _Syntax(Diagnostic("E202", c.line, c.col, c.text or "end of line",
                                     "unclosed parenthesis", "')'"))
        cur.next()
        return e
    raise _Syntax(Diagnostic("E201", t.line, t.col, t.text or "end of line",
                             "unexpected token", "a number, a name or '('"))


def expr_names(node) -> List[Name]:
    if isinstance(node, Name):
        return [node]
    if isinstance(node, Num):
        return []
    if isinstance(node, Sum):
        return [n for _, x in node.terms for n in expr_names(x)]
    if isinstance(node, Prod):
        return [n for x in node.factors for n in expr_names(x)]
    return expr_names(node.base)


class _Semantic(Exception):
    def __init__(self, diag):
        self.diag = diag


def _evaluate(node, lookup, one):
    if isinstance(node, Num):
        return one * node.value
    if isinstance(node, Name):
        return lookup(node)
    if isinstance(node, Sum):
        out = None
        for sign, x in node.terms:
            v = _evaluate(x, lookup, one)
            v = v if sign > 0 else -v
            out = v if out is None else out + v
        return out
    if isinstance(node, Prod):
        out = _evaluate(node.factors[0], lookup, one)
        for x in node.factors[1:]:
            out = out * _evaluate(x, lookup, one)
        return out
    return _evaluate(node.base, lookup, one) ** node.exp


# -- definition model --------------------------------------------------------------

@dataclass
class AlgebraDef:
    algebra: CDGA
    weight_range: Optional[Tuple[int, int]] = None


@dataclass
class HomotopyDef:
    name: str
    source: str
    target: str
    r: int
    start: str
    end: str
    homotopy: PathMorphism


@dataclass
class BigradingDef:
    name: str
    algebra: str
    r: int
    from_weights: bool = False
    spans: Dict[int, List[Element]] = field(default_factory=dict)

    def resolve(self, A: CDGA):
        """G[n][p] per degree, as used by the splitting module."""
        if self.from_weights:
            from .splitting import bigrading_from_weights
            return bigrading_from_weights(A)
        G = {}
        for n in range(A.truncation + 1):
            dim = A.dim(n)
            G[n] = {}
            for p, elems in self.spans.items():
                vs = [A.vector(x, n) for x in elems if A.reduce(x) and x.degree == n]
                if vs:
                    G[n][p] = Subspace(dim, vs)
        return G


@dataclass
class DefinitionFile:
    algebras: Dict[str, AlgebraDef] = field(default_factory=dict)
    morphisms: Dict[str, Morphism] = field(default_factory=dict)
    homotopies: Dict[str, HomotopyDef] = field(default_factory=dict)
    bigradings: Dict[str, BigradingDef] = field(default_factory=dict)
    order: List[Tuple[str, str]] = field(default_factory=list)

    def algebra(self, name: Optional[str] = None) -> CDGA:
        if name is None:
            if not self.algebras:
                raise KeyError("no algebra defined")
            return next(iter(self.algebras.values())).algebra
        return self.algebras[name].algebra

    def morphism(self, spec: str) -> Morphism:
        """A morphism by name, or a composite 'f.g' meaning f∘g."""
        parts = spec.split(".")
        for p in parts:
            if p not in self.morphisms:
                raise KeyError(f"no morphism named {p}")
        out = self.morphisms[parts[-1]]
        for p in reversed(parts[:-1]):
            out = self.morphisms[p].compose(out, name=f"{p}.{out.name}")
        return out


# -- parser ---------------------------------------------------------------------

_KEYS = {
    "algebra": {"truncation", "weights"},
    "morphism": {"source", "target"},
    "homotopy": {"source", "target", "r", "from", "to"},
    "bigrading": {"algebra", "r", "from"},
}


class _Block:
    def __init__(self, kind, name, tok):
        self.kind = kind
        self.name = name
        self.tok = tok
        self.keys: Dict[str, Tuple[object, Token]] = {}
        self.generators: List[Tuple[str, int, int, Token]] = []
        self.relations: List = []
        self.d: List[Tuple[str, object, Token]] = []
        self.images: List[Tuple[str, object, Token]] = []
        self.spans: List[Tuple[int, list, Token]] = []
        self.sub = None  # generators / relations / d inside an algebra block


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.diags: List[Diagnostic] = []
        self.model = DefinitionFile()

    def error(self, code, tok, message, expected=""):
        text = tok.text if isinstance(tok, Token) else str(tok)
        self.diags.append(Diagnostic(code, tok.line, tok.col, text, message, expected))

    def parse(self) -> DefinitionFile:
        lines = tokenize(self.text, self.diags)
        blocks: List[_Block] = []
        current: Optional[_Block] = None
        for toks in lines:
            cur = _Cursor(toks)
            try:
                if cur.at("OP", "["):
                    current = self._header(cur, blocks, current)
                elif current is None:
                    t = cur.peek()
                    raise _Syntax(Diagnostic("E203", t.line, t.col, t.text,
                                             "statement outside any section", "a section header"))
                else:
                    self._statement(cur, current)
            except _Syntax as e:
                self.diags.append(e.diag)
        if not any(d.kind in (LEXICAL, SYNTACTIC) for d in self.diags):
            for b in blocks:
                try:
                    self._finish(b)
                except _Semantic as e:
                    self.diags.append(e.diag)
        if self.diags:
            raise DSLError(sorted(self.diags, key=lambda d: (d.line, d.col)))
        return self.model

    def _header(self, cur, blocks, current):
        cur.expect("OP", "[")
        kt = cur.expect("NAME", what="a section kind")
        kind = kt.text
        if kind not in SECTIONS:
            raise _Syntax(Diagnostic("E204", kt.line, kt.col, kind, "unknown section kind",
                                     ", ".join(sorted(SECTIONS))))
        name = None
        if cur.at("NAME"):
            name = cur.next()
        cur.expect("OP", "]", what="']'")
        cur.expect_end()
        if kind in NAMED:
            if name is None:
                raise _Syntax(Diagnostic("E205", kt.line, kt.col, kind,
                                         "section needs a name", f"[{kind} NAME]"))
            b = _Block(kind, name.text, name)
            blocks.append(b)
            return b
        if name is not None:
            raise _Syntax(Diagnostic("E201", name.line, name.col, name.text, "unexpected token", "']'"))
        owner = current
        if owner is None or owner.kind != "algebra":
            raise _Syntax(Diagnostic("E203", kt.line, kt.col, kind,
                                     f"[{kind}] must follow an [algebra NAME] header"))
        owner.sub = kind
        return owner

    def _statement(self, cur, b: _Block):
        section = b.sub if b.kind == "algebra" and b.sub else b.kind
        first = cur.peek()
        if section == "generators":
            nt = cur.expect("NAME", what="a generator name")
            cur.expect("OP", ":", what="':'")
            deg, dt_ = _int(cur)
            cur.expect("OP", ",", what="','")
            w, wt = _int(cur)
            cur.expect_end()
            b.generators.append((nt.text, deg, w, nt, dt_, wt))
            return
        if section == "relations":
            e = parse_expr(cur)
            cur.expect_end()
            b.relations.append(e)
            return
        if section == "d":
            nt = cur.expect("NAME", what="a generator name")
            cur.expect("OP", "=", what="'='")
            e = parse_expr(cur)
            cur.expect_end()
            b.d.append((nt.text, e, nt))
            return
        if section == "bigrading" and (cur.at("INT") or cur.at("OP", "-")):
            p, pt = _int(cur)
            cur.expect("OP", ":", what="':'")
            elems = [parse_expr(cur)]
            while cur.at("OP", ","):
                cur.next()
                elems.append(parse_expr(cur))
            cur.expect_end()
            b.spans.append((p, elems, pt))
            return
        nt = cur.expect("NAME", what="a key or generator name")
        cur.expect("OP", "=", what="'='")
        key = nt.text
        keys = _KEYS.get(section, set())
        if key in keys:
            if key in b.keys:
                raise _Syntax(Diagnostic("E206", nt.line, nt.col, key, "duplicate key"))
            if key in ("truncation", "r"):
                v, _ = _int(cur)
            elif key == "weights":
                lo, _ = _int(cur)
                cur.expect("OP", ":", what="':'")
                hi, _ = _int(cur)
                v = (lo, hi)
            elif key in ("from", "to") and section == "homotopy":
                parts = [cur.expect("NAME", what="a morphism name").text]
                while cur.at("OP", "."):
                    cur.next()
                    parts.append(cur.expect("NAME", what="a morphism name").text)
                v = ".".join(parts)
            else:
                v = cur.expect("NAME", what="a name").text
            cur.expect_end()
            b.keys[key] = (v, nt)
            return
        if section in ("morphism", "homotopy"):
            e = parse_expr(cur)
            cur.expect_end()
            b.images.append((key, e, nt))
            return
        raise _Syntax(Diagnostic("E207", nt.line, nt.col, key, f"unknown key in [{section}]",
                                 ", ".join(sorted(keys)) or "no keys"))

    # -- semantic phase ---------------------------------------------------------

    def _need(self, b: _Block, key: str):
        if key not in b.keys:
            raise _Semantic(Diagnostic("E308", b.tok.line, b.tok.col, b.name,
                                       f"missing required key '{key}'"))
        return b.keys[key]

    def _defined(self, name: str, tok: Token):
        if name in self.model.algebras or name in self.model.morphisms \
                or name in self.model.homotopies or name in self.model.bigradings:
            raise _Semantic(Diagnostic("E304", tok.line, tok.col, name, "name already defined"))

    def _algebra_ref(self, key_tok) -> CDGA:
        name, tok = key_tok
        if name not in self.model.algebras:
            raise _Semantic(Diagnostic("E301", tok.line, tok.col, name, "undeclared name",
                                       "a previously defined algebra"))
        return self.model.algebras[name].algebra

    def _finish(self, b: _Block):
        getattr(self, "_finish_" + b.kind)(b)
        self.model.order.append((b.kind, b.name))

    def _element(self, node, F: FreeAlgebra, what="generator"):
        def lookup(n: Name):
            if n.name not in F.index:
                raise _Semantic(Diagnostic("E301", n.tok.line, n.tok.col, n.name,
                                           "undeclared name", f"a declared {what}"))
            return F.gen(n.name)
        x = _evaluate(node, lookup, F.one())
        if not x.is_homogeneous():
            degs = ", ".join(str(d) for d in sorted(x.degrees))
            raise _Semantic(Diagnostic("E302", node.tok.line, node.tok.col, node.tok.text,
                                       f"inhomogeneous expression (degrees {degs})"))
        return x

    def _finish_algebra(self, b: _Block):
        self._defined(b.name, b.tok)
        trunc = b.keys.get("truncation", (DEFAULT_TRUNCATION, None))[0]
        wr = b.keys.get("weights", (None, None))[0]
        if trunc < 0:
            raise _Semantic(Diagnostic("E310", b.keys["truncation"][1].line,
                                       b.keys["truncation"][1].col, str(trunc),
                                       "truncation must be non-negative"))
        gens, seen = [], set()
        for name, deg, w, nt, dtok, wtok in b.generators:
            if name in RESERVED:
                raise _Semantic(Diagnostic("E309", nt.line, nt.col, name, "reserved name"))
            if name in seen:
                raise _Semantic(Diagnostic("E304", nt.line, nt.col, name, "duplicate generator"))
            if deg <= 0:
                raise _Semantic(Diagnostic("E310", dtok.line, dtok.col, str(deg),
                                           "generator degree must be positive"))
            if wr is not None and not (wr[0] <= w <= wr[1]):
                raise _Semantic(Diagnostic("E303", wtok.line, wtok.col, str(w),
                                           "weight out of declared range",
                                           f"{wr[0]}..{wr[1]}"))
            seen.add(name)
            gens.append(Generator(name, deg, w))
        F = FreeAlgebra(gens)
        rels, rel_tok = [], {}
        for node in b.relations:
            x = self._element(node, F)
            if x and x.degree == 0:
                raise _Semantic(Diagnostic("E310", node.tok.line, node.tok.col, node.tok.text,
                                           "constant relation"))
            rels.append(x)
            rel_tok[str(x)] = node.tok
        d, d_tok = {}, {}
        for name, node, nt in b.d:
            if name not in F.index:
                raise _Semantic(Diagnostic("E301", nt.line, nt.col, name, "undeclared name",
                                           "a declared generator"))
            if name in d:
                raise _Semantic(Diagnostic("E304", nt.line, nt.col, name, "differential given twice"))
            x = self._element(node, F)
            g = gens[F.index[name]]
            if x and x.degree != g.degree + 1:
                raise _Semantic(Diagnostic("E305", node.tok.line, node.tok.col, node.tok.text,
                                           f"d({name}) has degree {x.degree}",
                                           f"degree {g.degree + 1}"))
            d[name] = x
            d_tok[name] = nt
        A = CDGA(gens, rels, d, truncation=trunc, name=b.name, validate=False)
        problems = A.validate()
        if problems:
            v = problems[0]
            tok = d_tok.get(v.where) or rel_tok.get(v.where) or b.tok
            raise _Semantic(Diagnostic("E306", tok.line, tok.col, tok.text,
                                       f"invalid presentation: {v}"))
        self.model.algebras[b.name] = AlgebraDef(A, wr)

    def _finish_morphism(self, b: _Block):
        self._defined(b.name, b.tok)
        S = self._algebra_ref(self._need(b, "source"))
        T = self._algebra_ref(self._need(b, "target"))
        images = {}
        for name, node, nt in b.images:
            if name not in S.free.index:
                raise _Semantic(Diagnostic("E301", nt.line, nt.col, name, "undeclared name",
                                           f"a generator of {S.name}"))
            x = T.reduce(self._element(node, T.free, f"generator of {T.name}"))
            g = S.generator(name)
            if x and x.degree != g.degree:
                raise _Semantic(Diagnostic("E305", node.tok.line, node.tok.col, node.tok.text,
                                           f"image of {name} has degree {x.degree}",
                                           f"degree {g.degree}"))
            images[name] = x
        f = Morphism(S, T, images, name=b.name)
        problems = check_morphism(f)
        if problems:
            raise _Semantic(Diagnostic("E307", b.tok.line, b.tok.col, b.name,
                                       f"not a dga morphism: {problems[0]}"))
        self.model.morphisms[b.name] = f

    def _finish_homotopy(self, b: _Block):
        self._defined(b.name, b.tok)
        S = self._algebra_ref(self._need(b, "source"))
        T = self._algebra_ref(self._need(b, "target"))
        r = b.keys.get("r", (0, None))[0]
        if r < 0:
            raise _Semantic(Diagnostic("E310", b.keys["r"][1].line, b.keys["r"][1].col, str(r),
                                       "r must be non-negative"))
        ends = []
        for key in ("from", "to"):
            spec, tok = self._need(b, key)
            for part in spec.split("."):
                if part not in self.model.morphisms:
                    raise _Semantic(Diagnostic("E301", tok.line, tok.col, part, "undeclared name",
                                               "a previously defined morphism"))
            f = self.model.morphism(spec)
            if f.source.gens != S.gens or f.target.gens != T.gens:
                raise _Semantic(Diagnostic("E305", tok.line, tok.col, spec,
                                           f"{spec} does not go from {S.name} to {T.name}"))
            ends.append(spec)
        images = {}
        F = T.free
        t_el = PathElement.t_power(T)
        dt_el = PathElement.dt_form(T)

        def lookup(n: Name):
            if n.name == "t":
                return t_el
            if n.name == "dt":
                return dt_el
            if n.name not in F.index:
                raise _Semantic(Diagnostic("E301", n.tok.line, n.tok.col, n.name, "undeclared name",
                                           f"t, dt or a generator of {T.name}"))
            return PathElement.constant(T, F.gen(n.name))

        one = PathElement.constant(T, T.one())
        for name, node, nt in b.images:
            if name not in S.free.index:
                raise _Semantic(Diagnostic("E301", nt.line, nt.col, name, "undeclared name",
                                           f"a generator of {S.name}"))
            h = _evaluate(node, lookup, one)
            try:
                deg = h.degree
            except ValueError:
                raise _Semantic(Diagnostic("E302", node.tok.line, node.tok.col, node.tok.text,
                                           "inhomogeneous path expression"))
            g = S.generator(name)
            if deg is not None and deg != g.degree:
                raise _Semantic(Diagnostic("E305", node.tok.line, node.tok.col, node.tok.text,
                                           f"h({name}) has degree {deg}", f"degree {g.degree}"))
            images[name] = h
        H = PathMorphism(S, T, images, r, name=b.name)
        self.model.homotopies[b.name] = HomotopyDef(b.name, S.name, T.name, r, ends[0], ends[1], H)

    def _finish_bigrading(self, b: _Block):
        self._defined(b.name, b.tok)
        A = self._algebra_ref(self._need(b, "algebra"))
        r = b.keys.get("r", (0, None))[0]
        src = b.keys.get("from")
        if src is not None and src[0] != "weights":
            raise _Semantic(Diagnostic("E310", src[1].line, src[1].col, src[0],
                                       "unknown bigrading source", "weights"))
        spans: Dict[int, List[Element]] = {}
        for p, nodes, pt in b.spans:
            for node in nodes:
                x = self._element(node, A.free)
                spans.setdefault(p, []).append(x)
        if src is not None and spans:
            raise _Semantic(Diagnostic("E310", src[1].line, src[1].col, "from",
                                       "give either 'from = weights' or explicit summands"))
        self.model.bigradings[b.name] = BigradingDef(b.name, A.name, r, src is not None, spans)


def parse(text: str) -> DefinitionFile:
    return Parser(text).parse()


def parse_file(path: str) -> DefinitionFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# -- printer ---------------------------------------------------------------------

def format_definition(model: DefinitionFile) -> str:
    out = []
    for kind, name in model.order:
        if kind == "algebra":
            ad = model.algebras[name]
            A = ad.algebra
            out.append(f"[algebra {name}]")
            out.append(f"truncation = {A.truncation}")
            if ad.weight_range:
                out.append(f"weights = {ad.weight_range[0]}:{ad.weight_range[1]}")
            out.append("")
            out.append("[generators]")
            for g in A.gens:
                out.append(f"{g.name} : {g.degree}, {g.weight}")
            if A.relations:
                out.append("")
                out.append("[relations]")
                out.extend(str(r) for r in A.relations)
            ds = [(g.name, A.differential[g.name]) for g in A.gens if A.differential[g.name]]
            if ds:
                out.append("")
                out.append("[d]")
                out.extend(f"{k} = {x}" for k, x in ds)
        elif kind == "morphism":
            f = model.morphisms[name]
            out.append(f"[morphism {name}]")
            out.append(f"source = {f.source.name}")
            out.append(f"target = {f.target.name}")
            out.extend(f"{g.name} = {f.images[g.name]}" for g in f.source.gens)
        elif kind == "homotopy":
            hd = model.homotopies[name]
            out.append(f"[homotopy {name}]")
            out.append(f"source = {hd.source}")
            out.append(f"target = {hd.target}")
            out.append(f"r = {hd.r}")
            out.append(f"from = {hd.start}")
            out.append(f"to = {hd.end}")
            for g in hd.homotopy.source.gens:
                out.append(f"{g.name} = {hd.homotopy.images[g.name]}")
        elif kind == "bigrading":
            bd = model.bigradings[name]
            out.append(f"[bigrading {name}]")
            out.append(f"algebra = {bd.algebra}")
            out.append(f"r = {bd.r}")
            if bd.from_weights:
                out.append("from = weights")
            for p in sorted(bd.spans):
                out.append(f"{p} : " + ", ".join(str(x) for x in bd.spans[p]))
        out.append("")
    return "\n".join(out).rstrip("\n") + "\n"


def same_model(a: DefinitionFile, b: DefinitionFile) -> bool:
    """Structural equality of two parsed files."""
    if a.order != b.order:
        return False
    for k in a.algebras:
        if a.algebras[k].algebra != b.algebras[k].algebra or \
                a.algebras[k].weight_range != b.algebras[k].weight_range:
            return False
    for k in a.morphisms:
        if a.morphisms[k].images != b.morphisms[k].images:
            return False
    for k in a.homotopies:
        x, y = a.homotopies[k], b.homotopies[k]
        if (x.source, x.target, x.r, x.start, x.end) != (y.source, y.target, y.r, y.start, y.end):
            return False
        if any(x.homotopy.images[g] != y.homotopy.images[g] for g in x.homotopy.images):
            return False
    for k in a.bigradings:
        x, y = a.bigradings[k], b.bigradings[k]
        if (x.algebra, x.r, x.from_weights, x.spans) != (y.algebra, y.r, y.from_weights, y.spans):
            return False
    return True
