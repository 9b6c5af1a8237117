"""Line-oriented text format for laws.

Example::

    # Heisenberg algebra
    dim 3
    [1,2] = 3

    dim 7 param L
    [2,5] = L*7
    [3,4] = (L - 1) * 7

Each ``[i,j] = ...`` line lists the terms of ``[e_i, e_j]``; in a term such as
``3/2*5`` the trailing integer is the target index and everything before the
last ``*`` is the coefficient. Coefficients may be rationals, the declared
parameter, affine expressions in it, ``sqrt(p/q)`` surds, or decimals. Any surd
or decimal makes the result a :class:`~nilrad.moment.NumericLaw`.

A file may hold several laws, each introduced by a ``name`` line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

from .algebra import LieLaw, ParamCoeff
from .moment import NumericLaw


class FormatError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col


_TOKEN = re.compile(
    r"\s*(?:(?P<dec>\d+\.\d*(?:[eE][-+]?\d+)?|\d+[eE][-+]?\d+)|(?P<int>\d+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[\[\],=+\-*/()]))"
)


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(s: str, lineno: int) -> list[_Tok]:
    out = []
    pos = 0
    s = s.rstrip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            col = pos + 1 + (len(s[pos:]) - len(s[pos:].lstrip()))
            raise FormatError(f"unexpected character {s[col - 1]!r}", lineno, col)
        kind = m.lastgroup
        out.append(_Tok(kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    out.append(_Tok("end", "", len(s) + 1))
    return out


@dataclass(frozen=True)
class _Val:
    """``a*param + b``, or a float ``f`` (then ``a`` and ``b`` are unused)."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    f: float | None = None

    def numeric(self) -> float:
        return self.f if self.f is not None else float(self.b)

    def __neg__(self):
        return _Val(-self.a, -self.b, None if self.f is None else -self.f)


class _LineParser:
    def __init__(self, toks: list[_Tok], lineno: int, param: str | None):
        self.toks = toks
        self.i = 0
        self.lineno = lineno
        self.param = param

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.cur
        return FormatError(msg, self.lineno, tok.col)

    def take(self, text: str | None = None, kind: str | None = None) -> _Tok:
        t = self.cur
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(t.text) if t.text else "end of line"
            raise self.error(f"expected {want}, got {got}")
        self.i += 1
        return t

    def peek(self, text: str) -> bool:
        return self.cur.text == text and self.cur.kind == "op"

    # -- expressions --------------------------------------------------------

    def _add(self, x: _Val, y: _Val) -> _Val:
        if x.f is not None or y.f is not None:
            self._no_param(x, y)
            return _Val(f=x.numeric() + y.numeric())
        return _Val(x.a + y.a, x.b + y.b)

    def _mul(self, x: _Val, y: _Val, tok: _Tok) -> _Val:
        if x.f is not None or y.f is not None:
            self._no_param(x, y, tok)
            return _Val(f=x.numeric() * y.numeric())
        if x.a and y.a:
            raise self.error("coefficient must be affine in the parameter", tok)
        return _Val(x.a * y.b + y.a * x.b, x.b * y.b)

    def _no_param(self, x: _Val, y: _Val, tok: _Tok | None = None):
        if x.a or y.a:
            raise self.error("surds and decimals cannot be combined with the parameter", tok)

    def expr(self) -> _Val:
        neg = False
        if self.peek("-"):
            self.take("-")
            neg = True
        v = self.product()
        v = -v if neg else v
        while self.peek("+") or self.peek("-"):
            op = self.take().text
            w = self.product()
            v = self._add(v, w if op == "+" else -w)
        return v

    def product(self) -> _Val:
        v = self.factor()
        while self.peek("*"):
            tok = self.take("*")
            v = self._mul(v, self.factor(), tok)
        return v

    def factor(self) -> _Val:
        v = self.primary()
        while self.peek("/"):
            tok = self.take("/")
            d = self.primary()
            if d.a:
                raise self.error("cannot divide by the parameter", tok)
            if d.numeric() == 0:
                raise self.error("division by zero", tok)
            if v.f is None and d.f is None:
                v = _Val(v.a / d.b, v.b / d.b)
            else:
                self._no_param(v, d, tok)
                v = _Val(f=v.numeric() / d.numeric())
        return v

    def primary(self) -> _Val:
        t = self.cur
        if t.kind == "int":
            self.take()
            return _Val(b=Fraction(int(t.text)))
        if t.kind == "dec":
            self.take()
            return _Val(f=float(t.text))
        if t.kind == "ident":
            self.take()
            if t.text == "sqrt":
                self.take("(")
                inner = self.expr()
                self.take(")")
                if inner.a:
                    raise self.error("sqrt of the parameter is not supported", t)
                if inner.numeric() < 0:
                    raise self.error("sqrt of a negative number", t)
                return _Val(f=sqrt(inner.numeric()))
            if self.param is None or t.text != self.param:
                raise self.error(f"unknown identifier {t.text!r}", t)
            return _Val(a=Fraction(1))
        if self.peek("("):
            self.take("(")
            v = self.expr()
            self.take(")")
            return v
        raise self.error(f"unexpected {t.text!r}" if t.text else "unexpected end of line")

    # -- bracket lines ------------------------------------------------------

    def term(self, sign: int) -> tuple[int, _Val, _Tok]:
        """``[coef *] INT``; the coefficient is everything before the last ``*``."""
        if self.peek("-"):
            self.take("-")
            sign = -sign
        factors: list[tuple[_Val, int]] = []  # value, index of its first token
        while True:
            start = self.i
            factors.append((self.factor(), start))
            if not self.peek("*"):
                break
            self.take("*")
        _, start = factors.pop()
        kt = self.toks[start]
        if self.i - start != 1 or kt.kind != "int":
            raise self.error("term must end with a target index", kt)
        coef = _Val(b=Fraction(sign))
        for v, s in factors:
            coef = self._mul(coef, v, self.toks[s])
        return int(kt.text), coef, kt

    def bracket_line(self):
        self.take("[")
        ti = self.take(kind="int")
        self.take(",")
        tj = self.take(kind="int")
        self.take("]")
        self.take("=")
        terms = [self.term(1)]
        while self.peek("+") or self.peek("-"):
            op = self.take().text
            terms.append(self.term(1 if op == "+" else -1))
        if self.cur.kind != "end":
            raise self.error(f"unexpected {self.cur.text!r}")
        return (int(ti.text), ti), (int(tj.text), tj), terms


def _parse_block(lines: list[tuple[int, str]]):
    header = None
    entries: dict[tuple[int, int, int], _Val] = {}
    pairs: set[tuple[int, int]] = set()
    n = param = None
    numeric = False
    for lineno, raw in lines:
        text = raw.split("#", 1)[0]
        if not text.strip():
            continue
        toks = _tokenize(text, lineno)
        if header is None:
            p = _LineParser(toks, lineno, None)
            p.take("dim")
            tn = p.take(kind="int")
            n = int(tn.text)
            if n < 1:
                raise FormatError("dimension must be positive", lineno, tn.col)
            if p.cur.text == "param":
                p.take("param")
                param = p.take(kind="ident").text
                if param == "sqrt":
                    raise p.error("'sqrt' cannot be a parameter name")
            if p.cur.kind != "end":
                raise p.error(f"unexpected {p.cur.text!r}")
            header = lineno
            continue
        p = _LineParser(toks, lineno, param)
        (i, ti), (j, tj), terms = p.bracket_line()
        for v, t in ((i, ti), (j, tj)):
            if not 1 <= v <= n:
                raise FormatError(f"index {v} out of range 1..{n}", lineno, t.col)
        if i >= j:
            raise FormatError("indices must satisfy i < j", lineno, ti.col)
        if (i, j) in pairs:
            raise FormatError(f"duplicate bracket [{i},{j}]", lineno, ti.col)
        pairs.add((i, j))
        for k, coef, tk in terms:
            if not 1 <= k <= n:
                raise FormatError(f"index {k} out of range 1..{n}", lineno, tk.col)
            if (i, j, k) in entries:
                raise FormatError(f"duplicate slot ({i},{j},{k})", lineno, tk.col)
            entries[(i, j, k)] = coef
            numeric = numeric or coef.f is not None
    if header is None:
        line = lines[-1][0] if lines else 1
        raise FormatError("missing 'dim' header", line, 1)
    if numeric:
        return NumericLaw(n, {s: v.numeric() for s, v in entries.items()})
    brackets = {s: (ParamCoeff(v.a, v.b) if v.a else v.b) for s, v in entries.items()}
    return LieLaw(n, brackets, param)


def _blocks(text: str) -> list[tuple[str | None, list[tuple[int, str]]]]:
    blocks: list[tuple[str | None, list[tuple[int, str]]]] = []
    cur: list[tuple[int, str]] = []
    name = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped.startswith("name ") or stripped == "name":
            if cur or name is not None:
                blocks.append((name, cur))
            name = stripped[4:].strip()
            if not name:
                raise FormatError("empty name", lineno, 1)
            cur = []
            continue
        cur.append((lineno, raw))
    if cur or name is not None:
        blocks.append((name, cur))
    return blocks


def parse(text: str):
    """Parse a single law (a leading ``name`` line is allowed and ignored)."""
    blocks = _blocks(text)
    if len(blocks) > 1:
        raise FormatError("several laws in one file; use parse_catalog", 1, 1)
    return _parse_block(blocks[0][1] if blocks else [])


def parse_catalog(text: str) -> list[tuple[str, object]]:
    out = []
    for idx, (name, lines) in enumerate(_blocks(text), start=1):
        if name is None:
            if not any(l.split("#", 1)[0].strip() for _, l in lines):
                continue
            name = f"law{idx}"
        out.append((name, _parse_block(lines)))
    return out


def _rat(x: Fraction) -> str:
    return str(x)


def _coef_str(c, param: str | None) -> str:
    if isinstance(c, ParamCoeff):
        a, b = c.a, c.b
        if b == 0:
            if a == 1:
                return param
            if a == -1:
                return f"-{param}"
            return f"{_rat(a)}*{param}"
        lead = param if a == 1 else f"{_rat(a)}*{param}"
        return f"({lead} {'+' if b > 0 else '-'} {_rat(abs(b))})"
    if isinstance(c, float):
        return repr(c)
    return _rat(Fraction(c))


def serialize(law) -> str:
    """Canonical text: header, then one line per ``[i,j]`` in lexicographic order."""
    param = getattr(law, "param", None)
    lines = [f"dim {law.n}" + (f" param {param}" if param else "")]
    by_pair: dict[tuple[int, int], list[str]] = {}
    for (i, j, k), c in sorted(law.brackets.items()):
        s = _coef_str(c, param)
        by_pair.setdefault((i, j), []).append(str(k) if s == "1" else f"{s}*{k}")
    for (i, j), terms in by_pair.items():
        lines.append(f"[{i},{j}] = " + " + ".join(terms))
    return "\n".join(lines) + "\n"


def serialize_catalog(entries) -> str:
    return "\n".join(f"name {name}\n{serialize(law)}" for name, law in entries)
