"""The ring construction language.

Grammar (LL(1))::

    expr   := Zmod '(' INT ')' | GF '(' INT ')'
            | Matrix '(' INT ',' expr ')' | Triangular '(' INT ',' expr ')'
            | Product '(' expr { ',' expr } ')'
            | SubMatrix '(' INT ',' INT ',' grid ')'
            | Example '(' IDENT [ '(' INT ')' ] ')'
            | GenMatrixRef '(' STRING ')'
    grid   := '[' row { ',' row } ']'
    row    := '[' INT { ',' INT } ']'

``GF(p)`` is accepted for prime ``p`` and represented as ``Zmod(p)``.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

from .constructors import is_prime


class ParseError(ValueError):
    def __init__(self, message, line, col, expected=()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(sorted(expected))
        text = f"{line}:{col}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)


# -- AST --------------------------------------------------------------------


@dataclass(frozen=True)
class Zmod:
    m: int


@dataclass(frozen=True)
class Matrix:
    n: int
    base: object


@dataclass(frozen=True)
class Triangular:
    n: int
    base: object


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class SubMatrix:
    n: int
    m: int
    grid: tuple


@dataclass(frozen=True)
class Example:
    name: str
    param: int = None

    @property
    def label(self):
        return self.name if self.param is None else f"{self.name}({self.param})"


@dataclass(frozen=True)
class GenMatrixRef:
    path: str


# -- lexer ------------------------------------------------------------------


@dataclass
class Token:
    kind: str  # INT IDENT STRING ( ) , [ ] EOF
    text: str
    line: int
    col: int
    value: object = None


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<int>-?\d+) | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*"|'(?:[^'\\\n]|\\.)*') | (?P<punct>[(),\[\]])
""", re.VERBOSE)


def tokenize(text):
    tokens = []
    pos = 0
    line, col = 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line += 1
            col = 1
        elif kind == "ws":
            col += len(s)
        else:
            if kind == "int":
                tokens.append(Token("INT", s, line, col, int(s)))
            elif kind == "ident":
                tokens.append(Token("IDENT", s, line, col, s))
            elif kind == "string":
                body = s[1:-1].encode().decode("unicode_escape")
                tokens.append(Token("STRING", s, line, col, body))
            else:
                tokens.append(Token(s, s, line, col))
            col += len(s)
        pos = m.end()
    tokens.append(Token("EOF", "", line, col))
    return tokens


CONSTRUCTORS = ("Zmod", "GF", "Matrix", "Triangular", "Product", "SubMatrix", "Example", "GenMatrixRef")


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def fail(self, message, expected=(), tok=None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.col, expected)

    def expect(self, kind):
        tok = self.tok
        if tok.kind != kind:
            shown = tok.text or "end of input"
            self.fail(f"unexpected {shown!r}", {kind})
        self.i += 1
        return tok

    def integer(self, minimum=None, what="value"):
        tok = self.expect("INT")
        if minimum is not None and tok.value < minimum:
            self.fail(f"{what} must be >= {minimum}, got {tok.value}", tok=tok)
        return tok.value, tok

    def parse(self):
        e = self.expr()
        if self.tok.kind != "EOF":
            self.fail(f"unexpected {self.tok.text!r} after expression", {"EOF"})
        return e

    def expr(self):
        tok = self.tok
        if tok.kind != "IDENT":
            self.fail(f"unexpected {tok.text or 'end of input'!r}", set(CONSTRUCTORS))
        name = tok.value
        if name not in CONSTRUCTORS:
            self.fail(f"unknown constructor {name!r}", set(CONSTRUCTORS))
        self.i += 1
        self.expect("(")
        node = getattr(self, "_" + name.lower())()
        self.expect(")")
        return node

    def _zmod(self):
        m, _ = self.integer(2, "modulus")
        return Zmod(m)

    def _gf(self):
        p, tok = self.integer(2, "characteristic")
        if not is_prime(p):
            self.fail(f"GF({p}) needs a prime", tok=tok)
        return Zmod(p)

    def _matrix(self):
        n, _ = self.integer(1, "matrix size")
        self.expect(",")
        return Matrix(n, self.expr())

    def _triangular(self):
        n, _ = self.integer(1, "matrix size")
        self.expect(",")
        return Triangular(n, self.expr())

    def _product(self):
        factors = [self.expr()]
        while self.tok.kind == ",":
            self.i += 1
            factors.append(self.expr())
        if self.tok.kind != ")":
            self.fail(f"unexpected {self.tok.text!r}", {",", ")"})
        return Product(tuple(factors))

    def _submatrix(self):
        n, _ = self.integer(1, "matrix size")
        self.expect(",")
        m, _ = self.integer(2, "modulus")
        self.expect(",")
        start = self.tok
        grid, starts = self.grid()
        for r, tok in zip(grid, starts):
            if len(r) != n:
                self.fail(f"grid row has {len(r)} entries, expected {n}", tok=tok)
        if len(grid) != n:
            self.fail(f"grid has {len(grid)} rows, expected {n}", tok=start)
        return SubMatrix(n, m, grid)

    def grid(self):
        """Rows and the token starting each row."""
        self.expect("[")
        starts = [self.tok]
        rows = [self.row()]
        while self.tok.kind == ",":
            self.i += 1
            starts.append(self.tok)
            rows.append(self.row())
        if self.tok.kind != "]":
            self.fail(f"unexpected {self.tok.text!r}", {",", "]"})
        self.i += 1
        return tuple(rows), starts

    def row(self):
        self.expect("[")
        vals = [self.expect("INT").value]
        while self.tok.kind == ",":
            self.i += 1
            vals.append(self.expect("INT").value)
        if self.tok.kind != "]":
            self.fail(f"unexpected {self.tok.text!r}", {",", "]"})
        self.i += 1
        return tuple(vals)

    def _example(self):
        name = self.expect("IDENT").value
        param = None
        if self.tok.kind == "(":
            self.i += 1
            param, _ = self.integer(1, "example parameter")
            self.expect(")")
        elif self.tok.kind != ")":
            self.fail(f"unexpected {self.tok.text!r}", {"(", ")"})
        return Example(name, param)

    def _genmatrixref(self):
        return GenMatrixRef(self.expect("STRING").value)


def parse_expr(text):
    return _Parser(text).parse()


def print_expr(node):
    if isinstance(node, Zmod):
        return f"Zmod({node.m})"
    if isinstance(node, Matrix):
        return f"Matrix({node.n}, {print_expr(node.base)})"
    if isinstance(node, Triangular):
        return f"Triangular({node.n}, {print_expr(node.base)})"
    if isinstance(node, Product):
        return "Product(" + ", ".join(print_expr(f) for f in node.factors) + ")"
    if isinstance(node, SubMatrix):
        grid = "[" + ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in node.grid) + "]"
        return f"SubMatrix({node.n}, {node.m}, {grid})"
    if isinstance(node, Example):
        return f"Example({node.label})"
    if isinstance(node, GenMatrixRef):
        escaped = node.path.replace("\\", "\\\\").replace('"', '\\"')
        return f'GenMatrixRef("{escaped}")'
    raise TypeError(f"not a ring expression: {node!r}")


def build(node, base_dir=None, allow_general=False):
    """Construct the ring described by an AST node."""
    from . import constructors as c
    from .formats import load_genmatrix_json
    from .gallery import gallery

    if isinstance(node, Zmod):
        return c.zmod(node.m) if not is_prime(node.m) else c.gf(node.m)
    if isinstance(node, Matrix):
        return c.matrix_ring(node.n, build(node.base, base_dir, allow_general))
    if isinstance(node, Triangular):
        return c.triangular_ring(node.n, build(node.base, base_dir, allow_general))
    if isinstance(node, Product):
        return c.direct_product([build(f, base_dir, allow_general) for f in node.factors])
    if isinstance(node, SubMatrix):
        return c.submatrix_ring(node.n, node.m, [list(r) for r in node.grid])
    if isinstance(node, Example):
        return gallery(node.label, allow_general=allow_general).ring
    if isinstance(node, GenMatrixRef):
        path = node.path
        if base_dir and not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        return load_genmatrix_json(path)
    raise TypeError(f"not a ring expression: {node!r}")
