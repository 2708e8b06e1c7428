"""Parse and evaluate curve-definition expressions of one variable.

Grammar (standard precedence, tightest first):

    power      >  unary minus  >  * /  >  + -
    expr    := term (('+'|'-') term)*
    term    := factor (('*'|'/') factor)*
    factor  := '-' factor | power
    power   := atom ('^' factor)?          -- right associative
    atom    := NUMBER | 'x' | NAME '(' expr ')' | '(' expr ')'

Known function names: exp, ln, sin, cos, atan, sqrt, abs.  Numbers are
decimal with optional fraction and exponent.  There is no implicit
multiplication; "2x" is a parse error.

Evaluation happens in jet arithmetic (:mod:`affinecurves.jets`), so one
evaluation yields the value and all six derivatives at once.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import jets
from .jets import DomainError, GraphJet, Jet

__all__ = [
    "Expr",
    "Const",
    "Var",
    "Unary",
    "Binary",
    "ParseError",
    "parse",
    "to_text",
    "eval_expr",
    "eval_jet",
]

UNARY_OPS = ("neg", "exp", "ln", "sin", "cos", "atan", "sqrt", "abs")
BINARY_OPS = ("add", "sub", "mul", "div", "pow")

_FUNCTIONS = {
    "exp": jets.exp,
    "ln": jets.log,
    "sin": jets.sin,
    "cos": jets.cos,
    "atan": jets.atan,
    "sqrt": jets.sqrt,
    "abs": jets.absolute,
}


class Expr:
    """Base class for AST nodes; instances are immutable and hashable."""

    __slots__ = ()


@dataclass(frozen=True)
class Const(Expr):
    value: float


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Unary(Expr):
    op: str
    arg: Expr

    def __post_init__(self):
        if self.op not in UNARY_OPS:
            raise ValueError(f"unknown unary op {self.op!r}")


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    left: Expr
    right: Expr

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise ValueError(f"unknown binary op {self.op!r}")


class ParseError(ValueError):
    """Syntax error with the byte offset and the set of expected tokens."""

    def __init__(self, offset: int, expected, found: str):
        self.offset = offset
        self.expected = frozenset(expected)
        self.found = found
        exp = ", ".join(sorted(self.expected))
        super().__init__(f"at offset {offset}: expected {exp}, found {found!r}")


# tokenizer ---------------------------------------------------------------

_TOK_PUNCT = "+-*/^()"


def _tokenize(src: str):
    toks = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOK_PUNCT:
            toks.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            j = i
            while j < n and src[j].isdigit():
                j += 1
            if j < n and src[j] == ".":
                j += 1
                while j < n and src[j].isdigit():
                    j += 1
            if j < n and src[j] in "eE":
                k = j + 1
                if k < n and src[k] in "+-":
                    k += 1
                if k < n and src[k].isdigit():
                    j = k
                    while j < n and src[j].isdigit():
                        j += 1
            text = src[i:j]
            try:
                value = float(text)
            except ValueError:
                raise ParseError(i, {"number"}, text) from None
            toks.append(("num", value, i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            toks.append(("name", src[i:j], i))
            i = j
            continue
        raise ParseError(i, {"number", "name", "operator", "parenthesis"}, ch)
    toks.append(("end", "", n))
    return toks


# parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def advance(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(tok[2], {kind}, _describe(tok))
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(tok[2], {"+", "-", "*", "/", "^", "end of input"}, _describe(tok))
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            e = Binary("add" if op == "+" else "sub", e, self.term())
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            e = Binary("mul" if op == "*" else "div", e, self.factor())
        return e

    def factor(self) -> Expr:
        if self.peek()[0] == "-":
            self.advance()
            return Unary("neg", self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            return Binary("pow", base, self.factor())
        return base

    def atom(self) -> Expr:
        tok = self.peek()
        kind, value, off = tok
        if kind == "num":
            self.advance()
            return Const(value)
        if kind == "name":
            self.advance()
            if value == "x":
                return Var()
            if value in _FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Unary(value, arg)
            raise ParseError(off, {"x"} | set(_FUNCTIONS), value)
        if kind == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(off, {"number", "x", "function", "(", "-"}, _describe(tok))


def _describe(tok):
    kind, value, _ = tok
    if kind == "end":
        return "end of input"
    if kind == "num":
        return repr(value)
    return str(value)


def parse(src: str) -> Expr:
    """Parse an expression in the variable x into an AST."""
    if not src or not src.strip():
        raise ParseError(0, {"expression"}, "empty input")
    return _Parser(src).parse()


# printing ----------------------------------------------------------------

_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}


def to_text(e: Expr) -> str:
    """Render the AST; parse(to_text(e)) == e."""
    return _render(e, 0)


def _render(e: Expr, parent_prec: int) -> str:
    if isinstance(e, Const):
        v = e.value
        text = repr(int(v)) if v == int(v) and abs(v) < 1e16 else repr(v)
        if v < 0:
            return f"({text})"
        return text
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Unary):
        if e.op == "neg":
            inner = _render(e.arg, _PREC["neg"])
            text = f"-{inner}"
            return f"({text})" if parent_prec > _PREC["neg"] else text
        return f"{e.op}({_render(e.arg, 0)})"
    assert isinstance(e, Binary)
    prec = _PREC[e.op]
    sym = {"add": " + ", "sub": " - ", "mul": "*", "div": "/", "pow": "^"}[e.op]
    if e.op == "pow":
        # right associative; the exponent re-enters at unary-minus level
        text = f"{_render(e.left, prec + 1)}{sym}{_render(e.right, _PREC['neg'])}"
    else:
        # left associative; the right operand needs the next tighter level
        text = f"{_render(e.left, prec)}{sym}{_render(e.right, prec + 1)}"
    return f"({text})" if parent_prec > prec else text


# evaluation --------------------------------------------------------------

def eval_expr(e: Expr, var: Jet) -> Jet:
    """Evaluate the AST on a jet value of the variable."""
    if isinstance(e, Const):
        return Jet.constant(e.value)
    if isinstance(e, Var):
        return var
    if isinstance(e, Unary):
        arg = eval_expr(e.arg, var)
        if e.op == "neg":
            return -arg
        try:
            return _FUNCTIONS[e.op](arg)
        except DomainError as err:
            raise DomainError(f"{err} in {to_text(e)}") from None
    assert isinstance(e, Binary)
    left = eval_expr(e.left, var)
    if e.op == "pow":
        expo = eval_expr(e.right, var)
        try:
            if not expo.c[1:].any():
                return jets.power(left, expo.c[0])
            # variable exponent: base^expo = exp(expo * ln(base)), base > 0
            return jets.exp(expo * jets.log(left))
        except DomainError as err:
            raise DomainError(f"{err} in {to_text(e)}") from None
    right = eval_expr(e.right, var)
    try:
        if e.op == "add":
            return left + right
        if e.op == "sub":
            return left - right
        if e.op == "mul":
            return left * right
        return left / right
    except DomainError as err:
        raise DomainError(f"{err} in {to_text(e)}") from None


def eval_jet(e: Expr, x0: float) -> GraphJet:
    """Graph jet of the curve y = e(x) at x0, with all six derivatives."""
    yj = eval_expr(e, Jet.variable(x0))
    return GraphJet.from_jet(x0, yj)
