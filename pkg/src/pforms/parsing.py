"""Text front end: tokenizer, precedence-climbing parser, evaluator, printer.

Grammar, loosest binding first::

    top     := expr (',' expr)*
    expr    := wedge (('+' | '-') wedge)*
    wedge   := product ('^' product)*            # '^' not followed by an integer
    product := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom (('^' | '**') ['-'] INT)?
    atom    := INT | NAME | dNAME | 'd' '(' expr ')' | '(' expr ')'
             | '{' expr (',' expr)* '}' | 'root' '(' expr ',' INT ')'

``^`` followed by an integer literal is a power; every other ``^`` is a
wedge.  ``da`` abbreviates ``d(a)`` for a declared variable ``a``.  Wedges of
braces ``{...}`` build slot families; ``root(g, p^s)`` names a tower step.
"""

from __future__ import annotations

import re

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from .errors import PFormsError
from .field_core import FieldContext, RationalFunction
from .forms import DifferentialForm, differential, wedge


class ParseError(PFormsError, ValueError):
    """Lexical or syntax error; carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.detail = message


# -- tokens ---------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, END
    text: str
    pos: int


SINGLE = set("+-*/^(){},")


def tokenize(source: str) -> List[Token]:
    out: List[Token] = []
    i = 0
    n = len(source)
    while i < n:
        c = source[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            out.append(Token("INT", source[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            out.append(Token("NAME", source[i:j], i))
            i = j
            continue
        if source.startswith("**", i):
            out.append(Token("OP", "**", i))
            i += 2
            continue
        if c in SINGLE:
            out.append(Token("OP", c, i))
            i += 1
            continue
        line, col = _position(source, i)
        raise ParseError(f"unexpected character {c!r}", line, col)
    out.append(Token("END", "", n))
    return out


def _position(source: str, pos: int) -> Tuple[int, int]:
    line = source.count("\n", 0, pos) + 1
    start = source.rfind("\n", 0, pos) + 1
    return line, pos - start + 1


# -- syntax tree ----------------------------------------------------------------

@dataclass(frozen=True)
class Node:
    kind: str  # int, var, d, neg, add, sub, mul, div, pow, wedge, set, root, tuple
    args: Tuple = ()
    pos: int = field(default=0, compare=False)


class Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.i = 0

    def error(self, message: str, tok: Token = None):
        tok = tok or self.peek()
        line, col = _position(self.source, tok.pos)
        raise ParseError(message, line, col)

    def peek(self, k: int = 0) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def take(self) -> Token:
        tok = self.peek()
        self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        tok = self.peek()
        if tok.kind == "OP" and tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind == "OP" and tok.text == text:
            self.i += 1
            return tok
        self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}")

    def parse(self) -> Node:
        first = self.expr()
        items = [first]
        while self.accept(","):
            items.append(self.expr())
        if self.peek().kind != "END":
            self.error(f"unexpected {self.peek().text!r}")
        return first if len(items) == 1 else Node("tuple", tuple(items), first.pos)

    def expr(self) -> Node:
        node = self.wedge()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text in "+-":
                self.take()
                node = Node("add" if tok.text == "+" else "sub", (node, self.wedge()), tok.pos)
            else:
                return node

    def _power_follows(self) -> bool:
        # '^' INT or '^' '-' INT is a power; anything else after '^' is a wedge
        nxt = self.peek(1)
        if nxt.kind == "INT":
            return True
        return nxt.kind == "OP" and nxt.text == "-" and self.peek(2).kind == "INT"

    def wedge(self) -> Node:
        node = self.product()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text == "^" and not self._power_follows():
                self.take()
                node = Node("wedge", (node, self.product()), tok.pos)
            else:
                return node

    def product(self) -> Node:
        node = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text in ("*", "/"):
                self.take()
                node = Node("mul" if tok.text == "*" else "div", (node, self.unary()), tok.pos)
            else:
                return node

    def unary(self) -> Node:
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "-":
            self.take()
            return Node("neg", (self.unary(),), tok.pos)
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        tok = self.peek()
        if tok.kind == "OP" and (tok.text == "**" or (tok.text == "^" and self._power_follows())):
            self.take()
            sign = -1 if self.accept("-") else 1
            exp = self.take()
            if exp.kind != "INT":
                self.error("expected an integer exponent", exp)
            node = Node("pow", (node, sign * int(exp.text)), tok.pos)
            nxt = self.peek()
            if nxt.kind == "OP" and (nxt.text == "**" or (nxt.text == "^" and self._power_follows())):
                self.error("chained powers need parentheses", nxt)
        return node

    def atom(self) -> Node:
        tok = self.take()
        if tok.kind == "INT":
            return Node("int", (int(tok.text),), tok.pos)
        if tok.kind == "NAME":
            if tok.text == "d" and self.peek().kind == "OP" and self.peek().text == "(":
                self.take()
                inner = self.expr()
                self.expect(")")
                return Node("d", (inner,), tok.pos)
            if tok.text == "root":
                self.expect("(")
                inner = self.expr()
                self.expect(",")
                exp = self.take()
                if exp.kind != "INT":
                    self.error("root exponent must be an integer", exp)
                self.expect(")")
                return Node("root", (inner, int(exp.text)), tok.pos)
            return Node("var", (tok.text,), tok.pos)
        if tok.kind == "OP" and tok.text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if tok.kind == "OP" and tok.text == "{":
            items = [self.expr()]
            while self.accept(","):
                items.append(self.expr())
            self.expect("}")
            return Node("set", tuple(items), tok.pos)
        self.i -= 1
        self.error(f"unexpected {tok.text or 'end of input'!r}", tok)


def parse(text: str) -> Node:
    return Parser(text).parse()


# -- printing the tree ------------------------------------------------------------

_LEADING_INT = re.compile(r"-?\s*\d")

_LEVEL = {"tuple": 0, "add": 1, "sub": 1, "wedge": 2, "mul": 3, "div": 3, "neg": 4, "pow": 5}


def to_text(node: Node) -> str:
    """Fully determined text for a tree; parses back to an equal tree."""
    k = node.kind
    if k == "int":
        return str(node.args[0])
    if k == "var":
        return node.args[0]
    if k == "d":
        return f"d({to_text(node.args[0])})"
    if k == "root":
        return f"root({to_text(node.args[0])}, {node.args[1]})"
    if k == "set":
        return "{" + ", ".join(to_text(a) for a in node.args) + "}"
    if k == "tuple":
        return ", ".join(to_text(a) for a in node.args)
    if k == "neg":
        return "-" + _wrap(node.args[0], _LEVEL["neg"], strict=False)
    if k == "pow":
        return f"{_wrap(node.args[0], _LEVEL['pow'], strict=True)}^{node.args[1]}"
    op = {"add": " + ", "sub": " - ", "wedge": " ^ ", "mul": "*", "div": "/"}[k]
    level = _LEVEL[k]
    left, right = node.args
    rhs = _wrap(right, level, strict=True)
    if k == "wedge" and _LEADING_INT.match(rhs):
        # '^' followed by an integer would read back as a power
        rhs = f"({rhs})"
    return _wrap(left, level, strict=False) + op + rhs


def _wrap(node: Node, level: int, strict: bool) -> str:
    text = to_text(node)
    inner = _LEVEL.get(node.kind, 9)
    if inner < level or (strict and inner == level):
        return f"({text})"
    return text


# -- evaluation -------------------------------------------------------------------

@dataclass(frozen=True)
class SlotSet:
    elements: Tuple[RationalFunction, ...]


@dataclass(frozen=True)
class Family:
    slots: Tuple[Tuple[RationalFunction, ...], ...]


@dataclass(frozen=True)
class RootSpec:
    element: RationalFunction
    s: int


Value = Union[RationalFunction, DifferentialForm, SlotSet, Family, RootSpec, tuple]


class Evaluator:
    def __init__(self, ctx: FieldContext, source: str = ""):
        self.ctx = ctx
        self.source = source

    def fail(self, node: Node, message: str):
        line, col = _position(self.source, node.pos) if self.source else (1, node.pos + 1)
        raise ParseError(message, line, col)

    def scalar(self, node: Node) -> RationalFunction:
        v = self.eval(node)
        if isinstance(v, DifferentialForm) and v.degree == 0:
            return v.coefficient(())
        if not isinstance(v, RationalFunction):
            self.fail(node, "expected a field element")
        return v

    def eval(self, node: Node) -> Value:
        k = node.kind
        ctx = self.ctx
        if k == "int":
            return ctx.constant(node.args[0])
        if k == "var":
            name = node.args[0]
            if name in ctx.variables:
                return ctx.gen(name)
            if name.startswith("d") and name[1:] in ctx.variables:
                return differential(ctx.gen(name[1:]))
            self.fail(node, f"unknown variable {name!r}")
        if k == "d":
            inner = self.eval(node.args[0])
            if not isinstance(inner, (RationalFunction, DifferentialForm)):
                self.fail(node, "d applies to field elements and forms")
            return differential(inner)
        if k == "root":
            g = self.scalar(node.args[0])
            q = node.args[1]
            s = _log_p(q, ctx.p)
            if s is None or s < 1:
                self.fail(node, f"root exponent {q} is not a positive power of p={ctx.p}")
            return RootSpec(g, s)
        if k == "set":
            return SlotSet(tuple(self.scalar(a) for a in node.args))
        if k == "tuple":
            return tuple(self.eval(a) for a in node.args)
        if k == "neg":
            v = self.eval(node.args[0])
            if isinstance(v, (RationalFunction, DifferentialForm)):
                return -v
            self.fail(node, "cannot negate this value")
        if k == "pow":
            v = self.eval(node.args[0])
            if not isinstance(v, RationalFunction):
                self.fail(node, "only field elements can be raised to a power")
            e = node.args[1]
            if e < 0 and v.is_zero():
                self.fail(node, "division by zero")
            return v ** e
        left, right = (self.eval(a) for a in node.args)
        if k in ("add", "sub"):
            if isinstance(left, RationalFunction) and isinstance(right, RationalFunction):
                return left + right if k == "add" else left - right
            if isinstance(left, (RationalFunction, DifferentialForm)) and isinstance(right, (RationalFunction, DifferentialForm)):
                lf, rf = _as_form(left), _as_form(right)
                if lf.degree != rf.degree:
                    self.fail(node, f"cannot add forms of degree {lf.degree} and {rf.degree}")
                return lf + rf if k == "add" else lf - rf
            self.fail(node, "unsupported operands for + or -")
        if k == "mul":
            if isinstance(left, RationalFunction) and isinstance(right, RationalFunction):
                return left * right
            if isinstance(left, (RationalFunction, DifferentialForm)) and isinstance(right, (RationalFunction, DifferentialForm)):
                return wedge(left, right)
            self.fail(node, "unsupported operands for *")
        if k == "div":
            if not isinstance(right, RationalFunction):
                self.fail(node, "can only divide by field elements")
            if right.is_zero():
                self.fail(node, "division by zero")
            if isinstance(left, (RationalFunction, DifferentialForm)):
                return left / right if isinstance(left, RationalFunction) else left * right.inverse()
            self.fail(node, "unsupported operands for /")
        if k == "wedge":
            if isinstance(left, (SlotSet, Family)) and isinstance(right, (SlotSet, Family)):
                return Family(_slots(left) + _slots(right))
            if isinstance(left, (RationalFunction, DifferentialForm)) and isinstance(right, (RationalFunction, DifferentialForm)):
                return wedge(left, right)
            self.fail(node, "wedge needs two forms or two slot sets")
        self.fail(node, f"unknown node {k}")


def _slots(v) -> Tuple[Tuple[RationalFunction, ...], ...]:
    return (v.elements,) if isinstance(v, SlotSet) else v.slots


def _as_form(v) -> DifferentialForm:
    return v if isinstance(v, DifferentialForm) else DifferentialForm.scalar(v)


def _log_p(q: int, p: int) -> Optional[int]:
    s = 0
    while q > 1 and q % p == 0:
        q //= p
        s += 1
    return s if q == 1 else None


def evaluate(text: str, ctx: FieldContext) -> Value:
    return Evaluator(ctx, text).eval(parse(text))


def parse_scalar(text: str, ctx: FieldContext) -> RationalFunction:
    return Evaluator(ctx, text).scalar(parse(text))


def parse_form(text: str, ctx: FieldContext) -> DifferentialForm:
    v = evaluate(text, ctx)
    if isinstance(v, (RationalFunction, DifferentialForm)):
        return _as_form(v)
    raise ParseError("expected a differential form")


def render(value: Value) -> str:
    """Canonical text of a value; parsing it gives the value back."""
    if isinstance(value, RationalFunction):
        return str(value)
    if isinstance(value, DifferentialForm):
        return str(value)
    if isinstance(value, SlotSet):
        return "{" + ", ".join(str(x) for x in value.elements) + "}"
    if isinstance(value, Family):
        return " ^ ".join("{" + ", ".join(str(x) for x in s) + "}" for s in value.slots)
    if isinstance(value, RootSpec):
        return f"root({value.element}, {value.element.ctx.p ** value.s})"
    if isinstance(value, tuple):
        return ", ".join(render(v) for v in value)
    raise TypeError(f"cannot render {type(value).__name__}")


def parse_context(p: int, variables: Union[str, Sequence[str]]) -> FieldContext:
    if isinstance(variables, str):
        variables = [v.strip() for v in variables.split(",") if v.strip()]
    try:
        return FieldContext(p, tuple(variables))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
