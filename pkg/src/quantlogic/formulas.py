"""The formula language: syntax trees, concrete syntax, and static checks.

Grammar (all whitespace-insensitive)::

    formula  := quantifier | scalar | chain
    quantifier := ("E" | "A") "^" p "(" var "in" space ")" "." formula
    scalar   := k "." formula                   -- k a nonnegative literal
    chain    := postfix (OPTOK postfix)*        -- one operator token per chain
    postfix  := primary ("^*")*
    primary  := "(" formula ")" | constant | number | atom "(" vars ")"

The six operator tokens are ``\\/`` (join), ``/\\`` (meet), ``(+)`` (sum),
``(+*)`` (harmonic sum), ``(x)`` (tensor), ``(x*)`` (cotensor); ``-o`` is
division.  A chain of one repeated operator associates to the left; mixing
distinct operators without parentheses is a syntax error, and ``-o`` does not
chain at all.  Quantifier and scalar bodies extend as far right as possible;
inside an operator chain they must be parenthesized.

Quantifier magnitudes live in [0, inf] ("inf" is a valid literal), scalar
factors in [0, inf).  Named constants: false, true, zero, one, top, bot.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import FormulaSyntaxError, QuantLogicError
from .extreal import INF, MUL_CONSTANTS, OpCode, format_value, napier, napier_inv
from .pmeans import Polarity
from .spaces import Space


# --------------------------------------------------------------------------
# syntax trees
# --------------------------------------------------------------------------

class Formula:
    """Base class; all nodes are frozen dataclasses below."""

    __slots__ = ()


@dataclass(frozen=True)
class Const(Formula):
    """A named constant (str) or a numeric literal of the ambient carrier."""

    value: float | str


@dataclass(frozen=True)
class Atom(Formula):
    name: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class BinOp(Formula):
    op: OpCode
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Div(Formula):
    """lhs -o rhs: the residual of tensor (read "lhs divides rhs")."""

    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Dual(Formula):
    body: Formula


@dataclass(frozen=True)
class Scalar(Formula):
    factor: float
    body: Formula


@dataclass(frozen=True)
class Quant(Formula):
    polarity: Polarity
    magnitude: float
    var: str
    space: str
    body: Formula


@dataclass(frozen=True)
class Context:
    """An ordered typing context: (variable, Space) pairs, names distinct."""

    entries: tuple[tuple[str, Space], ...] = ()

    def __post_init__(self):
        names = [v for v, _ in self.entries]
        if len(set(names)) != len(names):
            raise QuantLogicError("SHADOWED_VARIABLE",
                                  f"duplicate variable in context: {names}")

    def names(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.entries)

    def space_of(self, var: str) -> Space:
        for v, s in self.entries:
            if v == var:
                return s
        raise QuantLogicError("UNBOUND_VARIABLE", f"variable {var!r} not in context")

    def extended(self, var: str, space: Space) -> "Context":
        if any(v == var for v, _ in self.entries):
            raise QuantLogicError("SHADOWED_VARIABLE",
                                  f"variable {var!r} already bound")
        return Context(self.entries + ((var, space),))

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for _, s in self.entries)


# --------------------------------------------------------------------------
# tokens
# --------------------------------------------------------------------------

OP_TOKENS = {
    OpCode.JOIN: "\\/",
    OpCode.MEET: "/\\",
    OpCode.ADD: "(+)",
    OpCode.HADD: "(+*)",
    OpCode.TENSOR: "(x)",
    OpCode.COTENSOR: "(x*)",
}

RESERVED = {"E", "A", "in", "inf"} | set(MUL_CONSTANTS)

_NUMBER_RE = re.compile(r"\d+(?:\.\d+)?(?:[eE][-+]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class _Token:
    kind: str  # NUMBER IDENT OP LIMP LPAREN RPAREN DOT COMMA CARET DUAL EOF
    value: object
    pos: int


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "(":
            # After an atom name, "(" always opens the argument list, so that
            # e.g. phi(x) is an application even though "(x)" spells tensor.
            prev = toks[-1] if toks else None
            after_atom = (prev is not None and prev.kind == "IDENT"
                          and prev.value not in RESERVED)
            ops = () if after_atom else (
                (OpCode.HADD, "(+*)"), (OpCode.ADD, "(+)"),
                (OpCode.COTENSOR, "(x*)"), (OpCode.TENSOR, "(x)"))
            for op, tok in ops:
                if text.startswith(tok, i):
                    toks.append(_Token("OP", op, i))
                    i += len(tok)
                    break
            else:
                toks.append(_Token("LPAREN", "(", i))
                i += 1
            continue
        if text.startswith("\\/", i):
            toks.append(_Token("OP", OpCode.JOIN, i))
            i += 2
            continue
        if text.startswith("/\\", i):
            toks.append(_Token("OP", OpCode.MEET, i))
            i += 2
            continue
        if text.startswith("^*", i):
            toks.append(_Token("DUAL", "^*", i))
            i += 2
            continue
        if c == "^":
            toks.append(_Token("CARET", "^", i))
            i += 1
            continue
        if c == "-":
            if text.startswith("-o", i):
                toks.append(_Token("LIMP", "-o", i))
                i += 2
                continue
            if text.startswith("-inf", i):
                toks.append(_Token("NUMBER", -INF, i))
                i += 4
                continue
            m = _NUMBER_RE.match(text, i + 1)
            if m:
                toks.append(_Token("NUMBER", -float(m.group()), i))
                i = m.end()
                continue
            raise FormulaSyntaxError("stray '-'", i)
        if c.isdigit():
            m = _NUMBER_RE.match(text, i)
            toks.append(_Token("NUMBER", float(m.group()), i))
            i = m.end()
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            name = m.group()
            if name == "inf":
                toks.append(_Token("NUMBER", INF, i))
            else:
                toks.append(_Token("IDENT", name, i))
            i = m.end()
            continue
        if c == ")":
            toks.append(_Token("RPAREN", c, i))
        elif c == ".":
            toks.append(_Token("DOT", c, i))
        elif c == ",":
            toks.append(_Token("COMMA", c, i))
        else:
            raise FormulaSyntaxError(f"unexpected character {c!r}", i)
        i += 1
    toks.append(_Token("EOF", None, n))
    return toks


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, ahead: int = 0) -> _Token:
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def next(self) -> _Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise FormulaSyntaxError(f"expected {what}", tok.pos)
        return tok

    def parse(self) -> Formula:
        f = self.formula()
        tok = self.peek()
        if tok.kind != "EOF":
            raise FormulaSyntaxError("unexpected trailing input", tok.pos)
        return f

    def formula(self) -> Formula:
        tok = self.peek()
        if tok.kind == "IDENT" and tok.value in ("E", "A") and self.peek(1).kind == "CARET":
            return self.quantifier()
        if tok.kind == "NUMBER" and self.peek(1).kind == "DOT":
            return self.scalar()
        return self.chain()

    def quantifier(self) -> Formula:
        head = self.next()
        pol = Polarity.EXISTENTIAL if head.value == "E" else Polarity.UNIVERSAL
        self.expect("CARET", "'^' after quantifier")
        ptok = self.expect("NUMBER", "a quantifier magnitude")
        p = float(ptok.value)
        if math.isnan(p) or p < 0.0:
            raise FormulaSyntaxError("quantifier magnitude must be in [0, inf]", ptok.pos)
        self.expect("LPAREN", "'(' before the bound variable")
        var = self.ident("a bound variable")
        kw = self.next()
        if kw.kind != "IDENT" or kw.value != "in":
            raise FormulaSyntaxError("expected 'in'", kw.pos)
        space = self.ident("a space name")
        self.expect("RPAREN", "')' after the space name")
        self.expect("DOT", "'.' before the quantifier body")
        return Quant(pol, p, var, space, self.formula())

    def scalar(self) -> Formula:
        ktok = self.next()
        k = float(ktok.value)
        if k < 0.0:
            raise FormulaSyntaxError("scalar factor must be nonnegative", ktok.pos)
        if k == INF:
            raise FormulaSyntaxError("scalar factor must be finite", ktok.pos)
        self.expect("DOT", "'.' after the scalar factor")
        return Scalar(k, self.formula())

    def chain(self) -> Formula:
        left = self.postfix()
        tok = self.peek()
        if tok.kind not in ("OP", "LIMP"):
            return left
        first = self.next()
        operands = [left, self.postfix()]
        while True:
            tok = self.peek()
            if tok.kind == first.kind and tok.value == first.value:
                self.next()
                operands.append(self.postfix())
                continue
            if tok.kind in ("OP", "LIMP"):
                raise FormulaSyntaxError(
                    "mixing different operators requires parentheses", tok.pos)
            break
        if first.kind == "LIMP":
            if len(operands) > 2:
                raise FormulaSyntaxError("'-o' is non-associative; parenthesize",
                                         first.pos)
            return Div(operands[0], operands[1])
        node = operands[0]
        for rhs in operands[1:]:
            node = BinOp(first.value, node, rhs)
        return node

    def postfix(self) -> Formula:
        node = self.primary()
        while self.peek().kind == "DUAL":
            self.next()
            node = Dual(node)
        return node

    def ident(self, what: str) -> str:
        tok = self.next()
        if tok.kind != "IDENT" or tok.value in RESERVED:
            raise FormulaSyntaxError(f"expected {what}", tok.pos)
        return str(tok.value)

    def primary(self) -> Formula:
        tok = self.next()
        if tok.kind == "LPAREN":
            inner = self.formula()
            self.expect("RPAREN", "')'")
            return inner
        if tok.kind == "NUMBER":
            return Const(float(tok.value))
        if tok.kind == "IDENT":
            name = str(tok.value)
            if name in ("E", "A") and self.peek().kind == "CARET":
                raise FormulaSyntaxError(
                    "quantifier inside an operator chain must be parenthesized",
                    tok.pos)
            if name in MUL_CONSTANTS:
                return Const(name)
            if name == "in":
                raise FormulaSyntaxError("'in' is reserved", tok.pos)
            self.expect("LPAREN", f"'(' after atom {name!r}")
            args: list[str] = []
            if self.peek().kind != "RPAREN":
                args.append(self.ident("an argument variable"))
                while self.peek().kind == "COMMA":
                    self.next()
                    args.append(self.ident("an argument variable"))
            self.expect("RPAREN", "')' closing the argument list")
            return Atom(name, tuple(args))
        raise FormulaSyntaxError("expected a formula", tok.pos)


def parse(text: str) -> Formula:
    """Parse concrete syntax into a Formula tree."""
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# printer
# --------------------------------------------------------------------------

def _print_number(x: float) -> str:
    return "inf" if x == INF else repr(x)


def _operand(f: Formula) -> str:
    s = format_formula(f)
    if isinstance(f, (Const, Atom, Dual)):
        return s
    return f"({s})"


def format_formula(f: Formula) -> str:
    """Render a formula so that ``parse(format_formula(f)) == f``."""
    if isinstance(f, Const):
        if isinstance(f.value, str):
            return f.value
        return format_value(f.value)
    if isinstance(f, Atom):
        return f"{f.name}({', '.join(f.args)})"
    if isinstance(f, Dual):
        return f"{_operand(f.body)}^*"
    if isinstance(f, BinOp):
        return f"{_operand(f.lhs)} {OP_TOKENS[f.op]} {_operand(f.rhs)}"
    if isinstance(f, Div):
        return f"{_operand(f.lhs)} -o {_operand(f.rhs)}"
    if isinstance(f, Scalar):
        return f"{_print_number(f.factor)} . {format_formula(f.body)}"
    if isinstance(f, Quant):
        tag = "E" if f.polarity is Polarity.EXISTENTIAL else "A"
        return (f"{tag}^{_print_number(f.magnitude)} "
                f"({f.var} in {f.space}). {format_formula(f.body)}")
    raise TypeError(f"not a formula: {f!r}")


# --------------------------------------------------------------------------
# static checks and structural operations
# --------------------------------------------------------------------------

def check_wellformed(f: Formula, ctx: Context, env) -> Formula:
    """Validate variables, atom arities/spaces and space names against env.

    Returns the formula unchanged on success; raises QuantLogicError with one
    of UNBOUND_VARIABLE / SHADOWED_VARIABLE / ATOM_ARITY / UNKNOWN_SPACE /
    UNKNOWN_ATOM / INVALID_VALUE otherwise.
    """
    scope = {v: s.name for v, s in ctx.entries}
    _check(f, scope, env)
    return f


def _check(f: Formula, scope: dict[str, str], env) -> None:
    if isinstance(f, Const):
        if isinstance(f.value, float):
            if env.mode == "mul" and f.value < 0.0:
                raise QuantLogicError(
                    "INVALID_VALUE",
                    f"negative literal {f.value!r} in the multiplicative carrier")
        return
    if isinstance(f, Atom):
        table = env.atoms.get(f.name)
        if table is None:
            raise QuantLogicError("UNKNOWN_ATOM", f"atom {f.name!r} not in environment")
        if len(f.args) != len(table.context):
            raise QuantLogicError(
                "ATOM_ARITY",
                f"atom {f.name!r} takes {len(table.context)} arguments, got {len(f.args)}")
        for arg, space_name in zip(f.args, table.context):
            if arg not in scope:
                raise QuantLogicError("UNBOUND_VARIABLE",
                                      f"variable {arg!r} is not bound")
            if scope[arg] != space_name:
                raise QuantLogicError(
                    "ATOM_ARITY",
                    f"atom {f.name!r} expects a {space_name!r} variable, "
                    f"but {arg!r} ranges over {scope[arg]!r}")
        return
    if isinstance(f, (BinOp, Div)):
        _check(f.lhs, scope, env)
        _check(f.rhs, scope, env)
        return
    if isinstance(f, Dual):
        _check(f.body, scope, env)
        return
    if isinstance(f, Scalar):
        _check(f.body, scope, env)
        return
    if isinstance(f, Quant):
        if f.space not in env.spaces:
            raise QuantLogicError("UNKNOWN_SPACE", f"space {f.space!r} not in environment")
        if f.var in scope:
            raise QuantLogicError("SHADOWED_VARIABLE",
                                  f"variable {f.var!r} is already bound")
        inner = dict(scope)
        inner[f.var] = f.space
        _check(f.body, inner, env)
        return
    raise TypeError(f"not a formula: {f!r}")


def free_variables(f: Formula) -> tuple[str, ...]:
    """Free variables in order of first appearance."""
    out: list[str] = []

    def walk(g: Formula, bound: frozenset[str]) -> None:
        if isinstance(g, Atom):
            for a in g.args:
                if a not in bound and a not in out:
                    out.append(a)
        elif isinstance(g, (BinOp, Div)):
            walk(g.lhs, bound)
            walk(g.rhs, bound)
        elif isinstance(g, (Dual, Scalar)):
            walk(g.body, bound)
        elif isinstance(g, Quant):
            walk(g.body, bound | {g.var})

    walk(f, frozenset())
    return tuple(out)


def substitute(f: Formula, mapping: dict[str, str]) -> Formula:
    """Rename free variables; target names must not collide with binders."""
    if isinstance(f, Const):
        return f
    if isinstance(f, Atom):
        return Atom(f.name, tuple(mapping.get(a, a) for a in f.args))
    if isinstance(f, BinOp):
        return BinOp(f.op, substitute(f.lhs, mapping), substitute(f.rhs, mapping))
    if isinstance(f, Div):
        return Div(substitute(f.lhs, mapping), substitute(f.rhs, mapping))
    if isinstance(f, Dual):
        return Dual(substitute(f.body, mapping))
    if isinstance(f, Scalar):
        return Scalar(f.factor, substitute(f.body, mapping))
    if isinstance(f, Quant):
        if f.var in mapping.values():
            raise QuantLogicError("CAPTURE",
                                  f"substitution would capture {f.var!r}")
        inner = {k: v for k, v in mapping.items() if k != f.var}
        return Quant(f.polarity, f.magnitude, f.var, f.space,
                     substitute(f.body, inner))
    raise TypeError(f"not a formula: {f!r}")


def translate_formula(f: Formula, direction: str) -> Formula:
    """Napier-translate a formula between the carriers.

    ``to_add`` sends every numeric literal through napier (-log), ``to_mul``
    through napier_inv (1/exp); named constants, operators, scalars and
    quantifiers carry over unchanged (their interpretations are already
    napier conjugates of each other).
    """
    if direction not in ("to_add", "to_mul"):
        raise QuantLogicError("INVALID_DIRECTION",
                              f"direction must be to_add or to_mul, got {direction!r}")
    conv = napier if direction == "to_add" else napier_inv

    def walk(g: Formula) -> Formula:
        if isinstance(g, Const):
            if isinstance(g.value, float):
                return Const(conv(g.value))
            return g
        if isinstance(g, Atom):
            return g
        if isinstance(g, BinOp):
            return BinOp(g.op, walk(g.lhs), walk(g.rhs))
        if isinstance(g, Div):
            return Div(walk(g.lhs), walk(g.rhs))
        if isinstance(g, Dual):
            return Dual(walk(g.body))
        if isinstance(g, Scalar):
            return Scalar(g.factor, walk(g.body))
        if isinstance(g, Quant):
            return Quant(g.polarity, g.magnitude, g.var, g.space, walk(g.body))
        raise TypeError(f"not a formula: {g!r}")

    return walk(f)
