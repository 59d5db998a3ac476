"""Symbolic expression trees over real variables, with guards for open domains.

The node set {+, -, *, /, integer power, neg, sin, cos, exp, log, sqrt} is
closed under exact differentiation.  Guards are conjunctions of strict atoms
(e > 0, e != 0); they describe open sets and compose under substitution, so a
map stays smooth on its guard by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

Env = Mapping[str, float]


class ExprError(Exception):
    pass


class ParseError(ExprError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class UnboundVariableError(ExprError):
    pass


class OutOfDomainError(ExprError):
    """Evaluation hit a point outside a primitive's mathematical domain."""


FUNCTION_KINDS = ("sin", "cos", "exp", "log", "sqrt")
BINARY_KINDS = ("add", "sub", "mul", "div")


@dataclass(frozen=True, slots=True, eq=False)
class Expr:
    kind: str
    args: tuple["Expr", ...] = ()
    name: str = ""
    value: Fraction | None = None
    exponent: int = 0
    _hash: int = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_hash",
            hash((self.kind, self.args, self.name, self.value, self.exponent)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Expr):
            return NotImplemented
        return (self._hash == other._hash
                and self.kind == other.kind
                and self.name == other.name
                and self.value == other.value
                and self.exponent == other.exponent
                and self.args == other.args)

    def __str__(self):
        return pretty_expr(self)


def var(name: str) -> Expr:
    return Expr("var", name=name)


def const(value) -> Expr:
    return Expr("const", value=Fraction(value))


def add(a: Expr, b: Expr) -> Expr:
    return Expr("add", (a, b))


def sub(a: Expr, b: Expr) -> Expr:
    return Expr("sub", (a, b))


def mul(a: Expr, b: Expr) -> Expr:
    return Expr("mul", (a, b))


def div(a: Expr, b: Expr) -> Expr:
    return Expr("div", (a, b))


def ipow(base: Expr, exponent: int) -> Expr:
    if not isinstance(exponent, int) or exponent < 0:
        raise ValueError(f"integer power wants a non-negative int, got {exponent!r}")
    return Expr("pow", (base,), exponent=exponent)


def neg(a: Expr) -> Expr:
    return Expr("neg", (a,))


def sin(a: Expr) -> Expr:
    return Expr("sin", (a,))


def cos(a: Expr) -> Expr:
    return Expr("cos", (a,))


def exp(a: Expr) -> Expr:
    return Expr("exp", (a,))


def log(a: Expr) -> Expr:
    return Expr("log", (a,))


def sqrt(a: Expr) -> Expr:
    return Expr("sqrt", (a,))


ZERO = const(0)
ONE = const(1)


def is_const(e: Expr, value=None) -> bool:
    if e.kind != "const":
        return False
    return value is None or e.value == Fraction(value)


@lru_cache(maxsize=None)
def free_vars(e: Expr) -> frozenset[str]:
    if e.kind == "var":
        return frozenset((e.name,))
    out: frozenset[str] = frozenset()
    for a in e.args:
        out |= free_vars(a)
    return out


def eval_expr(e: Expr, env: Env) -> float:
    """Evaluate to an IEEE double.  Raises OutOfDomainError on domain faults
    (division by zero, log of non-positive, sqrt of negative, overflow) and
    UnboundVariableError for variables missing from env."""
    k = e.kind
    if k == "const":
        return float(e.value)
    if k == "var":
        try:
            return env[e.name]
        except KeyError:
            raise UnboundVariableError(e.name) from None
    if k == "add":
        return eval_expr(e.args[0], env) + eval_expr(e.args[1], env)
    if k == "sub":
        return eval_expr(e.args[0], env) - eval_expr(e.args[1], env)
    if k == "mul":
        return eval_expr(e.args[0], env) * eval_expr(e.args[1], env)
    if k == "div":
        d = eval_expr(e.args[1], env)
        if d == 0.0:
            raise OutOfDomainError("division by zero")
        return eval_expr(e.args[0], env) / d
    if k == "pow":
        return eval_expr(e.args[0], env) ** e.exponent
    if k == "neg":
        return -eval_expr(e.args[0], env)
    x = eval_expr(e.args[0], env)
    try:
        if k == "sin":
            return math.sin(x)
        if k == "cos":
            return math.cos(x)
        if k == "exp":
            return math.exp(x)
        if k == "log":
            if x <= 0.0:
                raise OutOfDomainError("log of non-positive argument")
            return math.log(x)
        if k == "sqrt":
            if x < 0.0:
                raise OutOfDomainError("sqrt of negative argument")
            return math.sqrt(x)
    except OverflowError:
        raise OutOfDomainError(f"overflow in {k}") from None
    raise ExprError(f"unknown node kind {k!r}")


def subst(e: Expr, mapping: Mapping[str, Expr]) -> Expr:
    """Simultaneous substitution of expressions for variables (no simplify)."""
    if e.kind == "var":
        return mapping.get(e.name, e)
    if not e.args:
        return e
    new_args = tuple(subst(a, mapping) for a in e.args)
    if new_args == e.args:
        return e
    return Expr(e.kind, new_args, e.name, e.value, e.exponent)


@lru_cache(maxsize=None)
def diff(e: Expr, v: str) -> Expr:
    """Exact symbolic partial derivative with respect to variable v."""
    return simplify(_diff(e, v))


def _diff(e: Expr, v: str) -> Expr:
    k = e.kind
    if k == "var":
        return ONE if e.name == v else ZERO
    if k == "const":
        return ZERO
    if k == "add":
        return add(_diff(e.args[0], v), _diff(e.args[1], v))
    if k == "sub":
        return sub(_diff(e.args[0], v), _diff(e.args[1], v))
    if k == "mul":
        a, b = e.args
        return add(mul(_diff(a, v), b), mul(a, _diff(b, v)))
    if k == "div":
        a, b = e.args
        return div(sub(mul(_diff(a, v), b), mul(a, _diff(b, v))), ipow(b, 2))
    if k == "pow":
        (a,) = e.args
        n = e.exponent
        if n == 0:
            return ZERO
        return mul(mul(const(n), ipow(a, n - 1)), _diff(a, v))
    if k == "neg":
        return neg(_diff(e.args[0], v))
    (a,) = e.args
    da = _diff(a, v)
    if k == "sin":
        return mul(cos(a), da)
    if k == "cos":
        return neg(mul(sin(a), da))
    if k == "exp":
        return mul(exp(a), da)
    if k == "log":
        return div(da, a)
    if k == "sqrt":
        return div(da, mul(const(2), sqrt(a)))
    raise ExprError(f"unknown node kind {k!r}")


@lru_cache(maxsize=None)
def simplify(e: Expr) -> Expr:
    """Small fixed rewrite set: constant folding plus unit/zero eliminations.
    Semantics-preserving on the guard of any enclosing map; guards are carried
    separately, so dropping a fault-capable subterm (0 * e) is sound here."""
    out = _simplify_once(e)
    while True:
        nxt = _simplify_once(out)
        if nxt == out:
            return nxt
        out = nxt


def _simplify_once(e: Expr) -> Expr:
    if not e.args:
        return e
    args = tuple(_simplify_once(a) for a in e.args)
    k = e.kind
    if k in ("add", "sub", "mul", "div"):
        return _simplify_binary(k, args[0], args[1])
    if k == "pow":
        return _simplify_pow(args[0], e.exponent)
    if k == "neg":
        a = args[0]
        if a.kind == "neg":
            return a.args[0]
        if a.kind == "const":
            return const(-a.value)
        if a.kind == "mul" and a.args[0].kind == "const":
            return mul(const(-a.args[0].value), a.args[1])
        return neg(a)
    return _simplify_function(k, args[0])


def _simplify_binary(k: str, a: Expr, b: Expr) -> Expr:
    ac = a.kind == "const"
    bc = b.kind == "const"
    if k == "add":
        if ac and bc:
            return const(a.value + b.value)
        if is_const(a, 0):
            return b
        if is_const(b, 0):
            return a
        return add(a, b)
    if k == "sub":
        if ac and bc:
            return const(a.value - b.value)
        if is_const(b, 0):
            return a
        if is_const(a, 0):
            return neg(b)
        if a == b:
            return ZERO
        return sub(a, b)
    if k == "mul":
        if ac and bc:
            return const(a.value * b.value)
        if is_const(a, 0) or is_const(b, 0):
            return ZERO
        if is_const(a, 1):
            return b
        if is_const(b, 1):
            return a
        # keep constants on the left and fold nested constant factors
        if bc and not ac:
            a, b = b, a
            ac, bc = bc, ac
        if ac and b.kind == "mul" and b.args[0].kind == "const":
            return mul(const(a.value * b.args[0].value), b.args[1])
        return mul(a, b)
    # k == "div"
    if ac and bc and b.value != 0:
        return const(a.value / b.value)
    if is_const(a, 0):
        return ZERO
    if is_const(b, 1):
        return a
    return div(a, b)


def _simplify_pow(a: Expr, n: int) -> Expr:
    if n == 0:
        return ONE
    if n == 1:
        return a
    if a.kind == "const":
        return const(a.value ** n)
    if a.kind == "pow":
        return ipow(a.args[0], a.exponent * n)
    return ipow(a, n)


_EXACT_FUNCTION_VALUES = {
    ("sin", Fraction(0)): Fraction(0),
    ("cos", Fraction(0)): Fraction(1),
    ("exp", Fraction(0)): Fraction(1),
    ("log", Fraction(1)): Fraction(0),
    ("sqrt", Fraction(0)): Fraction(0),
    ("sqrt", Fraction(1)): Fraction(1),
}


def _simplify_function(k: str, a: Expr) -> Expr:
    if a.kind == "const":
        hit = _EXACT_FUNCTION_VALUES.get((k, a.value))
        if hit is not None:
            return const(hit)
    return Expr(k, (a,))


# --- guards -----------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class GuardAtom:
    op: str  # ">0" or "!=0"
    expr: Expr

    def __str__(self):
        rel = ">" if self.op == ">0" else "!="
        return f"{pretty_expr(self.expr)} {rel} 0"


@dataclass(frozen=True, slots=True)
class Guard:
    """Conjunction of strict atoms; the empty conjunction is true."""
    atoms: tuple[GuardAtom, ...] = ()

    def is_true(self) -> bool:
        return not self.atoms

    def __str__(self):
        if self.is_true():
            return "true"
        return " && ".join(str(a) for a in self.atoms)


TRUE_GUARD = Guard()


def _atom_is_trivially_true(atom: GuardAtom) -> bool:
    e = atom.expr
    if e.kind != "const":
        return False
    if atom.op == ">0":
        return e.value > 0
    return e.value != 0


def _normalize_atoms(atoms) -> tuple[GuardAtom, ...]:
    seen = []
    for atom in atoms:
        atom = GuardAtom(atom.op, simplify(atom.expr))
        if _atom_is_trivially_true(atom):
            continue
        if atom not in seen:
            seen.append(atom)
    return tuple(seen)


def make_guard(atoms) -> Guard:
    return Guard(_normalize_atoms(atoms))


def guard_and(g1: Guard, g2: Guard) -> Guard:
    """Conjunction; idempotent and commutative at evaluation level."""
    return make_guard(g1.atoms + g2.atoms)


def guard_eval(g: Guard, env: Env) -> bool:
    """An atom whose expression faults is false: the point is outside the
    open set the atom describes."""
    for atom in g.atoms:
        try:
            v = eval_expr(atom.expr, env)
        except OutOfDomainError:
            return False
        if atom.op == ">0":
            if not v > 0.0:
                return False
        else:
            if v == 0.0:
                return False
    return True


def guard_subst(g: Guard, mapping: Mapping[str, Expr]) -> Guard:
    return make_guard(GuardAtom(a.op, subst(a.expr, mapping)) for a in g.atoms)


def guard_vars(g: Guard) -> frozenset[str]:
    out: frozenset[str] = frozenset()
    for atom in g.atoms:
        out |= free_vars(atom.expr)
    return out


def domain_atoms(e: Expr) -> tuple[GuardAtom, ...]:
    """Guard atoms under which every primitive on the path is defined and
    smooth: denominators != 0, log/sqrt arguments > 0."""
    out: list[GuardAtom] = []

    def walk(node: Expr):
        for a in node.args:
            walk(a)
        if node.kind == "div":
            out.append(GuardAtom("!=0", node.args[1]))
        elif node.kind in ("log", "sqrt"):
            out.append(GuardAtom(">0", node.args[0]))

    walk(e)
    return tuple(out)


# --- parsing ----------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # "num" | "ident" | "op" | "eof"
    text: str
    line: int
    col: int


_OPERATORS = ("->", "!=", "&&", "+", "-", "*", "/", "^", "(", ")", ",", ">")


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            tokens.append(Token("num", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        for op in _OPERATORS:
            if text.startswith(op, i):
                tokens.append(Token("op", op, line, col))
                i += len(op)
                col += len(op)
                break
        else:
            raise ParseError(f"unexpected character {c!r}", line, col)
    tokens.append(Token("eof", "", line, col))
    return tokens


@dataclass(frozen=True, slots=True)
class ParsedMap:
    """A map literal: arities, coordinate expressions and guard over the
    canonical variables x1..xn."""
    arity_in: int
    coords: tuple[Expr, ...]
    guard: Guard

    @property
    def arity_out(self) -> int:
        return len(self.coords)


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def error(self, message: str, token: Token | None = None):
        t = token or self.peek()
        raise ParseError(message, t.line, t.col)

    def expect_op(self, op: str) -> Token:
        t = self.peek()
        if t.kind != "op" or t.text != op:
            self.error(f"expected {op!r}, found {t.text or 'end of input'!r}")
        return self.next()

    def accept_op(self, op: str) -> bool:
        t = self.peek()
        if t.kind == "op" and t.text == op:
            self.next()
            return True
        return False

    def expect_ident(self) -> Token:
        t = self.peek()
        if t.kind != "ident":
            self.error(f"expected identifier, found {t.text or 'end of input'!r}")
        return self.next()

    # expr := term (("+"|"-") term)*
    def expr(self) -> Expr:
        e = self.term()
        while True:
            t = self.peek()
            if t.kind == "op" and t.text in ("+", "-"):
                self.next()
                rhs = self.term()
                e = add(e, rhs) if t.text == "+" else sub(e, rhs)
            else:
                return e

    # term := factor (("*"|"/") factor)*
    def term(self) -> Expr:
        e = self.factor()
        while True:
            t = self.peek()
            if t.kind == "op" and t.text in ("*", "/"):
                self.next()
                rhs = self.factor()
                e = mul(e, rhs) if t.text == "*" else div(e, rhs)
            else:
                return e

    # factor := ["-"] atom ["^" nat]
    def factor(self) -> Expr:
        negated = self.accept_op("-")
        e = self.atom()
        if self.accept_op("^"):
            t = self.peek()
            if t.kind != "num" or "." in t.text:
                self.error("power wants a non-negative integer exponent")
            self.next()
            e = ipow(e, int(t.text))
        return neg(e) if negated else e

    # atom := number | ident | func "(" expr ")" | "(" expr ")"
    def atom(self) -> Expr:
        t = self.peek()
        if t.kind == "num":
            self.next()
            return const(Fraction(t.text))
        if t.kind == "ident":
            self.next()
            if t.text in FUNCTION_KINDS:
                self.expect_op("(")
                inner = self.expr()
                self.expect_op(")")
                return Expr(t.text, (inner,))
            return var(t.text)
        if t.kind == "op" and t.text == "(":
            self.next()
            inner = self.expr()
            self.expect_op(")")
            return inner
        self.error(f"expected expression, found {t.text or 'end of input'!r}")

    # gatom := expr ">" "0" | expr "!=" "0"
    def gatom(self) -> GuardAtom:
        e = self.expr()
        t = self.peek()
        if t.kind == "op" and t.text in (">", "!="):
            self.next()
            z = self.peek()
            if z.kind != "num" or Fraction(z.text) != 0:
                self.error("guard atoms compare against literal 0")
            self.next()
            return GuardAtom(">0" if t.text == ">" else "!=0", e)
        self.error("expected '> 0' or '!= 0' in guard")

    def guard(self) -> Guard:
        atoms = [self.gatom()]
        while self.accept_op("&&"):
            atoms.append(self.gatom())
        return make_guard(atoms)

    def map_literal(self) -> ParsedMap:
        t = self.expect_ident()
        if t.text != "fn":
            self.error("map must start with 'fn'", t)
        self.expect_op("(")
        params = [self.expect_ident().text]
        while self.accept_op(","):
            params.append(self.expect_ident().text)
        self.expect_op(")")
        if len(set(params)) != len(params):
            self.error("duplicate parameter name")
        self.expect_op("->")
        self.expect_op("(")
        coords = [self.expr()]
        while self.accept_op(","):
            coords.append(self.expr())
        self.expect_op(")")
        guard = TRUE_GUARD
        t = self.peek()
        if t.kind == "ident" and t.text == "where":
            self.next()
            guard = self.guard()
        end = self.peek()
        if end.kind != "eof":
            self.error(f"unexpected trailing input {end.text!r}")
        return _canonicalize(params, coords, guard)


def _canonicalize(params, coords, guard) -> ParsedMap:
    allowed = set(params)
    for e in coords:
        for name in sorted(free_vars(e) - allowed):
            raise UnboundVariableError(f"unbound variable {name!r} in map body")
    for name in sorted(guard_vars(guard) - allowed):
        raise UnboundVariableError(f"unbound variable {name!r} in guard")
    rename = {p: var(var_name(i)) for i, p in enumerate(params)}
    coords = tuple(simplify(subst(e, rename)) for e in coords)
    guard = guard_subst(guard, rename)
    # denominators and log/sqrt arguments contribute guard atoms so the map
    # is smooth everywhere its guard holds
    atoms = list(guard.atoms)
    for e in coords:
        atoms.extend(domain_atoms(e))
    return ParsedMap(len(params), coords, make_guard(atoms))


def var_name(i: int) -> str:
    """Canonical name of the i-th (0-based) variable: x1, x2, ..."""
    return f"x{i + 1}"


def parse_map(text: str) -> ParsedMap:
    """Parse 'fn(a,b) -> (e1,e2) where g' into canonical x1..xn variables."""
    return _Parser(text).map_literal()


def parse_expression(text: str) -> Expr:
    """Parse a bare expression (test and tooling convenience)."""
    p = _Parser(text)
    e = p.expr()
    if p.peek().kind != "eof":
        p.error("unexpected trailing input")
    return e


# --- pretty printing ----------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_UNARY, _PREC_ATOM = 1, 2, 3, 4


def _precedence(e: Expr) -> int:
    k = e.kind
    if k in ("add", "sub"):
        return _PREC_ADD
    if k in ("mul", "div"):
        return _PREC_MUL
    if k == "neg":
        return _PREC_UNARY
    if k == "const":
        if e.value < 0:
            return _PREC_UNARY
        if e.value.denominator != 1:
            return _PREC_MUL  # prints as p/q
        return _PREC_ATOM
    return _PREC_ATOM  # var, pow, functions


def _paren(e: Expr, min_prec: int) -> str:
    s = pretty_expr(e)
    return f"({s})" if _precedence(e) < min_prec else s


def pretty_expr(e: Expr) -> str:
    """Grammar-conforming text; parse(pretty(e)) equals e after simplify."""
    k = e.kind
    if k == "var":
        return e.name
    if k == "const":
        v = e.value
        if v < 0:
            return f"-{_paren(const(-v), _PREC_ATOM)}"
        if v.denominator == 1:
            return str(v.numerator)
        return f"{v.numerator}/{v.denominator}"
    if k == "add":
        return f"{_paren(e.args[0], _PREC_ADD)} + {_paren(e.args[1], _PREC_ADD + 1)}"
    if k == "sub":
        return f"{_paren(e.args[0], _PREC_ADD)} - {_paren(e.args[1], _PREC_ADD + 1)}"
    if k == "mul":
        return f"{_paren(e.args[0], _PREC_MUL)}*{_paren(e.args[1], _PREC_MUL + 1)}"
    if k == "div":
        return f"{_paren(e.args[0], _PREC_MUL)}/{_paren(e.args[1], _PREC_MUL + 1)}"
    if k == "pow":
        base = e.args[0]
        s = pretty_expr(base)
        if base.kind == "pow" or _precedence(base) < _PREC_ATOM:
            s = f"({s})"
        return f"{s}^{e.exponent}"
    if k == "neg":
        return f"-{_paren(e.args[0], _PREC_ATOM)}"
    return f"{k}({pretty_expr(e.args[0])})"


def pretty_map(arity_in: int, coords, guard: Guard) -> str:
    params = ", ".join(var_name(i) for i in range(arity_in))
    body = ", ".join(pretty_expr(e) for e in coords)
    text = f"fn({params}) -> ({body})"
    if not guard.is_true():
        text += f" where {guard}"
    return text
