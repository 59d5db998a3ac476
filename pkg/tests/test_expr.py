import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from faadibruno import expr as E
from faadibruno.expr import (
    Guard,
    GuardAtom,
    OutOfDomainError,
    ParseError,
    TRUE_GUARD,
    UnboundVariableError,
    const,
    diff,
    eval_expr,
    guard_and,
    guard_eval,
    guard_subst,
    parse_expression,
    parse_map,
    pretty_expr,
    pretty_map,
    simplify,
    var,
)

X = var("x1")
Y = var("x2")


def ulps_apart(a: float, b: float) -> float:
    if a == b:
        return 0.0
    scale = math.ulp(max(abs(a), abs(b), 1e-300))
    return abs(a - b) / scale


# --- parsing ------------------------------------------------------------------

def test_parse_square():
    m = parse_map("fn(x) -> (x^2)")
    assert m.arity_in == 1 and m.arity_out == 1
    assert m.coords == (E.ipow(X, 2),)
    assert m.guard.is_true()


def test_parse_two_to_two():
    m = parse_map("fn(x,y) -> (x+y, x*y)")
    assert m.arity_in == 2 and m.arity_out == 2
    assert m.coords == (E.add(X, Y), E.mul(X, Y))


def test_parse_guarded_reciprocal():
    m = parse_map("fn(x) -> (1/x) where x != 0")
    assert m.guard == Guard((GuardAtom("!=0", X),))


def test_division_contributes_guard_atom():
    m = parse_map("fn(x) -> (1/x)")
    assert m.guard == Guard((GuardAtom("!=0", X),))


def test_log_sqrt_contribute_guard_atoms():
    m = parse_map("fn(x,y) -> (log(x) + sqrt(y))")
    assert set(m.guard.atoms) == {GuardAtom(">0", X), GuardAtom(">0", Y)}


def test_parse_error_has_position():
    with pytest.raises(ParseError) as err:
        parse_map("fn(x) -> (x +* 2)")
    assert "line 1" in str(err.value)
    assert "column" in str(err.value)


def test_unbound_variable_rejected():
    with pytest.raises(UnboundVariableError):
        parse_map("fn(x) -> (x + y)")
    with pytest.raises(UnboundVariableError):
        parse_map("fn(x) -> (x) where z > 0")


def test_wrong_arity_call_is_syntax_error():
    with pytest.raises(ParseError):
        parse_map("fn(x) -> (sin(x, x))")


def test_decimal_literals_are_exact_rationals():
    e = parse_expression("0.5")
    assert e == const(Fraction(1, 2))


# --- evaluation ---------------------------------------------------------------

def test_eval_sin_zero():
    assert eval_expr(E.sin(X), {"x1": 0.0}) == 0.0


def test_eval_arithmetic():
    e = parse_expression("x1^2 + 1")
    assert eval_expr(e, {"x1": 3.0}) == 10.0


def test_eval_log_negative_is_domain_fault():
    with pytest.raises(OutOfDomainError):
        eval_expr(E.log(X), {"x1": -1.0})


def test_eval_division_by_zero_is_domain_fault():
    with pytest.raises(OutOfDomainError):
        eval_expr(E.div(const(1), X), {"x1": 0.0})


def test_eval_unbound_variable():
    with pytest.raises(UnboundVariableError):
        eval_expr(X, {})


# --- differentiation ----------------------------------------------------------

def test_diff_product_is_bilinear():
    assert diff(E.mul(X, Y), "x1") == Y


def test_diff_sin():
    assert diff(E.sin(X), "x1") == E.cos(X)


def test_diff_cube_matches_central_difference():
    # oracle: central finite difference of x^3 at x=2 with h = 1e-4
    h = 1e-4
    oracle = ((2 + h) ** 3 - (2 - h) ** 3) / (2 * h)
    d = diff(E.ipow(X, 3), "x1")
    assert d == E.mul(const(3), E.ipow(X, 2))
    got = eval_expr(d, {"x1": 2.0})
    assert got == 12.0
    assert abs(got - oracle) / abs(oracle) < 1e-5


@pytest.mark.parametrize(
    "text, x0",
    [
        ("sin(x)*exp(x)", 0.7),
        ("x^4 - 3*x^2 + x", -1.3),
        ("1/x", 0.5),
        ("log(x)", 1.9),
        ("sqrt(x)", 2.0),
        ("cos(x^2)", 0.4),
    ],
)
def test_diff_matches_central_difference(text, x0):
    m = parse_map(f"fn(x) -> ({text})")
    e = m.coords[0]
    d = diff(e, "x1")
    h = 1e-4
    oracle = (eval_expr(e, {"x1": x0 + h}) - eval_expr(e, {"x1": x0 - h})) / (2 * h)
    got = eval_expr(d, {"x1": x0})
    assert abs(got - oracle) <= max(1e-8, 1e-5 * abs(oracle))


# --- simplification -----------------------------------------------------------

def test_simplify_additive_identity():
    assert simplify(E.add(const(0), X)) == X


def test_simplify_multiplicative_identities():
    assert simplify(E.mul(const(1), E.mul(X, const(1)))) == X


def test_simplify_constant_fold():
    assert simplify(E.add(const(2), const(3))) == const(5)


def test_simplify_required_rules():
    assert simplify(E.mul(const(0), E.log(X))) == const(0)
    assert simplify(E.ipow(X, 1)) == X
    assert simplify(E.ipow(X, 0)) == const(1)
    assert simplify(E.neg(E.neg(X))) == X
    assert simplify(E.add(X, const(0))) == X


# --- guards ---------------------------------------------------------------------

def test_guard_and_unit():
    g = Guard((GuardAtom("!=0", X),))
    assert guard_and(TRUE_GUARD, g) == g


def test_guard_eval_conjunction():
    g = Guard((GuardAtom(">0", X), GuardAtom("!=0", X)))
    assert guard_eval(g, {"x1": 2.0}) is True
    assert guard_eval(g, {"x1": -2.0}) is False


def test_guard_subst_commutes_with_eval():
    g = Guard((GuardAtom(">0", X),))
    composed = guard_subst(g, {"x1": E.add(E.mul(Y, Y), const(1))})
    assert guard_eval(composed, {"x2": 0.0}) is True


def test_guard_atom_fault_means_false():
    g = Guard((GuardAtom("!=0", E.div(const(1), X)),))
    assert guard_eval(g, {"x1": 0.0}) is False


def test_guard_and_idempotent():
    g = Guard((GuardAtom(">0", X),))
    assert guard_and(g, g) == g


# --- property tests -------------------------------------------------------------

def exprs(max_depth=4):
    leaves = st.one_of(
        st.sampled_from([var("x1"), var("x2")]),
        st.integers(-4, 4).map(const),
    )

    def extend(children):
        return st.one_of(
            st.tuples(children, children).map(lambda ab: E.add(*ab)),
            st.tuples(children, children).map(lambda ab: E.sub(*ab)),
            st.tuples(children, children).map(lambda ab: E.mul(*ab)),
            children.map(E.neg),
            st.tuples(children, st.integers(0, 3)).map(lambda an: E.ipow(*an)),
            children.map(E.sin),
            children.map(E.cos),
        )

    return st.recursive(leaves, extend, max_leaves=12)


@given(exprs(), st.floats(-2, 2), st.floats(-2, 2))
def test_simplify_preserves_eval(e, a, b):
    env = {"x1": a, "x2": b}
    before = eval_expr(e, env)
    after = eval_expr(simplify(e), env)
    assert ulps_apart(before, after) <= 4.0


@given(exprs())
def test_parse_of_pretty_is_identity_after_simplify(e):
    text = pretty_expr(e)
    assert simplify(parse_expression(text)) == simplify(e)


@given(exprs(), exprs(), st.floats(-2, 2), st.floats(-2, 2))
def test_guard_and_is_pointwise_conjunction(e1, e2, a, b):
    env = {"x1": a, "x2": b}
    g1 = Guard((GuardAtom(">0", e1),))
    g2 = Guard((GuardAtom("!=0", e2),))
    assert guard_eval(guard_and(g1, g2), env) == (
        guard_eval(g1, env) and guard_eval(g2, env)
    )


@given(exprs())
def test_diff_is_closed_over_node_set(e):
    d = diff(e, "x1")
    def walk(node):
        assert node.kind in (
            "var", "const", "add", "sub", "mul", "div", "pow", "neg",
            "sin", "cos", "exp", "log", "sqrt",
        )
        for a in node.args:
            walk(a)
    walk(d)


def test_map_pretty_roundtrip():
    texts = [
        "fn(x) -> (x^2)",
        "fn(x,y) -> (x + y, x*y)",
        "fn(x) -> (1/x) where x != 0",
        "fn(x,y) -> (log(x), x/y)",
        "fn(x) -> (-(x*sin(x)) + 2)",
    ]
    for text in texts:
        m = parse_map(text)
        again = parse_map(pretty_map(m.arity_in, m.coords, m.guard))
        assert again.coords == tuple(simplify(c) for c in m.coords)
        assert again.guard == m.guard
