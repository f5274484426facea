"""Grammar round-trips, parse errors, well-formedness, and translation."""

import math
import random

import pytest

from quantlogic import (
    Atom,
    BinOp,
    Const,
    Context,
    Div,
    Dual,
    FormulaSyntaxError,
    INF,
    OpCode,
    Quant,
    QuantLogicError,
    Scalar,
    check_wellformed,
    environment_from_dict,
    format_formula,
    free_variables,
    make_space,
    napier,
    parse,
    substitute,
    translate_formula,
)
from quantlogic.pmeans import Polarity
from helpers import coherence_environment, formulas_close, random_formula


def test_parse_operators():
    f = parse(r"phi(x) \/ psi(x)")
    assert f == BinOp(OpCode.JOIN, Atom("phi", ("x",)), Atom("psi", ("x",)))
    assert parse(r"f() /\ g()").op == OpCode.MEET
    assert parse(r"f() (+) g()").op == OpCode.ADD
    assert parse(r"f() (+*) g()").op == OpCode.HADD
    assert parse(r"f() (x) g()").op == OpCode.TENSOR
    assert parse(r"f() (x*) g()").op == OpCode.COTENSOR
    assert parse(r"f() -o g()") == Div(Atom("f", ()), Atom("g", ()))


def test_atom_application_vs_tensor_token():
    # "(x)" spells tensor, except right after an atom name
    f = parse("phi(x) (x) psi(x)")
    assert f.op == OpCode.TENSOR
    assert f.lhs == Atom("phi", ("x",))
    g = parse("true (x) false")
    assert g == BinOp(OpCode.TENSOR, Const("true"), Const("false"))
    assert parse("r(x, y)") == Atom("r", ("x", "y"))


def test_parse_constants_and_numbers():
    assert parse("true") == Const("true")
    assert parse("bot") == Const("bot")
    assert parse("inf") == Const(INF)
    assert parse("3.5e-2") == Const(0.035)
    assert parse("-inf") == Const(-INF)
    assert parse("-2.5") == Const(-2.5)


def test_parse_quantifiers():
    f = parse("E^2 (x in I). phi(x)")
    assert f == Quant(Polarity.EXISTENTIAL, 2.0, "x", "I", Atom("phi", ("x",)))
    g = parse("A^inf (k in K). E^0 (x in I). rho(x, k)")
    assert g.polarity is Polarity.UNIVERSAL and g.magnitude == INF
    assert g.body.magnitude == 0.0


def test_parse_scalar_and_dual():
    f = parse("2 . phi(x)")
    assert f == Scalar(2.0, Atom("phi", ("x",)))
    g = parse("phi(x)^*^*")
    assert g == Dual(Dual(Atom("phi", ("x",))))
    h = parse("(f() (+) g())^*")
    assert isinstance(h, Dual) and h.body.op == OpCode.ADD


def test_chains_associate_left():
    f = parse("a() (+) b() (+) c()")
    assert f == BinOp(OpCode.ADD, BinOp(OpCode.ADD, Atom("a", ()), Atom("b", ())),
                      Atom("c", ()))


@pytest.mark.parametrize("text,fragment", [
    (r"a() \/ b() /\ c()", "mixing"),
    ("a() -o b() -o c()", "non-associative"),
    ("E^2 (x in I). phi(x) (x) E^2 (y in I). phi(y)", "parenthesized"),
    ("E^-2 (x in I). phi(x)", "magnitude"),
    ("inf . phi(x)", "finite"),
    ("-3 . phi(x)", "nonnegative"),
    ("phi(x", ")"),
    ("phi x", "'('"),
    ("in(x)", "reserved"),
    ("E^2 (in in I). phi(in)", "bound variable"),
    ("", "formula"),
    ("a() b()", "trailing"),
    ("?", "unexpected character"),
    ("-", "stray"),
])
def test_syntax_errors(text, fragment):
    with pytest.raises(FormulaSyntaxError) as err:
        parse(text)
    assert err.value.code == "SYNTAX_ERROR"
    assert fragment in str(err.value)


def test_syntax_error_position():
    with pytest.raises(FormulaSyntaxError) as err:
        parse(r"phi(x) \/ psi(x) /\ chi(x)")
    assert err.value.position == 17


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def test_format_examples():
    cases = [
        "phi(x)",
        r"phi(x) \/ psi(x)",
        "(phi(x) (+) psi(x)) (x) chi(y)",
        "E^2.0 (x in I). phi(x)",
        "A^inf (x in I). 2.0 . phi(x)^*",
        "f() -o g()",
    ]
    for text in cases:
        assert format_formula(parse(text)) == text


def test_print_parse_round_trip_random():
    rng = random.Random(999)
    for _ in range(300):
        f = random_formula(rng, depth=5)
        assert parse(format_formula(f)) == f


def test_round_trip_is_exact_on_literals():
    # repr round-trips doubles, so even ugly literals survive
    f = Const(0.1 + 0.2)
    assert parse(format_formula(f)) == f


# ---------------------------------------------------------------------------
# scope and typing
# ---------------------------------------------------------------------------

ENV = environment_from_dict({
    "mode": "mul",
    "spaces": {
        "I": {"points": ["a", "b"], "weights": [1, 1]},
        "K": {"points": ["u"], "weights": [1]},
    },
    "atoms": {
        "phi": {"context": ["I"], "values": [1.0, 2.0]},
        "rho": {"context": ["I", "K"], "values": [1.0, 2.0]},
    },
})


def ctx(*pairs):
    return Context(tuple((v, ENV.spaces[s]) for v, s in pairs))


def test_wellformed_ok():
    f = parse("E^1 (x in I). A^2 (k in K). rho(x, k)")
    assert check_wellformed(f, Context(()), ENV) is f
    g = parse("phi(y)")
    assert check_wellformed(g, ctx(("y", "I")), ENV) is g


@pytest.mark.parametrize("text,context,code", [
    ("phi(y)", (), "UNBOUND_VARIABLE"),
    ("E^1 (x in I). E^2 (x in K). phi(x)", (), "SHADOWED_VARIABLE"),
    ("E^1 (x in I). rho(x)", (), "ATOM_ARITY"),
    ("E^1 (k in K). phi(k)", (), "ATOM_ARITY"),
    ("E^1 (x in J). phi(x)", (), "UNKNOWN_SPACE"),
    ("E^1 (x in I). zeta(x)", (), "UNKNOWN_ATOM"),
    ("-2.5", (), "INVALID_VALUE"),
])
def test_wellformed_rejects(text, context, code):
    with pytest.raises(QuantLogicError) as err:
        check_wellformed(parse(text), ctx(*context), ENV)
    assert err.value.code == code


def test_shadowing_context_variable():
    f = parse("E^1 (y in I). phi(y)")
    with pytest.raises(QuantLogicError) as err:
        check_wellformed(f, ctx(("y", "I")), ENV)
    assert err.value.code == "SHADOWED_VARIABLE"


def test_free_variables_order():
    f = parse(r"rho(x, k) \/ (E^1 (z in I). rho(z, k)) \/ phi(y)")
    assert free_variables(f) == ("x", "k", "y")


def test_substitute():
    f = parse("phi(x) (x) (E^1 (y in I). rho(y, k))")
    g = substitute(f, {"x": "w", "k": "m"})
    assert free_variables(g) == ("w", "m")
    with pytest.raises(QuantLogicError) as err:
        substitute(f, {"x": "y"})  # would be captured by the binder
    assert err.value.code == "CAPTURE"


# ---------------------------------------------------------------------------
# translation between the carriers
# ---------------------------------------------------------------------------

def test_translate_literals():
    f = parse("phi(x) (x) 0.5")
    g = translate_formula(f, "to_add")
    assert g.rhs == Const(napier(0.5))
    assert g.lhs == f.lhs  # atoms translate via the environment, not here
    back = translate_formula(g, "to_mul")
    assert formulas_close(back, f)


def test_translate_named_constants_fixed():
    f = parse(r"true \/ bot")
    assert translate_formula(f, "to_add") == f


def test_translate_direction_validation():
    with pytest.raises(QuantLogicError) as err:
        translate_formula(parse("true"), "sideways")
    assert err.value.code == "INVALID_DIRECTION"


def test_translate_round_trip_random():
    rng = random.Random(424)
    for _ in range(200):
        f = random_formula(rng, depth=4)
        there_and_back = translate_formula(translate_formula(f, "to_add"), "to_mul")
        assert formulas_close(there_and_back, f, 1e-12)
