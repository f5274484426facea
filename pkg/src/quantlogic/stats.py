"""Statistical readings of the quantifiers.

Everything here is a thin specialization of the p-mean machinery:

* ``softmax_p``       — a value vector divided by its existential p-mean;
  p = 1 is the classical softmax of the negative energies, p = inf the
  sharp (arg)max.
* ``argmax``          — the unitary-separator cast of ``softmax_p(f, inf)``.
* ``log_likelihood``  — the additive-carrier reading of softmax at p = 1.
* ``renyi_entropy`` / ``hill_diversity`` — order-p entropy and the effective
  number of outcomes, with the usual limits at p in {0, 1, inf}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .environment import AtomTable, make_environment
from .errors import QuantLogicError
from .extreal import (INF, AddReal, MulReal, check_add, check_mul, mul_div,
                      mul_dual, mul_pow_signed, napier)
from .formulas import Atom, Context, Div, Dual, Quant
from .pmeans import Polarity, SignedP, ValueVector, exists_p, kahan_sum, p_mean
from .semantics import eval_add, eval_mul, separator_cast, unitary_separator
from .spaces import Space

_UNITARY_TOL = 1e-12


@dataclass(frozen=True)
class Distribution:
    """A mass function on a space: values in [0, 1] integrating to 1."""

    space: Space
    masses: tuple[MulReal, ...]

    def __post_init__(self):
        if len(self.masses) != len(self.space):
            raise QuantLogicError("VALUE_COUNT",
                                  f"{len(self.masses)} masses for "
                                  f"{len(self.space)} points")
        for m in self.masses:
            check_mul(m)
            if m > 1.0:
                raise QuantLogicError("NOT_UNITARY",
                                      f"mass {m!r} exceeds 1")
        total = kahan_sum(w * m for w, m in zip(self.space.weights, self.masses))
        if abs(total - 1.0) > _UNITARY_TOL:
            raise QuantLogicError("NOT_UNITARY",
                                  f"masses integrate to {total!r}, not 1")


def distribution(space: Space, masses) -> Distribution:
    return Distribution(space, tuple(float(m) for m in masses))


@dataclass(frozen=True)
class EnergyFunction:
    """Additive-carrier scores, finite or +inf (+inf = impossible)."""

    space: Space
    energies: tuple[AddReal, ...]

    def __post_init__(self):
        if len(self.energies) != len(self.space):
            raise QuantLogicError("VALUE_COUNT",
                                  f"{len(self.energies)} energies for "
                                  f"{len(self.space)} points")
        for u in self.energies:
            check_add(u)
            if u == -INF:
                raise QuantLogicError("INVALID_VALUE",
                                      "energies must be finite or +inf")


def energy_function(space: Space, energies) -> EnergyFunction:
    return EnergyFunction(space, tuple(float(u) for u in energies))


def _check_p(p: float, positive: bool) -> float:
    p = float(p)
    if math.isnan(p) or p < 0.0 or (positive and p == 0.0):
        lo = "(0" if positive else "[0"
        raise QuantLogicError("INVALID_P", f"order must be in {lo}, inf], got {p!r}")
    return p


def softmax_p(f: ValueVector, p: float) -> tuple[MulReal, ...]:
    """Pointwise f(x) divided by the existential p-mean of f.

    Over a probability space, p = 1 integrates to 1 against the weights
    (normalize the space first otherwise).  Equals the universal-quantifier
    formula "A^p (x in X). f(x) -o f(xstar)" evaluated at each xstar.
    """
    p = _check_p(p, positive=True)
    mean = p_mean(exists_p(p), f)
    if mean == 0.0:
        raise QuantLogicError("ZERO_PREDICATE",
                              "softmax of an (essentially) zero vector")
    return tuple(mul_div(mean, v) for v in f.values)


def argmax(f: ValueVector) -> tuple[bool, ...]:
    """True exactly where f is at least every support value (via softmax_inf)."""
    cast = unitary_separator()
    return tuple(separator_cast(cast, v) for v in softmax_p(f, INF))


def log_likelihood(u: EnergyFunction) -> tuple[AddReal, ...]:
    """Negative log softmax-probability of each point under energies u.

    Computed as the additive evaluation of
    ``A^1 (x in X). u(x) -o u(xstar)``, which agrees with
    -log(softmax_1(e^-u)) pointwise.
    """
    space = u.space
    env = make_environment(
        "add", {space.name: space},
        {"u": AtomTable((space.name,), u.energies)})
    formula = Quant(Polarity.UNIVERSAL, 1.0, "x", space.name,
                    Div(Atom("u", ("x",)), Atom("u", ("xstar",))))
    ctx = Context(((("xstar"), space),))
    return eval_add(formula, ctx, env).table


def _support_pairs(phi: Distribution) -> list[tuple[float, float]]:
    return [(w, m) for w, m in zip(phi.space.weights, phi.masses) if w > 0.0]


def renyi_entropy(phi: Distribution, p: float) -> float:
    """Order-p entropy (1/(1-p)) log integral(phi^p), with limits at 0/1/inf.

    p = 1 is Shannon entropy, p = 0 log of the support mass, p = inf
    -log of the essential maximum.
    """
    p = _check_p(p, positive=False)
    pairs = _support_pairs(phi)
    if p == 0.0:
        return math.log(math.fsum(w for w, m in pairs if m > 0.0))
    if p == 1.0:
        return -kahan_sum(w * m * math.log(m) for w, m in pairs if m > 0.0)
    if p == INF:
        return -math.log(max(m for _, m in pairs))
    mean = p_mean(exists_p(p), ValueVector(phi.space, phi.masses))
    return (p / (1.0 - p)) * math.log(mean)


def hill_diversity(phi: Distribution, p: float) -> MulReal:
    """The effective number of outcomes, exp(renyi_entropy).

    Away from the limit orders this is computed multiplicatively, as the dual
    of the scaled universal-quantifier formula
    ``p/(1-p) . A^p (i in I). phi(i)^*`` — that formula evaluates to
    exp(-H_p), the reciprocal effective number, so the dual recovers the
    diversity.  At p in {0, 1, inf} the joint limit is used (plugging the
    limit order into the scalar would collapse the formula path instead).
    """
    p = _check_p(p, positive=False)
    pairs = _support_pairs(phi)
    if p == 0.0:
        return math.fsum(w for w, m in pairs if m > 0.0)
    if p == 1.0:
        return math.exp(renyi_entropy(phi, 1.0))
    if p == INF:
        return mul_dual(max(m for _, m in pairs))
    space = phi.space
    env = make_environment(
        "mul", {space.name: space},
        {"phi": AtomTable((space.name,), phi.masses)})
    formula = Quant(Polarity.UNIVERSAL, p, "i", space.name,
                    Dual(Atom("phi", ("i",))))
    value = eval_mul(formula, Context(), env).table[0]
    return mul_dual(mul_pow_signed(p / (1.0 - p), value))


def shannon_entropy(phi: Distribution) -> float:
    return renyi_entropy(phi, 1.0)


def softmax_formula_path(f: ValueVector, p: float) -> tuple[MulReal, ...]:
    """The same values through the formula evaluator — a cross-check path."""
    _check_p(p, positive=True)
    space = f.space
    env = make_environment(
        "mul", {space.name: space},
        {"f": AtomTable((space.name,), f.values)})
    formula = Quant(Polarity.UNIVERSAL, p, "x", space.name,
                    Div(Atom("f", ("x",)), Atom("f", ("xstar",))))
    ctx = Context((("xstar", space),))
    return eval_mul(formula, ctx, env).table


def renyi_formula_path(phi: Distribution, p: float) -> float:
    """H_p as p/(1-p) times the additive universal quantifier of log(phi).

    The atom is napier(dual(phi)) = log(phi); only meaningful away from the
    limit orders (the scalar p/(1-p) is applied at library level because it
    may be negative).
    """
    p = _check_p(p, positive=True)
    if p == 1.0 or p == INF:
        raise QuantLogicError("INVALID_P", "formula path needs p outside {1, inf}")
    space = phi.space
    table = tuple(napier(mul_dual(m)) for m in phi.masses)
    env = make_environment(
        "add", {space.name: space},
        {"logphi": AtomTable((space.name,), table)})
    formula = Quant(Polarity.UNIVERSAL, p, "i", space.name,
                    Atom("logphi", ("i",)))
    value = eval_add(formula, Context(), env).table[0]
    k = p / (1.0 - p)
    if value in (INF, -INF):
        return -value if k < 0 else value
    return k * value
