"""p-sums and weighted p-means of extended nonnegative reals.

A signed exponent selects a *polarity* along with a magnitude p:

* existential polarity aggregates with exponent +p,
  ``(sum_i w_i a_i**p) ** (1/p)`` — a soft maximum;
* universal polarity aggregates with exponent -p,
  ``(sum_i w_i a_i**-p) ** (-1/p)`` — a soft minimum, and exactly the
  reciprocal-conjugate of the existential one.

Magnitude 0 means the geometric regime, which splits in two: the disjunctive
geometric mean folds 0-vs-inf conflicts with cotensor (inf wins), the
conjunctive one with tensor (0 wins).  Magnitude inf means essential extrema
over the support.

Universal aggregation is *implemented* as dual . existential . dual, so the
De Morgan duality of the two polarities holds exactly, corner cases included.

Points of weight 0 never contribute (the integrand is tensored with its
weight, and tensor(0, x) == 0 even at x == inf); p-sums are the unweighted
variant where every listed element counts with weight 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import QuantLogicError
from .extreal import INF, MulReal, check_mul, mul_dual
from .spaces import Space

# Kernel routing: go through the log domain for large exponents, wide dynamic
# range, or whenever a**p would leave the double exponent range.
_LOG_ROUTE_P = 64.0
_LOG_ROUTE_RANGE = 1e12
_EXP_BUDGET = 700.0


class Polarity(enum.Enum):
    EXISTENTIAL = "existential"  # exponent +p
    UNIVERSAL = "universal"      # exponent -p


@dataclass(frozen=True)
class SignedP:
    """A quantifier exponent: polarity plus magnitude p in [0, inf]."""

    polarity: Polarity
    magnitude: float

    def __post_init__(self):
        m = self.magnitude
        if math.isnan(m) or m < 0.0:
            raise QuantLogicError("INVALID_P", f"magnitude must be in [0, inf], got {m!r}")

    def __str__(self) -> str:
        tag = "E" if self.polarity is Polarity.EXISTENTIAL else "A"
        mag = "inf" if self.magnitude == INF else f"{self.magnitude:g}"
        return f"{tag}^{mag}"


def exists_p(p: float) -> SignedP:
    return SignedP(Polarity.EXISTENTIAL, float(p))


def forall_p(p: float) -> SignedP:
    return SignedP(Polarity.UNIVERSAL, float(p))


@dataclass(frozen=True)
class ValueVector:
    """A multiplicative-carrier value per point of a space."""

    space: Space
    values: tuple[MulReal, ...]

    def __post_init__(self):
        if len(self.values) != len(self.space):
            raise QuantLogicError(
                "VALUE_COUNT",
                f"{len(self.values)} values for {len(self.space)} points of "
                f"space {self.space.name!r}")
        for v in self.values:
            check_mul(v)

    def support_pairs(self) -> list[tuple[float, MulReal]]:
        return [(w, v) for w, v in zip(self.space.weights, self.values) if w > 0.0]


def value_vector(space: Space, values: Iterable[float]) -> ValueVector:
    return ValueVector(space, tuple(float(v) for v in values))


# --------------------------------------------------------------------------
# summation kernel
# --------------------------------------------------------------------------

def kahan_sum(xs: Iterable[float]) -> float:
    """Neumaier-compensated sum, in the order given."""
    s = 0.0
    c = 0.0
    for x in xs:
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


def _pow_sum_root(p: float, pairs: Sequence[tuple[float, float]]) -> float:
    """(sum_i w_i * a_i**p) ** (1/p) for finite p > 0, finite positive a_i."""
    amax = max(a for _, a in pairs)
    amin = min(a for _, a in pairs)
    direct = (p < _LOG_ROUTE_P
              and amax / amin <= _LOG_ROUTE_RANGE
              and p * abs(math.log(amax)) <= _EXP_BUDGET
              and p * abs(math.log(amin)) <= _EXP_BUDGET)
    if direct:
        s = kahan_sum(w * a ** p for w, a in pairs)
        if s == INF:
            return INF
        try:
            return s ** (1.0 / p)
        except OverflowError:
            return INF
    # log domain with max factoring
    terms = [math.log(w) + p * math.log(a) for w, a in pairs]
    m = max(terms)
    s = kahan_sum(math.exp(t - m) for t in terms)
    r = (m + math.log(s)) / p
    try:
        return math.exp(r)
    except OverflowError:
        return INF


def _existential(p: float, pairs: Sequence[tuple[float, float]]) -> MulReal:
    """Existential aggregation over (weight, value) pairs, weights > 0."""
    if p == INF:
        return max(a for _, a in pairs)
    if any(a == INF for _, a in pairs):
        return INF
    positive = [(w, a) for w, a in pairs if a > 0.0]
    if not positive:
        return 0.0
    return _pow_sum_root(p, positive)


def _geometric_disjunctive(pairs: Sequence[tuple[float, float]]) -> MulReal:
    """Weighted geometric product, 0-vs-inf decided by cotensor (inf wins)."""
    if any(a == INF for _, a in pairs):
        return INF
    if any(a == 0.0 for _, a in pairs):
        return 0.0
    s = kahan_sum(w * math.log(a) for w, a in pairs)
    try:
        return math.exp(s)
    except OverflowError:
        return INF


def _aggregate(sp: SignedP, pairs: Sequence[tuple[float, float]]) -> MulReal:
    if sp.polarity is Polarity.UNIVERSAL:
        dual_pairs = [(w, mul_dual(a)) for w, a in pairs]
        return mul_dual(_aggregate(exists_p(sp.magnitude), dual_pairs))
    if sp.magnitude == 0.0:
        return _geometric_disjunctive(pairs)
    return _existential(sp.magnitude, pairs)


# --------------------------------------------------------------------------
# public operations
# --------------------------------------------------------------------------

def p_sum(sp: SignedP, values: Sequence[float]) -> MulReal:
    """Unweighted p-sum of a nonempty list (magnitude 0 is undefined)."""
    vals = [check_mul(v) for v in values]
    if not vals:
        raise QuantLogicError("EMPTY_LIST", "p_sum of an empty list")
    if sp.magnitude == 0.0:
        raise QuantLogicError("P_ZERO_SUM", "p-sums require magnitude > 0")
    return _aggregate(sp, [(1.0, v) for v in vals])


def p_mean(sp: SignedP, vv: ValueVector) -> MulReal:
    """Weighted p-mean over the support of the vector's space.

    No normalization happens here: the weights are used as given, so on
    non-probability spaces this is a power *integral* rather than a mean.
    """
    pairs = vv.support_pairs()
    if not pairs:
        raise QuantLogicError("EMPTY_SUPPORT",
                              f"space {vv.space.name!r} has empty support")
    return _aggregate(sp, pairs)
