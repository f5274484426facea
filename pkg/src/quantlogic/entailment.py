"""Graded entailment between predicates, and the laws it does(n't) satisfy.

``entails(phi, psi, p)`` is the universal p-mean of the pointwise residuals
phi -o psi — a number in [0, inf] measuring how strongly phi forces psi on
average.  The checks below probe the algebra of this functional:

* reflexivity is *graded*: entails(phi, phi, p) equals total_mass^(-1/p), so
  it is 1 exactly on probability spaces;
* the quantifier-reindexing adjunction holds on the nose;
* transitivity (a tensor-composition law) genuinely fails, and
  ``transitivity_search`` finds violating triples;
* densities push forward along point maps, compositionally, but the
  pushforward is neither lax nor colax monoidal — ``laxity_check``
  demonstrates both failure directions.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .errors import QuantLogicError
from .extreal import INF, MulReal, check_mul, mul_div, mul_tensor
from .pmeans import ValueVector, exists_p, forall_p, kahan_sum, p_mean
from .spaces import PointMap, Space, make_space, product_space

_REL_TOL = 1e-9
_ABS_TOL = 1e-12


@dataclass(frozen=True)
class EntailmentReport:
    check: str
    lhs: float
    rhs: float
    gap: float
    verdict: str  # "holds" | "violated"
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"


def _rel_close(a: float, b: float, tol: float = _REL_TOL) -> bool:
    if a == b:
        return True
    if math.isinf(a) or math.isinf(b):
        return False
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def _gap(lhs: float, rhs: float) -> float:
    return 0.0 if lhs == rhs else lhs - rhs


def entails(space: Space, phi, psi, p: float = 1.0) -> MulReal:
    """Universal p-mean of the residuals phi(i) -o psi(i) over the space."""
    phi = ValueVector(space, tuple(float(v) for v in phi))
    psi = ValueVector(space, tuple(float(v) for v in psi))
    ratios = tuple(mul_div(a, b) for a, b in zip(phi.values, psi.values))
    return p_mean(forall_p(p), ValueVector(space, ratios))


def reflexivity_check(space: Space, phi, p: float = 1.0) -> EntailmentReport:
    """entails(phi, phi, p) against the predicted total_mass^(-1/p)."""
    if not (p > 0.0):
        raise QuantLogicError("INVALID_P", "reflexivity check needs p > 0")
    value = entails(space, phi, phi, p)
    mass = space.total_mass
    expected = 1.0 if p == INF else mass ** (-1.0 / p)
    verdict = "holds" if _rel_close(value, expected) else "violated"
    return EntailmentReport("reflexivity", value, expected, _gap(value, expected),
                            verdict, {"total_mass": mass, "p": p})


def adjunction_check(space_i: Space, space_k: Space, rho, psi,
                     p: float = 1.0) -> EntailmentReport:
    """Existential marginalization is left adjoint to pulling back.

    lhs: entails_I(existential p-mean over K of rho, psi)
    rhs: entails_{IxK}(rho, psi pulled back along the projection)
    Both spaces must be probability spaces.
    """
    if not (space_i.is_probability and space_k.is_probability):
        raise QuantLogicError("NOT_PROBABILITY",
                              "adjunction check needs probability spaces")
    rho = tuple(check_mul(v) for v in rho)
    psi = tuple(check_mul(v) for v in psi)
    ni, nk = len(space_i), len(space_k)
    if len(rho) != ni * nk or len(psi) != ni:
        raise QuantLogicError("VALUE_COUNT", "rho must be I x K, psi over I")
    marginal = tuple(
        p_mean(exists_p(p), ValueVector(space_k, rho[i * nk:(i + 1) * nk]))
        for i in range(ni))
    lhs = entails(space_i, marginal, psi, p)
    prod = product_space(space_i, space_k)
    pulled = tuple(psi[i] for i in range(ni) for _ in range(nk))
    rhs = entails(prod, rho, pulled, p)
    verdict = "holds" if _rel_close(lhs, rhs) else "violated"
    return EntailmentReport("adjunction", lhs, rhs, _gap(lhs, rhs), verdict,
                            {"p": p})


def canned_transitivity_witness():
    """A fixed 2-point triple violating tensor-transitivity."""
    space = make_space(["i1", "i2"], [0.5, 0.5], name="I2")
    phi = (10.0, 0.001)
    psi = (10.0, 1.0)
    sigma = (1.0, 1.0)
    return space, phi, psi, sigma


def _transitivity_report(space, phi, psi, sigma, p, source) -> EntailmentReport | None:
    e1 = entails(space, phi, psi, p)
    e2 = entails(space, psi, sigma, p)
    e3 = entails(space, phi, sigma, p)
    lhs = mul_tensor(e1, e2)
    if lhs > e3 + _ABS_TOL * max(1.0, e3 if e3 != INF else 1.0):
        return EntailmentReport(
            "transitivity", lhs, e3, _gap(lhs, e3), "violated",
            {"phi": phi, "psi": psi, "sigma": sigma, "p": p, "source": source,
             "entailments": (e1, e2, e3), "space": space})
    return None


def transitivity_search(space: Space, p: float = 1.0, trials: int = 1000,
                        seed: int = 0) -> EntailmentReport:
    """Search random triples for a transitivity violation.

    Values are drawn log-uniformly from [1e-3, 1e3].  If no random violation
    shows up, the canned witness is evaluated (on its own 2-point space);
    NO_VIOLATION_FOUND is raised only if even that fails, which would mean
    the arithmetic is broken.
    """
    rng = random.Random(seed)
    n = len(space)
    lo, hi = math.log(1e-3), math.log(1e3)

    def vec():
        return tuple(math.exp(rng.uniform(lo, hi)) for _ in range(n))

    for trial in range(trials):
        report = _transitivity_report(space, vec(), vec(), vec(), p,
                                      {"kind": "random", "trial": trial})
        if report is not None:
            return report
    canned = canned_transitivity_witness()
    report = _transitivity_report(*canned, p, {"kind": "canned"})
    if report is not None:
        return report
    raise QuantLogicError("NO_VIOLATION_FOUND",
                          "no transitivity violation found (unexpected)")


def reindex_monotonicity_check(f: PointMap, phi, psi,
                               p: float = 1.0) -> EntailmentReport:
    """Entailment does not decrease when pulled back along a mass-non-increasing map."""
    if not f.measure_non_increasing:
        raise QuantLogicError("MAP_NOT_NONINCREASING",
                              "point map increases mass somewhere")
    phi = tuple(check_mul(v) for v in phi)
    psi = tuple(check_mul(v) for v in psi)
    lhs = entails(f.target, phi, psi, p)
    pulled_phi = tuple(phi[f(i)] for i in range(len(f.source)))
    pulled_psi = tuple(psi[f(i)] for i in range(len(f.source)))
    rhs = entails(f.source, pulled_phi, pulled_psi, p)
    holds = lhs <= rhs + _ABS_TOL
    return EntailmentReport("reindex-monotonicity", lhs, rhs, _gap(lhs, rhs),
                            "holds" if holds else "violated", {"p": p})


def pushforward_density(f: PointMap, phi) -> tuple[MulReal, ...]:
    """Fiberwise mass average: (sum over the fiber of phi*w_source) / w_target.

    Every point in the image of the map must carry positive target weight;
    points outside the image get density 0.
    """
    phi = tuple(check_mul(v) for v in phi)
    if len(phi) != len(f.source):
        raise QuantLogicError("VALUE_COUNT", "phi must live on the source space")
    image = set(f.assignment)
    for j in sorted(image):
        if f.target.weights[j] == 0.0:
            raise QuantLogicError(
                "ZERO_TARGET_WEIGHT",
                f"target point {f.target.points[j]!r} is hit but has weight 0")
    out = []
    for j in range(len(f.target)):
        if j not in image:
            out.append(0.0)
            continue
        terms = [mul_tensor(phi[i], f.source.weights[i]) for i in f.fiber(j)]
        if any(t == INF for t in terms):
            out.append(INF)
        else:
            out.append(mul_div(f.target.weights[j], kahan_sum(terms)))
    return tuple(out)


def laxity_check(f: PointMap, phi, psi) -> EntailmentReport:
    """Compare (f!phi) tensor (f!psi) against f!(phi tensor psi) pointwise.

    Reports which inequality directions fail; the pushforward is neither lax
    nor colax monoidal in general.
    """
    phi = tuple(check_mul(v) for v in phi)
    psi = tuple(check_mul(v) for v in psi)
    lhs = tuple(mul_tensor(a, b) for a, b in
                zip(pushforward_density(f, phi), pushforward_density(f, psi)))
    product = tuple(mul_tensor(a, b) for a, b in zip(phi, psi))
    rhs = pushforward_density(f, product)
    def above(a, b):
        return a > b + _ABS_TOL * max(1.0, b if b != INF else 1.0)
    lax_fails = any(above(a, b) for a, b in zip(lhs, rhs))
    colax_fails = any(above(b, a) for a, b in zip(lhs, rhs))
    verdict = "violated" if (lax_fails or colax_fails) else "holds"
    return EntailmentReport(
        "laxity", max(lhs), max(rhs), _gap(max(lhs), max(rhs)), verdict,
        {"pointwise_lhs": lhs, "pointwise_rhs": rhs,
         "lax_fails": lax_fails, "colax_fails": colax_fails})


def canned_laxity_instances():
    """The collapse-map counterexamples breaking each monoidality direction."""
    source = make_space(["i1", "i2"], [0.5, 0.5], name="I2")
    target = make_space(["pt"], [1.0], name="PT")
    collapse = PointMap(source, target, (0, 0))
    return [
        ("lax", collapse, (1.0, 0.0), (0.0, 1.0)),
        ("colax", collapse, (2.0, 0.0), (2.0, 0.0)),
    ]
