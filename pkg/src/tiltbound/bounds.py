"""Lower bounds on the minimum (MAP) error probability of a finite test.

The central object is the tilted-posterior bound

    (1 - alpha) * P{ (x, y) : tilted posterior of x given y <= alpha }

for a tilting exponent theta >= 1, together with its exact theta -> infinity
limit, the classic theta = 1 special case, Fano-style baselines, and closed
forms for the erasure and binary-antipodal-Gaussian examples.  Brute-force
re-derivations used for cross-validation live here too, deliberately sharing
no code with the fast paths.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError
from .prob import (
    DEFAULT_TIE_TOL,
    JointFiniteModel,
    log_sum_exp,
    mutual_information,
    posterior_profile,
)

#: sentinel accepted by :func:`maximize_over_alpha` for the theta -> inf form
THETA_LIMIT = math.inf


@dataclass
class BoundCurve:
    """Ordered (abscissa, value) samples of one curve plus free-form metadata."""

    abscissa_name: str
    points: list[tuple[float, float]] = field(default_factory=list)
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        xs = [p[0] for p in self.points]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise InvalidParameterError("abscissas must be strictly increasing")
        if any(not math.isfinite(v) for _, v in self.points):
            raise InvalidParameterError("curve values must be finite")


def _check_alpha(alpha: float, *, open_top: bool = False) -> None:
    top_ok = alpha < 1 if open_top else alpha <= 1
    if not (0 <= alpha and top_ok) or math.isnan(alpha):
        hi = "1)" if open_top else "1]"
        raise InvalidParameterError(f"alpha must be in [0, {hi}, got {alpha}")


def _check_theta(theta: float) -> None:
    if math.isnan(theta) or theta < 1 or theta == math.inf:
        raise InvalidParameterError(f"theta must be finite and >= 1, got {theta}")


def map_error_exact(m: JointFiniteModel) -> float:
    """Minimum error probability of guessing X from Y (MAP decision)."""
    correct = 0.0
    for y in range(m.num_outputs):
        if m.log_output[y] == -math.inf:
            continue
        correct += math.exp(m.log_output[y] + np.max(m.log_posterior[:, y]))
    return min(max(1.0 - correct, 0.0), 1.0)


def _tilted_log_posteriors(m: JointFiniteModel, theta: float) -> np.ndarray:
    """Columnwise tilt of the posterior matrix, log domain; -inf columns pass through."""
    with np.errstate(invalid="ignore"):
        scaled = np.where(m.log_posterior == -math.inf, -math.inf, theta * m.log_posterior)
    out = np.full_like(scaled, -math.inf)
    for y in range(m.num_outputs):
        norm = log_sum_exp(scaled[:, y])
        if norm > -math.inf:
            out[:, y] = scaled[:, y] - norm
    return out


def tilted_error_bound(m: JointFiniteModel, theta: float, alpha: float) -> float:
    """(1-alpha) * joint mass of pairs whose theta-tilted posterior is <= alpha."""
    _check_theta(theta)
    _check_alpha(alpha)
    tilted = _tilted_log_posteriors(m, theta)
    event = np.exp(tilted) <= alpha
    mass = float(np.sum(np.exp(m.log_joint[event])))
    return (1.0 - alpha) * mass


def tilted_error_bound_curve(
    m: JointFiniteModel, theta: float, alphas: np.ndarray
) -> np.ndarray:
    """Vectorized :func:`tilted_error_bound` over an alpha grid."""
    _check_theta(theta)
    alphas = np.asarray(alphas, dtype=float)
    if np.any(np.isnan(alphas)) or np.any(alphas < 0) or np.any(alphas > 1):
        raise InvalidParameterError("alpha grid must lie in [0, 1]")
    tilted = _tilted_log_posteriors(m, theta)
    keep = m.log_joint > -math.inf
    vals = np.exp(tilted[keep])
    masses = np.exp(m.log_joint[keep])
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    cum = np.concatenate([[0.0], np.cumsum(masses[order])])
    idx = np.searchsorted(vals, alphas, side="right")
    return (1.0 - alphas) * cum[idx]


def poor_verdu_bound(m: JointFiniteModel, alpha: float) -> float:
    """Classic untilted lower bound, coded independently in the linear domain.

    Kept as a cross-check for the theta = 1 reduction of
    :func:`tilted_error_bound`; intentionally naive.
    """
    _check_alpha(alpha)
    prior = np.exp(m.log_prior)
    like = np.exp(m.log_likelihood)
    total = 0.0
    for y in range(like.shape[1]):
        p_y = sum(prior[x] * like[x, y] for x in range(prior.size))
        if p_y <= 0.0:
            continue
        for x in range(prior.size):
            joint = prior[x] * like[x, y]
            if joint / p_y <= alpha:
                total += joint
    return (1.0 - alpha) * total


def tilted_error_bound_brute(m: JointFiniteModel, theta: float, alpha: float) -> float:
    """Linear-domain, loop-based re-derivation of :func:`tilted_error_bound`.

    Only trustworthy when every model mass stays above ~1e-30 linearly, which
    is why the fast path works in logs.
    """
    _check_theta(theta)
    _check_alpha(alpha)
    prior = np.exp(m.log_prior)
    like = np.exp(m.log_likelihood)
    total = 0.0
    for y in range(like.shape[1]):
        p_y = sum(prior[x] * like[x, y] for x in range(prior.size))
        if p_y <= 0.0:
            continue
        post = [prior[x] * like[x, y] / p_y for x in range(prior.size)]
        norm = sum(q**theta for q in post)
        for x in range(prior.size):
            if post[x] ** theta / norm <= alpha:
                total += prior[x] * like[x, y]
    return (1.0 - alpha) * total


def tilted_error_bound_limit(
    m: JointFiniteModel,
    alpha: float,
    with_prefactor: bool = False,
    tie_tol: float = DEFAULT_TIE_TOL,
) -> float:
    """Exact theta -> infinity limit of the tilted-event mass.

    Evaluates ``1 - sum_y P(y) * (top-tie posterior mass) * 1{1/ell(y) > alpha}``
    where ``ell(y)`` is the count of posteriors tied at the maximum.  The
    comparison against ``1/ell`` is strict, so the reciprocal-integer points
    are genuine discontinuities.  ``with_prefactor`` multiplies by (1-alpha),
    turning the limit into a valid lower bound on the error probability.
    """
    _check_alpha(alpha, open_top=True)
    kept = 0.0
    for y in range(m.num_outputs):
        if m.log_output[y] == -math.inf:
            continue
        prof = posterior_profile(m, y, tie_tol)
        if 1.0 / prof.ell > alpha:
            kept += math.exp(m.log_output[y]) * float(np.sum(prof.sorted_values[: prof.ell]))
    value = 1.0 - kept
    return (1.0 - alpha) * value if with_prefactor else value


def unique_map_exact_error(
    m: JointFiniteModel, alpha: float, tie_tol: float = DEFAULT_TIE_TOL
) -> tuple[bool, float]:
    """(condition, value): condition is true iff the MAP estimate is unique
    for every positive-probability observation, in which case ``value`` (the
    limit form without prefactor) equals the exact MAP error probability.
    """
    if not 0 < alpha < 1:
        raise InvalidParameterError(f"alpha must be in (0, 1), got {alpha}")
    unique = all(
        posterior_profile(m, y, tie_tol).ell == 1
        for y in range(m.num_outputs)
        if m.log_output[y] > -math.inf
    )
    return unique, tilted_error_bound_limit(m, alpha, with_prefactor=False, tie_tol=tie_tol)


def maximize_over_alpha(
    m: JointFiniteModel, theta: float, tie_tol: float = DEFAULT_TIE_TOL
) -> tuple[float, float]:
    """Best alpha for the tilted bound (or its limit form when theta is inf).

    The bound is piecewise linear in alpha with breakpoints exactly at the
    distinct tilted-posterior values (reciprocal tie counts for the limit
    form), so evaluating at 0, every breakpoint, and every breakpoint minus
    the tie tolerance is an exact maximization.  Ties prefer the lower alpha.
    """
    if theta == THETA_LIMIT:
        points = set()
        for y in range(m.num_outputs):
            if m.log_output[y] > -math.inf:
                points.add(1.0 / posterior_profile(m, y, tie_tol).ell)
        evaluate = lambda a: tilted_error_bound_limit(m, a, with_prefactor=True, tie_tol=tie_tol)
    else:
        _check_theta(theta)
        tilted = _tilted_log_posteriors(m, theta)
        points = set(np.exp(tilted[m.log_joint > -math.inf]).tolist())
        evaluate = lambda a: tilted_error_bound(m, theta, a)

    candidates = {0.0}
    for v in points:
        if 0.0 <= v < 1.0:
            candidates.add(v)
        candidates.add(min(max(v - tie_tol, 0.0), 1.0 - tie_tol))
    best_alpha, best_value = 0.0, -math.inf
    for a in sorted(candidates):
        val = evaluate(a)
        if val > best_value:
            best_alpha, best_value = a, val
    return best_alpha, best_value


def fano_bounds(m: JointFiniteModel) -> tuple[float, float]:
    """(original, weakened) Fano-style lower bounds on the error probability."""
    k = m.num_inputs
    if k < 2:
        raise InvalidParameterError("Fano bounds need at least two hypotheses")
    info = mutual_information(m)
    original = max(0.0, (math.log(k) - info - math.log(2)) / math.log(2))
    weakened = max(0.0, 1.0 - (info + math.log(2)) / math.log(k))
    return original, weakened


# ----------------------------------------------------------------------
# closed-form example evaluators
# ----------------------------------------------------------------------

def bec_bound_closed_form(eps: float, p: float, theta: float, alpha: float) -> float:
    """Three-branch value of the tilted bound for a single-use erasure channel
    with input bias ``p`` < 1/2 on the symbol the decoder never guesses."""
    if not 0 < eps < 1:
        raise InvalidParameterError(f"erasure probability must be in (0,1), got {eps}")
    if not 0 < p < 0.5:
        raise InvalidParameterError(f"input bias must be in (0, 1/2), got {p}")
    _check_theta(theta)
    _check_alpha(alpha, open_top=True)
    lo = p**theta / (p**theta + (1 - p) ** theta)
    hi = (1 - p) ** theta / (p**theta + (1 - p) ** theta)
    if alpha < lo:
        return 0.0
    if alpha < hi:
        return eps * p * (1 - alpha)
    return eps * (1 - alpha)


def normal_cdf(z: float) -> float:
    """Standard normal cdf via the complementary error function."""
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def awgn_map_error(sigma: float) -> float:
    """MAP error of equiprobable antipodal signaling in Gaussian noise."""
    if not sigma > 0:
        raise InvalidParameterError(f"sigma must be positive, got {sigma}")
    return normal_cdf(-1.0 / sigma)


def awgn_bound_closed_form(sigma: float, theta: float, alpha: float) -> float:
    """Tilted bound for antipodal signaling in Gaussian noise.

    alpha in {0, 1} returns the analytic limit 0 (the log term diverges).
    """
    if not sigma > 0:
        raise InvalidParameterError(f"sigma must be positive, got {sigma}")
    _check_theta(theta)
    _check_alpha(alpha)
    if alpha == 0.0 or alpha == 1.0:
        return 0.0
    z = -(sigma / (2.0 * theta)) * math.log(1.0 / alpha - 1.0) - 1.0 / sigma
    return (1.0 - alpha) * normal_cdf(z)
