"""Finite-alphabet probability primitives.

Everything is stored in the natural-log domain so that extreme tilting
exponents (powers of 100 and beyond) stay exact-safe where linear-domain
arithmetic would underflow.  Zero mass is kept in the alphabet as -inf so
index bookkeeping never shifts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, ZeroProbabilityError

# Construction tolerances: inputs off by <= SUM_SLACK are silently
# renormalized (text-file round-off), anything worse is a user error.
SUM_SLACK = 1e-9
DEFAULT_TIE_TOL = 1e-9


def log_sum_exp(values: np.ndarray) -> float:
    """Stable log(sum(exp(values))); returns -inf for an all--inf input."""
    values = np.asarray(values, dtype=float)
    hi = np.max(values) if values.size else -math.inf
    if hi == -math.inf:
        return -math.inf
    return float(hi + np.log(np.sum(np.exp(values - hi))))


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _normalize_log(log_mass: np.ndarray, what: str) -> np.ndarray:
    """Validate a log-mass vector and renormalize it to an exact unit sum."""
    if log_mass.size == 0:
        raise InvalidParameterError(f"{what} must be non-empty")
    if np.any(np.isnan(log_mass)) or np.any(log_mass == math.inf):
        raise InvalidParameterError(f"{what} contains NaN or +inf log mass")
    total = log_sum_exp(log_mass)
    if total == -math.inf:
        raise InvalidParameterError(f"{what} has zero total mass")
    if abs(math.exp(total) - 1.0) > SUM_SLACK:
        raise InvalidParameterError(
            f"{what} sums to {math.exp(total):.12g}, beyond the {SUM_SLACK} slack"
        )
    return log_mass - total


@dataclass(frozen=True)
class Pmf:
    """Probability mass function over a finite alphabet, log domain.

    ``log_mass[i]`` is the natural log of the probability of symbol ``i``;
    zero-probability symbols carry ``-inf``.  The exponentiated vector sums
    to 1 to within 1e-12 after construction.
    """

    log_mass: np.ndarray

    def __post_init__(self):
        lm = np.asarray(self.log_mass, dtype=float)
        object.__setattr__(self, "log_mass", _freeze(_normalize_log(lm, "pmf")))

    @classmethod
    def from_probs(cls, probs) -> "Pmf":
        p = np.asarray(probs, dtype=float)
        if np.any(p < 0) or np.any(np.isnan(p)):
            raise InvalidParameterError("probabilities must be non-negative")
        with np.errstate(divide="ignore"):
            return cls(np.log(p))

    @classmethod
    def uniform(cls, size: int) -> "Pmf":
        if size < 1:
            raise InvalidParameterError("alphabet size must be positive")
        return cls(np.full(size, -math.log(size)))

    @property
    def alphabet_size(self) -> int:
        return self.log_mass.size

    def __len__(self) -> int:
        return self.log_mass.size

    def probs(self) -> np.ndarray:
        return np.exp(self.log_mass)

    def support(self) -> np.ndarray:
        """Indices with strictly positive mass."""
        return np.flatnonzero(self.log_mass > -math.inf)


def tilt_pmf(d: Pmf, theta: float, unsafe: bool = False) -> Pmf:
    """Raise each mass to the power ``theta`` and renormalize.

    theta = 1 returns the identical distribution.  Values below 1 are outside
    the regime the bounds are proved for and are rejected unless ``unsafe`` is
    set (theta must still be >= 0).  The support never changes.
    """
    if not math.isfinite(theta) or theta < 0:
        raise InvalidParameterError(f"tilt exponent must be finite and >= 0, got {theta}")
    if theta < 1 and not unsafe:
        raise InvalidParameterError(
            f"tilt exponent {theta} < 1 rejected; pass unsafe=True to explore it"
        )
    if theta == 1:
        return d
    scaled = np.where(d.log_mass == -math.inf, -math.inf, theta * d.log_mass)
    return Pmf(scaled - log_sum_exp(scaled))


@dataclass(frozen=True)
class JointFiniteModel:
    """Prior on X plus a row-stochastic likelihood matrix P(y|x).

    Derived members (output marginal, posterior matrix, joint matrix) are
    precomputed in the log domain.  Immutable; safe to share across threads.
    """

    log_prior: np.ndarray
    log_likelihood: np.ndarray

    def __post_init__(self):
        prior = _normalize_log(np.asarray(self.log_prior, dtype=float), "prior")
        like = np.asarray(self.log_likelihood, dtype=float)
        if like.ndim != 2 or like.shape[0] != prior.size:
            raise InvalidParameterError("likelihood must be |X| x |Y|")
        rows = np.empty_like(like)
        for i in range(like.shape[0]):
            rows[i] = _normalize_log(like[i], f"likelihood row {i}")
        joint = prior[:, None] + rows
        with np.errstate(divide="ignore"):
            out = np.array([log_sum_exp(joint[:, j]) for j in range(joint.shape[1])])
            post = np.where(out[None, :] == -math.inf, -math.inf, joint - out[None, :])
        object.__setattr__(self, "log_prior", _freeze(prior))
        object.__setattr__(self, "log_likelihood", _freeze(rows))
        object.__setattr__(self, "log_joint", _freeze(joint))
        object.__setattr__(self, "log_output", _freeze(out))
        object.__setattr__(self, "log_posterior", _freeze(post))

    @classmethod
    def from_probs(cls, prior_probs, likelihood_rows) -> "JointFiniteModel":
        p = np.asarray(prior_probs, dtype=float)
        w = np.asarray(likelihood_rows, dtype=float)
        if np.any(p < 0) or np.any(w < 0):
            raise InvalidParameterError("probabilities must be non-negative")
        with np.errstate(divide="ignore"):
            return cls(np.log(p), np.log(w))

    @property
    def num_inputs(self) -> int:
        return self.log_prior.size

    @property
    def num_outputs(self) -> int:
        return self.log_likelihood.shape[1]

    def prior(self) -> Pmf:
        return Pmf(self.log_prior)

    def output_probs(self) -> np.ndarray:
        return np.exp(self.log_output)


def posterior(m: JointFiniteModel, y: int) -> Pmf:
    """Bayes posterior over X given observation index ``y``."""
    if not 0 <= y < m.num_outputs:
        raise InvalidParameterError(f"observation index {y} out of range")
    if m.log_output[y] == -math.inf:
        raise ZeroProbabilityError(f"observation {y} has zero probability")
    return Pmf(m.log_posterior[:, y])


@dataclass(frozen=True)
class PosteriorProfile:
    """Posterior values for one observation, sorted non-increasing.

    ``ell`` counts how many of the leading values are tied with the largest
    one; ties are decided in the log domain.
    """

    sorted_values: np.ndarray
    original_indices: np.ndarray
    ell: int

    def __post_init__(self):
        _freeze(np.asarray(self.sorted_values))
        _freeze(np.asarray(self.original_indices))


def posterior_profile(
    m: JointFiniteModel, y: int, tie_tol: float = DEFAULT_TIE_TOL
) -> PosteriorProfile:
    """Sorted posterior profile for observation ``y`` with its leading tie count."""
    if tie_tol < 0:
        raise InvalidParameterError("tie_tol must be >= 0")
    post = posterior(m, y)
    # stable sort keeps the lowest original index first among exact ties
    order = np.argsort(-post.log_mass, kind="stable")
    logs = post.log_mass[order]
    ell = 1
    while ell < logs.size and logs[0] - logs[ell] <= tie_tol:
        ell += 1
    return PosteriorProfile(np.exp(logs), order, ell)


def mutual_information(m: JointFiniteModel) -> float:
    """I(X;Y) in nats, with the 0 log 0 terms dropped."""
    xs, ys = (m.log_joint > -math.inf).nonzero()
    lj = m.log_joint[xs, ys]
    ratio = lj - m.log_prior[xs] - m.log_output[ys]
    return float(np.sum(np.exp(lj) * ratio))
