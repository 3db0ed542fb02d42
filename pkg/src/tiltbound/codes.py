"""Exact block-code error probability by exhaustive decoding, the matching
finite-blocklength lower bound, and the unique-ML predicate."""
from __future__ import annotations

import math

import numpy as np

from .channels import BlockCode, Dmc, ENUM_CAP, codeword_log_rows
from .errors import InvalidParameterError
from .prob import DEFAULT_TIE_TOL


def exact_code_error(code: BlockCode, w: Dmc, cap: int = ENUM_CAP) -> float:
    """Average MAP-decoding error probability, enumerating every output block.

    Ties are broken toward the lowest codeword index; the value itself is
    tie-break invariant because tied codewords carry equal posterior mass.
    """
    rows = codeword_log_rows(code, w, cap)
    col_max = rows.max(axis=0)
    correct = np.sum(np.exp(col_max[col_max > -math.inf])) / code.size
    return min(max(1.0 - float(correct), 0.0), 1.0)


def code_error_lower_bound(
    code: BlockCode, w: Dmc, theta: float, alpha: float, cap: int = ENUM_CAP
) -> float:
    """(1-alpha) * P{ tilted information density <= log(M * alpha) } under a
    uniform prior on the codewords."""
    if math.isnan(theta) or theta < 1 or theta == math.inf:
        raise InvalidParameterError(f"theta must be finite and >= 1, got {theta}")
    if not 0 <= alpha <= 1 or math.isnan(alpha):
        raise InvalidParameterError(f"alpha must be in [0, 1], got {alpha}")
    rows = codeword_log_rows(code, w, cap)
    log_m = math.log(code.size)
    with np.errstate(invalid="ignore"):
        scaled = np.where(rows == -math.inf, -math.inf, theta * rows)
        hi = scaled.max(axis=0)
        reachable = hi > -math.inf
        denom = np.full(rows.shape[1], -math.inf)
        denom[reachable] = (
            hi[reachable]
            + np.log(np.sum(np.exp(scaled[:, reachable] - hi[reachable][None, :]), axis=0))
            - log_m
        )
        density = np.where(scaled == -math.inf, -math.inf, scaled - denom[None, :])
    event = np.exp(density) <= code.size * alpha
    mass = float(np.sum(np.exp(rows[event] - log_m)))
    return (1.0 - alpha) * mass


def ml_estimate_unique(
    code: BlockCode, w: Dmc, tie_tol: float = DEFAULT_TIE_TOL, cap: int = ENUM_CAP
) -> bool:
    """True iff every reachable output block has a unique maximum-likelihood
    codeword under the log-domain tie tolerance."""
    rows = codeword_log_rows(code, w, cap)
    col_max = rows.max(axis=0)
    reachable = col_max > -math.inf
    ties = np.sum(rows[:, reachable] >= col_max[reachable][None, :] - tie_tol, axis=0)
    return bool(np.all(ties == 1))


def monte_carlo_code_error(
    code: BlockCode, w: Dmc, num_samples: int, seed: int
) -> tuple[float, float]:
    """Seeded Monte-Carlo estimate of the MAP-decoding error probability.

    Returns (estimate, half_width) where half_width is a 95% normal-approx
    confidence radius.  Meant for blocklengths just past the enumeration cap;
    never a substitute for :func:`exact_code_error` in equality checks.
    """
    if num_samples < 1:
        raise InvalidParameterError("need at least one sample")
    rng = np.random.default_rng(seed)
    n, m = code.blocklength, code.size
    cw = np.array(code.codewords)
    rows_lin = w.rows()
    cum = np.cumsum(rows_lin, axis=1)
    errors = 0
    for _ in range(num_samples):
        msg = rng.integers(m)
        u = rng.random(n)
        y = np.array([np.searchsorted(cum[cw[msg, i]], u[i]) for i in range(n)])
        scores = w.log_rows[cw, y[None, :]].sum(axis=1)
        if int(np.argmax(scores)) != msg:
            errors += 1
    est = errors / num_samples
    half = 1.959963984540054 * math.sqrt(max(est * (1 - est), 1e-12) / num_samples)
    return est, half
