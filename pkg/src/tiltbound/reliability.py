"""Computable exponent curves for memoryless binary-input channels.

Two families are evaluated over rates in (0, capacity):

* an exponent lower bound obtained from a Chernoff bound on the lower tail
  of the tilted information density under an i.i.d. input whose entropy
  exceeds the rate, available both as a generic per-(input, rho) objective
  and as closed forms for the symmetric and Z binary channels;
* the sphere-packing exponent for the same two channels.

All optimizations run on deterministic coarse grids refined by golden
section, so repeated runs are bit-identical.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import Dmc, bsc_capacity, binary_entropy, z_capacity
from .errors import InvalidParameterError, OptimizerError
from .prob import Pmf

S_GRID_POINTS = 512
P_GRID_POINTS = 2048
S_REFINE_TOL = 1e-10
P_REFINE_TOL = 1e-10
FEASIBILITY_MARGIN = 1e-12
_S_EDGE = 1e-6

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ExponentPoint:
    """One point of an exponent curve plus the optimizer state that produced it.

    ``value`` is clamped at zero; ``raw_value`` keeps the unclamped optimum so
    a clamp stays visible.  ``theta`` is None for curves without a tilt
    exponent, ``p_star`` is None when the curve has no inner input parameter.
    """

    rate: float
    value: float
    theta: float | None
    s_star: float
    p_star: float | None
    raw_value: float

    @property
    def clamped(self) -> bool:
        return self.raw_value < self.value


def maximize_scalar(f, lo: float, hi: float, coarse_points: int, refine_tol: float):
    """Deterministic 1-D maximizer: uniform coarse scan, then golden-section
    refinement of the best coarse bracket to ``refine_tol`` interval width.

    Ties prefer the lower abscissa.  A NaN from ``f`` aborts with the
    offending abscissa.  ``f`` may accept an ndarray for the coarse stage;
    scalar-only callables work too.
    """
    if not lo < hi:
        raise InvalidParameterError("need lo < hi")
    if coarse_points < 3:
        raise InvalidParameterError("need at least 3 coarse points")
    xs = np.linspace(lo, hi, coarse_points)
    try:
        fs = np.asarray(f(xs), dtype=float)
        if fs.shape != xs.shape:
            raise TypeError
    except (TypeError, ValueError):
        fs = np.array([float(f(x)) for x in xs])
    if np.any(np.isnan(fs)):
        bad = float(xs[int(np.flatnonzero(np.isnan(fs))[0])])
        raise OptimizerError(f"objective returned NaN at {bad!r}")
    i = int(np.argmax(fs))  # argmax takes the first (lowest-x) maximum
    best_x, best_f = float(xs[i]), float(fs[i])
    a = float(xs[max(i - 1, 0)])
    b = float(xs[min(i + 1, coarse_points - 1)])

    def eval_scalar(x: float) -> float:
        nonlocal best_x, best_f
        fx = float(f(x))
        if math.isnan(fx):
            raise OptimizerError(f"objective returned NaN at {x!r}")
        if fx > best_f or (fx == best_f and x < best_x):
            best_x, best_f = x, fx
        return fx

    h = b - a
    if h > refine_tol:
        c = b - _INV_PHI * h
        d = a + _INV_PHI * h
        fc, fd = eval_scalar(c), eval_scalar(d)
        while h > refine_tol:
            if fc >= fd:
                b, d, fd = d, c, fc
                h = b - a
                c = b - _INV_PHI * h
                fc = eval_scalar(c)
            else:
                a, c, fc = c, d, fd
                h = b - a
                d = a + _INV_PHI * h
                fd = eval_scalar(d)
    return best_x, best_f


def minimize_scalar(f, lo: float, hi: float, coarse_points: int, refine_tol: float):
    """Companion minimizer with the same tie and NaN rules."""
    x, fx = maximize_scalar(lambda v: -np.asarray(f(v), dtype=float), lo, hi, coarse_points, refine_tol)
    return x, -fx


def entropy_inverse(rate: float) -> float:
    """The p in [0, 1/2] with binary_entropy(p) = rate, by bisection."""
    if not 0 <= rate <= math.log(2):
        raise InvalidParameterError(f"rate must be in [0, log 2], got {rate}")
    lo, hi = 0.0, 0.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if binary_entropy(mid) < rate:
            lo = mid
        else:
            hi = mid
    return hi


# ----------------------------------------------------------------------
# generic per-(input, rho) objective
# ----------------------------------------------------------------------

def exponent_objective(w: Dmc, input_dist: Pmf, rho: float, theta: float, rate: float) -> float:
    """rho * rate - log sum_{x,y} P(x) W(y|x)^(1+rho*theta) / D(y)^rho with
    D(y) = sum_x P(x) W(y|x)^theta.  Zero-likelihood pairs carry no joint mass
    and are dropped, matching the expectation the bound is taken over."""
    if not rho < 0 or math.isnan(rho):
        raise InvalidParameterError(f"rho must be negative, got {rho}")
    if math.isnan(theta) or theta < 1 or theta == math.inf:
        raise InvalidParameterError(f"theta must be finite and >= 1, got {theta}")
    if input_dist.alphabet_size != w.input_size:
        raise InvalidParameterError("input distribution size must match the channel")
    lp = input_dist.log_mass
    lw = w.log_rows
    terms = []
    for y in range(w.output_size):
        col = lw[:, y]
        with np.errstate(invalid="ignore"):
            tilted = np.where(col == -math.inf, -math.inf, theta * col)
        top = np.max(lp + tilted)
        if top == -math.inf:
            continue
        log_d = top + math.log(np.sum(np.exp(lp + tilted - top)))
        for x in range(w.input_size):
            if lp[x] > -math.inf and col[x] > -math.inf:
                terms.append(lp[x] + (1.0 + rho * theta) * col[x] - rho * log_d)
    top = max(terms)
    bracket = top + math.log(sum(math.exp(t - top) for t in terms))
    return rho * rate - bracket


# ----------------------------------------------------------------------
# closed forms for the two binary channels
# ----------------------------------------------------------------------

def bsc_exponent_objective(eps: float, rate: float, theta: float, s, p):
    """Closed-form exponent objective for the symmetric binary channel with
    rho = 1 - 1/s, s in (0, 1); ``p`` (input bias) may be an ndarray."""
    rho = 1.0 - 1.0 / s
    a = 1.0 + rho * theta
    le, l1e = math.log(eps), math.log1p(-eps)
    p = np.asarray(p, dtype=float)
    lp, l1p = np.log(p), np.log1p(-p)
    log_a = np.logaddexp(l1p + a * l1e, lp + a * le) - rho * np.logaddexp(
        l1p + theta * l1e, lp + theta * le
    )
    log_b = np.logaddexp(l1p + a * le, lp + a * l1e) - rho * np.logaddexp(
        l1p + theta * le, lp + theta * l1e
    )
    return rho * rate - np.logaddexp(log_a, log_b)


def z_exponent_objective(eps: float, rate: float, theta: float, s, p):
    """Closed-form exponent objective for the Z channel; ``p`` may be an ndarray."""
    rho = 1.0 - 1.0 / s
    a = 1.0 + rho * theta
    le = math.log(eps)
    p = np.asarray(p, dtype=float)
    lp, l1p = np.log(p), np.log1p(-p)
    term0 = np.logaddexp(l1p, lp + a * le) - rho * np.logaddexp(l1p, lp + theta * le)
    term1 = lp / s + math.log1p(-eps)
    return rho * rate - np.logaddexp(term0, term1)


def bsc_sp_objective(eps: float, rate: float, s):
    """Sphere-packing objective for the symmetric binary channel, s in (0, 1]."""
    s = np.asarray(s, dtype=float)
    pow_sum = np.logaddexp(s * math.log1p(-eps), s * math.log(eps))
    return (1.0 - 1.0 / s) * (rate - math.log(2)) - pow_sum / s


def z_sp_objective(eps: float, rate: float, s, p):
    """Sphere-packing objective for the Z channel; ``p`` may be an ndarray."""
    p = np.asarray(p, dtype=float)
    with np.errstate(divide="ignore"):
        lp = np.log(p)
        l1p = np.log1p(-p)
    bracket = np.logaddexp(
        np.logaddexp(l1p, lp + s * math.log(eps)) / s,
        lp / s + math.log1p(-eps),
    )
    return (1.0 - 1.0 / s) * rate - bracket


def _joint_max(objective, s_lo: float, s_hi: float, p_lo: float, p_hi: float):
    """sup over s and p of objective(s, p), which must broadcast over both.

    The coarse stage scans the full S_GRID_POINTS x P_GRID_POINTS table in one
    broadcast; the winning s-bracket is then refined by golden section, each
    refined evaluation running its own coarse-plus-golden search over p.
    Returns (s_star, p_star, value); deterministic throughout.
    """
    s_grid = np.linspace(s_lo, s_hi, S_GRID_POINTS)
    p_grid = np.linspace(p_lo, p_hi, P_GRID_POINTS)
    table = np.asarray(objective(s_grid[:, None], p_grid[None, :]), dtype=float)
    if np.any(np.isnan(table)):
        i, j = np.unravel_index(int(np.flatnonzero(np.isnan(table))[0]), table.shape)
        raise OptimizerError(
            f"objective returned NaN at s={float(s_grid[i])!r}, p={float(p_grid[j])!r}"
        )
    i_s = int(np.argmax(table.max(axis=1)))  # first max -> lowest s on ties
    inner_p: dict[float, float] = {}

    def refined(s_val):
        s_arr = np.atleast_1d(np.asarray(s_val, dtype=float))
        out = np.empty_like(s_arr)
        for k, s in enumerate(s_arr):
            s = float(s)
            p, val = maximize_scalar(
                lambda pv: objective(s, pv), p_lo, p_hi, P_GRID_POINTS, P_REFINE_TOL
            )
            inner_p[s] = p
            out[k] = val
        return out if np.ndim(s_val) else float(out[0])

    a = float(s_grid[max(i_s - 1, 0)])
    b = float(s_grid[min(i_s + 1, S_GRID_POINTS - 1)])
    s_star, value = maximize_scalar(refined, a, b, 3, S_REFINE_TOL)
    return s_star, inner_p[s_star], value


def exponent_lower_bound(kind: str, eps: float, rate: float, theta: float) -> ExponentPoint:
    """Best closed-form exponent objective over s in (0,1) and feasible bias p.

    The input-entropy constraint h(p) > rate is enforced with a strict margin;
    the symmetric channel restricts p to (0, 1/2] (its objective is invariant
    under p <-> 1-p) while the Z channel scans both entropy-feasible halves.
    A negative optimum is clamped to zero (still visible via ``raw_value``).
    """
    if math.isnan(theta) or theta < 1 or theta == math.inf:
        raise InvalidParameterError(f"theta must be finite and >= 1, got {theta}")
    if kind == "bsc":
        cap = bsc_capacity(eps)
        objective = lambda s, p: bsc_exponent_objective(eps, rate, theta, s, p)
    elif kind == "z":
        cap = z_capacity(eps)
        objective = lambda s, p: z_exponent_objective(eps, rate, theta, s, p)
    else:
        raise InvalidParameterError(f"no exponent closed form for channel kind {kind!r}")
    if not 0 < rate < cap:
        raise InvalidParameterError(f"rate must be in (0, {cap:.6g}), got {rate}")
    p_lo = entropy_inverse(min(rate + FEASIBILITY_MARGIN, math.log(2)))
    p_hi = 0.5 if kind == "bsc" else 1.0 - p_lo
    s_star, p_star, raw = _joint_max(objective, _S_EDGE, 1.0 - _S_EDGE, p_lo, p_hi)
    return ExponentPoint(rate, max(raw, 0.0), theta, s_star, p_star, raw)


def sphere_packing(kind: str, eps: float, rate: float) -> ExponentPoint:
    """Sphere-packing exponent, clamped at zero, for the two binary channels."""
    if kind == "bsc":
        cap = bsc_capacity(eps)
        if not 0 < rate < cap:
            raise InvalidParameterError(f"rate must be in (0, {cap:.6g}), got {rate}")
        s_star, raw = maximize_scalar(
            lambda s: bsc_sp_objective(eps, rate, s), _S_EDGE, 1.0, S_GRID_POINTS, S_REFINE_TOL
        )
        return ExponentPoint(rate, max(raw, 0.0), None, s_star, None, raw)
    if kind == "z":
        cap = z_capacity(eps)
        if not 0 < rate < cap:
            raise InvalidParameterError(f"rate must be in (0, {cap:.6g}), got {rate}")
        s_star, p_star, raw = _joint_max(
            lambda s, p: z_sp_objective(eps, rate, s, p), _S_EDGE, 1.0, 0.0, 1.0
        )
        return ExponentPoint(rate, max(raw, 0.0), None, s_star, p_star, raw)
    raise InvalidParameterError(f"no sphere-packing form for channel kind {kind!r}")
