"""Discrete memoryless channels, product extensions, block codes, tilted
auxiliary channels, information densities, and capacities."""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidParameterError, OptimizerError, SizeCapError, ZeroProbabilityError
from .prob import JointFiniteModel, Pmf, _freeze, _normalize_log, log_sum_exp, tilt_pmf

#: refuse enumerations above this many table entries rather than subsample
ENUM_CAP = 10_000_000


@dataclass(frozen=True)
class Dmc:
    """Stochastic matrix stored as log-domain rows, one per input symbol."""

    log_rows: np.ndarray
    name: str = "dmc"

    def __post_init__(self):
        rows = np.asarray(self.log_rows, dtype=float)
        if rows.ndim != 2 or rows.shape[0] < 1 or rows.shape[1] < 1:
            raise InvalidParameterError("channel matrix must be 2-D and non-empty")
        norm = np.empty_like(rows)
        for i in range(rows.shape[0]):
            norm[i] = _normalize_log(rows[i], f"channel row {i}")
        object.__setattr__(self, "log_rows", _freeze(norm))

    @classmethod
    def from_rows(cls, rows, name: str = "dmc") -> "Dmc":
        w = np.asarray(rows, dtype=float)
        if np.any(w < 0) or np.any(np.isnan(w)):
            raise InvalidParameterError("transition probabilities must be non-negative")
        with np.errstate(divide="ignore"):
            return cls(np.log(w), name)

    @property
    def input_size(self) -> int:
        return self.log_rows.shape[0]

    @property
    def output_size(self) -> int:
        return self.log_rows.shape[1]

    def row_pmf(self, x: int) -> Pmf:
        return Pmf(self.log_rows[x])

    def rows(self) -> np.ndarray:
        return np.exp(self.log_rows)


def _check_param(value: float, what: str) -> None:
    # 0 is allowed (noiseless degenerate case); 1 and above are not
    if not 0 <= value < 1 or math.isnan(value):
        raise InvalidParameterError(f"{what} must be in [0, 1), got {value}")


def bsc(eps: float) -> Dmc:
    """Binary symmetric channel with crossover probability ``eps``."""
    _check_param(eps, "crossover probability")
    return Dmc.from_rows([[1 - eps, eps], [eps, 1 - eps]], name=f"bsc({eps:g})")


def bec(eps: float) -> Dmc:
    """Binary erasure channel; outputs ordered (0, 1, erasure)."""
    _check_param(eps, "erasure probability")
    return Dmc.from_rows([[1 - eps, 0.0, eps], [0.0, 1 - eps, eps]], name=f"bec({eps:g})")


def z_channel(eps: float) -> Dmc:
    """Binary channel where only the 1 input is noisy: P(0|1) = eps."""
    _check_param(eps, "crossover probability")
    return Dmc.from_rows([[1.0, 0.0], [eps, 1 - eps]], name=f"z({eps:g})")


def ternary_channel(v1: float, v2: float) -> Dmc:
    """Three-symbol channel keeping each symbol with probability 1-v1-v2 and
    confusing toward outputs 1 / 2 (or inputs 1 / 2 when the output is 0)
    with probabilities v1 / v2.  Requires 1 - v1 - v2 > v2 > v1 > 0."""
    if not (0 < v1 < v2 and v2 < 1 - v1 - v2):
        raise InvalidParameterError(
            f"ternary parameters need 1-v1-v2 > v2 > v1 > 0, got v1={v1}, v2={v2}"
        )
    keep = 1 - v1 - v2
    rows = [
        [keep, v1, v2],
        [v1, keep, v2],
        [v2, v1, keep],
    ]
    return Dmc.from_rows(rows, name=f"ternary({v1:g},{v2:g})")


def builtin_channel(kind: str, **params) -> Dmc:
    """Dispatch for the named channel constructors (CLI glue)."""
    builders = {"bsc": bsc, "bec": bec, "z": z_channel, "ternary": ternary_channel}
    if kind not in builders:
        raise InvalidParameterError(f"unknown channel kind {kind!r}")
    return builders[kind](**params)


def load_channel_file(path) -> Dmc:
    """Parse the text channel format: '# comment' lines, a 'NX NY' header,
    then NX whitespace-separated rows of NY probabilities (row sums within 1e-9)."""
    lines = [
        ln.strip()
        for ln in Path(path).read_text(encoding="utf-8").splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise InvalidParameterError(f"channel file {path} is empty")
    try:
        nx, ny = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise InvalidParameterError(f"bad channel header {lines[0]!r}") from exc
    if len(lines) - 1 != nx:
        raise InvalidParameterError(f"expected {nx} channel rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        row = [float(t) for t in ln.split()]
        if len(row) != ny:
            raise InvalidParameterError(f"expected {ny} entries per row, got {len(row)}")
        rows.append(row)
    return Dmc.from_rows(rows, name=Path(path).name)


def product_extension(w: Dmc, n: int, cap: int = ENUM_CAP) -> Dmc:
    """Memoryless n-fold extension with lexicographic tuple indexing: the
    index of (t_0, ..., t_{n-1}) is sum t_i * size**(n-1-i)."""
    if n < 1:
        raise InvalidParameterError("blocklength must be >= 1")
    entries = (w.input_size**n) * (w.output_size**n)
    if entries > cap:
        raise SizeCapError(f"{w.input_size}^{n} x {w.output_size}^{n} = {entries} entries exceeds cap {cap}")
    if n == 1:
        return w
    rows = w.log_rows
    out = np.zeros((1, 1))
    for _ in range(n):
        out = (out[:, None, :, None] + rows[None, :, None, :]).reshape(
            out.shape[0] * rows.shape[0], out.shape[1] * rows.shape[1]
        )
    return Dmc(out, name=f"{w.name}^{n}")


@dataclass(frozen=True)
class BlockCode:
    """(n, M) codebook: M distinct length-n tuples of input-symbol indices."""

    blocklength: int
    codewords: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.blocklength < 1 or len(self.codewords) < 1:
            raise InvalidParameterError("code needs n >= 1 and at least one codeword")
        seen = set()
        for cw in self.codewords:
            if len(cw) != self.blocklength:
                raise InvalidParameterError(f"codeword {cw} has wrong length")
            if cw in seen:
                raise InvalidParameterError(f"duplicate codeword {cw}")
            seen.add(cw)

    @classmethod
    def repetition(cls, n: int) -> "BlockCode":
        return cls(n, ((0,) * n, (1,) * n))

    @classmethod
    def from_file(cls, path) -> "BlockCode":
        """Text format: '# comment' lines, an 'N M' header, then M rows of N
        space-separated input-symbol indices."""
        lines = [
            ln.strip()
            for ln in Path(path).read_text(encoding="utf-8").splitlines()
            if ln.strip() and not ln.strip().startswith("#")
        ]
        if not lines:
            raise InvalidParameterError(f"code file {path} is empty")
        try:
            n, m = (int(t) for t in lines[0].split())
        except ValueError as exc:
            raise InvalidParameterError(f"bad code header {lines[0]!r}") from exc
        if len(lines) - 1 != m:
            raise InvalidParameterError(f"expected {m} codewords, found {len(lines) - 1}")
        words = tuple(tuple(int(t) for t in ln.split()) for ln in lines[1:])
        return cls(n, words)

    @property
    def size(self) -> int:
        return len(self.codewords)


def codeword_log_rows(code: BlockCode, w: Dmc, cap: int = ENUM_CAP) -> np.ndarray:
    """M x |Y|^n log-likelihood table restricted to the codewords."""
    n = code.blocklength
    entries = code.size * (w.output_size**n)
    if entries > cap:
        raise SizeCapError(f"{code.size} x {w.output_size}^{n} = {entries} entries exceeds cap {cap}")
    rows = []
    for cw in code.codewords:
        acc = np.zeros(1)
        for sym in cw:
            if not 0 <= sym < w.input_size:
                raise InvalidParameterError(f"codeword symbol {sym} outside the input alphabet")
            acc = (acc[:, None] + w.log_rows[sym][None, :]).reshape(-1)
        rows.append(acc)
    return np.array(rows)


def code_joint(code: BlockCode, w: Dmc, cap: int = ENUM_CAP) -> JointFiniteModel:
    """Joint model of a uniformly drawn codeword sent over n uses of ``w``."""
    rows = codeword_log_rows(code, w, cap)
    prior = np.full(code.size, -math.log(code.size))
    return JointFiniteModel(prior, rows)


def tilted_info_density(prior: Pmf, w: Dmc, theta: float, x_idx: int, y_idx: int) -> float:
    """log of the theta-th likelihood power over its prior-averaged column sum.

    At theta = 1 this is the ordinary information density log W(y|x)/P(y).
    """
    if prior.alphabet_size != w.input_size:
        raise InvalidParameterError("prior size must match the channel input alphabet")
    if math.isnan(theta) or theta < 1 or theta == math.inf:
        raise InvalidParameterError(f"theta must be finite and >= 1, got {theta}")
    if not (0 <= x_idx < w.input_size and 0 <= y_idx < w.output_size):
        raise InvalidParameterError("symbol index out of range")
    col = w.log_rows[:, y_idx]
    with np.errstate(invalid="ignore"):
        scaled = np.where(col == -math.inf, -math.inf, theta * col)
    denom = log_sum_exp(prior.log_mass + scaled)
    if denom == -math.inf:
        raise ZeroProbabilityError(f"output {y_idx} is unreachable under this prior")
    return float(scaled[x_idx] - denom)


def tilted_channel(w: Dmc, theta: float) -> Dmc:
    """Channel whose rows are the theta-tilted rows of ``w``; theta = 1 is ``w``."""
    if theta == 1:
        return w
    rows = np.array([tilt_pmf(w.row_pmf(i), theta).log_mass for i in range(w.input_size)])
    return Dmc(rows, name=f"tilted({w.name},{theta:g})")


def is_row_symmetric(w: Dmc, tol: float = 1e-12) -> bool:
    """True iff every row is a permutation of the first (sorted-row comparison)."""
    rows = np.sort(w.rows(), axis=1)
    return bool(np.all(np.abs(rows - rows[0]) <= tol))


def binary_entropy(p: float) -> float:
    """-p log p - (1-p) log(1-p) in nats; 0 at the endpoints."""
    if not 0 <= p <= 1 or math.isnan(p):
        raise InvalidParameterError(f"probability must be in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log(p) - (1 - p) * math.log(1 - p)


def bsc_capacity(eps: float) -> float:
    """log 2 - h(eps), nats."""
    _check_param(eps, "crossover probability")
    return math.log(2) - binary_entropy(eps)


def z_capacity(eps: float) -> float:
    """log(1 + (1-eps) * eps^(eps/(1-eps))), nats."""
    _check_param(eps, "crossover probability")
    if eps == 0.0:
        return math.log(2)
    return math.log(1 + (1 - eps) * eps ** (eps / (1 - eps)))


def dmc_capacity(w: Dmc, tol: float = 1e-10, max_iter: int = 100_000) -> float:
    """Capacity by alternating maximization from a uniform prior.

    Stops when successive capacity estimates differ by less than ``tol`` nats;
    raises :class:`OptimizerError` if that never happens within ``max_iter``.
    """
    rows = w.rows()
    p = np.full(w.input_size, 1.0 / w.input_size)
    prev = -1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        for _ in range(max_iter):
            q = p @ rows
            ratio = np.where(rows > 0, rows / np.where(q > 0, q, 1.0), 1.0)
            d = np.sum(np.where(rows > 0, rows * np.log(ratio), 0.0), axis=1)
            cap = float(np.log(np.sum(p * np.exp(d))))
            if abs(cap - prev) < tol:
                return max(cap, 0.0)
            prev = cap
            p = p * np.exp(d)
            p /= p.sum()
    raise OptimizerError(f"capacity iteration did not converge within {max_iter} steps")
