"""Search over sign sequences for the flattest Littlewood polynomials."""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass, asdict, field

import numpy as np

from . import families
from .families import RNG_ALGORITHM, codes_to_signs, representative_blocks
from .norms import default_grid
from .polycore import SignSequence, autocorrelation, from_signs

MAX_EXHAUSTIVE_Q = 24
OBJECTIVES = ("deviation", "l4")
TIE_RTOL = 1e-12
_BATCH_ROWS = 1024


@dataclass
class SearchResult:
    sequence: str
    objective: str
    value: float
    q: int
    alpha: float
    c: float
    evaluations: int
    seed: int | None
    method: str
    grid_size: int | None
    wall_clock: float = 0.0
    rng_algorithm: str = RNG_ALGORITHM
    extra: dict = field(default_factory=dict)

    @property
    def signs(self) -> SignSequence:
        return SignSequence.parse(self.sequence)

    def to_dict(self, include_wall_clock: bool = False) -> dict:
        d = asdict(self)
        if not include_wall_clock:
            d.pop("wall_clock")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SearchResult":
        return cls(**d)

    def csv_row(self) -> list:
        return [self.q, self.alpha, repr(self.value), self.sequence, self.method, self.seed]


CSV_HEADER = ["q", "alpha", "objective", "signs", "method", "seed"]


def results_to_csv(results) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in results:
        w.writerow(r.csv_row())
    return buf.getvalue()


# objectives -------------------------------------------------------------


def merit_factor(s: SignSequence) -> float:
    """q^2 / (2 * sum_{t>=1} a_t^2); infinite when every off-peak correlation vanishes."""
    q = len(s)
    if q < 2:
        raise ValueError("merit factor needs q >= 2")
    energy = sidelobe_energy(s)
    if energy == 0:
        return math.inf
    return q * q / (2 * energy)


def sidelobe_energy(s: SignSequence) -> int:
    a = autocorrelation(from_signs(s))
    return int(np.dot(a[1:], a[1:]))


def _half_weights(m: int) -> np.ndarray:
    """Weights turning an rfft half spectrum into a mean over all m points."""
    w = np.full(m // 2 + 1, 2.0)
    w[0] = 1.0
    if m % 2 == 0:
        w[-1] = 1.0
    return w / m


def _deviation_from_half(mod_half: np.ndarray, c: float, alpha: float, weights: np.ndarray) -> np.ndarray:
    return (np.abs(mod_half - c) ** alpha @ weights) ** (1 / alpha)


def batch_deviation(rows: np.ndarray, alpha: float, c: float, m: int) -> np.ndarray:
    """|| |P/sqrt(q)| - c ||_alpha on the m-grid for each +/-1 row."""
    rows = np.asarray(rows, dtype=float)
    q = rows.shape[1]
    weights = _half_weights(m)
    out = np.empty(rows.shape[0])
    for start in range(0, rows.shape[0], _BATCH_ROWS):
        chunk = rows[start : start + _BATCH_ROWS]
        mod = np.abs(np.fft.rfft(chunk, n=m, axis=1)) / math.sqrt(q)
        out[start : start + _BATCH_ROWS] = _deviation_from_half(mod, c, alpha, weights)
    return out


def batch_energy(rows: np.ndarray) -> np.ndarray:
    """Exact sidelobe energies sum_{t>=1} a_t^2 for each +/-1 row."""
    rows = np.asarray(rows, dtype=float)
    q = rows.shape[1]
    n = 1 << (2 * q - 1).bit_length()
    spec = np.fft.rfft(rows, n=n, axis=1)
    corr = np.fft.irfft(np.abs(spec) ** 2, n=n, axis=1)[:, 1:q]
    corr = np.rint(corr).astype(np.int64)
    return np.einsum("ij,ij->i", corr, corr)


def evaluate(s: SignSequence, objective: str, alpha: float, c: float, m: int | None) -> float:
    """Fresh evaluation of a search objective on one sequence."""
    rows = s.entries[None, :]
    if objective == "l4":
        q = len(s)
        return 2 * sidelobe_energy(s) / (q * q)
    return float(batch_deviation(rows, alpha, c, m)[0])


def _objective_values(rows: np.ndarray, objective: str, alpha: float, c: float, m: int | None) -> np.ndarray:
    if objective == "l4":
        return batch_energy(rows).astype(float)
    return batch_deviation(rows, alpha, c, m)


def _check_objective(objective: str):
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}, got {objective!r}")


def _pick(values: np.ndarray, codes: np.ndarray, exact: bool) -> int:
    """Index of the minimum, ties (relative 1e-12 for float objectives) to the smallest code."""
    best = values.min()
    tol = 0.0 if exact else TIE_RTOL * abs(best) + 1e-300
    cand = np.flatnonzero(values <= best + tol)
    return int(cand[np.argmin(codes[cand])])


# exhaustive -------------------------------------------------------------


def flattest_exhaustive(q: int, alpha: float = 4.0, c: float = 1.0, objective: str = "deviation", m: int | None = None) -> SearchResult:
    """Minimize the objective over one representative per symmetry class.

    Negation, reversal and z -> -z leave every norm of |P| unchanged, so a
    representative stands for its whole class. Ties go to the lexicographically
    smallest sign string ('+' before '-').
    """
    _check_objective(objective)
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if q > MAX_EXHAUSTIVE_Q:
        raise ValueError(f"exhaustive search is limited to q <= {MAX_EXHAUSTIVE_Q}; use anneal for q = {q}")
    t0 = time.perf_counter()
    m = default_grid(alpha, q - 1) if m is None else int(m)
    all_codes, all_vals = [], []
    for block in representative_blocks(q):
        rows = codes_to_signs(block, q)
        all_codes.append(block)
        all_vals.append(_objective_values(rows, objective, alpha, c, m))
    codes = np.concatenate(all_codes)
    vals = np.concatenate(all_vals)
    i = _pick(vals, codes, exact=objective == "l4")
    best = SignSequence(codes_to_signs(codes[i : i + 1], q)[0])
    return SearchResult(
        sequence=str(best),
        objective=objective,
        value=evaluate(best, objective, alpha, c, m),
        q=q,
        alpha=float(alpha),
        c=float(c),
        evaluations=int(codes.size),
        seed=None,
        method="exhaustive",
        grid_size=m if objective == "deviation" else None,
        wall_clock=time.perf_counter() - t0,
        extra={"classes": int(codes.size), "total": 2**q},
    )


def brute_force(q: int, alpha: float = 4.0, c: float = 1.0, objective: str = "deviation", m: int | None = None) -> tuple[str, float]:
    """Minimum over all 2^q sequences with the same tie rule (reference only)."""
    _check_objective(objective)
    m = default_grid(alpha, q - 1) if m is None else int(m)
    codes = np.arange(2**q, dtype=np.uint64)
    vals = _objective_values(codes_to_signs(codes, q), objective, alpha, c, m)
    i = _pick(vals, codes, exact=objective == "l4")
    best = SignSequence(codes_to_signs(codes[i : i + 1], q)[0])
    return str(best), evaluate(best, objective, alpha, c, m)


# annealing --------------------------------------------------------------


@dataclass(frozen=True)
class Schedule:
    t0: float
    cool: float
    steps: int

    def __post_init__(self):
        if not self.t0 > 0:
            raise ValueError(f"initial temperature must be > 0, got {self.t0}")
        if not 0 < self.cool < 1:
            raise ValueError(f"cooling factor must lie in (0, 1), got {self.cool}")
        if int(self.steps) != self.steps or self.steps < 0:
            raise ValueError(f"steps must be a non-negative integer, got {self.steps}")

    @classmethod
    def parse(cls, text: str) -> "Schedule":
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"schedule must look like t0:cool:steps, got {text!r}")
        return cls(float(parts[0]), float(parts[1]), int(parts[2]))


class _EnergyState:
    """Sidelobe energy with O(q) single-flip updates of the autocorrelations."""

    def __init__(self, eps: np.ndarray):
        self.eps = eps.astype(np.int64)
        self.q = eps.size
        self.a = autocorrelation(from_signs(SignSequence(eps))).astype(np.int64)[1:]
        self.energy = int(np.dot(self.a, self.a))

    def _delta(self, k: int) -> np.ndarray:
        q, e = self.q, self.eps
        lags = np.arange(1, q)
        right = np.where(k + lags < q, e[np.minimum(k + lags, q - 1)], 0)
        left = np.where(k - lags >= 0, e[np.maximum(k - lags, 0)], 0)
        return -2 * e[k] * (right + left)

    def propose(self, k: int) -> tuple[float, object]:
        new_a = self.a + self._delta(k)
        new_energy = int(np.dot(new_a, new_a))
        return 2 * new_energy / self.q**2, (new_a, new_energy)

    def accept(self, k: int, token) -> None:
        self.a, self.energy = token
        self.eps[k] = -self.eps[k]

    @property
    def value(self) -> float:
        return 2 * self.energy / self.q**2


class _GridState:
    """Flatness deviation with rank-one grid updates of P's half spectrum."""

    RESYNC = 512

    def __init__(self, eps: np.ndarray, alpha: float, c: float, m: int):
        self.eps = eps.astype(np.int64)
        self.q = eps.size
        self.alpha, self.c, self.m = alpha, c, m
        self.weights = _half_weights(m)
        self.phase = -2j * np.pi * np.arange(m // 2 + 1) / m
        self.accepted = 0
        self._resync()

    def _resync(self):
        self.spec = np.fft.rfft(self.eps.astype(float), n=self.m)
        self.value = self._dev(self.spec)

    def _dev(self, spec) -> float:
        mod = np.abs(spec) / math.sqrt(self.q)
        return float(_deviation_from_half(mod, self.c, self.alpha, self.weights))

    def propose(self, k: int):
        new = self.spec - 2 * self.eps[k] * np.exp(self.phase * k)
        return self._dev(new), new

    def accept(self, k: int, token) -> None:
        self.eps[k] = -self.eps[k]
        self.accepted += 1
        if self.accepted % self.RESYNC == 0:
            self._resync()
        else:
            self.spec = token
            self.value = self._dev(token)


def anneal(
    q: int,
    alpha: float = 4.0,
    c: float = 1.0,
    schedule: Schedule | str = Schedule(1.0, 0.999, 2000),
    seed: int = 0,
    objective: str = "deviation",
    m: int | None = None,
) -> SearchResult:
    """Simulated annealing over single-sign flips, deterministic per seed.

    The start is ``random_littlewood(q, seed)``; flips and acceptance draws use
    an independent jump of the same generator.
    """
    _check_objective(objective)
    if q < 2:
        raise ValueError(f"anneal needs q >= 2, got {q}")
    if isinstance(schedule, str):
        schedule = Schedule.parse(schedule)
    t_start = time.perf_counter()
    m = default_grid(alpha, q - 1) if m is None else int(m)
    eps = families.random_littlewood(q, seed).entries.copy()
    state = _EnergyState(eps) if objective == "l4" else _GridState(eps, alpha, c, m)
    gen = np.random.Generator(np.random.PCG64(int(seed) & (2**64 - 1)).jumped())

    best_value, best_eps = state.value, state.eps.copy()
    temp = schedule.t0
    evaluations = 1
    for _ in range(schedule.steps):
        k = int(gen.integers(q))
        u = float(gen.random())
        cand, token = state.propose(k)
        evaluations += 1
        delta = cand - state.value
        if delta <= 0 or u < math.exp(-delta / temp):
            state.accept(k, token)
            if state.value < best_value:
                best_value, best_eps = state.value, state.eps.copy()
        temp *= schedule.cool

    best = SignSequence(best_eps)
    return SearchResult(
        sequence=str(best),
        objective=objective,
        value=evaluate(best, objective, alpha, c, m),
        q=q,
        alpha=float(alpha),
        c=float(c),
        evaluations=evaluations,
        seed=int(seed),
        method="anneal",
        grid_size=m if objective == "deviation" else None,
        wall_clock=time.perf_counter() - t_start,
        extra={"schedule": [schedule.t0, schedule.cool, schedule.steps]},
    )
