"""L^alpha norms on the normalized circle, flatness deviation, MZ checks.

All integrals are means over the circle (Haar measure of total mass 1).
Even exponents have an exact route through Parseval applied to P^p; every
other quantity is a mean over roots of unity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict, field
from typing import Union

import numpy as np

from . import constants
from .polycore import (
    BinarySequence,
    IntPolynomial,
    as_polynomial,
    autocorrelation,
    fold_coefficients,
    power_coefficients,
    sum_of_squares,
)

GridSize = Union[int, str]


@dataclass(frozen=True)
class NormQuery:
    alpha: float
    scale: float = 1.0
    grid_size: GridSize = "auto"

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if not self.scale > 0:
            raise ValueError(f"scale must be > 0, got {self.scale}")
        if self.grid_size != "auto" and (int(self.grid_size) != self.grid_size or self.grid_size < 1):
            raise ValueError(f"grid_size must be a positive integer or 'auto', got {self.grid_size}")


@dataclass(frozen=True)
class NormReport:
    """A computed norm-type quantity.

    ``quantity`` says what ``value`` is: ``"norm"`` (the L^alpha norm),
    ``"norm_power"`` (the norm raised to alpha) or ``"deviation"``.
    """

    alpha: float
    value: float
    exact: bool
    grid_size: int | None
    alias_error_bound: float | str
    quantity: str = "norm"

    def __post_init__(self):
        if self.exact and self.alias_error_bound != "exact":
            raise ValueError("exact reports must carry alias_error_bound='exact'")

    @property
    def quasi(self) -> bool:
        """True below alpha = 1, where the functional is only a quasi-norm."""
        return self.alpha < 1

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "NormReport":
        return cls(**d)


def default_grid(alpha: float, degree: int) -> int:
    return max(4096, 8 * math.ceil(alpha) * (degree + 1))


def even_half(alpha: float) -> int | None:
    """p when alpha == 2p for a positive integer p, else None."""
    if alpha > 0 and float(alpha).is_integer() and int(alpha) % 2 == 0:
        return int(alpha) // 2
    return None


def grid_moduli(P: IntPolynomial, m: int) -> np.ndarray:
    """|P| at the m-th roots of unity (real coefficients, so half the spectrum suffices)."""
    half = np.abs(np.fft.rfft(fold_coefficients(P.coeffs, m)))
    return _expand(half, m)


def _expand(half: np.ndarray, m: int) -> np.ndarray:
    return np.concatenate([half, half[1 : (m + 1) // 2][::-1]])


def grid_power_mean(P: IntPolynomial, alpha: float, m: int, scale: float = 1.0) -> float:
    """(1/m) * sum_j |scale * P(xi_j)|^alpha over the m-th roots of unity."""
    mod = grid_moduli(P, m) * scale
    return float(np.mean(mod**alpha))


def exact_even_norm(P, p: int, scale: float = 1.0) -> NormReport:
    """||scale * P||_{2p}^{2p}, exactly, as scale^(2p) * sum of squared coefficients of P^p."""
    if int(p) != p or p < 1:
        raise ValueError(f"p must be a positive integer, got {p}")
    P = as_polynomial(P)
    total = even_norm_integer(P, int(p))
    return NormReport(
        alpha=2.0 * p,
        value=_scaled(total, scale, 2 * int(p)),
        exact=True,
        grid_size=None,
        alias_error_bound="exact",
        quantity="norm_power",
    )


def even_norm_integer(P: IntPolynomial, p: int) -> int:
    """The integer ||P||_{2p}^{2p} for an unscaled integer polynomial."""
    if p == 2:
        # L^4 through autocorrelations avoids the full square
        a = autocorrelation(P)
        return sum_of_squares(a) * 2 - int(a[0]) ** 2
    return sum_of_squares(power_coefficients(P, p).coeffs)


def _scaled(total: int, scale: float, power: int) -> float:
    if total == 0:
        return 0.0
    try:
        return float(total) * scale**power
    except OverflowError:
        return math.exp(math.log(total) + power * math.log(scale))


def grid_norm(P, q: NormQuery) -> NormReport:
    """((1/m) * sum_j |scale * P(xi_j)|^alpha)^(1/alpha) on an m-point grid.

    Exact (up to rounding) for alpha = 2p once m >= p * degree + 1; otherwise
    the alias bound is the change produced by one grid doubling.
    """
    P = as_polynomial(P)
    alpha = float(q.alpha)
    p = even_half(alpha)
    if q.grid_size == "auto":
        m = p * P.degree + 1 if p is not None else default_grid(alpha, P.degree)
    else:
        m = int(q.grid_size)
    value = grid_power_mean(P, alpha, m, q.scale) ** (1 / alpha)
    if p is not None and m >= p * P.degree + 1:
        return NormReport(alpha, value, True, m, "exact")
    finer = grid_power_mean(P, alpha, 2 * m, q.scale) ** (1 / alpha)
    return NormReport(alpha, value, False, m, abs(finer - value))


def _deviation(P: IntPolynomial, c: float, alpha: float, scale: float, m: int) -> float:
    mod = grid_moduli(P, m) * scale
    return float(np.mean(np.abs(mod - c) ** alpha)) ** (1 / alpha)


def flatness_deviation(P, c: float, q: NormQuery) -> NormReport:
    """|| |scale * P| - c ||_alpha on a dense grid; never flagged exact."""
    if c < 0:
        raise ValueError(f"flatness level c must be >= 0, got {c}")
    P = as_polynomial(P)
    m = default_grid(q.alpha, P.degree) if q.grid_size == "auto" else int(q.grid_size)
    value = _deviation(P, c, q.alpha, q.scale, m)
    finer = _deviation(P, c, q.alpha, q.scale, 2 * m)
    return NormReport(float(q.alpha), value, False, m, abs(finer - value), quantity="deviation")


def norm_ratio(A, B, alpha: float) -> float:
    """||A||_alpha / ||B||_alpha, exact integers for even alpha."""
    A, B = as_polynomial(A), as_polynomial(B)
    if not any(int(c) for c in B.coeffs):
        raise ValueError("norm_ratio denominator is the zero polynomial")
    p = even_half(alpha)
    if p is not None:
        num, den = even_norm_integer(A, p), even_norm_integer(B, p)
        return (num / den) ** (1 / alpha)
    m = default_grid(alpha, max(A.degree, B.degree))
    return (grid_power_mean(A, alpha, m) / grid_power_mean(B, alpha, m)) ** (1 / alpha)


def newman_ratio(Q: BinarySequence) -> float:
    """||Q||_4 / ||Q||_2 from exact autocorrelations and the popcount."""
    if Q.weight == 0:
        raise ValueError("newman_ratio is undefined for the all-zero sequence")
    l4 = even_norm_integer(as_polynomial(Q), 2)
    return l4**0.25 / math.sqrt(Q.weight)


# Marcinkiewicz-Zygmund sampling inequalities ----------------------------


@dataclass(frozen=True)
class InequalityCheck:
    applicable: bool
    lhs: float | None = None
    rhs: float | None = None
    satisfied: bool | None = None
    slack: float | None = None

    @classmethod
    def of(cls, lhs: float, rhs: float) -> "InequalityCheck":
        return cls(True, lhs, rhs, lhs <= rhs, rhs - lhs)


@dataclass(frozen=True)
class MZReport:
    """Both sampling inequalities at the n = degree + 1 roots of unity.

    ``sampling``: (1/n sum |P(xi)|^a)^(1/a) <= A' ||P||_a, for a >= 1.
    ``recovery``: ||P||_a <= (A'_a/n sum |P(xi)|^a)^(1/a), for 1 < a < inf.
    """

    alpha: float
    scale: float
    n: int
    A_prime: float
    A_prime_alpha: float | None
    sampled_mean: float
    norm: float
    sampling: InequalityCheck = field(default_factory=lambda: InequalityCheck(False))
    recovery: InequalityCheck = field(default_factory=lambda: InequalityCheck(False))

    @property
    def satisfied(self) -> bool:
        return all(c.satisfied for c in (self.sampling, self.recovery) if c.applicable)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "MZReport":
        d = dict(d)
        d["sampling"] = InequalityCheck(**d["sampling"])
        d["recovery"] = InequalityCheck(**d["recovery"])
        return cls(**d)


def mz_check(P, alpha: float, scale: float = 1.0, norm: float | None = None) -> MZReport:
    """Evaluate both MZ inequalities for scale * P with n = degree + 1 nodes.

    ``norm`` may be supplied when ||scale * P||_alpha is already known.
    """
    P = as_polynomial(P)
    n = P.degree + 1
    sampled = grid_power_mean(P, alpha, n, scale) ** (1 / alpha)
    if norm is None:
        norm = grid_norm(P, NormQuery(alpha, scale)).value
    A_prime = constants.a_constants().A_prime
    A_prime_alpha = 2 * constants.pichorides(alpha) + 1 if alpha > 1 else None
    first = InequalityCheck.of(sampled, A_prime * norm) if alpha >= 1 else InequalityCheck(False)
    if A_prime_alpha is not None:
        second = InequalityCheck.of(norm, A_prime_alpha ** (1 / alpha) * sampled)
    else:
        second = InequalityCheck(False)
    return MZReport(alpha, scale, n, A_prime, A_prime_alpha, sampled, norm, first, second)
