"""Named constants: sinc-power integrals, MZ / Pichorides constants, c_2."""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from functools import lru_cache

import numpy as np

DEFAULT_TOL = 1e-10

# published interval endpoints for even-exponent concentration levels
C4_BOUNDS = (0.495, 0.5)
C2K_BOUNDS = (0.483, 0.5)


def _sinc_power(x: np.ndarray, p: float) -> np.ndarray:
    return np.abs(np.sinc(x / np.pi)) ** p


def _sine_power_mean(p: float) -> float:
    """Mean of |sin x|^p over one period."""
    return math.exp(math.lgamma((p + 1) / 2) - math.lgamma(p / 2 + 1)) / math.sqrt(math.pi)


def _tail_cutoff(p: float, tol: float) -> int:
    """Number of pi-periods K so the tail remainder bound is below tol."""
    # remainder after the leading tail term is at most (p*pi/2) * X**(-p-1) in delta units
    X = (p * math.pi / tol) ** (1.0 / (p + 1))
    return max(8, int(math.ceil(X / math.pi)))


def adaptive_simpson_panels(f, edges: np.ndarray, tol: float, max_depth: int = 60) -> float:
    """Adaptive Simpson over many panels at once.

    Every panel is refined independently; a piece of width h is accepted when
    its Richardson error estimate is below tol * h / total_width.
    """
    a = edges[:-1].astype(float)
    b = edges[1:].astype(float)
    width = float(edges[-1] - edges[0])
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6 * (fa + 4 * fm + fb)
    total = 0.0
    for _ in range(max_depth):
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6 * (fa + 4 * flm + fm)
        right = (b - m) / 6 * (fm + 4 * frm + fb)
        split = left + right
        err = split - whole
        ok = np.abs(err) <= 15 * tol * (b - a) / width
        total += float(np.sum(split[ok] + err[ok] / 15))
        keep = ~ok
        if not keep.any():
            return total
        a, m, b = a[keep], m[keep], b[keep]
        fa, fm, fb = fa[keep], fm[keep], fb[keep]
        flm, frm = flm[keep], frm[keep]
        left, right = left[keep], right[keep]
        # children: [a, m] and [m, b]
        a, m, b = np.concatenate([a, m]), np.concatenate([lm[keep], rm[keep]]), np.concatenate([m, b])
        fa, fm, fb = np.concatenate([fa, fm]), np.concatenate([flm, frm]), np.concatenate([fm, fb])
        whole = np.concatenate([left, right])
    raise RuntimeError("adaptive Simpson did not converge within the depth limit")


@lru_cache(maxsize=256)
def delta_p(p: float, tol: float = DEFAULT_TOL) -> float:
    """(2/pi) * integral over [0, inf) of |sin x / x|^p.

    Integrated by adaptive Simpson on panels [k pi, (k+1) pi] up to X = K pi.
    The tail beyond X is the leading term m_p X^(1-p)/(p-1), with m_p the mean
    of |sin|^p, plus a remainder bounded by (p pi / 2) X^(-p-1) after scaling.
    """
    p = float(p)
    if not p > 1:
        raise ValueError(f"delta_p needs p > 1 (the integral diverges), got {p}")
    K = _tail_cutoff(p, tol / 2)
    X = K * math.pi
    edges = np.arange(K + 1) * math.pi
    body = adaptive_simpson_panels(lambda x: _sinc_power(x, p), edges, tol / 4)
    tail = _sine_power_mean(p) * X ** (1 - p) / (p - 1)
    return 2 / math.pi * (body + tail)


def remainder_regime(p: float) -> str:
    """Growth class of the remainder in the Dirichlet-kernel p-norm asymptotics."""
    if p < 1:
        raise ValueError(f"remainder regime defined for p >= 1, got {p}")
    if p > 3:
        return "N^{p-3}"
    if p == 3:
        return "ln N"
    return "constant"


def predicted_ratio_exponent(p: float) -> float:
    """Exponent e with ||D_N||_p^p / N^(p-1) - delta_p = O(N^e) (log factor at p=3)."""
    regime = remainder_regime(p)
    if regime == "constant":
        return 1.0 - p
    return -2.0


def pichorides(alpha: float) -> float:
    """Sharp Riesz conjugate-function constant: tan(pi/2a) below 2, cot above."""
    if not alpha > 1:
        raise ValueError(f"Pichorides constant needs alpha > 1, got {alpha}")
    t = math.pi / (2 * alpha)
    if alpha <= 2:
        return math.tan(t)
    return 1 / math.tan(t)


def _a_profile(alpha):
    return (math.pi * np.asarray(alpha, dtype=float) + 1) ** (1 / np.asarray(alpha, dtype=float))


@dataclass(frozen=True)
class AConstants:
    A: float
    A_prime: float
    attained: bool
    scan_max: float
    note: str


@lru_cache(maxsize=1)
def a_constants() -> AConstants:
    """A = sup over alpha > 1 of (pi alpha + 1)^(1/alpha), and A' = 2A + 1.

    The profile is decreasing on (1, inf); a scan confirms this and the
    supremum is the boundary limit pi + 1, which no admissible alpha attains.
    """
    offsets = 10.0 ** -np.arange(1, 13)
    alphas = np.concatenate([1 + offsets[::-1], np.linspace(1.2, 64, 4000)])
    vals = _a_profile(alphas)
    if not np.all(np.diff(vals) < 0):
        raise RuntimeError("(pi a + 1)^(1/a) failed to decrease on the scan")
    A = math.pi + 1
    return AConstants(
        A=A,
        A_prime=2 * A + 1,
        attained=False,
        scan_max=float(vals[0]),
        note="supremum at boundary alpha -> 1+, not attained",
    )


def mz_constants(alpha: float) -> tuple[float, float | None]:
    """(A', A'_alpha) for the two sampling inequalities; A'_alpha is None if alpha <= 1."""
    a = a_constants()
    a_alpha = 2 * pichorides(alpha) + 1 if alpha > 1 else None
    return a.A_prime, a_alpha


def _c2_profile(x):
    return np.sin(x) ** 2 / x


@lru_cache(maxsize=8)
def c2_maximizer(tol: float = 1e-12) -> tuple[float, float]:
    """Maximiser x* of sin(x)^2 / x and the level sin(x*)^2 / (pi x*).

    Golden-section search on a bracket inside (0, pi) narrows x* to the
    resolution allowed by the flat maximum; a few Newton steps on the
    stationarity condition 2x cos x = sin x (i.e. tan x = 2x) finish it.
    """
    xs = np.linspace(1e-6, math.pi - 1e-6, 2001)
    i = int(np.argmax(_c2_profile(xs)))
    lo, hi = xs[max(i - 1, 0)], xs[min(i + 1, xs.size - 1)]
    invphi = (math.sqrt(5) - 1) / 2
    c, d = hi - invphi * (hi - lo), lo + invphi * (hi - lo)
    fc, fd = _c2_profile(c), _c2_profile(d)
    # the maximum is flat: function values cannot separate x closer than ~sqrt(eps)
    while hi - lo > 1e-7:
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = _c2_profile(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = _c2_profile(d)
    x = 0.5 * (lo + hi)
    for _ in range(8):
        g = 2 * x * math.cos(x) - math.sin(x)
        dg = math.cos(x) - 2 * x * math.sin(x)
        step = g / dg
        x -= step
        if abs(step) < tol:
            break
    return x, math.sin(x) ** 2 / (math.pi * x)


def even_concentration_bounds(two_k: int) -> tuple[float, float]:
    """Published (lower, upper) interval for the concentration level c_{2k}."""
    if int(two_k) != two_k or two_k % 2 or two_k < 4:
        raise ValueError(f"expected an even integer >= 4, got {two_k}")
    return C4_BOUNDS if two_k == 4 else C2K_BOUNDS


@dataclass(frozen=True)
class ConstantsReport:
    p: float
    alpha: float
    two_k: int
    delta_p: float
    remainder_regime: str
    pichorides_A_alpha: float
    A: float
    A_prime: float
    A_prime_alpha: float
    A_attained: bool
    c2_x_star: float
    c2_value: float
    even_lower: float
    even_upper: float
    quadrature_tolerance: float

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ConstantsReport":
        return cls(**d)


def constants_report(p: float = 4.0, alpha: float = 4.0, two_k: int = 4, tol: float = DEFAULT_TOL) -> ConstantsReport:
    a = a_constants()
    pich = pichorides(alpha)
    x_star, c2 = c2_maximizer()
    lo, hi = even_concentration_bounds(two_k)
    return ConstantsReport(
        p=float(p),
        alpha=float(alpha),
        two_k=int(two_k),
        delta_p=delta_p(p, tol),
        remainder_regime=remainder_regime(p),
        pichorides_A_alpha=pich,
        A=a.A,
        A_prime=a.A_prime,
        A_prime_alpha=2 * pich + 1,
        A_attained=a.attained,
        c2_x_star=x_star,
        c2_value=c2,
        even_lower=lo,
        even_upper=hi,
        quadrature_tolerance=tol,
    )
