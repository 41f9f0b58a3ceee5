"""Arc-restricted L^p mass of polynomials and empirical concentration searches.

Angles are in turns on [-1/2, 1/2). Grid membership uses half-open intervals
[a, b), so masses of disjoint arcs add exactly on a fixed grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict, field

import numpy as np

from . import constants
from .families import random_binary
from .norms import default_grid, even_half, grid_moduli
from .polycore import IntPolynomial, as_polynomial, dilate, dirichlet

MIN_POINTS_PER_INTERVAL = 10


@dataclass(frozen=True)
class Arc:
    """Finite union of disjoint intervals [a, b) inside [-1/2, 1/2]."""

    intervals: tuple[tuple[float, float], ...]
    symmetric: bool = False

    def __post_init__(self):
        ivs = tuple(sorted((float(a), float(b)) for a, b in self.intervals))
        if not ivs:
            raise ValueError("an arc needs at least one interval")
        for a, b in ivs:
            if not (-0.5 <= a < b <= 0.5):
                raise ValueError(f"interval ({a}, {b}) must satisfy -1/2 <= a < b <= 1/2")
        for (_, b0), (a1, _) in zip(ivs, ivs[1:]):
            if a1 < b0:
                raise ValueError("arc intervals must be disjoint")
        object.__setattr__(self, "intervals", ivs)
        if self.symmetric and not _mirror_closed(ivs):
            raise ValueError("arc is flagged symmetric but is not closed under x -> -x")

    @classmethod
    def full(cls) -> "Arc":
        return cls(((-0.5, 0.5),), symmetric=True)

    @classmethod
    def centered(cls, delta: float) -> "Arc":
        """The arc (-delta, delta) around z = 1."""
        if not 0 < delta <= 0.5:
            raise ValueError(f"half-width must lie in (0, 1/2], got {delta}")
        return cls(((-delta, delta),), symmetric=True)

    @classmethod
    def around(cls, centers, half_width: float) -> "Arc":
        """Union of intervals of the given half-width around each center and its mirror.

        Intervals crossing +-1/2 are wrapped; overlapping pieces are merged.
        """
        pieces = []
        for c in centers:
            for s in {float(c), -float(c)}:
                lo = ((s - half_width + 0.5) % 1.0) - 0.5
                hi = lo + 2 * half_width
                if hi > 0.5:
                    pieces += [(lo, 0.5), (-0.5, hi - 1.0)]
                else:
                    pieces.append((lo, hi))
        return cls(_merge(pieces), symmetric=True)

    @property
    def measure(self) -> float:
        return sum(b - a for a, b in self.intervals)

    @property
    def is_full(self) -> bool:
        return self.measure >= 1.0 - 1e-15

    def mask(self, m: int) -> np.ndarray:
        """Grid points j/m (folded into [-1/2, 1/2)) lying in the arc."""
        j = np.arange(m)
        x = np.where(2 * j < m, j, j - m) / m
        inside = np.zeros(m, dtype=bool)
        for a, b in self.intervals:
            inside |= (x >= a) & (x < b)
        return inside

    def min_points(self, m: int) -> int:
        return min(int(np.count_nonzero(Arc(((a, b),)).mask(m))) for a, b in self.intervals)

    def to_dict(self) -> dict:
        return {"intervals": [list(iv) for iv in self.intervals], "symmetric": self.symmetric}

    @classmethod
    def from_dict(cls, d: dict) -> "Arc":
        return cls(tuple(tuple(iv) for iv in d["intervals"]), bool(d.get("symmetric", False)))


def _mirror_closed(ivs, tol: float = 1e-12) -> bool:
    # the point -1/2 is identified with 1/2
    mirrored = sorted((-b, -a) for a, b in ivs)
    merged_a, merged_b = _merge(list(ivs)), _merge(mirrored)
    if len(merged_a) != len(merged_b):
        return _wrap_equal(merged_a, merged_b, tol)
    return all(abs(x[0] - y[0]) < tol and abs(x[1] - y[1]) < tol for x, y in zip(merged_a, merged_b))


def _wrap_equal(u, v, tol) -> bool:
    def glue(ivs):
        ivs = list(ivs)
        if len(ivs) > 1 and abs(ivs[0][0] + 0.5) < tol and abs(ivs[-1][1] - 0.5) < tol:
            first, last = ivs.pop(0), ivs.pop()
            ivs.append((last[0], first[1] + 1.0))
        return sorted(ivs)

    gu, gv = glue(u), glue(v)
    return len(gu) == len(gv) and all(
        abs(x[0] - y[0]) < tol and abs(x[1] - y[1]) < tol for x, y in zip(gu, gv)
    )


def _merge(pieces):
    pieces = sorted(pieces)
    out = []
    for a, b in pieces:
        if out and a <= out[-1][1] + 1e-15:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return tuple(out)


@dataclass(frozen=True)
class ConcentrationReport:
    arc: Arc
    exponent: float
    mass_ratio: float
    polynomial_id: str
    grid_size: int
    refinement_delta: float | None = None
    even_bounds: tuple[float, float] | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not -1e-12 <= self.mass_ratio <= 1 + 1e-12:
            raise ValueError(f"mass ratio {self.mass_ratio} outside [0, 1]")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["arc"] = self.arc.to_dict()
        d["even_bounds"] = list(self.even_bounds) if self.even_bounds else None
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ConcentrationReport":
        d = dict(d)
        d["arc"] = Arc.from_dict(d["arc"])
        if d.get("even_bounds") is not None:
            d["even_bounds"] = tuple(d["even_bounds"])
        return cls(**d)


def _even_bounds(alpha: float):
    p = even_half(alpha)
    if p is not None and p >= 2:
        return constants.even_concentration_bounds(2 * p)
    return None


def _ratio_on_grid(P: IntPolynomial, alpha: float, arc: Arc, m: int) -> float:
    w = grid_moduli(P, m) ** alpha
    total = float(w.sum())
    if total == 0:
        raise ValueError("arc mass is undefined for the zero polynomial")
    return float(w[arc.mask(m)].sum()) / total


def arc_mass(P, alpha: float, E: Arc, m: int | None = None, polynomial_id: str = "P") -> ConcentrationReport:
    """Share of the L^alpha mass of P carried by the arc E, as grid means.

    The grid is refined once; the change is reported as ``refinement_delta``.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    P = as_polynomial(P)
    m = default_grid(alpha, P.degree) if m is None else int(m)
    if not E.is_full and E.min_points(m) < MIN_POINTS_PER_INTERVAL:
        raise ValueError(
            f"grid of {m} points puts fewer than {MIN_POINTS_PER_INTERVAL} points in the "
            "smallest arc interval; pass a larger m"
        )
    ratio = _ratio_on_grid(P, alpha, E, m)
    finer = _ratio_on_grid(P, alpha, E, 2 * m)
    return ConcentrationReport(
        arc=E,
        exponent=float(alpha),
        mass_ratio=min(max(ratio, 0.0), 1.0),
        polynomial_id=polynomial_id,
        grid_size=m,
        refinement_delta=abs(finer - ratio),
        even_bounds=_even_bounds(alpha),
    )


def dilated_dirichlet(M: int, N: int) -> IntPolynomial:
    """The idempotent D_N(z^M), with spikes at the M-th roots of unity."""
    return dilate(dirichlet(N), M)


def dilated_dirichlet_witness(M: int, N: int, E: Arc, alpha: float = 4.0, m: int | None = None) -> ConcentrationReport:
    """Arc mass of D_N(z^M); tends to (spikes inside E) / M as N grows."""
    if M < 2:
        raise ValueError(f"dilation M must be >= 2, got {M}")
    half_widths = [(b - a) / 2 for a, b in E.intervals]
    if 1.0 / N >= min(half_widths):
        raise ValueError(
            f"spike half-width 1/N = {1.0 / N:g} is not below the arc half-width {min(half_widths):g}; increase N"
        )
    spikes = np.arange(M) / M
    spikes = np.where(spikes >= 0.5, spikes - 1.0, spikes)
    inside = sum(any(a <= s < b for a, b in E.intervals) for s in spikes)
    rep = arc_mass(dilated_dirichlet(M, N), alpha, E, m, polynomial_id=f"dirichlet(N={N})(z^{M})")
    return _with_extra(rep, spikes_inside=int(inside), limit=inside / M)


def _with_extra(rep: ConcentrationReport, **extra) -> ConcentrationReport:
    return ConcentrationReport(**{**rep.__dict__, "extra": {**rep.extra, **extra}})


# search -----------------------------------------------------------------


def catalog(m: int, budget: int, seed: int, max_dilation: int = 24):
    """Deterministic candidate list of (id, polynomial), truncated to ``budget``.

    Order: dilated Dirichlet kernels D_N(z^M) for M = 1..max_dilation with N the
    largest power of two keeping M*N <= m/8, then seeded random idempotents
    and their dilations.
    """
    out = []
    for M in range(1, max_dilation + 1):
        N = 1 << max(0, int(math.floor(math.log2(max(m // (8 * M), 1)))))
        out.append((f"dilated:M={M}:N={N}", dilated_dirichlet(M, N)))
        if len(out) >= budget:
            return out
    gen_seed = seed
    densities = (0.5, 0.25, 0.1)
    i = 0
    while len(out) < budget:
        d = densities[i % len(densities)]
        M = 1 + (i // len(densities)) % 4
        q = max(8, m // (8 * M))
        bits = random_binary(q, d, gen_seed + i)
        if bits.weight:
            out.append((f"random:d={d}:M={M}:seed={gen_seed + i}", dilate(as_polynomial(bits), M)))
        i += 1
    return out


def concentration_search(E: Arc, p: float, budget: int = 64, seed: int = 0, m: int = 1 << 15) -> ConcentrationReport:
    """Best arc-mass ratio over a fixed catalog: an empirical lower bound only.

    Every candidate is evaluated on the same m-point grid, so enlarging E can
    never lower the result. Ties go to the smallest polynomial id.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    if E.is_full:
        return ConcentrationReport(E, float(p), 1.0, "any", m, 0.0, _even_bounds(p), {"evaluated": 0})
    if E.min_points(m) < MIN_POINTS_PER_INTERVAL:
        raise ValueError(f"grid of {m} points is too coarse for the arc; pass a larger m")
    mask = E.mask(m)
    best_id, best = None, -1.0
    cands = catalog(m, budget, seed)
    for cid, P in cands:
        w = grid_moduli(P, m) ** p
        r = float(w[mask].sum()) / float(w.sum())
        if r > best or (r == best and cid < best_id):
            best_id, best = cid, r
    return ConcentrationReport(
        arc=E,
        exponent=float(p),
        mass_ratio=min(best, 1.0),
        polynomial_id=best_id,
        grid_size=m,
        refinement_delta=None,
        even_bounds=_even_bounds(p),
        extra={"evaluated": len(cands)},
    )
