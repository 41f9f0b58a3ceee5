"""Desk-scale checks of the quantitative steps behind the non-flatness argument.

Each routine returns plain tables of metrics against the size parameter. The
harness reports trends and distances to limit values; it never issues a
verdict on flatness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict, field

import numpy as np

from . import constants
from .concentration import Arc, arc_mass
from .families import random_binary, random_littlewood, sign_family
from .norms import (
    NormQuery,
    default_grid,
    even_half,
    even_norm_integer,
    flatness_deviation,
    grid_moduli,
    grid_norm,
    newman_ratio,
    norm_ratio,
)
from .polycore import BinarySequence, dirichlet, from_bits, from_signs, split_littlewood
from .search import sidelobe_energy

HARNESS_TOL = 1e-12
MIN_FIT_POINTS = 4


@dataclass
class Fit:
    slope: float
    intercept: float
    predicted: float | None
    residual: float
    points: int


@dataclass
class TrendTable:
    """Rows of (size, metric, value) plus log-log fits per metric."""

    name: str
    size_label: str
    rows: list[tuple[int, str, float]] = field(default_factory=list)
    fits: dict[str, Fit] = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    def add(self, size: int, metric: str, value: float) -> None:
        self.rows.append((int(size), metric, float(value)))

    def sort(self) -> None:
        order = {m: i for i, m in enumerate(self.metrics)}
        self.rows.sort(key=lambda r: (r[0], order[r[1]]))

    @property
    def metrics(self) -> list[str]:
        seen = []
        for _, m, _ in self.rows:
            if m not in seen:
                seen.append(m)
        return seen

    @property
    def sizes(self) -> list[int]:
        return sorted({r[0] for r in self.rows})

    def series(self, metric: str) -> tuple[np.ndarray, np.ndarray]:
        pts = sorted((s, v) for s, m, v in self.rows if m == metric)
        if not pts:
            raise KeyError(f"no series named {metric!r}; available: {self.metrics}")
        x, y = zip(*pts)
        return np.array(x), np.array(y)

    def fit(self, metric: str, predicted: float | None = None, use_abs: bool = False) -> Fit | None:
        x, y = self.series(metric)
        if use_abs:
            y = np.abs(y)
        f = loglog_fit(x, y, predicted)
        if f is not None:
            self.fits[metric] = f
        return f

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "size_label": self.size_label,
            "rows": [list(r) for r in self.rows],
            "fits": {k: asdict(v) for k, v in self.fits.items()},
            "params": self.params,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrendTable":
        return cls(
            name=d["name"],
            size_label=d["size_label"],
            rows=[tuple(r) for r in d["rows"]],
            fits={k: Fit(**v) for k, v in d["fits"].items()},
            params=d.get("params", {}),
        )

    def to_csv(self) -> str:
        metrics = self.metrics
        lines = [",".join([self.size_label] + metrics)]
        table: dict[int, dict[str, float]] = {}
        for s, m, v in self.rows:
            table.setdefault(s, {})[m] = v
        for s in sorted(table):
            lines.append(",".join([str(s)] + [repr(table[s].get(m, float("nan"))) for m in metrics]))
        return "\n".join(lines) + "\n"


def loglog_fit(x, y, predicted: float | None = None) -> Fit | None:
    """Least-squares slope of log y against log x, smallest size dropped.

    Returns None when fewer than four usable points remain or any value is
    non-positive.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    order = np.argsort(x)
    x, y = x[order], y[order]
    if x.size > MIN_FIT_POINTS:
        x, y = x[1:], y[1:]
    if x.size < MIN_FIT_POINTS or np.any(y <= 0):
        return None
    lx, ly = np.log(x), np.log(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = float(np.sqrt(np.mean((ly - (slope * lx + intercept)) ** 2)))
    return Fit(float(slope), float(intercept), predicted, resid, int(x.size))


# Dirichlet kernel asymptotics --------------------------------------------


def dirichlet_power_norm(N: int, p: float, oversample: int = 64) -> tuple[float, bool]:
    """||D_N||_p^p divided by N^(p-1), and whether it is exact."""
    D = dirichlet(N)
    half = even_half(p)
    if half is not None:
        return even_norm_integer(D, half) / N ** (int(p) - 1), True
    # |D_N|^p has kinks at the zeros j/N; a heavy oversampling keeps the grid error small
    m = max(default_grid(p, D.degree), oversample * N)
    mod = grid_moduli(D, m) / N
    return float(np.mean(mod**p)) * N, False


def dirichlet_asymptotics(p: float, N_list, tol: float = HARNESS_TOL) -> TrendTable:
    """||D_N||_p^p / N^(p-1) against N, with its distance to delta_p."""
    if not p > 1:
        raise ValueError(f"p must be > 1, got {p}")
    Ns = sorted(int(n) for n in N_list)
    if Ns != sorted(set(Ns)) or Ns[0] < 1:
        raise ValueError("N_list must hold distinct positive sizes")
    dp = constants.delta_p(p, tol)
    regime = constants.remainder_regime(p)
    table = TrendTable(
        "dirichlet_asymptotics",
        "N",
        params={"p": p, "delta_p": dp, "regime": regime, "quadrature_tol": tol},
    )
    all_exact = True
    for N in Ns:
        ratio, exact = dirichlet_power_norm(N, p)
        all_exact &= exact
        dev = ratio - dp
        if exact and float(p) == 2.0:
            dev = 0.0  # Parseval: the ratio is exactly 1 = delta_2
        table.add(N, "ratio", ratio)
        table.add(N, "deviation", dev)
        if regime == "ln N":
            table.add(N, "deviation_scaled", dev * N**2 / math.log(N))
    table.params["exact"] = all_exact
    if any(v != 0 for _, m, v in table.rows if m == "deviation"):
        table.fit("deviation", constants.predicted_ratio_exponent(p), use_abs=True)
    table.sort()
    return table


# density growth ----------------------------------------------------------


def density_growth(d: float, alpha: float, q_list, seeds: int = 20, base_seed: int = 0) -> TrendTable:
    """Mean of ||Q_q / sqrt|S_q| ||_alpha^alpha over seeded Bernoulli(d) sequences.

    The prediction for a positive density is growth like q^(alpha/2 - 1).
    d = 1 is accepted and means the all-ones sequence.
    """
    if not alpha > 2:
        raise ValueError(f"alpha must be > 2, got {alpha}")
    if not 0 < d <= 1:
        raise ValueError(f"density must lie in (0, 1], got {d}")
    table = TrendTable(
        "density_growth",
        "q",
        params={"density": d, "alpha": alpha, "seeds": seeds, "base_seed": base_seed},
    )
    for q in sorted(int(v) for v in q_list):
        vals = []
        for i in range(1 if d == 1 else seeds):
            bits = BinarySequence(np.ones(q, dtype=np.int8)) if d == 1 else random_binary(q, d, base_seed + 1000 * q + i)
            if bits.weight == 0:
                raise ValueError(f"all-zero sample at q={q}, seed={base_seed + 1000 * q + i}; choose another base seed")
            nrm = grid_norm(from_bits(bits), NormQuery(alpha, 1 / math.sqrt(bits.weight))).value
            vals.append(nrm**alpha)
        table.add(q, "normalized_power", float(np.mean(vals)))
        table.add(q, "spread", float(np.std(vals)))
    table.fit("normalized_power", alpha / 2 - 1)
    table.sort()
    return table


# zero-density chain -----------------------------------------------------


@dataclass
class ZeroDensityRecord:
    """Lower-bound chain at z = 1 for Q/sqrt(q).

    ``single_node`` = (1/q) |Q(1)/sqrt q|^alpha = q^(alpha/2 - 1) (|S|/q)^alpha.
    ``mz_lower`` = single_node / A'^alpha follows from the sampling inequality
    and always lies below ``norm_power``. ``pichorides_lower`` = A'_alpha * single_node
    need not hold; ``pichorides_holds`` records whether it did here.
    """

    q: int
    alpha: float
    c: float
    density: float
    single_node: float
    norm_power: float
    mz_lower: float
    mz_lower_holds: bool
    pichorides_lower: float
    pichorides_holds: bool
    flat_level: float
    forces_nonflat: bool

    def to_dict(self) -> dict:
        return asdict(self)


def zero_density_bound(Q: BinarySequence, alpha: float, c: float = 1.0) -> ZeroDensityRecord:
    if not alpha > 2:
        raise ValueError(f"alpha must be > 2, got {alpha}")
    if Q.weight == 0:
        raise ValueError("the zero-density chain needs a non-empty support")
    q = len(Q)
    dens = Q.weight / q
    single = q ** (alpha / 2 - 1) * dens**alpha
    norm_power = grid_norm(from_bits(Q), NormQuery(alpha, 1 / math.sqrt(q))).value ** alpha
    A_prime = constants.a_constants().A_prime
    A_prime_alpha = 2 * constants.pichorides(alpha) + 1
    mz_lower = single / A_prime**alpha
    via_pichorides = A_prime_alpha * single
    return ZeroDensityRecord(
        q=q,
        alpha=float(alpha),
        c=float(c),
        density=dens,
        single_node=single,
        norm_power=norm_power,
        mz_lower=mz_lower,
        mz_lower_holds=norm_power >= mz_lower * (1 - 1e-12),
        pichorides_lower=via_pichorides,
        pichorides_holds=norm_power >= via_pichorides * (1 - 1e-12),
        flat_level=c**alpha,
        forces_nonflat=mz_lower > c**alpha,
    )


# Dirichlet tail bound -----------------------------------------------------


def tail_bound_coarse(q: int, alpha: float, delta: float) -> float:
    """(1/sqrt q) * 2^alpha / sin(theta/2)^alpha with theta = 2 pi delta radians."""
    return 2**alpha / (math.sqrt(q) * math.sin(math.pi * delta) ** alpha)


def tail_bound_sharp(q: int, alpha: float, delta: float) -> float:
    """q^(-alpha/2) (1 - 2 delta) / sin(pi delta)^alpha, from |D_q| <= 1/|sin(pi x)|."""
    return (1 - 2 * delta) * q ** (-alpha / 2) / math.sin(math.pi * delta) ** alpha


def dirichlet_tail(q: int, alpha: float, delta: float, m: int | None = None) -> float:
    """Mean over the circle of |D_q|^alpha / q^(alpha/2) restricted to |x| >= delta (turns)."""
    D = dirichlet(q)
    m = default_grid(alpha, D.degree) if m is None else m
    mod = grid_moduli(D, m) / math.sqrt(q)
    outside = ~Arc.centered(delta).mask(m)
    return float(np.sum(mod[outside] ** alpha)) / m


@dataclass
class TailRecord:
    q: int
    alpha: float
    delta: float
    tail: float
    coarse_bound: float
    sharp_bound: float
    within_coarse: bool
    within_sharp: bool


def tail_bound_sweep(q_list=tuple(2**k for k in range(4, 13)), alphas=(4, 6), deltas=(0.05, 0.1, 0.2)) -> list[TailRecord]:
    out = []
    for q in q_list:
        for a in alphas:
            for dl in deltas:
                t = dirichlet_tail(q, a, dl)
                pb, db = tail_bound_coarse(q, a, dl), tail_bound_sharp(q, a, dl)
                out.append(TailRecord(int(q), float(a), float(dl), t, pb, db, t <= pb, t <= db))
    return out


# witness panel -------------------------------------------------------------


@dataclass
class WitnessRecord:
    q: int
    deviation: float
    density: float
    norm_ratio: float
    arc_mass: float
    newman_ratio: float
    l4_power: float
    tail: float
    tail_coarse_bound: float
    tail_sharp_bound: float
    norm_direct: float
    norm_decomposed: float
    decomposition_gap: float


@dataclass
class WitnessPanel:
    """Per-size metrics for sign sequences and their +1 supports Q_q.

    Limit values if the family were L^alpha-flat: norm_ratio -> 1,
    density -> 1/2, tail -> 0, arc_mass -> 1, deviation -> 0.
    """

    family: str
    p: int
    alpha: float
    delta: float
    seed: int
    even_bounds: tuple[float, float]
    records: list[WitnessRecord] = field(default_factory=list)

    METRICS = (
        "deviation",
        "density",
        "norm_ratio",
        "arc_mass",
        "newman_ratio",
        "l4_power",
        "tail",
        "tail_coarse_bound",
        "tail_sharp_bound",
        "decomposition_gap",
    )
    LIMITS = {"norm_ratio": 1.0, "density": 0.5, "tail": 0.0, "arc_mass": 1.0, "deviation": 0.0}

    def distances(self) -> list[dict]:
        return [{k: abs(getattr(r, k) - v) for k, v in self.LIMITS.items()} | {"q": r.q} for r in self.records]

    def to_table(self) -> TrendTable:
        t = TrendTable("flatness_witness", "q", params={"family": self.family, "p": self.p, "delta": self.delta})
        for r in self.records:
            for k in self.METRICS:
                t.add(r.q, k, getattr(r, k))
        return t

    def to_dict(self) -> dict:
        d = asdict(self)
        d["even_bounds"] = list(self.even_bounds)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "WitnessPanel":
        d = dict(d)
        d["even_bounds"] = tuple(d["even_bounds"])
        d["records"] = [WitnessRecord(**r) for r in d["records"]]
        return cls(**d)


def witness_record(signs, p: int, delta: float) -> WitnessRecord:
    alpha = 2.0 * p
    q = len(signs)
    scale = 1 / math.sqrt(q)
    P = from_signs(signs)
    eta, _ = split_littlewood(signs)
    Q = from_bits(eta)
    D = dirichlet(q)
    two_q = 2 * Q
    decomposed = two_q - D

    dev = flatness_deviation(P, 1.0, NormQuery(alpha, scale)).value
    ratio = norm_ratio(two_q, D, alpha)
    mass = arc_mass(two_q, alpha, Arc.centered(delta)).mass_ratio if eta.weight else 0.0
    newman = newman_ratio(eta) if eta.weight else float("nan")
    l4 = 1 + 2 * sidelobe_energy(signs) / q**2
    n_direct = grid_norm(P, NormQuery(alpha, scale)).value
    n_decomp = grid_norm(decomposed, NormQuery(alpha, scale)).value
    return WitnessRecord(
        q=q,
        deviation=dev,
        density=eta.density,
        norm_ratio=ratio,
        arc_mass=mass,
        newman_ratio=newman,
        l4_power=l4,
        tail=dirichlet_tail(q, alpha, delta),
        tail_coarse_bound=tail_bound_coarse(q, alpha, delta),
        tail_sharp_bound=tail_bound_sharp(q, alpha, delta),
        norm_direct=n_direct,
        norm_decomposed=n_decomp,
        decomposition_gap=abs(n_direct - n_decomp),
    )


def flatness_witness(family: str, p: int, delta: float, q_list, seed: int = 0) -> WitnessPanel:
    """Witness metrics at alpha = 2p for a sign family over the sizes in q_list.

    ``delta`` is the half-width of the arc around z = 1, in turns.
    """
    if int(p) != p or p < 2:
        raise ValueError(f"p must be an integer >= 2, got {p}")
    if not 0 < delta < 0.25:
        raise ValueError(f"delta must lie in (0, 1/4), got {delta}")
    panel = WitnessPanel(
        family=family,
        p=int(p),
        alpha=2.0 * p,
        delta=float(delta),
        seed=int(seed),
        even_bounds=constants.even_concentration_bounds(2 * int(p)),
    )
    for q in sorted(int(v) for v in q_list):
        signs = sign_family(family, q, seed)
        panel.records.append(witness_record(signs, int(p), delta))
    panel.records.sort(key=lambda r: r.q)
    return panel


# random-family L^4 law -----------------------------------------------------


@dataclass
class L4Law:
    q: int
    seeds: int
    mean: float
    stderr: float
    expected: float

    @property
    def z(self) -> float:
        return (self.mean - self.expected) / self.stderr if self.stderr > 0 else 0.0


def littlewood_l4_mean(q: int, seeds: int = 500, base_seed: int = 0) -> L4Law:
    """Sample mean of ||P/sqrt q||_4^4 over random sign sequences.

    The exact expectation is 2 - 1/q: every lag t contributes E[a_t^2] = q - t.
    """
    vals = np.array([1 + 2 * sidelobe_energy(random_littlewood(q, base_seed + i)) / q**2 for i in range(seeds)])
    return L4Law(q, seeds, float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(seeds)), 2 - 1 / q)
