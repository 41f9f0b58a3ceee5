"""Norms, flatness and concentration of Littlewood and idempotent polynomials."""

__version__ = "0.1.0"

from .polycore import (
    BinarySequence,
    IntPolynomial,
    SignSequence,
    autocorrelation,
    dirichlet,
    evaluate_on_grid,
    from_bits,
    from_signs,
    power_coefficients,
    split_littlewood,
)
from .norms import (
    NormQuery,
    NormReport,
    exact_even_norm,
    flatness_deviation,
    grid_norm,
    mz_check,
    newman_ratio,
    norm_ratio,
)
from .constants import (
    a_constants,
    c2_maximizer,
    delta_p,
    even_concentration_bounds,
    pichorides,
    remainder_regime,
)
from .families import (
    enumerate_signs,
    fekete,
    newman_from_signs,
    random_binary,
    random_littlewood,
    rudin_shapiro,
)
from .concentration import Arc, arc_mass, concentration_search, dilated_dirichlet_witness
from .search import anneal, flattest_exhaustive, merit_factor
