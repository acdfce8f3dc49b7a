"""Finite-N and edge densities of Hermite and Laguerre beta-ensembles.

Four routes to the same density: the exact finite-N polynomial formula
(``symop``), the bulk expansion with oscillating corrections (``bulk``),
the soft-edge multiple integral (``softedge``) and Monte Carlo over
tridiagonal matrix models (``ensembles``).
"""

__version__ = "0.1.0"

from .core import DensityCurve, EnsembleSpec, Family, Scaling, to_raw
from .errors import (
    BetaEnsError,
    BudgetError,
    ConsistencyError,
    ContourError,
    ConvergenceError,
    DomainError,
    SymmetryError,
)
from .specfun import (
    airy_ai,
    gamma_n_beta,
    hermite_norm_ratio,
    laguerre_norm_ratio,
    log_gamma,
    soft_edge_prefactor,
)
from .symop import (
    MultiPoly,
    SymPoly,
    apply_Dk,
    apply_Ek,
    exact_density,
    exact_hermite_density,
    exact_laguerre_density,
    rectangular_generalized_polynomial,
)
from .bulk import (
    bulk_density,
    bulk_hermite_density,
    bulk_laguerre_density,
    hermite_correction_ratio,
    laguerre_correction_ratio,
    mp_cdf,
    mp_density,
    wigner_cdf,
    wigner_density,
)
from .softedge import (
    KQuadConfig,
    edge_coordinate,
    edge_density,
    k_asym_left,
    k_asym_right,
    k_det_beta2,
    k_integral,
    soft_edge_density,
)
from .ensembles import (
    Histogram,
    SymTridiagonal,
    chi_sample,
    empirical_density,
    monte_carlo_curve,
    sample_hermite_tridiag,
    sample_laguerre_tridiag,
    tridiag_eigenvalues,
)

__all__ = [
    "__version__",
    "DensityCurve",
    "EnsembleSpec",
    "Family",
    "Scaling",
    "to_raw",
    "BetaEnsError",
    "BudgetError",
    "ConsistencyError",
    "ContourError",
    "ConvergenceError",
    "DomainError",
    "SymmetryError",
    "airy_ai",
    "gamma_n_beta",
    "hermite_norm_ratio",
    "laguerre_norm_ratio",
    "log_gamma",
    "soft_edge_prefactor",
    "MultiPoly",
    "SymPoly",
    "apply_Dk",
    "apply_Ek",
    "exact_density",
    "exact_hermite_density",
    "exact_laguerre_density",
    "rectangular_generalized_polynomial",
    "bulk_density",
    "bulk_hermite_density",
    "bulk_laguerre_density",
    "hermite_correction_ratio",
    "laguerre_correction_ratio",
    "mp_cdf",
    "mp_density",
    "wigner_cdf",
    "wigner_density",
    "KQuadConfig",
    "edge_coordinate",
    "edge_density",
    "k_asym_left",
    "k_asym_right",
    "k_det_beta2",
    "k_integral",
    "soft_edge_density",
    "Histogram",
    "SymTridiagonal",
    "chi_sample",
    "empirical_density",
    "monte_carlo_curve",
    "sample_hermite_tridiag",
    "sample_laguerre_tridiag",
    "tridiag_eigenvalues",
]
