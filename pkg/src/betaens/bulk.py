"""Global laws and oscillatory bulk corrections.

Coordinates are the bulk-scaled ones: Hermite eigenvalues divided by
sqrt(2N) (semicircle on [-1, 1]) and Laguerre eigenvalues divided by 4N
(Marchenko-Pastur with c = 1 on [0, 1]).  In these units the scaled
density integrates to 1.

The finite-N correction multiplies the limiting law by

    r(x) = 1 + 2 sum_{k=1}^{floor(sqrt(beta/2))} (-1)^k A_k(x) cos(2 pi k N P(x) + k phi(x))

where P is the limiting distribution function and A_k a power of N rho^3
times a gamma-ratio product.  The non-oscillating O(1/N) term is not
modelled.
"""

from __future__ import annotations

import math

import numpy as np

from .core import DensityCurve, EnsembleSpec, Family, Scaling
from .errors import DomainError

__all__ = [
    "wigner_density",
    "mp_density",
    "wigner_cdf",
    "mp_cdf",
    "n_correction_terms",
    "gamma_ratio_product",
    "hermite_amplitude",
    "laguerre_amplitude",
    "hermite_phase",
    "laguerre_phase",
    "hermite_correction_ratio",
    "laguerre_correction_ratio",
    "bulk_hermite_density",
    "bulk_laguerre_density",
    "bulk_density",
    "bulk_curve",
    "HERMITE_BAND",
    "LAGUERRE_BAND",
]

HERMITE_BAND = 0.995
LAGUERRE_BAND = (0.005, 0.995)


def _out(v):
    return v[()] if isinstance(v, np.ndarray) else v


def wigner_density(x):
    """Semicircle (2/pi) sqrt(1 - x^2) on (-1, 1), zero elsewhere."""
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) < 1
    return _out(np.where(inside, 2 / np.pi * np.sqrt(np.where(inside, 1 - x * x, 0.0)), 0.0))


def mp_density(x):
    """Marchenko-Pastur (c = 1) law (2/pi) sqrt(1/x - 1) on (0, 1).

    Zero outside [0, 1); ``+inf`` at x = 0 where the law has an integrable
    x^{-1/2} singularity.
    """
    x = np.asarray(x, dtype=float)
    inside = (x > 0) & (x < 1)
    safe = np.where(inside, x, 0.5)
    out = np.where(inside, 2 / np.pi * np.sqrt(1 / safe - 1), 0.0)
    out = np.where(x == 0, np.inf, out)
    return _out(out)


def wigner_cdf(x):
    """P_W(x) = 1 + (x/2) rho_W(x) - arccos(x)/pi on [-1, 1]."""
    x = np.asarray(x, dtype=float)
    if np.any(~((x >= -1) & (x <= 1))):
        raise DomainError("wigner_cdf is defined on [-1, 1]")
    return _out(1 + x / 2 * wigner_density(x) - np.arccos(x) / np.pi)


def mp_cdf(x):
    """P_MP(x) = 1 + x rho_MP(x) - (2/pi) arccos(sqrt x) on [0, 1]."""
    x = np.asarray(x, dtype=float)
    if np.any(~((x >= 0) & (x <= 1))):
        raise DomainError("mp_cdf is defined on [0, 1]")
    # x rho_MP(x) = (2/pi) sqrt(x (1 - x)), finite at the origin
    return _out(1 + 2 / np.pi * np.sqrt(x * (1 - x)) - 2 / np.pi * np.arccos(np.sqrt(x)))


def n_correction_terms(beta: float) -> int:
    """Number of oscillating terms, floor(sqrt(beta/2))."""
    return math.isqrt(int(beta) // 2) if float(beta).is_integer() else int(math.floor(math.sqrt(beta / 2)))


def gamma_ratio_product(k: int, beta: float) -> float:
    """prod_{j=1}^k Gamma(1 + 2j/beta) / Gamma(1 + 2(j-k)/beta)."""
    s = 0.0
    for j in range(1, k + 1):
        s += math.lgamma(1 + 2 * j / beta) - math.lgamma(1 + 2 * (j - k) / beta)
    return math.exp(s)


def _check_spec(spec: EnsembleSpec, family: Family, expert: bool) -> float:
    if spec.family is not family:
        raise DomainError(f"expected a {family.value} ensemble")
    if not expert:
        spec.require_even_beta()
    return float(spec.beta)


def _hermite_x(x):
    x = np.asarray(x, dtype=float)
    if np.any(~(np.abs(x) < 1)):
        raise DomainError("bulk Hermite formula needs |x| < 1; use the soft-edge module at the edge")
    if np.any(np.abs(x) > HERMITE_BAND):
        raise DomainError(f"x outside the bulk guard band |x| <= {HERMITE_BAND}; use the soft-edge module")
    return x


def _laguerre_x(x):
    x = np.asarray(x, dtype=float)
    lo, hi = LAGUERRE_BAND
    if np.any(~((x > 0) & (x < 1))):
        raise DomainError("bulk Laguerre formula needs 0 < x < 1")
    if np.any((x < lo) | (x > hi)):
        raise DomainError(f"x outside the bulk guard band [{lo}, {hi}]")
    return x


def hermite_amplitude(N: int, beta: float, x, k: int = 1):
    """A_k(x) = (pi^3 rho_W^3 N)^{-2k^2/beta} prod Gamma-ratios."""
    rho = wigner_density(x)
    return _out(np.asarray((np.pi**3 * rho**3 * N) ** (-2 * k * k / beta) * gamma_ratio_product(k, beta)))


def laguerre_amplitude(N: int, beta: float, x, k: int = 1):
    """A_k(x) = (2 pi^3 x^2 rho_MP^3 N)^{-2k^2/beta} prod Gamma-ratios (independent of a)."""
    x = np.asarray(x, dtype=float)
    rho = mp_density(x)
    return _out(np.asarray((2 * np.pi**3 * x * x * rho**3 * N) ** (-2 * k * k / beta) * gamma_ratio_product(k, beta)))


def hermite_phase(N: int, beta: float, x, k: int = 1):
    """2 pi k N P_W(x) + k (1 - 2/beta) arcsin(x)."""
    x = np.asarray(x, dtype=float)
    return _out(2 * np.pi * k * N * wigner_cdf(x) + k * (1 - 2 / beta) * np.arcsin(x))


def laguerre_phase(N: int, beta: float, a: float, x, k: int = 1):
    """2 pi k N P_MP(x) + k ((1 - 2/beta) pi/2 - 2a arccos sqrt x)."""
    x = np.asarray(x, dtype=float)
    phi = (1 - 2 / beta) * np.pi / 2 - 2 * a * np.arccos(np.sqrt(x))
    return _out(2 * np.pi * k * N * mp_cdf(x) + k * phi)


def hermite_correction_ratio(spec: EnsembleSpec, x, expert: bool = False):
    """r_{N,beta}(x) for the Hermite ensemble."""
    beta = _check_spec(spec, Family.HERMITE, expert)
    x = _hermite_x(x)
    r = np.ones_like(x)
    for k in range(1, n_correction_terms(beta) + 1):
        r = r + 2 * (-1) ** k * hermite_amplitude(spec.N, beta, x, k) * np.cos(hermite_phase(spec.N, beta, x, k))
    return _out(r)


def laguerre_correction_ratio(spec: EnsembleSpec, x, expert: bool = False):
    """r_{N,beta}(x) for the Laguerre ensemble."""
    beta = _check_spec(spec, Family.LAGUERRE, expert)
    x = _laguerre_x(x)
    r = np.ones_like(x)
    for k in range(1, n_correction_terms(beta) + 1):
        r = r + 2 * (-1) ** k * laguerre_amplitude(spec.N, beta, x, k) * np.cos(
            laguerre_phase(spec.N, beta, spec.a, x, k)
        )
    return _out(r)


def bulk_hermite_density(spec: EnsembleSpec, x, expert: bool = False):
    """Bulk-scaled Hermite density rho_W(x) r_{N,beta}(x).

    Parameters
    ----------
    spec : EnsembleSpec
        Hermite ensemble with even beta (any beta > 0 with ``expert=True``,
        without accuracy claims).
    x : float or array
        Bulk coordinate, |x| <= 0.995.
    """
    r = hermite_correction_ratio(spec, x, expert)
    return _out(np.asarray(wigner_density(x) * r))


def bulk_laguerre_density(spec: EnsembleSpec, x, expert: bool = False):
    """Bulk-scaled Laguerre density rho_MP(x) r_{N,beta}(x), 0.005 <= x <= 0.995."""
    r = laguerre_correction_ratio(spec, x, expert)
    return _out(np.asarray(mp_density(x) * r))


def bulk_density(spec: EnsembleSpec, x, expert: bool = False):
    if spec.family is Family.HERMITE:
        return bulk_hermite_density(spec, x, expert)
    return bulk_laguerre_density(spec, x, expert)


def bulk_curve(spec: EnsembleSpec, grid, expert: bool = False) -> DensityCurve:
    grid = np.asarray(grid, dtype=float)
    scaling = Scaling.BULK_HERMITE if spec.family is Family.HERMITE else Scaling.BULK_LAGUERRE
    return DensityCurve(grid, bulk_density(spec, grid, expert), scaling, spec, "bulk-asymptotic")
