"""Scalar special functions and normalization constants.

All products of gamma-function ratios are assembled in log space and
exponentiated once, so nothing overflows for the sizes used here
(N ~ 50, beta ~ 6 and well beyond).
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

from .core import EnsembleSpec, Family
from .errors import DomainError

__all__ = [
    "log_gamma",
    "airy_ai",
    "gamma_n_beta",
    "log_gamma_n_beta",
    "hermite_norm_ratio",
    "laguerre_norm_ratio",
    "log_hermite_partition",
    "log_laguerre_partition",
    "soft_edge_prefactor",
    "stirling_hermite_norm_ratio",
]


def log_gamma(z: float) -> float:
    """ln Gamma(z) for real z > 0."""
    z = float(z)
    if not z > 0:
        raise DomainError(f"log_gamma needs z > 0, got {z!r}")
    return math.lgamma(z)


def airy_ai(x):
    """Airy function Ai and its derivative Ai' at real x.

    Accepts scalars or arrays; returns a pair of the same shape.
    """
    ai, aip, _, _ = special.airy(x)
    if np.ndim(x) == 0:
        return float(ai), float(aip)
    return ai, aip


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not (math.isfinite(beta) and beta > 0):
        raise DomainError(f"beta must be positive, got {beta!r}")
    return beta


def log_gamma_n_beta(n: int, beta: float) -> float:
    beta = _check_beta(beta)
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    n = int(n)
    if n == 0:
        return 0.0
    out = 0.5 * n * math.log(math.pi) - n * (n - 1) / beta * math.log(2.0)
    g1 = math.lgamma(1 + 2 / beta)
    out += math.fsum(math.lgamma(1 + 2 * j / beta) - g1 for j in range(2, n + 1))
    return out


def gamma_n_beta(n: int, beta: float) -> float:
    """Gaussian Selberg-type integral

    ``int_{R^n} prod exp(-u_i^2) prod_{j<k} |u_j - u_k|^{4/beta} du``

    in closed form; ``n = 0`` gives 1 (empty integral).
    """
    return math.exp(log_gamma_n_beta(n, beta))


def log_hermite_partition(N: int, beta: float) -> float:
    """ln G_{beta,N}, the normalization of exp(-beta W) for the Hermite weight."""
    beta = _check_beta(beta)
    if N == 0:
        return 0.0
    out = 0.5 * N * math.log(2 * math.pi) - N * (0.5 + beta * (N - 1) / 4) * math.log(beta)
    g = math.lgamma(1 + beta / 2)
    out += math.fsum(math.lgamma(1 + j * beta / 2) - g for j in range(2, N + 1))
    return out


def log_laguerre_partition(N: int, beta: float, a: float) -> float:
    """ln W_{a,beta,N}, the normalization of exp(-beta W) for the Laguerre weight."""
    beta = _check_beta(beta)
    if a < 0:
        raise DomainError(f"a must be nonnegative, got {a!r}")
    if N == 0:
        return 0.0
    out = N * (a * beta / 2 + 1 + beta * (N - 1) / 2) * math.log(2 / beta)
    g = math.lgamma(1 + beta / 2)
    out += math.fsum(
        math.lgamma(1 + j * beta / 2) + math.lgamma(1 + (a + j - 1) * beta / 2) - g
        for j in range(1, N + 1)
    )
    return out


def hermite_norm_ratio(N: int, beta: float) -> float:
    """G_{beta,N-1} / G_{beta,N}, exact up to rounding."""
    if N < 1 or int(N) != N:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    return math.exp(log_hermite_partition(N - 1, beta) - log_hermite_partition(N, beta))


def laguerre_norm_ratio(spec: EnsembleSpec) -> float:
    """W_{a,beta,N-1} / W_{a,beta,N} for a Laguerre ensemble."""
    if spec.family is not Family.LAGUERRE:
        raise DomainError("laguerre_norm_ratio needs a Laguerre ensemble")
    return math.exp(
        log_laguerre_partition(spec.N - 1, spec.beta, spec.a)
        - log_laguerre_partition(spec.N, spec.beta, spec.a)
    )


def stirling_hermite_norm_ratio(N: int, beta: float) -> float:
    """Large-N form of G_{beta,N-1}/G_{beta,N} from Stirling's formula.

    ``Gamma(1+beta/2) beta^{-beta/2} 2^{beta N/2 - 1/2} e^{beta N/2} / (pi N^{beta N/2 + 1/2})``.
    """
    beta = _check_beta(beta)
    log_r = (
        math.lgamma(1 + beta / 2) - beta / 2 * math.log(beta)
        + (beta * N / 2 - 0.5) * math.log(2) + beta * N / 2
        - math.log(math.pi) - (beta * N / 2 + 0.5) * math.log(N)
    )
    return math.exp(log_r)


def _even_beta(beta) -> int:
    if float(beta).is_integer() and int(beta) >= 2 and int(beta) % 2 == 0:
        return int(beta)
    raise DomainError(f"beta must be a positive even integer, got {beta!r}")


def soft_edge_prefactor(beta: int) -> float:
    """Constant C_beta with sigma(x) = C_beta K_{beta,beta}(x) at the soft edge."""
    beta = _even_beta(beta)
    g1 = math.lgamma(1 + 2 / beta)
    log_c = (
        -math.log(2 * math.pi)
        + beta / 2 * math.log(4 * math.pi / beta)
        + math.lgamma(1 + beta / 2)
        - math.fsum(math.lgamma(1 + 2 * j / beta) - g1 for j in range(2, beta + 1))
    )
    return math.exp(log_c)
