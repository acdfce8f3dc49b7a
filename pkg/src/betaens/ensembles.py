"""Tridiagonal matrix models and Monte Carlo density estimates.

Hermite: H = tridiag(N(0,1), chi_{(N-j) beta} / sqrt 2) / sqrt(beta), whose
eigenvalues have joint density proportional to exp(-beta sum x^2 / 2)
|Delta|^beta.

Laguerre: L = B^T B with B upper bidiagonal,
B_ii = chi_{(P-i) beta} / sqrt(beta) (i = 0..N-1),
B_{i,i+1} = chi_{(N-1-i) beta} / sqrt(beta), and P = a + N - 1 + 2/beta,
giving the weight x^{a beta/2} exp(-beta x/2).

chi_k is the standard chi distribution, X^2 ~ Gamma(k/2, scale 2).

Monte Carlo runs are split into fixed-size chunks, each with its own
stream ``SeedSequence(seed, spawn_key=(chunk,))``; histograms hold integer
counts, so the merged result does not depend on how chunks are
scheduled over threads.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .core import DensityCurve, EnsembleSpec, Family, Scaling, to_raw
from .errors import ConvergenceError, DomainError

__all__ = [
    "SymTridiagonal",
    "Histogram",
    "chi_sample",
    "sample_hermite_tridiag",
    "sample_laguerre_tridiag",
    "sample_batch",
    "tridiag_eigenvalues",
    "batch_eigenvalues",
    "spectra",
    "sturm_count",
    "to_scaled",
    "freedman_diaconis_edges",
    "edges_from_grid",
    "histogram_eigenvalues",
    "empirical_density",
    "monte_carlo_histogram",
    "monte_carlo_curve",
    "default_threads",
]

log = logging.getLogger(__name__)

CHUNK = 4096
BISECTION_MAX_N = 24
THREADS_ENV = "BETAENS_THREADS"


@dataclass
class SymTridiagonal:
    """Symmetric tridiagonal matrix by its diagonal and off-diagonal."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        self.diag = np.asarray(self.diag, dtype=float)
        self.offdiag = np.asarray(self.offdiag, dtype=float)
        if self.diag.ndim != 1 or self.diag.size < 1:
            raise DomainError("diag must be a non-empty 1-d array")
        if self.offdiag.shape != (self.diag.size - 1,):
            raise DomainError("offdiag must have length len(diag) - 1")
        if not (np.all(np.isfinite(self.diag)) and np.all(np.isfinite(self.offdiag))):
            raise DomainError("entries must be finite")

    @property
    def n(self) -> int:
        return self.diag.size

    def trace(self) -> float:
        return float(math.fsum(self.diag))

    def norm(self) -> float:
        """Max absolute row sum (an upper bound for the spectral norm)."""
        e = np.abs(self.offdiag)
        rows = np.abs(self.diag).copy()
        rows[:-1] += e
        rows[1:] += e
        return float(rows.max())

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def chi_sample(k, rng: np.random.Generator, size=None):
    """Standard chi variate(s) with k > 0 degrees of freedom (real k allowed)."""
    k = np.asarray(k, dtype=float)
    if np.any(~(k > 0)):
        raise DomainError("chi degrees of freedom must be positive")
    return np.sqrt(rng.gamma(k / 2, 2.0, size=size))


def _hermite_batch(spec: EnsembleSpec, rng: np.random.Generator, size: int):
    N, beta = spec.N, float(spec.beta)
    d = rng.standard_normal((size, N)) / math.sqrt(beta)
    dof = (N - np.arange(1, N)) * beta
    e = chi_sample(np.broadcast_to(dof, (size, N - 1)), rng) / math.sqrt(2 * beta)
    return d, e


def _laguerre_batch(spec: EnsembleSpec, rng: np.random.Generator, size: int):
    N, beta = spec.N, float(spec.beta)
    P = spec.dof
    i = np.arange(N)
    bd = chi_sample(np.broadcast_to((P - i) * beta, (size, N)), rng) / math.sqrt(beta)
    be = chi_sample(np.broadcast_to((N - 1 - i[:-1]) * beta, (size, N - 1)), rng) / math.sqrt(beta)
    d = bd * bd
    d[:, 1:] += be * be
    return d, bd[:, :-1] * be


def sample_batch(spec: EnsembleSpec, rng: np.random.Generator, size: int):
    """``size`` independent matrices as arrays (diag (size, N), offdiag (size, N-1))."""
    if spec.family is Family.HERMITE:
        return _hermite_batch(spec, rng, size)
    return _laguerre_batch(spec, rng, size)


def sample_hermite_tridiag(spec: EnsembleSpec, rng: np.random.Generator) -> SymTridiagonal:
    """One draw of the Hermite tridiagonal model."""
    if spec.family is not Family.HERMITE:
        raise DomainError("sample_hermite_tridiag needs a Hermite ensemble")
    d, e = _hermite_batch(spec, rng, 1)
    return SymTridiagonal(d[0], e[0])


def sample_laguerre_tridiag(spec: EnsembleSpec, rng: np.random.Generator) -> SymTridiagonal:
    """One draw of L = B^T B, assembled directly in tridiagonal form."""
    if spec.family is not Family.LAGUERRE:
        raise DomainError("sample_laguerre_tridiag needs a Laguerre ensemble")
    d, e = _laguerre_batch(spec, rng, 1)
    return SymTridiagonal(d[0], e[0])


# --- eigenvalues --------------------------------------------------------------------


def sturm_count(diag, offdiag, lam):
    """Number of eigenvalues strictly below ``lam`` (LDL^T pivot signs).

    Works on batches: ``diag`` (..., N), ``offdiag`` (..., N-1) and ``lam``
    broadcastable against ``diag[..., 0]``.
    """
    diag = np.asarray(diag, dtype=float)
    e2 = np.asarray(offdiag, dtype=float) ** 2
    lam = np.asarray(lam, dtype=float)
    tiny = np.finfo(float).tiny
    # a zero pivot is nudged to -tiny before it is counted, so the count
    # and the continued recurrence describe the same shifted matrix
    q = diag[..., 0] - lam
    q = np.where(q == 0, -tiny, q)
    count = (q < 0).astype(np.int64)
    with np.errstate(over="ignore", divide="ignore"):  # an infinite pivot is harmless
        for i in range(1, diag.shape[-1]):
            q = diag[..., i] - lam - e2[..., i - 1] / q
            q = np.where(q == 0, -tiny, q)
            count += q < 0
    return count


def _gershgorin(diag, offdiag):
    e = np.abs(offdiag)
    r = np.zeros_like(diag)
    r[..., :-1] += e
    r[..., 1:] += e
    lo = (diag - r).min(axis=-1)
    hi = (diag + r).max(axis=-1)
    pad = 1e-12 * np.maximum(np.abs(lo), np.abs(hi)) + 1e-300
    return lo - pad, hi + pad


def batch_eigenvalues(diag, offdiag, iterations: int = 64) -> np.ndarray:
    """Ascending eigenvalues of many tridiagonal matrices by Sturm bisection.

    Every eigenvalue index of every matrix is bisected at once inside the
    Gershgorin interval; 64 halvings shrink it far below one ulp of the
    matrix norm.
    """
    diag = np.atleast_2d(np.asarray(diag, dtype=float))
    offdiag = np.asarray(offdiag, dtype=float).reshape(diag.shape[0], diag.shape[1] - 1)
    B, N = diag.shape
    # scale each matrix to unit max entry so that squared off-diagonals cannot underflow
    scale = np.maximum(np.abs(diag).max(axis=1), np.abs(offdiag).max(axis=1, initial=0.0))
    scale = np.where(scale > 0, scale, 1.0)
    diag = diag / scale[:, None]
    offdiag = offdiag / scale[:, None]
    lo0, hi0 = _gershgorin(diag, offdiag)
    lo = np.repeat(lo0[:, None], N, axis=1)
    hi = np.repeat(hi0[:, None], N, axis=1)
    k = np.arange(N)[None, :]
    D = diag[:, None, :]
    E = offdiag[:, None, :]
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        below = sturm_count(D, E, mid) > k  # more than k eigenvalues below mid: lambda_k < mid
        hi = np.where(below, mid, hi)
        lo = np.where(below, lo, mid)
    return 0.5 * (lo + hi) * scale[:, None]


def spectra(diag, offdiag) -> np.ndarray:
    """Eigenvalues of a batch of tridiagonal matrices.

    Sturm bisection (vectorized over the batch) up to ``BISECTION_MAX_N``;
    beyond that its O(N^2) work per sweep loses to LAPACK's tridiagonal
    solver, called once per matrix.
    """
    diag = np.atleast_2d(np.asarray(diag, dtype=float))
    N = diag.shape[1]
    if N == 1:
        return diag.copy()
    if N <= BISECTION_MAX_N:
        return batch_eigenvalues(diag, offdiag)
    offdiag = np.asarray(offdiag, dtype=float).reshape(diag.shape[0], N - 1)
    return np.array([eigvalsh_tridiagonal(d, e, lapack_driver="stemr") for d, e in zip(diag, offdiag)])


def _ql_implicit(d: np.ndarray, e: np.ndarray, max_iter: int = 30) -> np.ndarray:
    """Eigenvalues by the implicit-shift QL method; raises on the iteration cap."""
    n = d.size
    d = d.copy()
    e = np.append(e.copy(), 0.0)
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= np.finfo(float).eps * dd:
                    break
                m += 1
            if m == l:
                break
            if it == max_iter:
                raise ConvergenceError(f"QL iteration cap reached at eigenvalue {l}")
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.sort(d)


def tridiag_eigenvalues(T: SymTridiagonal, max_iter: int = 30) -> np.ndarray:
    """All eigenvalues of T in ascending order.

    Implicit-shift QL; if an eigenvalue needs more than ``max_iter``
    sweeps, the whole spectrum is recomputed by Sturm bisection.
    """
    if T.n == 1:
        return T.diag.copy()
    try:
        return _ql_implicit(T.diag, T.offdiag, max_iter)
    except ConvergenceError:
        log.info("QL hit its iteration cap; falling back to bisection")
        return batch_eigenvalues(T.diag[None, :], T.offdiag[None, :])[0]


# --- histograms and density curves -----------------------------------------------------


def to_scaled(spec: EnsembleSpec, scaling: Scaling, X):
    """Inverse of ``core.to_raw``: physical eigenvalues to coordinates in ``scaling``."""
    X = np.asarray(X, dtype=float)
    x0, _ = to_raw(spec, scaling, 0.0)
    x1, _ = to_raw(spec, scaling, 1.0)
    return (X - float(x0)) / float(x1 - x0)


def _mass_per_eigenvalue(spec: EnsembleSpec, scaling: Scaling) -> float:
    # bulk-scaled curves integrate to 1, raw and edge curves count all N eigenvalues
    return 1.0 / spec.N if Scaling(scaling) in (Scaling.BULK_HERMITE, Scaling.BULK_LAGUERRE) else 1.0


def freedman_diaconis_edges(data) -> np.ndarray:
    """Bin edges of Freedman-Diaconis width over the range of ``data``."""
    data = np.asarray(data, dtype=float).ravel()
    if data.size == 0:
        raise DomainError("no data for Freedman-Diaconis binning")
    return np.histogram_bin_edges(data, bins="fd")


def edges_from_grid(grid) -> np.ndarray:
    """Bin edges with the grid points as bin centres (edges at midpoints)."""
    grid = np.asarray(grid, dtype=float)
    if grid.size < 2 or not np.all(np.diff(grid) > 0):
        raise DomainError("grid must be strictly increasing with at least two points")
    mid = 0.5 * (grid[1:] + grid[:-1])
    return np.concatenate([[grid[0] - (mid[0] - grid[0])], mid, [grid[-1] + (grid[-1] - mid[-1])]])


@dataclass
class Histogram:
    """Integer eigenvalue counts in scaled coordinates.

    ``draws`` matrices of size ``n_per_sample`` contributed; ``below`` and
    ``above`` count eigenvalues outside the edges, so
    ``counts.sum() + below + above == draws * n_per_sample``.
    """

    edges: np.ndarray
    counts: np.ndarray
    draws: int
    n_per_sample: int
    scaling: Scaling
    below: int = 0
    above: int = 0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.edges = np.asarray(self.edges, dtype=float)
        self.counts = np.asarray(self.counts, dtype=np.int64)
        self.scaling = Scaling(self.scaling)
        if self.edges.ndim != 1 or not np.all(np.diff(self.edges) > 0):
            raise DomainError("edges must be strictly increasing")
        if self.counts.shape != (self.edges.size - 1,):
            raise DomainError("counts must have one entry per bin")

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[1:] + self.edges[:-1])

    def merge(self, other: Histogram) -> Histogram:
        if not np.array_equal(self.edges, other.edges) or self.scaling != other.scaling:
            raise DomainError("histograms with different bins cannot be merged")
        if self.n_per_sample != other.n_per_sample:
            raise DomainError("histograms of different matrix sizes cannot be merged")
        return Histogram(
            self.edges, self.counts + other.counts, self.draws + other.draws, self.n_per_sample,
            self.scaling, self.below + other.below, self.above + other.above, dict(self.meta),
        )

    def density(self, mass_per_eigenvalue: float = 1.0) -> np.ndarray:
        if self.draws == 0:
            raise DomainError("empty histogram")
        return self.counts * mass_per_eigenvalue / (self.draws * np.diff(self.edges))

    def to_curve(self, spec: EnsembleSpec, method: str = "monte-carlo") -> DensityCurve:
        vals = self.density(_mass_per_eigenvalue(spec, self.scaling))
        meta = dict(self.meta)
        meta.update(draws=self.draws, below=self.below, above=self.above)
        return DensityCurve(self.centers, vals, self.scaling, spec, method, meta)


def histogram_eigenvalues(eigs, edges, scaling, n_per_sample: int, spec: EnsembleSpec | None = None) -> Histogram:
    """Histogram of raw eigenvalues ``eigs`` (draws x n) in ``scaling`` coordinates."""
    eigs = np.asarray(eigs, dtype=float)
    if eigs.ndim == 1:
        eigs = eigs[None, :]
    x = eigs if spec is None else to_scaled(spec, scaling, eigs)
    edges = np.asarray(edges, dtype=float)
    counts, _ = np.histogram(x, bins=edges)
    below = int(np.count_nonzero(x < edges[0]))
    above = int(np.count_nonzero(x > edges[-1]))
    return Histogram(edges, counts, eigs.shape[0], n_per_sample, scaling, below, above)


def empirical_density(samples, grid=None, scaling=Scaling.RAW, spec: EnsembleSpec | None = None) -> DensityCurve:
    """Density curve from eigenvalue samples.

    Parameters
    ----------
    samples : sequence of eigenvalue lists
        Raw eigenvalues, one list per matrix draw.
    grid : array, optional
        Bin centres in ``scaling`` coordinates; Freedman-Diaconis bins when omitted.
    scaling : Scaling
        Coordinates of the curve; needs ``spec`` unless RAW.

    The result estimates ``jac * rho(X)`` exactly like the exact and
    asymptotic curves in the same scaling (so RAW integrates to N and the
    bulk scalings to 1).  Eigenvalues outside the bins are dropped and
    logged.
    """
    rows = [np.asarray(s, dtype=float).ravel() for s in samples]
    if not rows or any(r.size == 0 for r in rows):
        raise DomainError("empirical_density needs at least one non-empty sample")
    n = rows[0].size
    if any(r.size != n for r in rows):
        raise DomainError("all samples must have the same number of eigenvalues")
    scaling = Scaling(scaling)
    if spec is None:
        if scaling is not Scaling.RAW:
            raise DomainError("a scaled density needs the ensemble spec")
        spec = EnsembleSpec.hermite(n, 2.0)
        spec_given = False
    else:
        spec_given = True
    eigs = np.vstack(rows)
    x = to_scaled(spec, scaling, eigs)
    edges = freedman_diaconis_edges(x) if grid is None else edges_from_grid(grid)
    h = histogram_eigenvalues(x, edges, scaling, n)
    if h.below or h.above:
        log.warning("%d eigenvalues fell outside the grid and were dropped", h.below + h.above)
    curve = h.to_curve(spec)
    if not spec_given:
        curve.meta["spec"] = "unspecified"
    return curve


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            v = int(env)
        except ValueError:
            raise DomainError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
        if v < 1:
            raise DomainError(f"{THREADS_ENV} must be positive")
        return v
    return 1


def _chunk_hist(spec, scaling, edges, seed, index, size):
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))
    d, e = sample_batch(spec, rng, size)
    eigs = spectra(d, e)
    return histogram_eigenvalues(eigs, edges, scaling, spec.N, spec)


def monte_carlo_histogram(spec: EnsembleSpec, draws: int, edges, scaling=Scaling.RAW, seed: int = 0,
                          threads: int | None = None, chunk: int = CHUNK) -> Histogram:
    """Histogram of ``draws`` sampled spectra; bit-identical for any ``threads``."""
    if draws < 1:
        raise DomainError("draws must be positive")
    threads = threads or default_threads()
    sizes = [min(chunk, draws - s) for s in range(0, draws, chunk)]
    jobs = [(spec, scaling, edges, seed, i, size) for i, size in enumerate(sizes)]
    if threads == 1:
        parts = [_chunk_hist(*j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda j: _chunk_hist(*j), jobs))
    total = parts[0]
    for p in parts[1:]:
        total = total.merge(p)
    total.meta.update(seed=seed, spec=spec.to_dict())
    return total


def monte_carlo_curve(spec: EnsembleSpec, draws: int, grid, scaling=Scaling.RAW, seed: int = 0,
                      threads: int | None = None) -> DensityCurve:
    """Monte Carlo density on ``grid`` (bin centres) in ``scaling`` coordinates."""
    h = monte_carlo_histogram(spec, draws, edges_from_grid(grid), scaling, seed, threads)
    return h.to_curve(spec)
