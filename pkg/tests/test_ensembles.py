import math

import numpy as np
import pytest
from hypothesis import example, given, strategies as st
from scipy import integrate, stats

from betaens import ensembles as ens
from betaens.bulk import mp_density, wigner_density
from betaens.core import EnsembleSpec, Scaling
from betaens.ensembles import (
    Histogram,
    SymTridiagonal,
    batch_eigenvalues,
    chi_sample,
    edges_from_grid,
    empirical_density,
    freedman_diaconis_edges,
    monte_carlo_curve,
    monte_carlo_histogram,
    sample_hermite_tridiag,
    sample_laguerre_tridiag,
    spectra,
    tridiag_eigenvalues,
)
from betaens.errors import ConvergenceError, DomainError
from betaens.symop import exact_density


def cell_means(f, edges):
    return np.array([integrate.quad(f, a, b)[0] / (b - a) for a, b in zip(edges[:-1], edges[1:])])


def l1(curve, ref):
    return float(np.sum(np.abs(curve.values - ref) * np.diff(edges_from_grid(curve.grid))))


# --- chi variates -----------------------------------------------------------------------


def test_chi_mean_square():
    rng = np.random.default_rng(1)
    x = chi_sample(2.0, rng, 100_000)
    m = np.mean(x * x)
    sd = np.std(x * x) / math.sqrt(x.size)
    assert abs(m - 2.0) < 3 * sd and np.all(x > 0)


def test_chi1_is_half_normal():
    x = chi_sample(1.0, np.random.default_rng(2), 10_000)
    assert stats.kstest(x, stats.halfnorm.cdf).pvalue > 0.01


def test_chi_real_dof_and_errors():
    x = chi_sample(0.3, np.random.default_rng(3), 1000)
    assert np.all(x >= 0) and np.mean(x * x) == pytest.approx(0.3, rel=0.2)
    for bad in (0.0, -1.0):
        with pytest.raises(DomainError):
            chi_sample(bad, np.random.default_rng(0))


# --- matrix models -----------------------------------------------------------------------


def test_hermite_n1_variance():
    rng = np.random.default_rng(4)
    spec = EnsembleSpec.hermite(1, 2)
    x = np.array([sample_hermite_tridiag(spec, rng).diag[0] for _ in range(100_000)])
    sd = np.std(x * x) / math.sqrt(x.size)
    assert abs(np.mean(x * x) - 0.5) < 3 * sd


def test_laguerre_n1_is_exponential():
    rng = np.random.default_rng(5)
    spec = EnsembleSpec.laguerre(1, 2, 0)
    x = np.array([sample_laguerre_tridiag(spec, rng).diag[0] for _ in range(10_000)])
    assert stats.kstest(x, stats.expon.cdf).pvalue > 0.01


def test_draw_shapes():
    rng = np.random.default_rng(6)
    T = sample_hermite_tridiag(EnsembleSpec.hermite(5, 2.5), rng)
    assert T.n == 5 and np.all(T.offdiag > 0)
    L = sample_laguerre_tridiag(EnsembleSpec.laguerre(5, 1.0, 0.3), rng)
    assert np.all(tridiag_eigenvalues(L) >= -1e-10 * L.norm())
    with pytest.raises(DomainError):
        sample_hermite_tridiag(EnsembleSpec.laguerre(2, 2), rng)


def test_laguerre_tridiagonal_is_gram_matrix():
    # the tridiagonal assembly equals B^T B for the bidiagonal B drawn from the same stream
    spec = EnsembleSpec.laguerre(4, 2, 0.5)
    d, e = ens._laguerre_batch(spec, np.random.default_rng(7), 1)
    rng = np.random.default_rng(7)
    i = np.arange(4)
    bd = chi_sample((spec.dof - i) * 2.0, rng, (1, 4))[0] / math.sqrt(2)
    be = chi_sample((3 - i[:-1]) * 2.0, rng, (1, 3))[0] / math.sqrt(2)
    B = np.diag(bd) + np.diag(be, 1)
    assert np.allclose(SymTridiagonal(d[0], e[0]).to_dense(), B.T @ B, rtol=1e-14)


def test_hermite_n2_histogram_matches_closed_form():
    spec = EnsembleSpec.hermite(2, 2)
    grid = np.arange(-3.5, 3.5001, 0.05)
    curve = monte_carlo_curve(spec, 200_000, grid, Scaling.RAW, seed=8)
    f = lambda x: 2 / math.sqrt(math.pi) * math.exp(-x * x) * (x * x + 0.5) / 2
    # per-eigenvalue density against the normalized closed form
    assert l1(curve, 2 * cell_means(f, edges_from_grid(grid))) / 2 <= 0.02


def test_laguerre_n4_histogram_matches_exact():
    spec = EnsembleSpec.laguerre(4, 6, 1)
    grid = np.arange(0.01, 1.4, 0.02)
    curve = monte_carlo_curve(spec, 200_000, grid, Scaling.BULK_LAGUERRE, seed=9)
    # exact_density integrates to N; per-eigenvalue density in x = lambda/(4N) is 4N/N rho(4N x)
    ref = cell_means(lambda x: 4 * exact_density(spec, 16 * x), edges_from_grid(grid))
    assert l1(curve, ref) <= 0.03


# --- eigenvalues ---------------------------------------------------------------------------


def test_eigen_examples():
    assert np.allclose(tridiag_eigenvalues(SymTridiagonal([1, 2, 3], [0, 0])), [1, 2, 3])
    assert np.allclose(tridiag_eigenvalues(SymTridiagonal([0, 0], [1])), [-1, 1])
    assert np.allclose(tridiag_eigenvalues(SymTridiagonal([0, 0, 0], [1, 1])), [-math.sqrt(2), 0, math.sqrt(2)],
                       atol=1e-15)
    assert tridiag_eigenvalues(SymTridiagonal([2.5], [])).tolist() == [2.5]


mats = st.integers(1, 12).flatmap(
    lambda n: st.tuples(
        st.lists(st.floats(-50, 50), min_size=n, max_size=n),
        st.lists(st.floats(-50, 50), min_size=n - 1, max_size=n - 1),
    )
)


@given(mats)
def test_ql_against_lapack(m):
    T = SymTridiagonal(*m)
    got = tridiag_eigenvalues(T)
    ref = np.linalg.eigvalsh(T.to_dense())
    scale = max(T.norm(), 1e-300)
    assert np.all(np.diff(got) >= 0)
    assert np.max(np.abs(got - ref)) <= 1e-12 * scale
    assert abs(got.sum() - T.trace()) <= 1e-10 * max(scale, abs(T.trace())) * T.n


@given(mats)
@example(([0.0, 0.0], [1.0]))  # bisection midpoint lands on a zero pivot
@example(([0.0, 0.0], [3e-184]))  # squared off-diagonal underflows without scaling
def test_bisection_against_lapack(m):
    T = SymTridiagonal(*m)
    got = batch_eigenvalues(T.diag[None], T.offdiag[None])[0]
    assert np.max(np.abs(got - np.linalg.eigvalsh(T.to_dense()))) <= 1e-12 * max(T.norm(), 1e-300)


def test_large_n_path():
    rng = np.random.default_rng(10)
    d, e = ens.sample_batch(EnsembleSpec.hermite(40, 2), rng, 3)
    got = spectra(d, e)
    for k in range(3):
        ref = np.linalg.eigvalsh(SymTridiagonal(d[k], e[k]).to_dense())
        assert np.allclose(got[k], ref, atol=1e-12 * 10)


def test_ql_cap_and_fallback(monkeypatch):
    T = SymTridiagonal([1.0, 2.0, 3.0, 4.0], [1.0, 1.0, 1.0])
    with pytest.raises(ConvergenceError):
        ens._ql_implicit(T.diag, T.offdiag, max_iter=0)
    # a zero cap forces the bisection fallback, which still returns the right spectrum
    assert np.allclose(tridiag_eigenvalues(T, max_iter=0), np.linalg.eigvalsh(T.to_dense()), atol=1e-13)


def test_random_draws_never_hit_the_cap():
    rng = np.random.default_rng(11)
    for beta in (0.5, 2.0, 7.0):
        d, e = ens.sample_batch(EnsembleSpec.hermite(30, beta), rng, 50)
        for k in range(50):
            ens._ql_implicit(d[k], e[k])


# --- histograms and curves ---------------------------------------------------------------


def test_empirical_single_sample():
    c = empirical_density([[0.0]], np.linspace(-1, 1, 5))
    assert c.values[2] * np.diff(edges_from_grid(c.grid))[2] == pytest.approx(1.0)
    assert np.count_nonzero(c.values) == 1


def test_empirical_uniform_is_flat():
    rng = np.random.default_rng(12)
    samples = rng.uniform(0, 1, (2000, 10))
    c = empirical_density(samples, np.linspace(0.05, 0.95, 10))
    # raw scaling integrates to the 10 eigenvalues per sample; binomial error per bin ~ 1%
    assert np.allclose(c.values, 10.0, rtol=0.06)
    assert c.integral() == pytest.approx(10 * 0.9, rel=0.02)


def test_empirical_errors_and_fd_bins():
    with pytest.raises(DomainError):
        empirical_density([])
    with pytest.raises(DomainError):
        empirical_density([[]])
    with pytest.raises(DomainError):
        empirical_density([[0.1, 0.2]], scaling=Scaling.BULK_HERMITE)
    c = empirical_density(np.random.default_rng(0).normal(size=(50, 3)))
    assert np.all(np.diff(c.grid) > 0)
    assert np.all(np.diff(freedman_diaconis_edges([1.0, 2.0, 2.5, 4.0])) > 0)


@given(st.lists(st.integers(1, 300), min_size=1, max_size=5), st.integers(0, 1000))
def test_merge_is_order_independent(sizes, seed):
    spec = EnsembleSpec.hermite(3, 2)
    edges = np.linspace(-3, 3, 13)
    parts = [ens._chunk_hist(spec, Scaling.RAW, edges, seed, i, s) for i, s in enumerate(sizes)]
    fwd = parts[0]
    for p in parts[1:]:
        fwd = fwd.merge(p)
    rev = parts[-1]
    for p in reversed(parts[:-1]):
        rev = p.merge(rev)
    assert np.array_equal(fwd.counts, rev.counts) and fwd.draws == sum(sizes)
    assert fwd.counts.sum() + fwd.below + fwd.above == sum(sizes) * 3


def test_merge_rejects_mismatch():
    a = Histogram(np.linspace(0, 1, 3), [1, 2], 1, 3, Scaling.RAW)
    with pytest.raises(DomainError):
        a.merge(Histogram(np.linspace(0, 2, 3), [1, 2], 1, 3, Scaling.RAW))


def test_seed_and_thread_determinism():
    spec = EnsembleSpec.laguerre(4, 3.0, 0.5)
    edges = np.linspace(0, 40, 41)
    a = monte_carlo_histogram(spec, 10_000, edges, seed=5, threads=1, chunk=1000)
    b = monte_carlo_histogram(spec, 10_000, edges, seed=5, threads=4, chunk=1000)
    c = monte_carlo_histogram(spec, 10_000, edges, seed=6, threads=1, chunk=1000)
    assert np.array_equal(a.counts, b.counts) and not np.array_equal(a.counts, c.counts)


def test_default_threads_env(monkeypatch):
    monkeypatch.setenv("BETAENS_THREADS", "3")
    assert ens.default_threads() == 3
    monkeypatch.setenv("BETAENS_THREADS", "zero")
    with pytest.raises(DomainError):
        ens.default_threads()
    monkeypatch.delenv("BETAENS_THREADS")
    assert ens.default_threads() == 1


def test_hermite_sign_symmetry_and_trace():
    rng = np.random.default_rng(13)
    d, e = ens.sample_batch(EnsembleSpec.hermite(6, 4), rng, 5000)
    eig = spectra(d, e)
    assert abs(eig.mean()) < 4 * eig.std() / math.sqrt(eig.size)
    assert np.allclose(eig.sum(axis=1), d.sum(axis=1), rtol=1e-10, atol=1e-10)


def test_laguerre_positivity():
    rng = np.random.default_rng(14)
    d, e = ens.sample_batch(EnsembleSpec.laguerre(8, 1.0, 0.0), rng, 5000)
    eig = spectra(d, e)
    norms = np.abs(d).max(axis=1) + 2 * np.abs(e).max(axis=1)
    assert np.all(eig.min(axis=1) >= -1e-10 * norms)


def test_mp_law_at_n64():
    spec = EnsembleSpec.laguerre(64, 2, 0)
    grid = np.arange(0.01, 1.1, 0.02)
    curve = monte_carlo_curve(spec, 10_000, grid, Scaling.BULK_LAGUERRE, seed=15, threads=4)
    edges = edges_from_grid(grid)
    ref = cell_means(lambda x: mp_density(x) if 0 < x < 1 else 0.0, edges)
    w = np.diff(edges)
    assert float(np.sum((np.abs(curve.values - ref) * w)[1:])) <= 0.08


def test_wigner_law_reference_is_normalized():
    assert integrate.quad(wigner_density, -1, 1)[0] == pytest.approx(1.0)
