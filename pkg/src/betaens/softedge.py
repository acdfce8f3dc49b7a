"""Soft-edge density through a beta-deformed multiple Airy integral.

The function

    K_{n,beta}(x) = -n!/(2 pi i)^n  int_{ordered}  prod_j exp(v_j^3/3 - x v_j)
                    prod_{k<l} (v_k - v_l)^{4/beta}  dv_1 ... dv_n

is an n-fold contour integral over a path running from infinity at
angle -pi/3 to infinity at angle +pi/3, with the variables ordered along
the path (v_1 last).  ``K_{1,beta} = -Ai`` and the edge density of both
the Hermite and Laguerre ensembles is ``sigma = C_beta K_{beta,beta}``.

Contours
--------
Every path used here has strictly increasing (or, for the two-ray
representation, strictly decreasing) imaginary part, so the difference of
a later and an earlier point stays in one open half plane and the
principal branch of ``(v_k - v_l)^{4/beta}`` is continuous.

* x >= 0: two rays leaving ``sqrt(x)`` at angles +-ray_angle.
* x < 0: the saddle points are ``+-i sqrt|x|``; the path comes in along the
  steepest-descent direction to ``-i sqrt|x|``, follows the imaginary axis
  (where the one-variable integrand has modulus one) and leaves along the
  steepest-descent direction from ``+i sqrt|x|``.

All panels are parametrized from a centre outward, and the panel list is
mapped onto itself by complex conjugation with identical nodes.  For
``n = beta`` the exact integral is real, so the imaginary part of the
Gauss rule is pure rounding and a large residue means a branch problem.

Quadrature
----------
``gauss``: the ordered configuration space is a union over compositions
(how many points sit on each panel) of products of simplices; each
simplex is mapped to the cube with the conical map s_1 = L w_1,
s_j = s_{j-1} w_j and integrated with tensor Gauss-Legendre.  For
non-integer 4/beta the map w = 1 - (1-u)^q smooths the coalescence
singularity.

``qmc``: scrambled Sobol points in [0, 1]^n, sorted, mapped uniformly
onto the whole path; independent scramblings give the error bar.
"""

from __future__ import annotations

import json
import math
import struct
from dataclasses import asdict, dataclass, fields
from functools import lru_cache
from itertools import product
from typing import Callable

import numpy as np
from scipy.stats import qmc

from .core import EnsembleSpec, Family, to_raw
from .errors import BudgetError, ContourError, DomainError
from .specfun import airy_ai, gamma_n_beta, soft_edge_prefactor
from .bulk import gamma_ratio_product, n_correction_terms

__all__ = [
    "KQuadConfig",
    "KResult",
    "Panel",
    "ordered_contour",
    "two_ray_contour",
    "k_integral",
    "k_integral_detailed",
    "k_det_beta2",
    "airy_derivatives",
    "soft_edge_density",
    "k_asym_right",
    "k_asym_left",
    "edge_phase",
    "edge_coordinate",
    "edge_to_physical",
    "edge_density",
    "MAX_N",
]

MAX_N = 6

# default Gauss orders (nodes per simplex dimension) and QMC sample counts by n;
# chosen from the convergence study in tests/test_softedge.py
_GAUSS_ORDER = {1: 96, 2: 64, 3: 28, 4: 16, 5: 10, 6: 8}
_QMC_POINTS = 2**21
_QMC_REPS = 8


@dataclass
class KQuadConfig:
    """Contour and quadrature parameters for K_{n,beta}(x).

    Attributes
    ----------
    ray_angle : float
        Direction of the rays for x >= 0, strictly between pi/6 and pi/2.
    truncation : float or None
        Ray length; ``None`` picks it so the neglected tail is below
        ``exp(-tail_log)`` of the peak.
    method : {"auto", "gauss", "qmc"}
        ``auto`` uses Gauss for n <= 4 and QMC above.
    points : int or None
        Gauss order per dimension, or total QMC points; ``None`` = default.
    shift : float or None
        Real point the rays leave from when x >= 0; default sqrt(x).
    seed : int
        QMC scrambling seed (combined with x).
    tol_imag : float
        Tolerated |Im K| relative to |Re K|.
    representation : {"auto", "ordered", "two-ray"}
        Single path from -pi/3 to +pi/3 infinity, or the union of the two
        paths around +-i h joined through left infinity.  ``auto`` takes the
        two-ray path (through the saddle points) for QMC at x <= -2, where the
        single path carries a long oscillating segment, and the single path
        otherwise.
    x_left_switch, x_right_switch : float
        Outside this window ``soft_edge_density`` uses the asymptotic forms.
    tail_log : float
        Log-magnitude drop that defines the truncation.
    """

    ray_angle: float = math.pi / 3
    truncation: float | None = None
    method: str = "auto"
    points: int | None = None
    shift: float | None = None
    seed: int = 0
    tol_imag: float = 1e-6
    representation: str = "auto"
    x_left_switch: float = -8.0
    x_right_switch: float = 5.0
    tail_log: float = 36.0

    def __post_init__(self):
        if not (math.pi / 6 < self.ray_angle < math.pi / 2):
            raise DomainError("ray_angle must lie strictly between pi/6 and pi/2")
        if self.truncation is not None and not self.truncation > 0:
            raise DomainError("truncation must be positive")
        if self.method not in ("auto", "gauss", "qmc"):
            raise DomainError(f"unknown quadrature method {self.method!r}")
        if self.representation not in ("auto", "ordered", "two-ray"):
            raise DomainError(f"unknown contour representation {self.representation!r}")
        if self.points is not None and self.points < 1:
            raise DomainError("points must be positive")
        if not self.tol_imag > 0:
            raise DomainError("tol_imag must be positive")
        if not self.x_left_switch < self.x_right_switch:
            raise DomainError("x_left_switch must be below x_right_switch")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> KQuadConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise DomainError(f"unknown KQuadConfig keys: {sorted(unknown)}")
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> KQuadConfig:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Panel:
    """Straight piece ``origin + s * direction``, 0 <= s <= length.

    ``forward`` tells whether s increases along the path.
    """

    origin: complex
    direction: complex
    length: float
    forward: bool

    def points(self, s):
        return self.origin + s * self.direction

    @property
    def dv(self) -> complex:
        return self.direction if self.forward else -self.direction


@dataclass
class KResult:
    value: float
    error: float
    imag: float
    evaluations: int
    method: str
    panels: int


def _log_f(v, x):
    return v**3 / 3 - x * v


def _ray_length(origin: complex, direction: complex, x: float, n: int, p: float, tail: float) -> float:
    """Arclength after which the ray integrand is below exp(-tail) of its peak."""
    s = np.linspace(0.0, 40.0, 8001)
    v = origin + s * direction
    lg = np.real(_log_f(v, x)) + (n - 1) * p * np.log1p(np.abs(v - origin) + abs(origin))
    peak = lg.max()
    after = np.nonzero((lg < peak - tail) & (s > s[np.argmax(lg)]))[0]
    if after.size == 0:
        raise ContourError("integrand does not decay along the ray")
    return float(s[after[0]])


def ordered_contour(n: int, beta: int, x: float, cfg: KQuadConfig) -> list[Panel]:
    """Panels of the single path from infinity at -angle to infinity at +angle."""
    p = 4.0 / beta
    if x >= 0:
        c = complex(math.sqrt(x) if cfg.shift is None else cfg.shift)
        up = complex(math.cos(cfg.ray_angle), math.sin(cfg.ray_angle))
        down = up.conjugate()
        T = cfg.truncation or _ray_length(c, up, x, n, p, cfg.tail_log)
        return [Panel(c, down, T, False), Panel(c, up, T, True)]
    b = math.sqrt(-x)
    up = complex(math.cos(math.pi / 4), math.sin(math.pi / 4))
    T = cfg.truncation or _ray_length(1j * b, up, x, n, p, cfg.tail_log)
    return [
        Panel(-1j * b, up.conjugate(), T, False),
        Panel(0j, -1j, b, False),
        Panel(0j, 1j, b, True),
        Panel(1j * b, up, T, True),
    ]


def two_ray_contour(n: int, beta: int, x: float, cfg: KQuadConfig) -> list[Panel]:
    """Panels of the path through +i h then -i h, joined through left infinity.

    Imaginary part decreases strictly along the path: the leftward rays
    leave +-i h at angle pi +- delta with T sin(delta) < h so they never
    meet.  For x < 0, h = sqrt|x| is the saddle point and delta is as close
    to the steepest-descent angle pi/4 as that constraint allows.
    """
    p = 4.0 / beta
    # for x >= 0 a small h keeps the leftward rays free of growth before decay
    h = math.sqrt(-x) if x < 0 else 0.5
    out = complex(math.cos(math.pi / 4), math.sin(math.pi / 4))
    T_out = cfg.truncation or _ray_length(1j * h, out, x, n, p, cfg.tail_log)
    delta = math.pi / 4 if x < 0 else 0.1
    while True:
        left = complex(math.cos(math.pi + delta), math.sin(math.pi + delta))
        try:
            T_left = cfg.truncation or _ray_length(1j * h, left, x, n, p, cfg.tail_log)
        except ContourError:
            T_left = math.inf
        if T_left * math.sin(delta) < 0.9 * h or delta < 1e-3:
            break
        delta *= 0.8
    return [
        Panel(1j * h, out, T_out, False),
        Panel(1j * h, left, T_left, True),
        Panel(-1j * h, left.conjugate(), T_left, False),
        Panel(-1j * h, out.conjugate(), T_out, True),
    ]


@lru_cache(maxsize=None)
def _gauss01(order: int):
    t, w = np.polynomial.legendre.leggauss(order)
    return (t + 1) / 2, w / 2


def _compositions(n: int, parts: int):
    for combo in product(range(n + 1), repeat=parts):
        if sum(combo) == n:
            yield combo


def _block(panel: Panel, c: int, order: int, x: float, p: float, q: int):
    """Nodes and log-weights of c ordered points on one panel.

    Returns ``(V, A)``: V has shape (M, c) with V[:, 0] the farthest point
    from the panel origin; A is the log of weight * jacobian * one-variable
    factors * within-panel pair factors.
    """
    u, wu = _gauss01(order)
    grids = np.meshgrid(*([u] * c), indexing="ij")
    wgrids = np.meshgrid(*([wu] * c), indexing="ij")
    U = np.stack([g.ravel() for g in grids], axis=1)
    logw = np.sum(np.log(np.stack([g.ravel() for g in wgrids], axis=1)), axis=1)
    if q > 1:
        W = 1 - (1 - U) ** q
        logw = logw + np.sum(math.log(q) + (q - 1) * np.log1p(-U), axis=1)
    else:
        W = U
    S = panel.length * np.cumprod(W, axis=1)
    # jacobian L^c prod_i w_i^{c-i}
    logw = logw + c * math.log(panel.length) + np.sum(np.arange(c - 1, -1, -1) * np.log(W), axis=1)
    V = panel.points(S)
    A = logw + np.sum(_log_f(V, x), axis=1) + c * np.log(panel.dv)
    for a in range(c):
        for b in range(a + 1, c):
            d = V[:, a] - V[:, b] if panel.forward else V[:, b] - V[:, a]
            A = A + p * np.log(d)
    return V, A


def _gauss_integral(panels: list[Panel], n: int, p: float, x: float, order: int, q: int) -> tuple[complex, int]:
    total = 0j
    evals = 0
    blocks_cache: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}
    for comp in _compositions(n, len(panels)):
        blocks = []
        for idx, c in enumerate(comp):
            if c == 0:
                continue
            key = (idx, c)
            if key not in blocks_cache:
                blocks_cache[key] = _block(panels[idx], c, order, x, p, q)
            blocks.append(blocks_cache[key])
        k = len(blocks)
        shape = [b[1].shape[0] for b in blocks]
        L = np.zeros(shape, dtype=complex)
        for j, (V, A) in enumerate(blocks):
            L += A.reshape([-1 if t == j else 1 for t in range(k)])
        # blocks are in path order, so block j2 > j1 holds the later points
        for j1 in range(k):
            for j2 in range(j1 + 1, k):
                V1, V2 = blocks[j1][0], blocks[j2][0]
                cross = np.zeros((shape[j1], shape[j2]), dtype=complex)
                for a in range(V2.shape[1]):
                    for b in range(V1.shape[1]):
                        cross += p * np.log(V2[None, :, a] - V1[:, None, b])
                sh = [1] * k
                sh[j1], sh[j2] = shape[j1], shape[j2]
                L += cross.reshape(sh)
        m = L.real.max()
        total += np.exp(m) * np.sum(np.exp(L - m))
        evals += L.size
    return total, evals


def _sampling_density(panels: list[Panel], x: float, gamma: float, cells: int = 4096):
    """Piecewise-constant density on the concatenated path parameter.

    A mixture of |exp(f)|^gamma (normalized) and the uniform density, so the
    sorted-point map concentrates nodes where the one-variable factor lives.
    """
    lengths = np.array([pn.length for pn in panels])
    starts = np.concatenate([[0.0], np.cumsum(lengths)[:-1]])
    total = float(lengths.sum())
    edges = np.linspace(0.0, total, cells + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    V = _path_points(panels, starts, lengths, mid)[0]
    lg = gamma * np.real(_log_f(V, x))
    mag = np.exp(lg - lg.max())
    dens = 0.8 * mag / (mag.sum() * (total / cells)) + 0.2 / total
    cdf = np.concatenate([[0.0], np.cumsum(dens) * (total / cells)])
    cdf /= cdf[-1]
    dens = dens / (cdf[-1] if cdf[-1] else 1.0)
    return edges, cdf, dens, starts, lengths


def _path_points(panels, starts, lengths, tau):
    pid = np.clip(np.searchsorted(starts, tau, side="right") - 1, 0, len(panels) - 1)
    local = tau - starts[pid]
    origin = np.array([pn.origin for pn in panels])[pid]
    direc = np.array([pn.direction for pn in panels])[pid]
    fwd = np.array([pn.forward for pn in panels])[pid]
    s = np.where(fwd, local, lengths[pid] - local)
    return origin + s * direc, np.where(fwd, direc, -direc)


def _qmc_integral(panels: list[Panel], n: int, p: float, x: float, npoints: int, seed_seq,
                  gamma: float = 0.5) -> tuple[complex, float, int]:
    edges, cdf, dens, starts, lengths = _sampling_density(panels, x, gamma)
    cells = dens.size
    reps = _QMC_REPS
    m = max(4, int(round(math.log2(max(16, npoints // reps)))))
    chunk = min(2**m, 2**15)
    means = []
    for child in seed_seq.spawn(reps):
        eng = qmc.Sobol(d=n, scramble=True, seed=np.random.default_rng(child))
        acc = []
        for _ in range(2**m // chunk):
            U = np.sort(eng.random(chunk), axis=1)
            tau = np.interp(U, cdf, edges)  # monotone, so sorting commutes; index 0 is earliest
            cell = np.clip(np.searchsorted(edges, tau, side="right") - 1, 0, cells - 1)
            V, dv = _path_points(panels, starts, lengths, tau)
            logv = np.sum(_log_f(V, x) + np.log(dv) - np.log(dens[cell]), axis=1)
            for a in range(n):
                for b in range(a + 1, n):
                    logv = logv + p * np.log(V[:, b] - V[:, a])
            acc.append(np.exp(logv))
        means.append(np.concatenate(acc).mean())
    means = np.array(means)
    scale = 1.0 / math.factorial(n)
    est = means.mean() * scale
    err = float(means.std(ddof=1) / math.sqrt(reps) * scale)
    return est, err, reps * 2**m


def _seed_for(seed: int, n: int, beta: int, x: float):
    bits = struct.unpack("<q", struct.pack("<d", float(x)))[0] & (2**63 - 1)
    return np.random.SeedSequence([seed, n, beta, bits])


def _check_args(n, beta, x):
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    if n > MAX_N:
        raise BudgetError(f"n = {n} exceeds the quadrature budget (n <= {MAX_N})")
    if float(beta).is_integer() and int(beta) >= 2 and int(beta) % 2 == 0:
        beta = int(beta)
    else:
        raise DomainError(f"beta must be a positive even integer, got {beta!r}")
    if not math.isfinite(x):
        raise DomainError("x must be finite")
    return int(n), beta, float(x)


def _is_real_case(n: int, beta: int) -> bool:
    # conjugation maps K to exp(-i pi (4/beta) n(n-1)/2) K, so K is real iff beta | n(n-1)
    return (n * (n - 1)) % beta == 0


def k_integral_detailed(n: int, beta: int, x: float, cfg: KQuadConfig | None = None, estimate_error: bool = True) -> KResult:
    """K_{n,beta}(x) by contour quadrature, with an error estimate.

    The Gauss error estimate is the difference to a rule with about three
    quarters of the nodes per dimension; the QMC estimate is the standard
    error over independent scramblings.
    """
    cfg = cfg or KQuadConfig()
    n, beta, x = _check_args(n, beta, x)
    if not (cfg.x_left_switch <= x <= cfg.x_right_switch):
        raise DomainError(
            f"x = {x} outside the quadrature window [{cfg.x_left_switch}, {cfg.x_right_switch}]; use the asymptotic forms"
        )
    p = 4.0 / beta
    method = cfg.method
    if method == "auto":
        method = "gauss" if n <= 4 else "qmc"
    rep = cfg.representation
    if rep == "auto":
        rep = "two-ray" if (method == "qmc" and x <= -2) else "ordered"
    if rep == "ordered":
        panels = ordered_contour(n, beta, x, cfg)
        pref = -math.factorial(n) / (2j * math.pi) ** n
    else:
        panels = two_ray_contour(n, beta, x, cfg)
        # along this path later - earlier lies in the lower half plane; the factor turns each
        # pair into (earlier - later)^p, the upper-half-plane branch of the ordered path
        # (it equals 1 whenever K is real)
        pref = (-1) ** (n + 1) * math.factorial(n) / (2j * math.pi) ** n
        pref *= complex(math.cos(math.pi * p * n * (n - 1) / 2), math.sin(math.pi * p * n * (n - 1) / 2))
    if method == "gauss":
        order = cfg.points or _GAUSS_ORDER[n]
        q = 1 if float(p).is_integer() else beta // 2
        raw, evals = _gauss_integral(panels, n, p, x, order, q)
        value = pref * raw
        err = 0.0
        if estimate_error:
            coarse, e2 = _gauss_integral(panels, n, p, x, max(2, (3 * order) // 4), q)
            diff = pref * coarse - value
            err = abs(diff.real) if _is_real_case(n, beta) else abs(diff)
            evals += e2
    else:
        raw, err_raw, evals = _qmc_integral(panels, n, p, x, cfg.points or _QMC_POINTS, _seed_for(cfg.seed, n, beta, x))
        value = pref * raw
        err = abs(pref) * err_raw
    limit = cfg.tol_imag * abs(value.real)
    if method == "qmc":
        limit = max(limit, 6 * err)
    if _is_real_case(n, beta) and abs(value.imag) > limit:
        raise ContourError(
            f"imaginary residue {value.imag:.3g} exceeds tolerance {limit:.3g} (n={n}, beta={beta}, x={x})"
        )
    return KResult(float(value.real), float(err), float(value.imag), int(evals), method, len(panels))


def k_integral(n: int, beta: int, x: float, cfg: KQuadConfig | None = None):
    """K_{n,beta}(x) by contour quadrature (see ``k_integral_detailed``).

    A float when K is real (beta divides n(n-1), in particular n = beta),
    otherwise a complex number.
    """
    r = k_integral_detailed(n, beta, x, cfg, estimate_error=False)
    if _is_real_case(int(n), int(beta)):
        return r.value
    return complex(r.value, r.imag)


def airy_derivatives(x: float, m: int) -> np.ndarray:
    """Ai^{(0)}(x) .. Ai^{(m)}(x) from Ai'' = x Ai, i.e. Ai^{(k+2)} = x Ai^{(k)} + k Ai^{(k-1)}."""
    ai, aip = airy_ai(float(x))
    d = [ai, aip]
    for k in range(0, m - 1):
        d.append(x * d[k] + (k * d[k - 1] if k >= 1 else 0.0))
    return np.array(d[: m + 1])


def k_det_beta2(n: int, x: float) -> float:
    """K_{n,2}(x) = -n! det[Ai^{(i+j-2)}(x)]_{i,j=1..n}."""
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    n = int(n)
    d = airy_derivatives(x, 2 * n - 2)
    M = np.array([[d[i + j] for j in range(n)] for i in range(n)])
    return float(-math.factorial(n) * np.linalg.det(M))


def _sigma_beta2(x):
    ai, aip = airy_ai(x)
    return aip * aip - x * ai * ai


def k_asym_right(beta: int, x: float) -> float:
    """Large positive x form Gamma_{beta,beta} (2pi)^{-beta} exp(-2beta x^{3/2}/3) / x^{3beta/4 - 1/2}."""
    _, beta, x = _check_args(1, beta, x)
    if x < 1:
        raise DomainError("the right asymptote needs x >= 1")
    log_k = (
        math.log(gamma_n_beta(beta, beta))
        - beta * math.log(2 * math.pi)
        - 2 * beta * x**1.5 / 3
        - (3 * beta / 4 - 0.5) * math.log(x)
    )
    return math.exp(log_k)


def edge_phase(beta: int, x: float, k: int = 1) -> float:
    """Oscillation phase 4k|x|^{3/2}/3 - (pi/2) k (1 - 2/beta) of the left asymptote."""
    return 4 * k * abs(x) ** 1.5 / 3 - math.pi / 2 * k * (1 - 2 / beta)


def k_asym_left(beta: int, x: float) -> float:
    """Large negative x form of the edge density sigma(x) (not K).

    sigma ~ C_beta Gamma_{beta/2,beta}^2 binom(beta, beta/2) pi^{-beta} sqrt|x| k(x), with
    k(x) = 1 + 2 sum_k (-1)^k prod_j Gamma(1+2j/beta)/Gamma(1+2(j-k)/beta)
    cos(phase_k) / (2^{6k^2/beta} |x|^{3k^2/beta}).  The leading term is sqrt|x|/pi.
    """
    _, beta, x = _check_args(1, beta, x)
    if x > -2:
        raise DomainError("the left asymptote needs x <= -2")
    ax = -x
    kx = 1.0
    for k in range(1, n_correction_terms(beta) + 1):
        kx += (
            2 * (-1) ** k * gamma_ratio_product(k, beta)
            / (2 ** (6 * k * k / beta) * ax ** (3 * k * k / beta))
            * math.cos(edge_phase(beta, x, k))
        )
    lead = (
        soft_edge_prefactor(beta)
        * gamma_n_beta(beta // 2, beta) ** 2
        * math.comb(beta, beta // 2)
        / math.pi**beta
    )
    return lead * math.sqrt(ax) * kx


def soft_edge_density(beta: int, x, cfg: KQuadConfig | None = None):
    """sigma(x) = C_beta K_{beta,beta}(x), the soft-edge limit of both ensembles.

    beta = 2 uses the Airy-kernel closed form everywhere.  Otherwise the
    quadrature runs inside ``[cfg.x_left_switch, cfg.x_right_switch]`` and
    the asymptotic forms are used outside.
    """
    cfg = cfg or KQuadConfig()
    _check_args(1, beta, 0.0)
    beta = int(beta)
    xs = np.asarray(x, dtype=float)
    if beta == 2:
        out = np.asarray(_sigma_beta2(xs), dtype=float)
        return out[()] if out.ndim == 0 else out
    if beta > MAX_N:
        raise BudgetError(f"beta = {beta} needs a {beta}-fold integral; the budget is n <= {MAX_N}")
    c = soft_edge_prefactor(beta)
    flat = xs.ravel()
    vals = np.empty_like(flat)
    for i, xi in enumerate(flat):
        if xi < cfg.x_left_switch:
            vals[i] = k_asym_left(beta, xi)
        elif xi > cfg.x_right_switch:
            vals[i] = c * k_asym_right(beta, xi)
        else:
            vals[i] = c * k_integral(beta, beta, xi, cfg)
    vals = vals.reshape(xs.shape)
    return vals[()] if vals.ndim == 0 else vals


def edge_to_physical(spec: EnsembleSpec, x):
    """Physical eigenvalue X of the edge variable x (and dX/dx)."""
    return to_raw(spec, "edge-hermite" if spec.family is Family.HERMITE else "edge-laguerre", x)


def edge_coordinate(spec: EnsembleSpec, X):
    """Edge variable x of the physical eigenvalue X, with the density Jacobian.

    Hermite X = sqrt(2N) + x / sqrt(2 N^{1/3}); Laguerre X = 4N + 2 (2N)^{1/3} x.
    The Jacobian ``jac = dX/dx`` converts rho(X) into the edge scale:
    ``rho(X) * jac -> sigma(x)``.
    """
    X = np.asarray(X, dtype=float)
    N = spec.N
    if spec.family is Family.HERMITE:
        jac = 1.0 / math.sqrt(2.0 * N ** (1.0 / 3.0))
        x = (X - math.sqrt(2.0 * N)) / jac
    else:
        jac = 2.0 * (2.0 * N) ** (1.0 / 3.0)
        x = (X - 4.0 * N) / jac
    return x[()], jac


def edge_density(spec: EnsembleSpec, X, cfg: KQuadConfig | None = None, sigma: Callable | None = None):
    """Large-N prediction of rho_{N,beta}(X) near the soft edge: sigma(x(X)) / jac."""
    sigma = sigma or soft_edge_density
    x, jac = edge_coordinate(spec, X)
    beta = spec.require_even_beta()
    return np.asarray(sigma(beta, x, cfg)) / jac
