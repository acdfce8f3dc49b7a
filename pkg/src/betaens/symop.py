"""Exact finite-N densities via multivariate differential operators.

For even beta the eigenvalue density of an N x N Hermite or Laguerre
ensemble is a generalized Hermite/Laguerre polynomial in ``beta``
variables, indexed by the rectangular partition ``((N-1)^beta)`` and
evaluated on the diagonal ``x_1 = ... = x_beta = x``.  Those polynomials
are finite operator-exponential series applied to the rectangular Jack
polynomial, which for a rectangle is just the monomial
``x_1^{N-1} ... x_beta^{N-1}``.

Two representations are provided:

``MultiPoly``
    a general sparse polynomial ``{exponent tuple: Fraction}``.  The
    operators ``apply_Ek`` / ``apply_Dk`` act on it literally, including
    the exact division of each pairwise numerator by ``x_i - x_j``.

``SymPoly``
    a symmetric polynomial stored by its coefficients on the monomial
    symmetric basis ``m_lambda``.  ``sym_apply_Ek`` / ``sym_apply_Dk``
    compute the same operators coefficient-by-coefficient, which is what
    makes ``N = 7, beta = 6`` (6 variables, degree 36) cheap.

The two routes are checked against each other in the test-suite.
"""

from __future__ import annotations

import json
import math
import threading
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from .core import EnsembleSpec, Family
from .errors import BudgetError, ConsistencyError, DomainError, SymmetryError
from .specfun import hermite_norm_ratio, laguerre_norm_ratio, log_hermite_partition, log_laguerre_partition

__all__ = [
    "MultiPoly",
    "SymPoly",
    "UniPoly",
    "apply_Ek",
    "apply_Dk",
    "sym_apply_Ek",
    "sym_apply_Dk",
    "rectangular_symmetric_polynomial",
    "rectangular_generalized_polynomial",
    "exact_hermite_density",
    "exact_laguerre_density",
    "exact_density",
    "MAX_BOX_WEIGHT",
]

# beta (N - 1) above this is refused; the largest figure case (N=7, beta=6) needs 36.
MAX_BOX_WEIGHT = 48

Exps = tuple[int, ...]


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables with exact rational coefficients.

    Instances are treated as immutable; every operation returns a new one.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exps, object] | None = None):
        if nvars < 1:
            raise DomainError("a polynomial needs at least one variable")
        self.nvars = int(nvars)
        clean: dict[Exps, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != self.nvars or min(e) < 0:
                raise DomainError(f"bad exponent vector {e} for {self.nvars} variables")
            c = _frac(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff=1) -> MultiPoly:
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    @classmethod
    def constant(cls, nvars: int, c=1) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: c})

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: MultiPoly):
        if other.nvars != self.nvars:
            raise DomainError("polynomials have different numbers of variables")

    def __add__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.nvars, out)

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            out: dict[Exps, Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, 0) + c1 * c2
            return MultiPoly(self.nvars, out)
        c = _frac(other)
        return MultiPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    __rmul__ = __mul__

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_symmetric(self) -> bool:
        """True when invariant under every adjacent transposition of variables."""
        for i in range(self.nvars - 1):
            for e, c in self.terms.items():
                s = list(e)
                s[i], s[i + 1] = s[i + 1], s[i]
                if self.terms.get(tuple(s)) != c:
                    return False
        return True

    def specialize(self) -> UniPoly:
        """Restrict to the diagonal x_1 = ... = x_n = x."""
        coeffs: dict[int, Fraction] = {}
        for e, c in self.terms.items():
            d = sum(e)
            coeffs[d] = coeffs.get(d, 0) + c
        return UniPoly.from_dict(coeffs)

    def __repr__(self):
        if not self.terms:
            return f"MultiPoly({self.nvars}, 0)"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"x{i + 1}^{p}" if p > 1 else f"x{i + 1}" for i, p in enumerate(e) if p)
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return f"MultiPoly({self.nvars}, " + " + ".join(parts) + ")"


def apply_Ek(p: MultiPoly, k: int) -> MultiPoly:
    """E_k p with E_k = sum_i x_i^k d/dx_i."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    out: dict[Exps, Fraction] = {}
    for e, c in p.terms.items():
        for i, ei in enumerate(e):
            if ei == 0:
                continue
            f = list(e)
            f[i] += k - 1
            f = tuple(f)
            out[f] = out.get(f, 0) + ei * c
    return MultiPoly(p.nvars, out)


def _divide_antisymmetric(num: dict[Exps, Fraction], i: int, j: int) -> dict[Exps, Fraction]:
    """Exact quotient of a polynomial antisymmetric in (x_i, x_j) by (x_i - x_j).

    Every term pair ``d (x^e - x^{swap e})`` with ``e_i > e_j`` divides as
    ``x_i^q x_j^q h_{p-q-1}(x_i, x_j)`` times the other variables.  A term
    without its negated partner is a nonzero remainder.
    """
    out: dict[Exps, Fraction] = {}
    for e, d in num.items():
        ei, ej = e[i], e[j]
        if ei == ej:
            raise ConsistencyError(f"pairwise numerator has a diagonal term at {e}")
        s = list(e)
        s[i], s[j] = ej, ei
        if num.get(tuple(s)) != -d:
            raise ConsistencyError(f"pairwise numerator not divisible by x{i + 1}-x{j + 1}")
        if ei < ej:
            continue
        base = list(e)
        for t in range(ei - ej):
            base[i], base[j] = ej + t, ei - 1 - t
            key = tuple(base)
            out[key] = out.get(key, 0) + d
    return out


def apply_Dk(p: MultiPoly, k: int, alpha) -> MultiPoly:
    """D_k^(alpha) p for a symmetric polynomial p.

    ``D_k = sum_i x_i^k d^2/dx_i^2
    + (2/alpha) sum_{i<j} (x_i^k d/dx_i - x_j^k d/dx_j) / (x_i - x_j)``.
    """
    if k < 0:
        raise DomainError("k must be nonnegative")
    alpha = _frac(alpha)
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    if not p.is_symmetric():
        raise SymmetryError("D_k is only defined here on symmetric polynomials")
    n = p.nvars
    out: dict[Exps, Fraction] = {}
    for e, c in p.terms.items():
        for i, ei in enumerate(e):
            if ei < 2:
                continue
            f = list(e)
            f[i] += k - 2
            f = tuple(f)
            out[f] = out.get(f, 0) + ei * (ei - 1) * c
    two_over_alpha = 2 / alpha
    for i, j in combinations(range(n), 2):
        num: dict[Exps, Fraction] = {}
        for e, c in p.terms.items():
            for idx, sign in ((i, 1), (j, -1)):
                if e[idx] == 0:
                    continue
                f = list(e)
                f[idx] += k - 1
                f = tuple(f)
                num[f] = num.get(f, 0) + sign * e[idx] * c
        num = {e: c for e, c in num.items() if c}
        for e, c in _divide_antisymmetric(num, i, j).items():
            out[e] = out.get(e, 0) + two_over_alpha * c
    return MultiPoly(n, out)


# --- symmetric (monomial-basis) representation -------------------------------------


@lru_cache(maxsize=None)
def _partitions_in_box(weight: int, nparts: int, maxpart: int) -> tuple[Exps, ...]:
    """Partitions of ``weight`` into at most ``nparts`` parts each <= maxpart, zero-padded."""
    out = []

    def rec(rem, slots, cap, prefix):
        if slots == 0:
            if rem == 0:
                out.append(tuple(prefix))
            return
        if rem > slots * cap:
            return
        for v in range(min(rem, cap), -1, -1):
            prefix.append(v)
            rec(rem - v, slots - 1, v, prefix)
            prefix.pop()

    if weight >= 0:
        rec(weight, nparts, maxpart, [])
    return tuple(out)


@lru_cache(maxsize=None)
def _orbit_size(lam: Exps) -> int:
    n = math.factorial(len(lam))
    for m in Counter(lam).values():
        n //= math.factorial(m)
    return n


class SymPoly:
    """Symmetric polynomial as ``{partition: coefficient of m_partition}``.

    Partitions are weakly decreasing tuples of length ``nvars`` (zero padded).
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exps, object] | None = None):
        self.nvars = int(nvars)
        clean: dict[Exps, Fraction] = {}
        for lam, c in (terms or {}).items():
            lam = tuple(lam)
            if len(lam) != self.nvars or list(lam) != sorted(lam, reverse=True) or min(lam) < 0:
                raise DomainError(f"{lam} is not a padded partition of length {self.nvars}")
            c = _frac(c)
            if c:
                clean[lam] = c
        self.terms = clean

    @classmethod
    def from_multipoly(cls, p: MultiPoly) -> SymPoly:
        if not p.is_symmetric():
            raise SymmetryError("polynomial is not symmetric")
        return cls(p.nvars, {e: c for e, c in p.terms.items() if list(e) == sorted(e, reverse=True)})

    def to_multipoly(self) -> MultiPoly:
        from itertools import permutations

        out = {}
        for lam, c in self.terms.items():
            for e in set(permutations(lam)):
                out[e] = c
        return MultiPoly(self.nvars, out)

    def coeff(self, e) -> Fraction | int:
        """Coefficient of the monomial x^e (any ordering of the exponents)."""
        return self.terms.get(tuple(sorted(e, reverse=True)), 0)

    def __eq__(self, other):
        if isinstance(other, SymPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __add__(self, other: SymPoly) -> SymPoly:
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out.get(lam, 0) + c
        return SymPoly(self.nvars, {k: v for k, v in out.items() if v})

    def __mul__(self, c) -> SymPoly:
        c = _frac(c)
        return SymPoly(self.nvars, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def degree(self) -> int:
        return max((sum(lam) for lam in self.terms), default=-1)

    def maxpart(self) -> int:
        return max((lam[0] for lam in self.terms), default=0)

    def specialize(self) -> UniPoly:
        coeffs: dict[int, Fraction] = {}
        for lam, c in self.terms.items():
            d = sum(lam)
            coeffs[d] = coeffs.get(d, 0) + _orbit_size(lam) * c
        return UniPoly.from_dict(coeffs)


def _value_groups(mu: Exps) -> dict[int, list[int]]:
    groups: dict[int, list[int]] = {}
    for idx, v in enumerate(mu):
        groups.setdefault(v, []).append(idx)
    return groups


def sym_apply_Ek(p: SymPoly, k: int) -> SymPoly:
    """E_k on the monomial-basis representation."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    n = p.nvars
    degrees = {sum(lam) for lam in p.terms}
    cap = p.maxpart() + max(0, k - 1)
    out: dict[Exps, Fraction] = {}
    for d in degrees:
        for mu in _partitions_in_box(d + k - 1, n, cap):
            total = Fraction(0)
            for v, idxs in _value_groups(mu).items():
                fi = v - k + 1
                if fi < 1:
                    continue
                f = list(mu)
                f[idxs[0]] = fi
                c = p.coeff(f)
                if c:
                    total += len(idxs) * fi * c
            if total:
                out[mu] = total
    return SymPoly(n, out)


def sym_apply_Dk(p: SymPoly, k: int, alpha) -> SymPoly:
    """D_k^(alpha) on the monomial-basis representation.

    The coefficient of x^mu in the pairwise part is read off the exact
    quotient: for values ``(mu_i, mu_j)`` with ``m = mu_i + mu_j`` it sums the
    antisymmetric numerator coefficients at ``(m + 1 - q, q)`` for
    ``q = 0 .. min(mu_i, mu_j)``.  Pairs with equal value multisets give equal
    contributions and are counted once with multiplicity.
    """
    if k < 0:
        raise DomainError("k must be nonnegative")
    alpha = _frac(alpha)
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    n = p.nvars
    two_over_alpha = 2 / alpha
    coeff = p.coeff
    degrees = {sum(lam) for lam in p.terms}
    cap = p.maxpart() + max(0, k - 1)
    out: dict[Exps, Fraction] = {}

    def numerator(e: list[int], i: int, j: int):
        # coefficient of x^e in (x_i^k d_i - x_j^k d_j) p
        total = 0
        fi = e[i] - k + 1
        if fi >= 1:
            f = list(e)
            f[i] = fi
            total += fi * coeff(f)
        fj = e[j] - k + 1
        if fj >= 1:
            f = list(e)
            f[j] = fj
            total -= fj * coeff(f)
        return total

    for d in degrees:
        for mu in _partitions_in_box(d + k - 2, n, cap):
            groups = _value_groups(mu)
            total = Fraction(0)
            for v, idxs in groups.items():
                ei = v + 2 - k
                if ei < 2:
                    continue
                f = list(mu)
                f[idxs[0]] = ei
                c = coeff(f)
                if c:
                    total += len(idxs) * ei * (ei - 1) * c
            pair_total = Fraction(0)
            values = sorted(groups)
            for a_pos, va in enumerate(values):
                for vb in values[a_pos:]:
                    if va == vb:
                        cnt = len(groups[va])
                        mult = cnt * (cnt - 1) // 2
                        if not mult:
                            continue
                        i, j = groups[va][0], groups[va][1]
                    else:
                        mult = len(groups[va]) * len(groups[vb])
                        i, j = groups[va][0], groups[vb][0]
                    m = mu[i] + mu[j]
                    e = list(mu)
                    acc = 0
                    for q in range(min(mu[i], mu[j]) + 1):
                        e[i], e[j] = m + 1 - q, q
                        acc += numerator(e, i, j)
                    if acc:
                        pair_total += mult * acc
            total += two_over_alpha * pair_total
            if total:
                out[mu] = total
    return SymPoly(n, out)


# --- univariate polynomials -----------------------------------------------------------

_SPLIT = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    z = s - a
    return s, (a - (s - z)) + (b - z)


def _split(a):
    c = _SPLIT * a
    h = c - (c - a)
    return h, a - h


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


class UniPoly:
    """Univariate polynomial with exact rational coefficients (index = degree)."""

    __slots__ = ("coeffs", "_hi", "_lo")

    def __init__(self, coeffs: Iterable[object]):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        hi = [float(c) for c in cs]
        self._hi = np.array(hi, dtype=float)
        self._lo = np.array([float(c - Fraction(h)) for c, h in zip(cs, hi)], dtype=float)

    @classmethod
    def from_dict(cls, d: Mapping[int, object]) -> UniPoly:
        if not d:
            return cls([])
        cs = [Fraction(0)] * (max(d) + 1)
        for k, v in d.items():
            cs[k] += _frac(v)
        return cls(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def evaluate_exact(self, x) -> Fraction:
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __call__(self, x):
        """Compensated Horner evaluation with double-double coefficients."""
        x = np.asarray(x, dtype=float)
        if not self.coeffs:
            return np.zeros_like(x)[()]
        s = np.full_like(x, self._hi[-1])
        comp = np.full_like(x, self._lo[-1])
        for hi, lo in zip(self._hi[-2::-1], self._lo[-2::-1]):
            p, pe = _two_prod(s, x)
            s, se = _two_sum(p, hi)
            comp = comp * x + (pe + se + lo)
        return (s + comp)[()]

    def to_json(self) -> str:
        return json.dumps({"coeffs": [str(c) for c in self.coeffs]})

    @classmethod
    def from_json(cls, text: str) -> UniPoly:
        return cls(Fraction(c) for c in json.loads(text)["coeffs"])


# --- rectangular generalized polynomials and exact densities --------------------------

_cache: dict[tuple, tuple[SymPoly, UniPoly]] = {}
_cache_lock = threading.Lock()


def _key(spec: EnsembleSpec):
    return (spec.family, spec.N, int(spec.beta), spec.exact_a if spec.family is Family.LAGUERRE else 0)


def _series(spec: EnsembleSpec) -> tuple[SymPoly, UniPoly]:
    beta = spec.require_even_beta()
    box = beta * (spec.N - 1)
    if box > MAX_BOX_WEIGHT:
        raise BudgetError(f"beta*(N-1) = {box} exceeds the symbolic budget {MAX_BOX_WEIGHT}")
    key = _key(spec)
    with _cache_lock:
        hit = _cache.get(key)
    if hit is not None:
        return hit
    alpha = Fraction(beta, 2)
    term = SymPoly(beta, {(spec.N - 1,) * beta: 1})
    total = term
    if spec.family is Family.HERMITE:
        for n in range(1, box // 2 + 1):
            term = sym_apply_Dk(term, 0, alpha) * Fraction(-1, 4 * n)
            total = total + term
    else:
        shift = spec.exact_a + Fraction(2, beta)
        for n in range(1, box + 1):
            term = (sym_apply_Dk(term, 1, alpha) + sym_apply_Ek(term, 0) * shift) * Fraction(-1, n)
            total = total + term
    result = (total, total.specialize())
    with _cache_lock:
        _cache.setdefault(key, result)
    return result


def rectangular_symmetric_polynomial(spec: EnsembleSpec) -> SymPoly:
    """Generalized Hermite/Laguerre polynomial for the partition ((N-1)^beta), in beta variables."""
    return _series(spec)[0]


def rectangular_generalized_polynomial(spec: EnsembleSpec) -> UniPoly:
    """The same polynomial restricted to x_1 = ... = x_beta = x (memoized per ensemble)."""
    return _series(spec)[1]


def exact_hermite_density(spec: EnsembleSpec, x):
    """rho_{N,beta}(x) for the Hermite ensemble, exact up to floating-point evaluation."""
    if spec.family is not Family.HERMITE:
        raise DomainError("exact_hermite_density needs a Hermite ensemble")
    beta = spec.require_even_beta()
    poly = rectangular_generalized_polynomial(spec)
    x = np.asarray(x, dtype=float)
    log_pref = math.log(spec.N) + log_hermite_partition(spec.N - 1, beta) - log_hermite_partition(spec.N, beta)
    return (np.exp(log_pref - beta * x * x / 2) * poly(x))[()]


def exact_laguerre_density(spec: EnsembleSpec, x):
    """rho_{N,beta}(x) for the Laguerre ensemble at x > 0."""
    if spec.family is not Family.LAGUERRE:
        raise DomainError("exact_laguerre_density needs a Laguerre ensemble")
    beta = spec.require_even_beta()
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError("the Laguerre density is evaluated at x > 0 only")
    poly = rectangular_generalized_polynomial(spec)
    log_pref = (
        math.log(spec.N)
        + log_laguerre_partition(spec.N - 1, beta, spec.a)
        - log_laguerre_partition(spec.N, beta, spec.a)
    )
    return (np.exp(log_pref + spec.a * beta / 2 * np.log(x) - beta * x / 2) * poly(x))[()]


def exact_density(spec: EnsembleSpec, x):
    if spec.family is Family.HERMITE:
        return exact_hermite_density(spec, x)
    return exact_laguerre_density(spec, x)


# the closed-form ratios are re-exported for callers that want the bare prefactor
hermite_prefactor = hermite_norm_ratio
laguerre_prefactor = laguerre_norm_ratio
