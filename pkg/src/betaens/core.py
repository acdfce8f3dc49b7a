"""Shared domain types: ensemble parameters and density curves."""

from __future__ import annotations

import enum
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .errors import DomainError


class Family(str, enum.Enum):
    HERMITE = "hermite"
    LAGUERRE = "laguerre"


class Scaling(str, enum.Enum):
    """Coordinate convention of a density curve.

    ``RAW`` is the plain eigenvalue density (integrates to N).  The bulk
    scalings are ``sqrt(2/N) rho(sqrt(2N) x)`` and ``4 rho(4N x)`` (both
    integrate to 1); the edge scalings are the soft-edge variables whose
    large-N limit is the edge density sigma.
    """

    RAW = "raw"
    BULK_HERMITE = "bulk-hermite"
    BULK_LAGUERRE = "bulk-laguerre"
    EDGE_HERMITE = "edge-hermite"
    EDGE_LAGUERRE = "edge-laguerre"


@dataclass(frozen=True)
class EnsembleSpec:
    """Hermite or Laguerre beta-ensemble of N x N matrices.

    ``a`` is the Laguerre exponent parameter and must be 0 for Hermite.
    """

    family: Family
    N: int
    beta: float
    a: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if isinstance(self.N, bool) or int(self.N) != self.N or self.N < 1:
            raise DomainError(f"N must be a positive integer, got {self.N!r}")
        object.__setattr__(self, "N", int(self.N))
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise DomainError(f"beta must be positive, got {self.beta!r}")
        if not (math.isfinite(self.a) and self.a >= 0):
            raise DomainError(f"a must be nonnegative, got {self.a!r}")
        if self.family is Family.HERMITE and self.a != 0:
            raise DomainError("parameter a is only meaningful for the Laguerre family")

    @classmethod
    def hermite(cls, N: int, beta: float) -> EnsembleSpec:
        return cls(Family.HERMITE, N, beta)

    @classmethod
    def laguerre(cls, N: int, beta: float, a: float = 0.0) -> EnsembleSpec:
        return cls(Family.LAGUERRE, N, beta, a)

    @property
    def alpha(self) -> float:
        return 2.0 / self.beta

    @property
    def dof(self) -> float:
        """Laguerre degrees-of-freedom parameter P = a + N - 1 + 2/beta."""
        return self.a + self.N - 1 + 2.0 / self.beta

    @property
    def is_even_beta(self) -> bool:
        return float(self.beta).is_integer() and int(self.beta) % 2 == 0

    def require_even_beta(self) -> int:
        """Return beta as an int, raising DomainError unless it is a positive even integer."""
        if not self.is_even_beta:
            raise DomainError(f"beta must be a positive even integer here, got {self.beta!r}")
        return int(self.beta)

    @property
    def exact_a(self) -> Fraction:
        return Fraction(self.a)

    def to_dict(self) -> dict[str, Any]:
        return {"family": self.family.value, "N": self.N, "beta": self.beta, "a": self.a}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> EnsembleSpec:
        return cls(Family(d["family"]), int(d["N"]), float(d["beta"]), float(d.get("a", 0.0)))


def bulk_scaling(family: Family) -> Scaling:
    return Scaling.BULK_HERMITE if Family(family) is Family.HERMITE else Scaling.BULK_LAGUERRE


def edge_scaling(family: Family) -> Scaling:
    return Scaling.EDGE_HERMITE if Family(family) is Family.HERMITE else Scaling.EDGE_LAGUERRE


def to_raw(spec: EnsembleSpec, scaling: Scaling, x):
    """Map coordinates ``x`` in ``scaling`` to raw eigenvalue coordinates.

    Returns ``(X, jac)`` with ``scaled_density(x) = jac * rho(X)``.
    """
    x = np.asarray(x, dtype=float)
    N = spec.N
    scaling = Scaling(scaling)
    if scaling is Scaling.RAW:
        return x, np.ones_like(x)
    if scaling is Scaling.BULK_HERMITE:
        return math.sqrt(2 * N) * x, np.full_like(x, math.sqrt(2.0 / N))
    if scaling is Scaling.BULK_LAGUERRE:
        return 4.0 * N * x, np.full_like(x, 4.0)
    if scaling is Scaling.EDGE_HERMITE:
        c = 1.0 / math.sqrt(2.0 * N ** (1.0 / 3.0))
        return math.sqrt(2 * N) + c * x, np.full_like(x, c)
    c = 2.0 * (2.0 * N) ** (1.0 / 3.0)
    return 4.0 * N + c * x, np.full_like(x, c)


@dataclass
class DensityCurve:
    """Density values on a strictly increasing grid, with provenance."""

    grid: np.ndarray
    values: np.ndarray
    scaling: Scaling
    spec: EnsembleSpec
    method: str
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        self.scaling = Scaling(self.scaling)
        if self.grid.ndim != 1 or self.grid.shape != self.values.shape:
            raise DomainError("grid and values must be 1-d arrays of equal length")
        if self.grid.size > 1 and not np.all(np.diff(self.grid) > 0):
            raise DomainError("grid must be strictly increasing")
        if not (np.all(np.isfinite(self.grid)) and np.all(np.isfinite(self.values))):
            raise DomainError("grid and values must be finite")

    def integral(self) -> float:
        return float(np.trapezoid(self.values, self.grid))

    def to_csv(self) -> str:
        buf = io.StringIO(newline="")
        buf.write("x,density\n")
        for x, y in zip(self.grid, self.values):
            buf.write(f"{x:.12g},{y:.12g}\n")
        return buf.getvalue()

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": 1,
            "spec": self.spec.to_dict(),
            "method": self.method,
            "scaling": self.scaling.value,
            "meta": self.meta,
            "x": [float(f"{v:.12g}") for v in self.grid],
            "density": [float(f"{v:.12g}") for v in self.values],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> DensityCurve:
        return cls(
            np.array(d["x"]), np.array(d["density"]), Scaling(d["scaling"]),
            EnsembleSpec.from_dict(d["spec"]), d["method"], d.get("meta", {}),
        )


def read_csv_curve(text: str) -> tuple[np.ndarray, np.ndarray]:
    lines = text.strip().splitlines()
    if lines[0].strip() != "x,density":
        raise DomainError("CSV curve must start with the header 'x,density'")
    data = np.array([[float(t) for t in ln.split(",")] for ln in lines[1:]])
    return data[:, 0], data[:, 1]
