"""Command-line interface: ``betaens density`` and ``betaens compare``.

Exit codes: 0 success (all assertions hold), 1 a tolerance assertion
failed, 2 usage or domain error.  Errors go to stderr as one JSON line.

Every method is evaluated in its own natural coordinates and mapped to the
requested scaling through the raw eigenvalue axis, so any method can be
shown in any scaling (bulk and edge formulas are of course only accurate
in their own regime).
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import __version__
from .bulk import HERMITE_BAND, LAGUERRE_BAND, bulk_density, mp_density, wigner_density
from .core import DensityCurve, EnsembleSpec, Family, Scaling, bulk_scaling, edge_scaling, to_raw
from .ensembles import default_threads, edges_from_grid, monte_carlo_curve, to_scaled
from .errors import BetaEnsError, DomainError
from .softedge import KQuadConfig, soft_edge_density
from .symop import exact_density

__all__ = [
    "METHODS",
    "MethodRequest",
    "parse_grid",
    "default_grid",
    "compute_curve",
    "peak_locations",
    "oscillation_amplitude",
    "compare_curves",
    "build_report",
    "main",
]

METHODS = ("exact", "bulk", "edge", "mc")
SCHEMA = 1
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


class UsageError(BetaEnsError):
    pass


class ToleranceFailure(Exception):
    def __init__(self, failed: list[str]):
        super().__init__("; ".join(failed))
        self.failed = failed


# --- grids and scalings ---------------------------------------------------------------


def parse_grid(text: str) -> np.ndarray:
    """``lo:hi:step`` to an inclusive, evenly spaced grid (``hi`` kept when it lies on the lattice)."""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise UsageError(f"grid must be lo:hi[:step], got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"grid must be lo:hi[:step], got {text!r}") from None
    lo, hi = vals[:2]
    step = vals[2] if len(vals) == 3 else (hi - lo) / 200
    if not (all(map(math.isfinite, vals)) and hi > lo and step > 0):
        raise UsageError(f"grid needs lo < hi and step > 0, got {text!r}")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    if n < 2:
        raise UsageError("grid must have at least two points")
    if n > 10**6:
        raise UsageError("grid has more than 10^6 points")
    return lo + step * np.arange(n)


def resolve_scaling(name: str | None, family: Family, method: str) -> Scaling:
    if name is None:
        name = "edge" if method == "edge" else "bulk"
    if name == "bulk":
        return bulk_scaling(family)
    if name == "edge":
        return edge_scaling(family)
    if name == "raw":
        return Scaling.RAW
    s = Scaling(name)
    if s is not Scaling.RAW and not s.value.endswith(family.value):
        raise UsageError(f"scaling {name} does not belong to the {family.value} family")
    return s


def default_grid(spec: EnsembleSpec, methods: Sequence[str], scaling: Scaling) -> np.ndarray:
    """Grid used when ``--grid`` is omitted; stays inside the guard bands of ``methods``."""
    cells = "mc" in methods
    if scaling is Scaling.BULK_HERMITE:
        if "bulk" in methods:
            return parse_grid("-0.99:0.99:0.01") if cells else parse_grid(f"{-HERMITE_BAND}:{HERMITE_BAND}:0.005")
        return parse_grid("-1.2:1.2:0.01") if cells else parse_grid("-1.2:1.2:0.005")
    if scaling is Scaling.BULK_LAGUERRE:
        if "bulk" in methods:
            lo, hi = LAGUERRE_BAND
            return parse_grid("0.01:0.99:0.01") if cells else parse_grid(f"{lo}:{hi}:0.005")
        return parse_grid("0.005:1.295:0.01") if cells else parse_grid("0.0025:1.3:0.005")
    if scaling in (Scaling.EDGE_HERMITE, Scaling.EDGE_LAGUERRE):
        if spec.is_even_beta and spec.beta == 2:
            return parse_grid("-6:2:0.02")
        return parse_grid("-6:3:0.25")
    raise UsageError("the raw scaling has no default grid; pass --grid")


def _native_scaling(spec: EnsembleSpec, method: str) -> Scaling:
    if method == "exact":
        return Scaling.RAW
    if method == "bulk":
        return bulk_scaling(spec.family)
    return edge_scaling(spec.family)


def _native_values(spec: EnsembleSpec, method: str, x: np.ndarray, cfg: KQuadConfig, threads: int,
                   expert: bool) -> np.ndarray:
    if method == "exact":
        if spec.family is Family.LAGUERRE:
            out = np.zeros_like(x)
            pos = x > 0
            if np.any(x == 0):
                raise DomainError("the exact Laguerre density is not evaluated at x = 0; shift the grid")
            if np.any(pos):
                out[pos] = exact_density(spec, x[pos])
            return out
        return np.asarray(exact_density(spec, x), dtype=float)
    if method == "bulk":
        return np.asarray(bulk_density(spec, x, expert), dtype=float)
    beta = spec.require_even_beta()
    flat = x.ravel()
    if threads > 1 and beta > 2 and flat.size > 1:
        # pointwise evaluations are independent, so the result does not depend on the pool size
        with ThreadPoolExecutor(max_workers=threads) as pool:
            vals = list(pool.map(lambda v: float(soft_edge_density(beta, v, cfg)), flat))
        return np.asarray(vals).reshape(x.shape)
    return np.asarray(soft_edge_density(beta, flat, cfg), dtype=float).reshape(x.shape)


def _cell_nodes(grid: np.ndarray):
    edges = edges_from_grid(grid)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    return mid[:, None] + half[:, None] * _GL_NODES[None, :]


@dataclass
class MethodRequest:
    """One curve of a comparison: a method tag with optional per-curve overrides.

    Text form ``method[:key=value[,key=value...]]`` with keys n, beta, a,
    seed, samples.  ``bulk:n=8`` is the bulk formula at N = 8.
    """

    method: str
    overrides: dict[str, Any] = field(default_factory=dict)
    label: str = ""

    @classmethod
    def parse(cls, text: str) -> MethodRequest:
        head, _, tail = text.strip().partition(":")
        if head not in METHODS:
            raise UsageError(f"unknown method {head!r}; choose from {', '.join(METHODS)}")
        ov: dict[str, Any] = {}
        if tail:
            for item in tail.split(","):
                k, eq, v = item.partition("=")
                k = k.strip().lower()
                if not eq or k not in ("n", "beta", "a", "seed", "samples"):
                    raise UsageError(f"bad method override {item!r} in {text!r}")
                try:
                    ov[k] = int(v) if k in ("n", "seed", "samples") else float(v)
                except ValueError:
                    raise UsageError(f"bad value in method override {item!r}") from None
        return cls(head, ov, text.strip())

    def spec(self, base: EnsembleSpec) -> EnsembleSpec:
        return EnsembleSpec(
            base.family, self.overrides.get("n", base.N), self.overrides.get("beta", base.beta),
            self.overrides.get("a", base.a),
        )


def compute_curve(spec: EnsembleSpec, method: str, grid, scaling: Scaling, *, cfg: KQuadConfig | None = None,
                  samples: int = 200_000, seed: int = 0, threads: int = 1, cell_average: bool = False,
                  expert: bool = False) -> DensityCurve:
    """Density of ``spec`` by ``method`` on ``grid`` in ``scaling`` coordinates.

    With ``cell_average`` the value at each grid point is the mean of the
    density over its histogram cell (8-point Gauss-Legendre), which is the
    quantity a Monte Carlo histogram estimates.
    """
    if method not in METHODS:
        raise UsageError(f"unknown method {method!r}")
    grid = np.asarray(grid, dtype=float)
    scaling = Scaling(scaling)
    cfg = cfg or KQuadConfig()
    meta: dict[str, Any] = {}
    if method == "mc":
        if samples < 1:
            raise UsageError("--samples must be positive")
        curve = monte_carlo_curve(spec, samples, grid, scaling, seed, threads)
        curve.grid = grid  # bin centres equal the grid up to rounding
        curve.method = "mc"
        curve.meta = {"samples": samples, "seed": seed, "below": curve.meta["below"], "above": curve.meta["above"]}
        return curve
    if method in ("exact", "bulk") or (method == "edge" and spec.beta != 2):
        spec.require_even_beta()
    pts = _cell_nodes(grid) if cell_average else grid
    native = _native_scaling(spec, method)
    if native is scaling:
        # no round trip through raw units, which could nudge a band endpoint by an ulp
        xn, factor = pts, 1.0
    else:
        X, jac = to_raw(spec, scaling, pts)
        xn = to_scaled(spec, native, X)
        _, jac_n = to_raw(spec, native, 0.0)
        factor = jac / float(jac_n)
    vals = _native_values(spec, method, np.asarray(xn, dtype=float), cfg, threads, expert) * factor
    if cell_average:
        vals = 0.5 * vals @ _GL_WEIGHTS
        meta["cell_average"] = True
    if method == "edge" and spec.beta != 2:
        meta["kquad"] = cfg.to_dict()
    return DensityCurve(grid, vals, scaling, spec, method, meta)


# --- metrics ----------------------------------------------------------------------------


def peak_locations(x, y) -> np.ndarray:
    """Interior local maxima (strictly above the left neighbour, not below the right one)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if y.size < 3:
        return np.empty(0)
    i = np.flatnonzero((y[1:-1] > y[:-2]) & (y[1:-1] >= y[2:])) + 1
    return x[i]


def _limit_law(scaling: Scaling):
    if scaling is Scaling.BULK_HERMITE:
        return wigner_density, lambda x, rho: rho**3
    if scaling is Scaling.BULK_LAGUERRE:
        return mp_density, lambda x, rho: x * x * rho**3
    return None, None


def oscillation_amplitude(curve: DensityCurve, window: tuple[float, float] | None = None) -> float | None:
    """Envelope-normalized size of the oscillation about the limiting law.

    max |y / rho - 1| * w(x)^{2/beta} with w = rho^3 (Hermite) or x^2 rho^3
    (Laguerre), which removes the x dependence of the leading oscillating
    term and keeps its N dependence.  ``None`` outside the bulk scalings.
    The k >= 2 terms present for beta >= 8 are not separated out.
    """
    law, env = _limit_law(curve.scaling)
    if law is None:
        return None
    if window is None:
        window = (-0.8, 0.8) if curve.scaling is Scaling.BULK_HERMITE else (0.1, 0.9)
    x = curve.grid
    m = (x >= window[0]) & (x <= window[1])
    if not np.any(m):
        return None
    rho = law(x[m])
    r = (curve.values[m] / rho - 1.0) * env(x[m], rho) ** (2.0 / curve.spec.beta)
    return float(np.max(np.abs(r)))


def _cell_widths(grid):
    return np.diff(edges_from_grid(grid))


def compare_curves(curves: dict[str, DensityCurve], window: tuple[float, float] | None = None) -> dict[str, Any]:
    """L1/Linf distances, peak analysis and amplitude scaling for curves on a shared grid."""
    labels = list(curves)
    grid = curves[labels[0]].grid
    for lab in labels[1:]:
        if not np.array_equal(curves[lab].grid, grid):
            raise DomainError("curves must share one grid")
    m = np.ones(grid.shape, bool) if window is None else (grid >= window[0]) & (grid <= window[1])
    if not np.any(m):
        raise UsageError("the metric window contains no grid point")
    w = _cell_widths(grid)[m]
    peaks = {lab: peak_locations(grid[m], c.values[m]) for lab, c in curves.items()}
    amps = {lab: oscillation_amplitude(c) for lab, c in curves.items()}
    pairs = []
    for i, la in enumerate(labels):
        for lb in labels[i + 1:]:
            d = curves[la].values[m] - curves[lb].values[m]
            pa, pb = peaks[la], peaks[lb]
            deltas = [float(np.min(np.abs(pb - p))) for p in pa] if pb.size else []
            entry = {
                "a": la, "b": lb,
                "L1": float(np.sum(np.abs(d) * w)),
                "Linf": float(np.max(np.abs(d))),
                "peak_location_deltas": deltas,
                "peak_delta": max(deltas) if deltas else None,
            }
            sa, sb = curves[la].spec, curves[lb].spec
            if amps[la] and amps[lb] and sa.N != sb.N and sa.beta == sb.beta:
                e = math.log(amps[la] / amps[lb]) / math.log(sa.N / sb.N)
                entry["amplitude_exponent"] = e
                entry["amplitude_exponent_expected"] = -2.0 / sa.beta
                entry["amplitude_exponent_rel_err"] = abs(e + 2.0 / sa.beta) / (2.0 / sa.beta)
            pairs.append(entry)
    return {
        "window": None if window is None else list(window),
        "peak_count": {lab: int(p.size) for lab, p in peaks.items()},
        "peaks": {lab: [float(v) for v in p] for lab, p in peaks.items()},
        "amplitude": amps,
        "pairs": pairs,
    }


_ASSERT_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?::\s*([^<>=!]+?))?\s*(<=|>=|==)\s*([-+0-9.eE]+)\s*$")
_PAIR_METRICS = ("L1", "Linf", "peak_delta", "amplitude_exponent", "amplitude_exponent_rel_err")
_CURVE_METRICS = ("peak_count", "amplitude")


def parse_assertion(text: str) -> tuple[str, str | None, str, float]:
    mt = _ASSERT_RE.match(text)
    if not mt:
        raise UsageError(f"cannot parse assertion {text!r}; expected METRIC[:labels]<=VALUE")
    name = mt.group(1)
    if name not in _PAIR_METRICS + _CURVE_METRICS:
        raise UsageError(f"unknown metric {name!r} in assertion {text!r}")
    try:
        val = float(mt.group(4))
    except ValueError:
        raise UsageError(f"bad number in assertion {text!r}") from None
    return name, mt.group(2), mt.group(3), val


def check_assertions(metrics: dict[str, Any], assertions: Sequence[str]) -> list[dict[str, Any]]:
    """Evaluate ``METRIC[:label[,label]] OP value`` assertions against computed metrics."""
    results = []
    for text in assertions:
        name, sel, op, val = parse_assertion(text)
        chosen = [s.strip() for s in sel.split(",")] if sel else []
        items: list[tuple[str, Any]] = []
        if name in _PAIR_METRICS:
            for p in metrics["pairs"]:
                if chosen and set(chosen) != {p["a"], p["b"]}:
                    continue
                if name in p:
                    items.append((f"{p['a']},{p['b']}", p[name]))
        elif name in _CURVE_METRICS:
            for lab, v in metrics[name].items():
                if not chosen or lab in chosen:
                    items.append((lab, v))
        else:
            raise UsageError(f"unknown metric {name!r} in assertion {text!r}")
        if not items:
            raise UsageError(f"assertion {text!r} matches no curve or pair")
        for who, v in items:
            ok = v is not None and {"<=": v <= val, ">=": v >= val, "==": v == val}[op]
            results.append({"assertion": text, "metric": name, "target": who, "value": v, "pass": bool(ok)})
    return results


def build_report(spec: EnsembleSpec, requests: Sequence[MethodRequest], grid, scaling: Scaling, *,
                 cfg: KQuadConfig | None = None, samples: int = 200_000, seed: int = 0, threads: int = 1,
                 window=None, assertions: Sequence[str] = (), expert: bool = False) -> dict[str, Any]:
    """Comparison report (schema 1).  Non-MC curves are cell averages whenever MC takes part."""
    if len(requests) < 2:
        raise UsageError("compare needs at least two methods")
    for text in assertions:
        parse_assertion(text)
    labels = [r.label or r.method for r in requests]
    if len(set(labels)) != len(labels):
        raise UsageError("method labels must be distinct")
    cells = any(r.method == "mc" for r in requests)
    curves = {}
    for r, lab in zip(requests, labels):
        curves[lab] = compute_curve(
            r.spec(spec), r.method, grid, scaling, cfg=cfg,
            samples=r.overrides.get("samples", samples), seed=r.overrides.get("seed", seed),
            threads=threads, cell_average=cells and r.method != "mc", expert=expert,
        )
    metrics = compare_curves(curves, window)
    checks = check_assertions(metrics, assertions)
    return {
        "schema": SCHEMA,
        "version": __version__,
        "spec": spec.to_dict(),
        "scaling": Scaling(scaling).value,
        "methods": labels,
        "method_specs": {lab: curves[lab].spec.to_dict() for lab in labels},
        "cell_average": cells,
        "grid": [float(f"{v:.12g}") for v in np.asarray(grid)],
        "curves": {lab: [float(f"{v:.12g}") for v in c.values] for lab, c in curves.items()},
        "curve_meta": {lab: c.meta for lab, c in curves.items()},
        "metrics": metrics,
        "assertions": checks,
        "pass": all(c["pass"] for c in checks),
    }


# --- argument handling ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _kquad_from_args(args) -> KQuadConfig:
    d: dict[str, Any] = {}
    if args.kquad_config:
        try:
            with open(args.kquad_config, encoding="utf-8") as fh:
                d.update(json.load(fh))
        except OSError as exc:
            raise UsageError(f"cannot read {args.kquad_config}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.kquad_config} is not valid JSON: {exc.msg}") from None
    for item in args.kquad or []:
        k, eq, v = item.partition("=")
        if not eq:
            raise UsageError(f"--kquad expects KEY=VALUE, got {item!r}")
        try:
            d[k.strip()] = json.loads(v)
        except json.JSONDecodeError:
            d[k.strip()] = v
    if "seed" not in d:
        d["seed"] = args.seed
    return KQuadConfig.from_dict(d)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON file whose keys replace flags (explicit flags win)")
    p.add_argument("--family", choices=[f.value for f in Family])
    p.add_argument("--n", type=int, help="matrix size N")
    p.add_argument("--beta", type=float, help="Dyson index (even for exact, bulk and edge)")
    p.add_argument("--a", type=float, default=0.0, help="Laguerre parameter a >= 0")
    p.add_argument("--grid", help="lo:hi:step in the chosen scaling (inclusive)")
    p.add_argument("--scaling", choices=["bulk", "edge", "raw"] + [s.value for s in Scaling],
                   help="coordinates; default bulk, or edge for the edge method")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200_000, help="Monte Carlo draws")
    p.add_argument("--threads", type=int, help="worker cap (default: $BETAENS_THREADS or 1)")
    p.add_argument("--kquad", action="append", metavar="KEY=VALUE", help="KQuadConfig field override")
    p.add_argument("--kquad-config", help="KQuadConfig JSON file")
    p.add_argument("--expert", action="store_true", help="allow odd or non-integer beta in the bulk formula")


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="betaens", description="Eigenvalue densities of Hermite and Laguerre beta-ensembles.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    d = sub.add_parser("density", help="compute one density curve")
    _common(d)
    d.add_argument("--method", choices=METHODS, default="exact")
    d.add_argument("--format", choices=["csv", "json"], default="csv")
    c = sub.add_parser("compare", help="compare methods on a shared grid")
    _common(c)
    c.add_argument("--methods", default="exact,bulk",
                   help="comma-separated method[:key=value] list, e.g. exact,bulk or bulk:n=8,bulk:n=16; "
                        "use ';' between entries that carry several overrides")
    c.add_argument("--window", help="lo:hi restricting L1/Linf/peak metrics")
    c.add_argument("--assert", dest="assertions", action="append", default=[],
                   metavar="METRIC[:LABELS]OP VALUE", help="e.g. 'L1<=0.03' or 'peak_count:exact==7'")
    return p


def _split_methods(text: str) -> list[str]:
    if ";" in text:
        return [t for t in text.split(";") if t.strip()]
    # commas separate entries unless they continue a key=value override list
    out: list[str] = []
    for tok in text.split(","):
        if out and "=" in tok and ":" not in tok and ":" in out[-1]:
            out[-1] += "," + tok
        elif tok.strip():
            out.append(tok)
    return out


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]):
    args = parser.parse_args(argv)
    if not args.config:
        return args
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.config}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.config} is not valid JSON: {exc.msg}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config file must hold a JSON object")
    sub = parser._subparsers._group_actions[0].choices[args.command]  # type: ignore[union-attr]
    dests = {a.dest for a in sub._actions}
    cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    unknown = set(cfg) - dests - {"command"}
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    cfg.pop("command", None)
    sub.set_defaults(**cfg)
    return parser.parse_args(argv)


def _spec_from_args(args) -> EnsembleSpec:
    if args.family is None or args.n is None or args.beta is None:
        raise UsageError("--family, --n and --beta are required")
    return EnsembleSpec(Family(args.family), args.n, args.beta, args.a)


def _write(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _threads(args) -> int:
    t = args.threads if args.threads is not None else default_threads()
    if t < 1:
        raise UsageError("--threads must be positive")
    return t


def cmd_density(args) -> int:
    spec = _spec_from_args(args)
    scaling = resolve_scaling(args.scaling, spec.family, args.method)
    grid = parse_grid(args.grid) if args.grid else default_grid(spec, [args.method], scaling)
    cfg = _kquad_from_args(args)
    curve = compute_curve(spec, args.method, grid, scaling, cfg=cfg, samples=args.samples, seed=args.seed,
                          threads=_threads(args), expert=args.expert)
    _write(curve.to_csv() if args.format == "csv" else curve.to_json(), args.out)
    return 0


def cmd_compare(args) -> int:
    spec = _spec_from_args(args)
    requests = [MethodRequest.parse(t) for t in _split_methods(args.methods)]
    first = next((r.method for r in requests if r.method != "mc"), "exact")
    scaling = resolve_scaling(args.scaling, spec.family, first)
    grid = parse_grid(args.grid) if args.grid else default_grid(spec, [r.method for r in requests], scaling)
    window = None
    if args.window:
        lo, _, hi = args.window.partition(":")
        try:
            window = (float(lo), float(hi))
        except ValueError:
            raise UsageError(f"--window must be lo:hi, got {args.window!r}") from None
    report = build_report(spec, requests, grid, scaling, cfg=_kquad_from_args(args), samples=args.samples,
                          seed=args.seed, threads=_threads(args), window=window,
                          assertions=args.assertions, expert=args.expert)
    _write(json.dumps(report, indent=1, sort_keys=True) + "\n", args.out)
    if not report["pass"]:
        failed = [f"{c['metric']}[{c['target']}]={c['value']} violates {c['assertion']}"
                  for c in report["assertions"] if not c["pass"]]
        raise ToleranceFailure(failed)
    return 0


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message, "exit": code}) + "\n")
    return code


def _glue_values(argv: list[str]) -> list[str]:
    # range values such as -1.2:1.2:0.005 start with '-' and would read as flags
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--grid", "--window") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = _apply_config(parser, _glue_values(list(sys.argv[1:] if argv is None else argv)))
        return cmd_density(args) if args.command == "density" else cmd_compare(args)
    except ToleranceFailure as exc:
        return _fail("tolerance", str(exc), 1)
    except UsageError as exc:
        return _fail("usage", str(exc), 2)
    except BetaEnsError as exc:
        return _fail(type(exc).__name__, str(exc), 2)
    except (ValueError, OSError) as exc:
        return _fail(type(exc).__name__, str(exc), 2)


if __name__ == "__main__":
    sys.exit(main())
