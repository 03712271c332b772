"""Finite metric measure spaces with dominating functions.

A space is a finite point cloud with a metric given as a distance table, an
atomic measure (one positive weight per point), and a dominating function
``lambda(x, r)`` that majorizes ball measures.  Balls are closed:
``B(x, r) = {y : d(x, y) <= r}``.

The canonical radius grid consists of the distinct pairwise distances, one
sub-separation radius ``d_min / 7`` (so singleton balls are enumerable), and
their dilates by powers of 6 and by 6/5, capped at six times the diameter.
Measure-domination checks run on grid radii ``>= 6 * d_min / 7``: an atomic
measure cannot be dominated by a vanishing lambda below the minimum point
separation, and no ball dilation used anywhere in the calculus ever evaluates
lambda below that threshold.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InvalidDominatingSpec,
    InvalidField,
    LambdaAtZero,
    LambdaNotMonotone,
    MetricViolation,
    NonpositiveWeight,
)
from .report import VerificationReport

_REL_TOL = 1e-12
_EXHAUSTIVE_TRIPLE_LIMIT = 64
_TRIPLE_SAMPLES = 100_000
_METRIC_RNG_SEED = 0xF2AC


@dataclass(frozen=True)
class PowerLaw:
    """lambda(x, r) = c * r**k, independent of the point."""

    c: float
    k: float


@dataclass(frozen=True)
class TableLaw:
    """Tabulated lambda over a fixed radius grid.

    Off-grid radii round up to the next tabulated radius; radii above the last
    tabulated one clamp to it.
    """

    radii: np.ndarray
    values: np.ndarray  # (n_points, n_radii)


DominatingSpec = PowerLaw | TableLaw


@dataclass(eq=False)
class Space:
    """Immutable discrete metric measure space.

    Derived read-only caches (sorted per-center distances, ball families) are
    computed lazily and never mutated afterwards, so spaces are safe to share
    across concurrent pure computations.
    """

    distances: np.ndarray
    weights: np.ndarray
    lam: DominatingSpec
    dim_n: float
    radius_grid: np.ndarray
    check_radii: np.ndarray
    c_lambda: float
    c_tilde: float
    beta0: float
    _sorted_dists: np.ndarray = field(repr=False, default=None)
    _cum_weights: np.ndarray = field(repr=False, default=None)
    _caches: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.distances.shape[0]

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())

    @property
    def d_min(self) -> float:
        if self.n < 2:
            return 0.0
        off = self.distances[~np.eye(self.n, dtype=bool)]
        return float(off.min())

    @property
    def diameter(self) -> float:
        return float(self.distances.max())

    def ball_members(self, center: int, radius: float) -> np.ndarray:
        """Indices of the closed ball B(center, radius)."""
        tol = radius * _REL_TOL
        return np.nonzero(self.distances[center] <= radius + tol)[0]

    def ball_measure(self, center: int, radius: float) -> float:
        tol = radius * _REL_TOL
        idx = np.searchsorted(self._sorted_dists[center], radius + tol, side="right")
        return float(self._cum_weights[center][idx])

    def ball_measures(self, centers: np.ndarray, radii: np.ndarray) -> np.ndarray:
        """Vectorized ball measures for paired (center, radius) arrays."""
        centers = np.asarray(centers)
        radii = np.asarray(radii, dtype=float)
        out = np.empty(len(centers))
        tol = radii * _REL_TOL
        for c in np.unique(centers):
            sel = centers == c
            idx = np.searchsorted(self._sorted_dists[c], radii[sel] + tol[sel], side="right")
            out[sel] = self._cum_weights[c][idx]
        return out


def lambda_eval(space: Space, x: int, r: float, positive: bool = False) -> float:
    """Evaluate the dominating function at point index ``x`` and radius ``r``.

    ``positive=True`` marks a denominator context: a zero value raises
    LambdaAtZero instead of propagating into a division.
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    lam = space.lam
    if isinstance(lam, PowerLaw):
        v = lam.c * r**lam.k if r > 0 else 0.0
    else:
        if len(lam.radii) == 0:
            raise InvalidDominatingSpec("empty lambda table")
        idx = np.searchsorted(lam.radii, r * (1 - 1e-9), side="left")
        idx = min(idx, len(lam.radii) - 1)
        v = float(lam.values[x, idx])
    if positive and v <= 0.0:
        raise LambdaAtZero(f"lambda({x}, {r}) = {v} requested as a denominator")
    return v


def lambda_eval_many(space: Space, xs: np.ndarray, rs: np.ndarray, positive: bool = False) -> np.ndarray:
    """Vectorized lambda evaluation for paired point/radius arrays."""
    xs = np.asarray(xs)
    rs = np.asarray(rs, dtype=float)
    lam = space.lam
    if isinstance(lam, PowerLaw):
        out = np.where(rs > 0, lam.c * np.power(np.maximum(rs, 1e-300), lam.k), 0.0)
    else:
        idx = np.searchsorted(lam.radii, rs * (1 - 1e-9), side="left")
        idx = np.minimum(idx, len(lam.radii) - 1)
        out = lam.values[xs, idx]
    if positive and np.any(out <= 0.0):
        raise LambdaAtZero("lambda evaluated to zero in a denominator context")
    return out


def as_field(space: Space, values) -> np.ndarray:
    """Validate and return a field function (one real per point)."""
    f = np.asarray(values, dtype=float)
    if f.shape != (space.n,):
        raise InvalidField(f"field has length {f.shape}, expected ({space.n},)")
    if not np.all(np.isfinite(f)):
        raise InvalidField("field contains non-finite entries")
    return f


def _check_metric(d: np.ndarray) -> None:
    n = d.shape[0]
    if d.shape != (n, n):
        raise MetricViolation("distance table is not square")
    if not np.all(np.isfinite(d)):
        raise MetricViolation("distance table contains non-finite entries")
    asym = np.abs(d - d.T)
    if asym.max() > 0:
        i, j = np.unravel_index(np.argmax(asym), asym.shape)
        raise MetricViolation(f"asymmetric distances at ({i}, {j})", witness=(int(i), int(j)))
    if np.any(np.diag(d) != 0):
        i = int(np.nonzero(np.diag(d))[0][0])
        raise MetricViolation(f"nonzero diagonal at {i}", witness=(i, i))
    off = d + np.where(np.eye(n, dtype=bool), np.inf, 0.0)
    if np.any(off <= 0):
        i, j = np.unravel_index(int(np.argmin(off)), off.shape)
        raise MetricViolation(
            f"non-positive off-diagonal distance at ({i}, {j})", witness=(int(i), int(j))
        )
    scale = d.max() if d.max() > 0 else 1.0
    tol = 1e-9 * scale
    if n <= _EXHAUSTIVE_TRIPLE_LIMIT:
        # slack[i, k, j] = d(i,k) + d(k,j) - d(i,j)
        slack = d[:, :, None] + d[None, :, :] - d[:, None, :]
        bad = np.argwhere(slack < -tol)
        if len(bad):
            i, k, j = (int(v) for v in bad[0])
            raise MetricViolation(
                f"triangle inequality fails on ({i}, {k}, {j})", witness=(i, k, j)
            )
    else:
        rng = np.random.default_rng(_METRIC_RNG_SEED)
        idx = rng.integers(0, n, size=(_TRIPLE_SAMPLES, 3))
        i, k, j = idx[:, 0], idx[:, 1], idx[:, 2]
        slack = d[i, k] + d[k, j] - d[i, j]
        bad = np.nonzero(slack < -tol)[0]
        if len(bad):
            b = bad[0]
            raise MetricViolation(
                f"triangle inequality fails on ({i[b]}, {k[b]}, {j[b]})",
                witness=(int(i[b]), int(k[b]), int(j[b])),
            )


def _dedup_sorted(values: np.ndarray, rel_tol: float = 1e-9) -> np.ndarray:
    values = np.sort(values)
    if len(values) == 0:
        return values
    keep = [values[0]]
    for v in values[1:]:
        if v > keep[-1] * (1 + rel_tol):
            keep.append(v)
    return np.array(keep)


def _radius_grid(d: np.ndarray) -> np.ndarray:
    n = d.shape[0]
    if n < 2:
        return np.array([])
    dists = np.unique(d[np.triu_indices(n, 1)])
    dists = _dedup_sorted(dists)
    d_min = float(dists[0])
    diam = float(dists[-1])
    cap = 6.0 * diam
    bases = np.concatenate([[d_min / 7.0], dists])
    out = []
    for b in bases:
        for mult in (1.0, 6.0 / 5.0):
            r = b * mult
            while r <= cap * (1 + 1e-12):
                out.append(r)
                r *= 6.0
    return _dedup_sorted(np.array(out))


def _tightest_c_lambda(space_like, lam, grid, n) -> float:
    if len(grid) == 0:
        return 1.0
    if isinstance(lam, PowerLaw):
        return max(1.0, 2.0**lam.k)
    best = 1.0
    for r in grid:
        for x in range(n):
            v = _table_eval(lam, x, r)
            vh = _table_eval(lam, x, r / 2.0)
            if vh > 0:
                best = max(best, v / vh)
    return best


def _table_eval(lam: TableLaw, x: int, r: float) -> float:
    idx = np.searchsorted(lam.radii, r * (1 - 1e-9), side="left")
    idx = min(idx, len(lam.radii) - 1)
    return float(lam.values[x, idx])


def _tightest_c_tilde(d: np.ndarray, lam, grid, n) -> float:
    if isinstance(lam, PowerLaw) or len(grid) == 0:
        return 1.0
    best = 1.0
    for r in grid:
        idx = np.searchsorted(lam.radii, r * (1 - 1e-9), side="left")
        idx = min(idx, len(lam.radii) - 1)
        vals = lam.values[:, idx]
        close = d <= r * (1 + _REL_TOL)
        ratios = vals[:, None] / vals[None, :]
        best = max(best, float(ratios[close].max()))
    return best


def _validate_lambda(lam: DominatingSpec, n: int, dim_n: float | None) -> None:
    if isinstance(lam, PowerLaw):
        if lam.c <= 0:
            raise InvalidDominatingSpec("power-law coefficient must be positive")
        if lam.k < 0:
            raise LambdaNotMonotone("power-law exponent must be nonnegative")
        if dim_n is not None and lam.k > dim_n * (1 + 1e-12):
            raise InvalidDominatingSpec(
                f"power-law exponent {lam.k} exceeds dim_n = {dim_n}"
            )
        return
    radii = np.asarray(lam.radii, dtype=float)
    values = np.asarray(lam.values, dtype=float)
    if radii.ndim != 1 or np.any(radii <= 0) or np.any(np.diff(radii) <= 0):
        raise InvalidDominatingSpec("table radii must be positive and strictly increasing")
    if values.shape != (n, len(radii)):
        raise InvalidDominatingSpec(
            f"table values shape {values.shape} != ({n}, {len(radii)})"
        )
    if np.any(values <= 0):
        raise InvalidDominatingSpec("table values must be positive")
    if np.any(np.diff(values, axis=1) < 0):
        x = int(np.argwhere(np.diff(values, axis=1) < 0)[0][0])
        raise LambdaNotMonotone(f"lambda({x}, r) decreases in r")


def build_space(
    distances,
    weights,
    lam: DominatingSpec,
    dim_n: float | None = None,
) -> Space:
    """Validate inputs and assemble a Space.

    ``c_lambda`` and ``c_tilde`` are computed as the tightest constants over
    the canonical radius grid; ``beta0`` is 1.01 times its smallest admissible
    value.  ``dim_n`` defaults to log2 of the estimated geometric doubling
    constant (floored at 1 for degenerate spaces).
    """
    d = np.array(distances, dtype=float)
    w = np.array(weights, dtype=float)
    _check_metric(d)
    n = d.shape[0]
    if w.shape != (n,):
        raise NonpositiveWeight(f"weights have length {w.shape}, expected ({n},)")
    if np.any(~np.isfinite(w)) or np.any(w <= 0):
        raise NonpositiveWeight("all weights must be positive and finite")
    _validate_lambda(lam, n, None)

    grid = _radius_grid(d)
    d_min = float(np.min(d[~np.eye(n, dtype=bool)])) if n >= 2 else 0.0
    if len(grid):
        check = grid[grid >= (6.0 * d_min / 7.0) * (1 - 1e-12)]
    else:
        check = grid

    if isinstance(lam, TableLaw):
        lam = TableLaw(
            radii=np.asarray(lam.radii, dtype=float),
            values=np.asarray(lam.values, dtype=float),
        )

    order = np.argsort(d, axis=1, kind="stable")
    sorted_dists = np.take_along_axis(d, order, axis=1)
    cumw = np.concatenate(
        [np.zeros((n, 1)), np.cumsum(w[order], axis=1)], axis=1
    )

    if dim_n is None:
        n0 = _estimate_n0(d, w, grid, sorted_dists, cumw)
        dim_n = float(np.log2(n0)) if n0 >= 2 else 1.0
    dim_n = float(dim_n)
    if dim_n <= 0:
        raise InvalidDominatingSpec("dim_n must be positive")
    _validate_lambda(lam, n, dim_n)

    c_lambda = _tightest_c_lambda(None, lam, grid, n)
    c_tilde = _tightest_c_tilde(d, lam, grid, n)
    beta0 = 1.01 * max(c_lambda ** (3.0 * np.log2(6.0)), 6.0**dim_n)

    return Space(
        distances=d,
        weights=w,
        lam=lam,
        dim_n=dim_n,
        radius_grid=grid,
        check_radii=check,
        c_lambda=float(c_lambda),
        c_tilde=float(c_tilde),
        beta0=float(beta0),
        _sorted_dists=sorted_dists,
        _cum_weights=cumw,
    )


def check_upper_doubling(space: Space) -> VerificationReport:
    """Verify mu(B(x, r)) <= lambda(x, r) over the check radii.

    Failures are report content (max ratio and witness ball), never raised.
    """
    worst = 0.0
    witness = {}
    radii = np.asarray(space.check_radii, dtype=float)
    for x in range(space.n):
        idx = np.searchsorted(space._sorted_dists[x], radii * (1 + _REL_TOL), side="right")
        mu = space._cum_weights[x][idx]
        lv = lambda_eval_many(space, np.full(len(radii), x), radii)
        ratios = np.where(lv > 0, mu / np.where(lv > 0, lv, 1.0), np.inf)
        if len(ratios):
            i = int(np.argmax(ratios))
            if ratios[i] > worst:
                worst = float(ratios[i])
                witness = {"center": int(x), "radius": float(radii[i]), "ratio": float(ratios[i])}
    passed = worst <= 1.0 + 1e-12
    return VerificationReport(
        experiment="upper_doubling",
        passed=passed,
        fitted_constant=float(worst),
        witness=witness if not passed else {},
        details={"max_ratio": float(worst), "radii_checked": int(len(space.check_radii))},
    )


def check_lambda_compatibility(space: Space) -> VerificationReport:
    """Verify lambda(x, r) <= c_tilde * lambda(y, r) whenever d(x, y) <= r."""
    worst = 0.0
    witness = {}
    n = space.n
    for r in space.check_radii:
        vals = lambda_eval_many(space, np.arange(n), np.full(n, r))
        close = space.distances <= r * (1 + _REL_TOL)
        ratios = vals[:, None] / vals[None, :]
        m = float(ratios[close].max())
        if m > worst:
            worst = m
            i, j = np.unravel_index(
                int(np.argmax(np.where(close, ratios, -np.inf))), ratios.shape
            )
            witness = {"x": int(i), "y": int(j), "radius": float(r)}
    passed = worst <= space.c_tilde * (1 + 1e-12)
    return VerificationReport(
        experiment="lambda_compatibility",
        passed=passed,
        fitted_constant=float(worst),
        witness={} if passed else witness,
        details={"c_tilde": space.c_tilde},
    )


def _estimate_n0(d, w, grid, sorted_dists, cumw) -> int:
    n = d.shape[0]
    if n == 1:
        return 1
    best = 1
    d_min = float(np.min(d[~np.eye(n, dtype=bool)]))
    r0 = d_min / 7.0
    for c in range(n):
        radii = np.unique(d[c][d[c] > 0])
        radii = np.concatenate([[r0], radii])
        for r in radii:
            members = np.nonzero(d[c] <= r * (1 + _REL_TOL))[0]
            cover = d[:, members] <= (r / 2.0) * (1 + _REL_TOL)
            count = _greedy_cover_count(cover)
            best = max(best, count)
    return best


def _greedy_cover_count(cover: np.ndarray) -> int:
    """Greedy set cover; ties broken by lowest candidate index."""
    remaining = np.ones(cover.shape[1], dtype=bool)
    count = 0
    while remaining.any():
        gains = (cover & remaining[None, :]).sum(axis=1)
        pick = int(np.argmax(gains))  # argmax takes the lowest index on ties
        if gains[pick] == 0:
            raise AssertionError("half-radius balls cannot cover the ball")
        remaining &= ~cover[pick]
        count += 1
    return count


def estimate_geometric_doubling(space: Space) -> int:
    """Greedy upper bound on the geometric doubling constant N0.

    Every canonical ball B(x, r) is covered by at most N0 balls of radius r/2
    centered at points of the space; deterministic (ties by lowest index).
    """
    return _estimate_n0(
        space.distances, space.weights, space.radius_grid,
        space._sorted_dists, space._cum_weights,
    )
