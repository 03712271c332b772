"""Ball families, doubling detection, layer-sum coefficients, coverings."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CoverGuaranteeFailed, DegenerateBall, FamilyTooLarge
from .space import Space, lambda_eval, lambda_eval_many

_REL_TOL = 1e-12


@dataclass(frozen=True)
class Ball:
    """Closed ball with cached member set and measure."""

    center: int
    radius: float
    members: tuple
    measure: float


@dataclass(frozen=True)
class BallPair:
    """Nested pair (inner, outer) with the shell count N_{B,Q}."""

    inner: Ball
    outer: Ball
    n_bq: int


def make_ball(space: Space, center: int, radius: float) -> Ball:
    members = space.ball_members(center, radius)
    measure = float(space.weights[members].sum())
    return Ball(center=int(center), radius=float(radius), members=tuple(int(m) for m in members), measure=measure)


def dilate(space: Space, ball: Ball, factor: float) -> Ball:
    if factor <= 0:
        raise ValueError("dilation factor must be positive")
    return make_ball(space, ball.center, factor * ball.radius)


def is_doubling(space: Space, ball: Ball, alpha: float = 6.0, beta: float | None = None) -> bool:
    """True iff mu(alpha * B) <= beta * mu(B); default (6, beta0)."""
    if beta is None:
        beta = space.beta0
    big = space.ball_measure(ball.center, alpha * ball.radius)
    return big <= beta * ball.measure * (1 + _REL_TOL)


def smallest_doubling_dilate(space: Space, ball: Ball) -> Ball:
    """The first 6**k dilate of the ball that is (6, beta0)-doubling.

    Terminates on finite spaces: a ball containing every point is doubling.
    """
    current = ball
    while not is_doubling(space, current):
        current = dilate(space, current, 6.0)
    return current


def shell_count(r_inner: float, r_outer: float) -> int:
    """Smallest integer N >= 0 with 6**N * r_inner >= r_outer."""
    if r_inner <= 0:
        raise DegenerateBall("shell count undefined for a radius-zero inner ball")
    n = 0
    r = r_inner
    while r < r_outer * (1 - 1e-9):
        r *= 6.0
        n += 1
    return n


def k_coefficient(space: Space, inner: Ball, outer: Ball, beta: float = 0.0) -> float:
    """Layer-sum coefficient between nested balls.

    1 + sum over 6-adic shells k = 1..N of
    [mu(6**k inner) / lambda(x_inner, 6**k r_inner)] ** (1 - beta / dim_n).
    """
    if inner.radius <= 0:
        raise DegenerateBall("inner ball must have positive radius")
    if outer.radius < inner.radius * (1 - 1e-9):
        raise ValueError("outer radius must be at least the inner radius")
    if not (0 <= beta < space.dim_n):
        raise ValueError("beta must lie in [0, dim_n)")
    n_bq = shell_count(inner.radius, outer.radius)
    e = 1.0 - beta / space.dim_n
    total = 1.0
    r = inner.radius
    for _ in range(n_bq):
        r *= 6.0
        mu = space.ball_measure(inner.center, r)
        lv = lambda_eval(space, inner.center, r, positive=True)
        total += (mu / lv) ** e
    return total


def canonical_ball_family(space: Space, cap: int = 200_000) -> list[Ball]:
    """All distinct canonical balls, deduplicated by member set.

    For each distinct member set the ball with the smallest generating grid
    radius is retained (ties by lowest center index); output is ordered by
    (center, radius).
    """
    cached = space._caches.get("family")
    if cached is not None and space._caches.get("family_cap") == cap:
        return cached
    n = space.n
    if n == 1:
        fam = [make_ball(space, 0, 1.0)]
        fam[0] = Ball(center=0, radius=1.0, members=(0,), measure=float(space.weights[0]))
        space._caches["family"] = fam
        space._caches["family_cap"] = cap
        return fam
    r0 = float(space.radius_grid[0])
    best: dict[tuple, tuple] = {}
    count = 0
    for c in range(n):
        dists = space.distances[c]
        radii = np.unique(dists[dists > 0])
        radii = np.concatenate([[r0], radii])
        prev_key = None
        for r in radii:
            members = tuple(int(m) for m in np.nonzero(dists <= r * (1 + _REL_TOL))[0])
            if members == prev_key:
                continue
            prev_key = members
            cur = best.get(members)
            if cur is None:
                best[members] = (float(r), c)
                count += 1
                if count > cap:
                    raise FamilyTooLarge(
                        f"deduplicated family exceeds cap {cap}; subsample the space"
                    )
            elif (float(r), c) < cur:
                best[members] = (float(r), c)
    fam = [
        Ball(center=c, radius=r, members=members, measure=float(space.weights[list(members)].sum()))
        for members, (r, c) in best.items()
    ]
    fam.sort(key=lambda b: (b.center, b.radius))
    space._caches["family"] = fam
    space._caches["family_cap"] = cap
    return fam


def greedy_disjoint_cover(space: Space, balls: list[Ball], dilation: float = 5.0) -> list[Ball]:
    """Greedy disjoint subfamily whose dilates cover the input union.

    Balls are scanned in decreasing radius order (ties by center index); a
    ball is kept iff its member set is disjoint from all kept balls.  The
    returned family's ``dilation``-dilates cover the union of the input
    members; this is asserted and a violation raises CoverGuaranteeFailed.
    """
    if not balls:
        raise ValueError("ball sequence must be nonempty")
    if dilation < 5.0:
        raise ValueError("dilation must be at least 5")
    order = sorted(range(len(balls)), key=lambda i: (-balls[i].radius, balls[i].center, i))
    taken_mask = np.zeros(space.n, dtype=bool)
    kept: list[Ball] = []
    for i in order:
        b = balls[i]
        mem = np.array(b.members, dtype=int)
        if not taken_mask[mem].any():
            kept.append(b)
            taken_mask[mem] = True
    covered = np.zeros(space.n, dtype=bool)
    for b in kept:
        covered[list(dilate(space, b, dilation).members)] = True
    target = np.zeros(space.n, dtype=bool)
    for b in balls:
        target[list(b.members)] = True
    missing = np.nonzero(target & ~covered)[0]
    if len(missing):
        raise CoverGuaranteeFailed(
            f"point {int(missing[0])} not covered by {dilation}-dilates",
            witness=int(missing[0]),
        )
    return kept


class FamilyIndex:
    """Vectorized caches over the canonical ball family.

    Read-only after construction; shared safely across pure computations.
    All heavier structures (dilate measures per factor, containment pairs,
    layer-sum cumulants per beta) are built lazily and memoized.
    """

    def __init__(self, space: Space):
        self.space = space
        self.balls = canonical_ball_family(space)
        B = len(self.balls)
        n = space.n
        self.centers = np.array([b.center for b in self.balls], dtype=int)
        self.radii = np.array([b.radius for b in self.balls])
        self.M = np.zeros((B, n), dtype=bool)
        for i, b in enumerate(self.balls):
            self.M[i, list(b.members)] = True
        self.measures = self.M @ space.weights
        self._dilate_measures: dict[float, np.ndarray] = {}
        self.mu6 = self.dilate_measures(6.0)
        self.doubling = self.mu6 <= space.beta0 * self.measures * (1 + _REL_TOL)
        self._tilde = None
        self._k_ratios = None
        self._k_cums: dict[float, np.ndarray] = {}
        self._containment = None
        self._geo_containment = None
        self._pair_segments: dict[float, tuple] = {}

    def dilate_measures(self, factor: float) -> np.ndarray:
        got = self._dilate_measures.get(factor)
        if got is None:
            got = self.space.ball_measures(self.centers, factor * self.radii)
            self._dilate_measures[factor] = got
        return got

    @property
    def tilde(self):
        """(membership matrix, measures, dilation exponents) of smallest doubling dilates."""
        if self._tilde is None:
            space = self.space
            B = len(self.balls)
            k = np.zeros(B, dtype=int)
            assigned = np.zeros(B, dtype=bool)
            mu_k = self.measures.copy()
            power = np.ones(B)
            while not assigned.all():
                mu_next = space.ball_measures(self.centers, 6.0 * power * self.radii)
                dbl = mu_next <= space.beta0 * mu_k * (1 + _REL_TOL)
                newly = dbl & ~assigned
                assigned |= newly
                k[~assigned] += 1
                power[~assigned] *= 6.0
                mu_k = np.where(assigned, mu_k, mu_next)
            t_radii = self.radii * 6.0**k
            MT = self.space.distances[self.centers] <= (t_radii * (1 + _REL_TOL))[:, None]
            t_mu = MT @ space.weights
            self._tilde = (MT, t_mu, k)
        return self._tilde

    @property
    def k_ratios(self) -> np.ndarray:
        """Padded (B, K_max) array of mu(6**k B) / lambda(x_B, 6**k r_B), k = 1.."""
        if self._k_ratios is None:
            space = self.space
            diam = space.diameter
            cols = []
            r = self.radii.copy()
            active = r < diam * (1 - 1e-9)
            while active.any():
                r = r * 6.0
                mu = space.ball_measures(self.centers, r)
                lv = lambda_eval_many(space, self.centers, r, positive=True)
                cols.append(mu / lv)
                active = (r / 6.0) < diam * (1 - 1e-9)
                active &= r < diam * (1 - 1e-9)
            if not cols:
                cols = [np.zeros(len(self.balls))]
            self._k_ratios = np.stack(cols, axis=1)
        return self._k_ratios

    def k_cumsum(self, beta: float) -> np.ndarray:
        """(B, K_max + 1) cumulative layer sums with exponent 1 - beta/dim_n."""
        got = self._k_cums.get(beta)
        if got is None:
            e = 1.0 - beta / self.space.dim_n
            terms = self.k_ratios**e
            got = np.concatenate(
                [np.zeros((terms.shape[0], 1)), np.cumsum(terms, axis=1)], axis=1
            )
            self._k_cums[beta] = got
        return got

    def shell_counts(self, inner_idx: np.ndarray, outer_radii: np.ndarray) -> np.ndarray:
        r_in = self.radii[inner_idx]
        ratio = np.maximum(outer_radii / r_in, 1.0)
        N = np.ceil(np.log(ratio) / np.log(6.0) - 1e-9).astype(int)
        N = np.maximum(N, 0)
        bad = (6.0**N) * r_in < outer_radii * (1 - 1e-9)
        N[bad] += 1
        return N

    def pair_k(self, inner_idx: np.ndarray, outer_idx: np.ndarray, beta: float) -> np.ndarray:
        """Vectorized layer-sum coefficients for index pairs."""
        cums = self.k_cumsum(beta)
        N = self.shell_counts(inner_idx, self.radii[outer_idx])
        N = np.minimum(N, cums.shape[1] - 1)
        return 1.0 + cums[inner_idx, N]

    @property
    def containment(self):
        """Arrays (inner, outer) of all strictly nested member-set pairs."""
        if self._containment is None:
            Mf = self.M.astype(np.float32)
            outside = Mf @ (1.0 - Mf).T  # outside[i, j] = #members of i outside j
            inc = outside < 0.5
            np.fill_diagonal(inc, False)
            inner, outer = np.nonzero(inc)
            self._containment = (inner.astype(np.int64), outer.astype(np.int64))
        return self._containment

    @property
    def geo_containment(self):
        """Arrays (inner, outer) of geometrically nested pairs.

        Geometric nesting means d(x_B, x_Q) + r_B <= r_Q, i.e. the inner ball
        is contained in the outer one as a metric set, not merely as a member
        set; this is the notion under which layer-sum chain properties hold.
        """
        if self._geo_containment is None:
            d = self.space.distances[np.ix_(self.centers, self.centers)]
            geo = (d + self.radii[:, None]) <= self.radii[None, :] * (1 + _REL_TOL)
            np.fill_diagonal(geo, False)
            inner, outer = np.nonzero(geo)
            self._geo_containment = (inner.astype(np.int64), outer.astype(np.int64))
        return self._geo_containment

    @property
    def doubling_pairs(self):
        inner, outer = self.containment
        keep = self.doubling[inner] & self.doubling[outer]
        return inner[keep], outer[keep]

    def doubling_pair_segments(self, beta: float):
        """Doubling pairs sorted by inner ball, with segment starts and K values.

        Returns (inner_sorted, outer_sorted, k_sorted, starts, uniq_inner);
        per-inner-ball reductions can then use np.ufunc.reduceat.
        """
        got = self._pair_segments.get(beta)
        if got is None:
            inner, outer = self.doubling_pairs
            order = np.argsort(inner, kind="stable")
            si, so = inner[order], outer[order]
            k = self.pair_k(si, so, beta)
            if len(si):
                starts = np.concatenate([[0], 1 + np.nonzero(np.diff(si))[0]])
                uniq = si[starts]
            else:
                starts = np.array([], dtype=int)
                uniq = np.array([], dtype=int)
            got = (si, so, k, starts, uniq)
            self._pair_segments[beta] = got
        return got

    def point_max(self, values: np.ndarray, ball_mask: np.ndarray | None = None, empty: float = 0.0) -> np.ndarray:
        """Per-point max of values over balls containing the point."""
        M = self.M if ball_mask is None else self.M[ball_mask]
        v = values if ball_mask is None else values[ball_mask]
        if M.shape[0] == 0:
            return np.full(self.space.n, empty)
        out = np.where(M, v[:, None], -np.inf).max(axis=0)
        return np.where(np.isfinite(out), out, empty)

    def ball_means(self, f: np.ndarray) -> np.ndarray:
        fw = f * self.space.weights
        return (self.M @ fw) / self.measures


def family_index(space: Space) -> FamilyIndex:
    idx = space._caches.get("index")
    if idx is None:
        idx = FamilyIndex(space)
        space._caches["index"] = idx
    return idx
