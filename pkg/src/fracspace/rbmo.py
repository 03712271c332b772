"""Ball means, regularized mean-oscillation norms, telescoping checks."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Ball, BallPair, family_index, make_ball, shell_count, smallest_doubling_dilate
from .report import VerificationReport
from .space import Space, as_field


@dataclass(frozen=True)
class RbmoEstimate:
    """Regularized mean-oscillation norm with the balls attaining each term."""

    norm_value: float
    rho: float
    osc_term: float
    pair_term: float
    witness_osc: Ball | None
    witness_pair: BallPair | None


def mean_on_ball(space: Space, f, ball: Ball) -> float:
    f = as_field(space, f)
    mem = list(ball.members)
    w = space.weights[mem]
    return float((f[mem] * w).sum() / w.sum())


def weighted_median(values: np.ndarray, weights: np.ndarray) -> float:
    """Smallest value whose cumulative weight reaches half the total."""
    order = np.argsort(values, kind="stable")
    cw = np.cumsum(weights[order])
    i = int(np.searchsorted(cw, 0.5 * cw[-1], side="left"))
    return float(values[order[i]])


def _pair_witness(space: Space, idx, i: int, j: int) -> BallPair:
    inner, outer = idx.balls[i], idx.balls[j]
    return BallPair(inner=inner, outer=outer, n_bq=shell_count(inner.radius, outer.radius))


def _estimate(space: Space, b: np.ndarray, rho: float, osc_centers: np.ndarray,
              pair_values: np.ndarray, pairs: tuple) -> RbmoEstimate:
    """Shared core: oscillation against per-ball centers, pair term over pairs."""
    idx = family_index(space)
    dev = np.abs(b[None, :] - osc_centers[:, None]) * space.weights[None, :]
    osc = np.where(idx.M, dev, 0.0).sum(axis=1) / idx.dilate_measures(rho)
    i_osc = int(np.argmax(osc))
    osc_term = float(osc[i_osc])

    inner, outer = pairs
    pair_term = 0.0
    witness_pair = None
    if len(inner):
        vals = np.abs(pair_values[inner] - pair_values[outer]) / idx.pair_k(inner, outer, 0.0)
        i_pair = int(np.argmax(vals))
        pair_term = float(vals[i_pair])
        witness_pair = _pair_witness(space, idx, int(inner[i_pair]), int(outer[i_pair]))
    return RbmoEstimate(
        norm_value=max(osc_term, pair_term),
        rho=float(rho),
        osc_term=osc_term,
        pair_term=pair_term,
        witness_osc=idx.balls[i_osc],
        witness_pair=witness_pair,
    )


def rbmo_norm(space: Space, b, rho: float = 6.0) -> RbmoEstimate:
    """Max of the rho-inflated mean-oscillation term and the doubling-pair term.

    The oscillation of b on each canonical ball B is taken against the mean of
    b on the smallest doubling dilate of B and normalized by mu(rho B); the
    pair term divides |m_B(b) - m_Q(b)| by the layer-sum coefficient over
    nested doubling pairs.
    """
    if rho <= 1:
        raise ValueError("rho must exceed 1")
    b = as_field(space, b)
    idx = family_index(space)
    MT, t_mu, _ = idx.tilde
    t_means = (MT @ (b * space.weights)) / t_mu
    return _estimate(space, b, rho, t_means, idx.ball_means(b), idx.doubling_pairs)


def rbmo_norm_assignment(space: Space, b, rho: float = 6.0) -> RbmoEstimate:
    """Assignment-form norm with b_B the weight-median of b on B.

    The median minimizes the absolute oscillation integral per ball; the pair
    term compares the assigned numbers across all nested canonical pairs.
    """
    if rho <= 1:
        raise ValueError("rho must exceed 1")
    b = as_field(space, b)
    idx = family_index(space)
    medians = np.array([
        weighted_median(b[list(ball.members)], space.weights[list(ball.members)])
        for ball in idx.balls
    ])
    return _estimate(space, b, rho, medians, medians, idx.containment)


def telescoping_check(space: Space, b, rho: float = 6.0) -> VerificationReport:
    """Fitted constant of the chain estimate along 6-adic (6/5)-dilates.

    For each canonical ball B and k up to saturation, compares the means of b
    on the smallest doubling dilates of B and of 6**k (6/5) B; the difference
    is measured in units of k times the oscillation norm of b.
    """
    b = as_field(space, b)
    norm = rbmo_norm(space, b, rho).norm_value
    if norm == 0.0:
        return VerificationReport("telescoping", passed=True, fitted_constant=0.0,
                                  details={"vacuous": True})
    idx = family_index(space)
    MT, t_mu, _ = idx.tilde
    t_means = (MT @ (b * space.weights)) / t_mu
    fitted = 0.0
    witness = {}
    for i, ball in enumerate(idx.balls):
        k = 1
        while True:
            q = make_ball(space, ball.center, 6.0**k * 1.2 * ball.radius)
            q_tilde = smallest_doubling_dilate(space, q)
            val = abs(mean_on_ball(space, b, q_tilde) - t_means[i]) / (k * norm)
            if val > fitted:
                fitted = val
                witness = {"center": ball.center, "radius": ball.radius, "k": k}
            if len(q.members) == space.n:
                break
            k += 1
    return VerificationReport(
        experiment="telescoping",
        passed=math.isfinite(fitted),
        fitted_constant=float(fitted),
        witness=witness,
        details={"rho": rho, "norm": norm},
    )


def john_nirenberg_check(space: Space, b, p_grid=(1.0, 2.0, 4.0), rho: float = 6.0) -> VerificationReport:
    """Fitted constants of the p-mean oscillation bound per exponent.

    For each p, the max over canonical balls of
    ((1/mu(rho B)) int_B |b - m_{B tilde}(b)|**p)**(1/p) divided by the
    oscillation norm of b.
    """
    b = as_field(space, b)
    norm = rbmo_norm(space, b, rho).norm_value
    if norm == 0.0:
        return VerificationReport("john_nirenberg", passed=True, fitted_constant=0.0,
                                  details={"vacuous": True})
    idx = family_index(space)
    MT, t_mu, _ = idx.tilde
    t_means = (MT @ (b * space.weights)) / t_mu
    dev = np.abs(b[None, :] - t_means[:, None])
    mu_rho = idx.dilate_measures(rho)
    per_p = {}
    fitted = 0.0
    for p in p_grid:
        if p < 1:
            raise ValueError("p grid entries must be >= 1")
        mass = np.where(idx.M, dev**p * space.weights[None, :], 0.0).sum(axis=1)
        vals = (mass / mu_rho) ** (1.0 / p)
        c = float(vals.max()) / norm
        per_p[f"p={p:g}"] = c
        fitted = max(fitted, c)
    return VerificationReport(
        experiment="john_nirenberg",
        passed=math.isfinite(fitted),
        fitted_constant=fitted,
        details={"per_p": per_p, "rho": rho, "norm": norm},
    )


def rho_independence(space: Space, b, rhos=(2.0, 6.0, 10.0)) -> VerificationReport:
    """Ratio of the largest to smallest norm across inflation parameters."""
    b = as_field(space, b)
    norms = {f"rho={r:g}": rbmo_norm(space, b, r).norm_value for r in rhos}
    vals = list(norms.values())
    if min(vals) == 0.0:
        ratio = 1.0 if max(vals) == 0.0 else math.inf
    else:
        ratio = max(vals) / min(vals)
    return VerificationReport(
        experiment="rho_independence",
        passed=math.isfinite(ratio),
        fitted_constant=float(ratio),
        details={"norms": norms},
    )
