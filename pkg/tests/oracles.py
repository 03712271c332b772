"""Independent brute-force reference implementations.

Everything here is written with plain Python loops straight from the
definitions, deliberately sharing no code with the library, so agreement is
evidence of correctness rather than of shared bugs.  All functions take raw
distance tables / weight lists plus a power-law (c, k) dominating function.
"""
from __future__ import annotations

import math

TOL = 1e-12


def ball_members(d, c, r):
    return tuple(j for j in range(len(d)) if d[c][j] <= r * (1 + TOL))


def ball_measure(d, w, c, r):
    return sum(w[j] for j in ball_members(d, c, r))


def lam(c_lam, k_lam, r):
    return c_lam * r**k_lam if r > 0 else 0.0


def beta0(c_lam, k_lam, dim):
    c_lambda = max(1.0, 2.0**k_lam)
    return 1.01 * max(c_lambda ** (3 * math.log2(6)), 6.0**dim)


def is_doubling(d, w, c, r, b0):
    return ball_measure(d, w, c, 6 * r) <= b0 * ball_measure(d, w, c, r) * (1 + TOL)


def doubling_dilate_radius(d, w, c, r, b0):
    while not is_doubling(d, w, c, r, b0):
        r *= 6.0
    return r


def shell_count(r_in, r_out):
    n, r = 0, r_in
    while r < r_out * (1 - 1e-9):
        r *= 6.0
        n += 1
    return n


def k_coefficient(d, w, c_lam, k_lam, dim, center, r_in, r_out, beta=0.0):
    total = 1.0
    r = r_in
    for _ in range(shell_count(r_in, r_out)):
        r *= 6.0
        total += (ball_measure(d, w, center, r) / lam(c_lam, k_lam, r)) ** (
            1.0 - beta / dim
        )
    return total


def d_min(d):
    n = len(d)
    return min(d[i][j] for i in range(n) for j in range(n) if i != j)


def canonical_family(d, w):
    """Distinct member sets; representative = smallest (radius, center)."""
    n = len(d)
    r0 = d_min(d) / 7.0
    best = {}
    for c in range(n):
        radii = sorted({d[c][j] for j in range(n) if d[c][j] > 0})
        for r in [r0] + radii:
            mem = ball_members(d, c, r)
            if mem not in best or (r, c) < best[mem]:
                best[mem] = (r, c)
    return sorted(
        (c, r, mem, sum(w[j] for j in mem)) for mem, (r, c) in best.items()
    )


def mean(d, w, f, mem):
    tot = sum(w[j] for j in mem)
    return sum(f[j] * w[j] for j in mem) / tot


def doubling_maximal(d, w, c_lam, k_lam, dim, f):
    b0 = beta0(c_lam, k_lam, dim)
    fam = canonical_family(d, w)
    out = []
    for x in range(len(d)):
        best = None
        for c, r, mem, mu in fam:
            if x in mem and is_doubling(d, w, c, r, b0):
                m = mean(d, w, [abs(v) for v in f], mem)
                best = m if best is None else max(best, m)
        out.append(best)
    return out


def fractional_maximal(d, w, f, r_exp, eta, beta, dim):
    fam = canonical_family(d, w)
    out = []
    for x in range(len(d)):
        best = 0.0
        for c, r, mem, mu in fam:
            if x not in mem:
                continue
            mass = sum(abs(f[j]) ** r_exp * w[j] for j in mem)
            mu_eta = ball_measure(d, w, c, eta * r)
            val = (mu_eta ** (-(1.0 - beta * r_exp / dim)) * mass) ** (1.0 / r_exp)
            best = max(best, val)
        out.append(best)
    return out


def sharp_maximal(d, w, c_lam, k_lam, dim, f, beta=0.0):
    b0 = beta0(c_lam, k_lam, dim)
    fam = canonical_family(d, w)
    out = []
    for x in range(len(d)):
        term1 = 0.0
        for c, r, mem, mu in fam:
            if x not in mem:
                continue
            rt = doubling_dilate_radius(d, w, c, r, b0)
            m_tilde = mean(d, w, f, ball_members(d, c, rt))
            mu6 = ball_measure(d, w, c, 6 * r)
            term1 = max(
                term1, sum(abs(f[j] - m_tilde) * w[j] for j in mem) / mu6
            )
        term2 = 0.0
        for cb, rb, mb, _ in fam:
            if x not in mb or not is_doubling(d, w, cb, rb, b0):
                continue
            for cq, rq, mq, _ in fam:
                if mb == mq or not set(mb) <= set(mq):
                    continue
                if not is_doubling(d, w, cq, rq, b0):
                    continue
                kk = k_coefficient(d, w, c_lam, k_lam, dim, cb, rb, rq, beta)
                term2 = max(
                    term2, abs(mean(d, w, f, mb) - mean(d, w, f, mq)) / kk
                )
        out.append(term1 + term2)
    return out


def rbmo_norm(d, w, c_lam, k_lam, dim, b, rho=6.0):
    b0 = beta0(c_lam, k_lam, dim)
    fam = canonical_family(d, w)
    osc = 0.0
    for c, r, mem, mu in fam:
        rt = doubling_dilate_radius(d, w, c, r, b0)
        m_tilde = mean(d, w, b, ball_members(d, c, rt))
        mu_rho = ball_measure(d, w, c, rho * r)
        osc = max(osc, sum(abs(b[j] - m_tilde) * w[j] for j in mem) / mu_rho)
    pair = 0.0
    for cb, rb, mb, _ in fam:
        if not is_doubling(d, w, cb, rb, b0):
            continue
        for cq, rq, mq, _ in fam:
            if mb == mq or not set(mb) <= set(mq):
                continue
            if not is_doubling(d, w, cq, rq, b0):
                continue
            kk = k_coefficient(d, w, c_lam, k_lam, dim, cb, rb, rq, 0.0)
            pair = max(pair, abs(mean(d, w, b, mb) - mean(d, w, b, mq)) / kk)
    return max(osc, pair)


def fractional_integral(d, w, c_lam, k_lam, dim, alpha, f):
    n = len(d)
    out = []
    for x in range(n):
        total = 0.0
        for y in range(n):
            if y == x:
                continue
            total += lam(c_lam, k_lam, d[x][y]) ** (alpha / dim - 1.0) * f[y] * w[y]
        out.append(total)
    return out


def commutator(d, w, c_lam, k_lam, dim, alpha, b, f):
    i_f = fractional_integral(d, w, c_lam, k_lam, dim, alpha, f)
    i_bf = fractional_integral(
        d, w, c_lam, k_lam, dim, alpha, [b[j] * f[j] for j in range(len(d))]
    )
    return [b[x] * i_f[x] - i_bf[x] for x in range(len(d))]


def lp_norm(w, f, p):
    if math.isinf(p):
        return max(abs(v) for v in f)
    return sum(abs(v) ** p * wx for v, wx in zip(f, w)) ** (1.0 / p)
