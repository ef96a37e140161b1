"""Reference values frozen into the C++ unit tests.

Computed with scipy/mpmath along routes that share no code with the library:
token budgets by brentq on scipy's betainc, the deficit law by integrating
the inverse-Gaussian first-passage density, and the lower-bound moments by
direct enumeration of the catalog.
"""
import math

import mpmath as mp
from scipy.optimize import brentq
from scipy.special import betainc

mp.mp.dps = 30

E_MEM, E_COMP, BW, TP = 1e-11, 1e-12, 5e12, 2e13
LAYERS, ATTN = 48, 2048
A, B, ALPHA, BETA, E_IRR = 406.4, 410.7, 0.34, 0.28, 1.69
STEEP, OMEGA, SKILLS, EPS = 5.0, 20.0, 50, 0.1
GAMMA = A * (1 + ALPHA / BETA)


def coeffs(n):
    attn = LAYERS * ATTN
    return ((E_MEM + 2 * E_COMP) * n, E_COMP * attn, n / BW + 2 * n / TP, attn / TP)


def budget(level, n):
    p = 1 / (1 + math.exp(-STEEP * (level - (E_IRR + GAMMA * n ** -ALPHA))))
    f = lambda w: betainc(SKILLS, w / OMEGA - SKILLS + 1, p) - (1 - EPS)
    return brentq(f, OMEGA * SKILLS + 1e-9, 1e9, xtol=1e-10, rtol=1e-14)


def service(level, n):
    al, be, a, b = coeffs(n)
    w = budget(level, n)
    return w, math.ceil(a * w + b * w * w), al * w + be * w * w


def first_passage_cdf(z, mu, sigma, T):
    # P(D_T <= z) = 1 - P(hit -z before T)
    if z <= 0:
        return mp.mpf(0)
    dens = lambda t: z / (sigma * mp.sqrt(2 * mp.pi * t ** 3)) * mp.exp(-(z + mu * t) ** 2 / (2 * sigma ** 2 * t))
    return 1 - mp.quad(dens, [0, T / 100, T / 10, T])


def expected_deficit(mu, sigma, T):
    top = max(0.0, -mu) * T + 30 * sigma * math.sqrt(T)
    return mp.quad(lambda z: 1 - first_passage_cdf(z, mu, sigma, T), [0, top / 8, top / 2, top])


if __name__ == "__main__":
    for level in (1.7, 1.9):
        for n in (1e9, 1e10):
            print("service", level, n, ["%.10g" % v for v in service(level, n)])
    levels = [1.7 + k * 0.2 / 9 for k in range(10)]
    deadlines = {0: 60, 4: 17, 9: 60}
    first = second = 0.0
    for k, level in enumerate(levels):
        quotes = [service(level, n) for n in (1e9, 1e10)]
        slack = deadlines.get(k, 2 * max(q[1] for q in quotes))
        e = min(q[2] for q in quotes if q[1] <= slack)
        first += e / 10
        second += e * e / 10
    print("cbar_lb %.10g second %.10g" % (first, second))
    for z, mu, sigma, T in [(50, 0, 1, 1e4), (120, 0.01, 1, 1e4), (150, -0.01, 1, 1e4), (3, 0.5, 2, 30)]:
        print("cdf", z, mu, sigma, T, mp.nstr(first_passage_cdf(z, mu, sigma, T), 17))
    for mu, sigma, T in [(0.0, 1.0, 1e4), (0.01, 1.0, 1e4), (-0.01, 1.0, 1e4), (0.3, 2.0, 50)]:
        print("mean", mu, sigma, T, mp.nstr(expected_deficit(mu, sigma, T), 17))
