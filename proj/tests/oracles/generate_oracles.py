"""Brute-force reference values for the beta ratio of fixed radial densities.

The pair integral is evaluated directly as an adaptive two-dimensional
quadrature over (r, s) with the angle-averaged kernel 1/max(r, s); nothing is
shared with the library code.  Run once; the output is committed.

    python3 generate_oracles.py > beta_oracles.json
"""
import json

import mpmath as mp

mp.mp.dps = 30

DENSITIES = {
    "exp": (lambda r: mp.exp(-2 * r), [0, 1, 4, mp.inf]),
    "gauss": (lambda r: mp.exp(-r * r), [0, 1, 3, mp.inf]),
    "r2exp": (lambda r: r * r * mp.exp(-r), [0, 2, 8, mp.inf]),
    "algebraic": (lambda r: (1 + r * r) ** -5, [0, 1, 10, mp.inf]),
    "shellcore": (
        lambda r: mp.exp(-((r - 1) / mp.mpf("0.2")) ** 2 / 2) + mp.mpf("0.5") * mp.exp(-4 * r),
        [0, mp.mpf("0.6"), 1, mp.mpf("1.4"), 3, mp.inf],
    ),
    "ball": (lambda r: 1, [0, 1]),
}


def beta(rho, pts):
    shell = lambda r: 4 * mp.pi * r * r * rho(r)
    mass = mp.quad(shell, pts)
    j = mp.quad(lambda r: r * shell(r), pts)

    # 1/2 int int (r^2 + s^2)/max(r, s) over both orderings = integral over r < s.
    def inner(s):
        return mp.quad(lambda r: shell(r) * (r * r + s * s), [0, s]) / s

    numerator = mp.quad(lambda s: shell(s) * inner(s), pts)
    return numerator / (j * mass)


if __name__ == "__main__":
    out = {name: float(beta(*args)) for name, args in DENSITIES.items()}
    print(json.dumps(out, indent=2, sort_keys=True))
