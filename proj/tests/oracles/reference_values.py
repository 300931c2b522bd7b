#!/usr/bin/env python3
# Copyright 2026 The gradadv Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#                 http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent reference values for the C++ test suite.

Rational arithmetic (fractions) for the polynomial systems and mpmath at 60
digits for everything transcendental. The printed values are frozen into the
C++ tests; rerun this script to regenerate them.
"""
from fractions import Fraction as Fr

import mpmath as mp

mp.mp.dps = 60


def block(theta, m, d, dl):
    theta, m, d, dl = map(mp.mpf, (theta, m, d, dl))
    if theta <= 0:
        return -d * theta
    if theta < (2 - d) / 16 * m:
        return -d * theta
    if theta < mp.mpf(3) / 16 * m:
        return 8 / m * (theta - m / 8) ** 2 - m * (-d * d + 4 * d) / 32
    plateau = m * (11 + d * d - 4 * d) / 32
    if theta < m / 2:
        return -5 * m / 16 * mp.exp(mp.mpf(5) / 16 / (theta / m - mp.mpf(1) / 2) + 1) + plateau
    if theta == m / 2:
        return plateau
    if theta < mp.mpf(13) / 16 * m:
        return 5 * m / 16 * mp.exp(-mp.mpf(5) / 16 / (theta / m - mp.mpf(1) / 2) + 1) + plateau
    if theta < (dl + 14) / 16 * m:
        return -8 / m * (theta - 7 * m / 8) ** 2 + m * (22 + d * d - 4 * d) / 32
    return -dl * theta + m * (22 + d * d + dl * dl - 4 * d + 28 * dl) / 32


def block_derivs(theta, m, d, dl):
    f = lambda t: block(t, m, d, dl)
    return f(theta), mp.diff(f, theta, 1), mp.diff(f, theta, 2)


def solve(matrix, rhs):
    n = len(rhs)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col] / a[col][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def interpolate(m, value, slope, curv):
    """value/slope/curv are (at -m, at 0, at +m); c3 = 0."""
    m = Fr(m)
    c = [Fr(value[1]), Fr(slope[1]), Fr(curv[1]) / 2, Fr(0)]
    ks = list(range(4, 10))
    rows, rhs = [], []
    for s, idx in ((m, 2), (-m, 0)):
        low = lambda order: sum(
            (Fr(1) if order == 0 else Fr(i) if order == 1 else Fr(i * (i - 1))) * c[i] * s ** (i - order)
            for i in range(4) if i >= order)
        for order, target in ((0, value[idx]), (1, slope[idx]), (2, curv[idx])):
            row = []
            for k in ks:
                coef = Fr(1) if order == 0 else Fr(k) if order == 1 else Fr(k * (k - 1))
                row.append(coef * s ** (k - order))
            rows.append(row)
            rhs.append(Fr(target) - low(order))
    tail = solve(rows, rhs)
    return c + tail


def show(label, values):
    print(label)
    for v in values:
        print("    " + mp.nstr(mp.mpf(v.numerator) / v.denominator if isinstance(v, Fr) else v, 40))


if __name__ == "__main__":
    print("== block f(theta; m, d, delta), f', f''")
    for m, d, dl in ((1, 1, 1), (2, Fr(1, 2), Fr(1, 4)), (8, 1, 1)):
        for t in (Fr(1, 20), Fr(3, 20), Fr(3, 10), Fr(1, 2), Fr(7, 10), Fr(17, 20), Fr(19, 20)):
            th = mp.mpf(t.numerator) / t.denominator * m
            v, g, h = block_derivs(th, m, mp.mpf(d.numerator) / d.denominator if isinstance(d, Fr) else d,
                                   mp.mpf(dl.numerator) / dl.denominator if isinstance(dl, Fr) else dl)
            print(f"  m={m} d={d} delta={dl} theta={mp.nstr(th, 20)}: {mp.nstr(v, 30)} {mp.nstr(g, 30)} {mp.nstr(h, 30)}")

    print("== bump coefficients c0..c9")
    for m, f, fp, fpp in ((Fr(1, 4), Fr(-1, 2), -1, 0), (1, 1, 0, 0), (Fr(1, 2), 2, -3, 5), (Fr(3, 10), Fr(-7, 3), Fr(11, 5), Fr(-1, 7))):
        show(f"  m={m} f={f} fp={fp} fpp={fpp}", interpolate(m, (0, f, 0), (0, fp, 0), (0, fpp, 0)))

    print("== general interpolation c0..c9")
    show("  m=1 value=(1,2,3) slope=(-1,0,1) curv=(2,-2,2)", interpolate(1, (1, 2, 3), (-1, 0, 1), (2, -2, 2)))

    print("== NAG Theta_t, Y_t, Z_t for m=1 on slope -1")
    m = mp.mpf(1)
    th, z, B = mp.mpf(0), mp.mpf(0), mp.mpf(0)
    A = B + 1 / m
    for t in range(6):
        B1 = B + (1 + mp.sqrt(4 * B + 1)) / 2
        A1 = B1 + 1 / m
        y = th + (1 - A / A1) * (z - th)
        print(f"  t={t}: Theta={mp.nstr(th, 30)} Y={mp.nstr(y, 30)} Z={mp.nstr(z, 30)}")
        th, z, B, A = y + m, z + m * (A1 - A), B1, A1

    print("== Armijo targets (delta=1/2, alpha=1, rho=1/2)")
    dl = Fr(1, 2)
    for j in range(0, 11):
        s = sum(dl ** (2 * k + 4 - 2 ** (k + 2)) for k in range(j))
        f = -Fr(1, 2) * s
        fp = -dl ** (j + 2 - 2 ** (j + 1))
        S = sum(dl ** (i - 2 ** (i - 1)) for i in range(1, j + 1))
        print(f"  j={j}: S={S} f={f} fp={fp}")

    print("== audit ratios")
    x = mp.mpf(1)
    for th in (mp.mpf(2), mp.mpf("1e-6")):
        print("  factor_analysis x=1 theta", th, mp.nstr((th ** -2 + x * x) / (-1 / th + th * x * x) ** 2, 30))
    for y in (1, 2, 5):
        th = mp.mpf("1e-9")
        print("  gee y", y, mp.nstr(abs(y - mp.sqrt(th) / 2) / (y - mp.sqrt(th)) ** 2, 30))
    for k in (5, 10, 11, 12):
        th = -mp.mpf(4) ** -k
        u = -2 * th
        print("  inv_gaussian y=1 k", k, mp.nstr(1 / (u ** mp.mpf(1.5) - 2 * u + mp.sqrt(u)), 30))
    for w in (10, 100):
        w = mp.mpf(w)
        g2 = (w ** 3 / 2) ** 2
        h = mp.sqrt((w ** 6 / 4) ** 2 + 6 * (w ** 2 / 2) ** 2)
        print("  ffnn (0,w,w,w) w", w, mp.nstr(h / g2, 30))
