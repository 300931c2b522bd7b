/*
Copyright 2026 The gradadv Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "gradadv/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace gradadv {

namespace {

constexpr int kUnknowns = 6;  // c_9 .. c_4

using Matrix = std::array<std::array<Real, kUnknowns + 1>, kUnknowns>;

// Partial-pivot elimination on an augmented 6x7 matrix.
std::array<Real, kUnknowns> gauss_solve(Matrix a) {
    for (int col = 0; col < kUnknowns; ++col) {
        int pivot = col;
        for (int r = col + 1; r < kUnknowns; ++r) {
            if (abs(a[r][col]) > abs(a[pivot][col])) {
                pivot = r;
            }
        }
        if (a[pivot][col] == 0) {
            throw SingularSystemError("interpolation system is singular");
        }
        std::swap(a[col], a[pivot]);
        for (int r = col + 1; r < kUnknowns; ++r) {
            const Real factor = a[r][col] / a[col][col];
            for (int c = col; c <= kUnknowns; ++c) {
                a[r][c] -= factor * a[col][c];
            }
        }
    }
    std::array<Real, kUnknowns> x{};
    for (int r = kUnknowns - 1; r >= 0; --r) {
        Real sum = a[r][kUnknowns];
        for (int c = r + 1; c < kUnknowns; ++c) {
            sum -= a[r][c] * x[c];
        }
        x[r] = sum / a[r][r];
    }
    return x;
}

} // namespace

PolyCoefficients solve_interpolation(Real m, const InterpolationTargets& t) {
    if (!(m > 0) || !isfinite(m)) {
        throw SingularSystemError("interpolation half-width must be positive, got " + format_real(m));
    }
    PolyCoefficients p;
    p.c[0] = t.value[1];
    p.c[1] = t.slope[1];
    p.c[2] = t.curvature[1] / 2;
    p.c[3] = 0;

    // Unknowns a_k = c_k m^k for k = 9..4; derivative rows are multiplied by m and m^2
    // so every entry is O(1) regardless of m.
    const Real m2 = m * m;
    const Real c0 = p.c[0];
    const Real c1m = p.c[1] * m;
    const Real c2m2 = p.c[2] * m2;
    const std::array<Real, 6> rhs = {
        t.value[2] - c0 - c1m - c2m2,
        t.value[0] - c0 + c1m - c2m2,
        t.slope[2] * m - c1m - 2 * c2m2,
        t.slope[0] * m - c1m + 2 * c2m2,
        t.curvature[2] * m2 - 2 * c2m2,
        t.curvature[0] * m2 - 2 * c2m2,
    };
    Matrix a{};
    for (int i = 0; i < kUnknowns; ++i) {
        const int k = 9 - i;
        const Real sign = (k % 2 == 0) ? 1 : -1;
        a[0][i] = 1;
        a[1][i] = sign;
        a[2][i] = k;
        a[3][i] = -sign * k;
        a[4][i] = k * (k - 1);
        a[5][i] = sign * k * (k - 1);
    }
    for (int r = 0; r < kUnknowns; ++r) {
        a[r][kUnknowns] = rhs[r];
    }
    const auto x = gauss_solve(a);
    for (int i = 0; i < kUnknowns; ++i) {
        const int k = 9 - i;
        p.c[k] = x[i] / pow(m, static_cast<Real>(k));
    }
    return p;
}

PolyCoefficients solve_bump(Real m, Real f, Real fp, Real fpp) {
    InterpolationTargets t;
    t.value = {0, f, 0};
    t.slope = {0, fp, 0};
    t.curvature = {0, fpp, 0};
    return solve_interpolation(m, t);
}

Real poly_eval(const PolyCoefficients& p, Real s, int order) {
    Real acc = 0;
    switch (order) {
    case 0:
        for (int k = 9; k >= 0; --k) {
            acc = acc * s + p.c[k];
        }
        return acc;
    case 1:
        for (int k = 9; k >= 1; --k) {
            acc = acc * s + k * p.c[k];
        }
        return acc;
    case 2:
        for (int k = 9; k >= 2; --k) {
            acc = acc * s + k * (k - 1) * p.c[k];
        }
        return acc;
    default:
        throw InvalidArgumentError("poly_eval order must be 0, 1 or 2");
    }
}

Real interpolation_residual(const PolyCoefficients& p, Real m, const InterpolationTargets& t) {
    const std::array<Real, 3> points = {-m, 0, m};
    Real worst = 0;
    for (int i = 0; i < 3; ++i) {
        const std::array<Real, 3> target = {t.value[i], t.slope[i], t.curvature[i]};
        for (int order = 0; order < 3; ++order) {
            const Real err = abs(poly_eval(p, points[i], order) - target[order]);
            worst = std::max(worst, err / std::max<Real>(1, abs(target[order])));
        }
    }
    return worst;
}

} // namespace gradadv
