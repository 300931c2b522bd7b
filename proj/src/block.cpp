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

#include "gradadv/block.hpp"

#include <cmath>

namespace gradadv {

namespace {

const Real kFiveSixteenths = 5.0L / 16.0L;
const Real kExpScale = 25.0L / 256.0L;

enum class Branch { entry, rise, left_exp, plateau, right_exp, fall, exit };

Branch branch_of(Real theta, const BlockParams& p) {
    const Real m = p.m;
    if (theta < (2 - p.d) * m / 16) {
        return Branch::entry;
    }
    if (theta < 3 * m / 16) {
        return Branch::rise;
    }
    if (theta < m / 2) {
        return Branch::left_exp;
    }
    if (theta == m / 2) {
        return Branch::plateau;
    }
    if (theta < 13 * m / 16) {
        return Branch::right_exp;
    }
    if (theta < (p.delta + 14) * m / 16) {
        return Branch::fall;
    }
    return Branch::exit;
}

void check_domain(Real theta, const BlockParams& p) {
    validate(p);
    if (!(theta >= 0 && theta <= p.m)) {
        throw DomainError("block argument " + format_real(theta) + " outside [0, " + format_real(p.m) + "]");
    }
}

Real plateau_level(const BlockParams& p) {
    return p.m * (11 + p.d * p.d - 4 * p.d) / 32;
}

// exp(e) / |t|^k without intermediate overflow or 0/0.
Real exp_over_power(Real e, Real t, int k) {
    return exp(e - k * log(abs(t)));
}

} // namespace

void validate(const BlockParams& p) {
    if (!(p.m > 0) || !isfinite(p.m)) {
        throw InvalidArgumentError("block length must be positive and finite, got " + format_real(p.m));
    }
    if (!(p.d > 0 && p.d <= 1)) {
        throw InvalidArgumentError("entry slope must lie in (0,1], got " + format_real(p.d));
    }
    if (!(p.delta > 0 && p.delta <= 1)) {
        throw InvalidArgumentError("exit slope must lie in (0,1], got " + format_real(p.delta));
    }
}

Real block_rise(const BlockParams& p) {
    const Real d = p.d;
    const Real e = p.delta;
    return p.m * (22 + d * d + e * e - 4 * d - 4 * e) / 32;
}

Real eval_block(Real theta, const BlockParams& p) {
    check_domain(theta, p);
    const Real m = p.m;
    const Real d = p.d;
    const Real e = p.delta;
    switch (branch_of(theta, p)) {
    case Branch::entry:
        return -d * theta;
    case Branch::rise: {
        const Real s = theta - m / 8;
        return 8 * s * s / m - m * (4 * d - d * d) / 32;
    }
    case Branch::left_exp: {
        const Real t = theta / m - 0.5L;
        return -kFiveSixteenths * m * exp(kFiveSixteenths / t + 1) + plateau_level(p);
    }
    case Branch::plateau:
        return plateau_level(p);
    case Branch::right_exp: {
        const Real t = theta / m - 0.5L;
        return kFiveSixteenths * m * exp(-kFiveSixteenths / t + 1) + plateau_level(p);
    }
    case Branch::fall: {
        const Real s = theta - 7 * m / 8;
        return -8 * s * s / m + m * (22 + d * d - 4 * d) / 32;
    }
    case Branch::exit:
        return -e * theta + m * (22 + d * d + e * e - 4 * d + 28 * e) / 32;
    }
    return 0;
}

Real grad_block(Real theta, const BlockParams& p) {
    check_domain(theta, p);
    const Real m = p.m;
    switch (branch_of(theta, p)) {
    case Branch::entry:
        return -p.d;
    case Branch::rise:
        return 16 * (theta - m / 8) / m;
    case Branch::left_exp: {
        const Real t = theta / m - 0.5L;
        return kExpScale * exp_over_power(kFiveSixteenths / t + 1, t, 2);
    }
    case Branch::plateau:
        return 0;
    case Branch::right_exp: {
        const Real t = theta / m - 0.5L;
        return kExpScale * exp_over_power(-kFiveSixteenths / t + 1, t, 2);
    }
    case Branch::fall:
        return -16 * (theta - 7 * m / 8) / m;
    case Branch::exit:
        return -p.delta;
    }
    return 0;
}

Real hess_block(Real theta, const BlockParams& p) {
    check_domain(theta, p);
    const Real m = p.m;
    switch (branch_of(theta, p)) {
    case Branch::entry:
    case Branch::exit:
        return 0;
    case Branch::rise:
        return 16 / m;
    case Branch::left_exp: {
        const Real t = theta / m - 0.5L;
        const Real e = kFiveSixteenths / t + 1;
        // t < 0 here, so -2 t^{-3} = 2 |t|^{-3}
        return kExpScale / m * (-kFiveSixteenths * exp_over_power(e, t, 4) + 2 * exp_over_power(e, t, 3));
    }
    case Branch::plateau:
        return 0;
    case Branch::right_exp: {
        const Real t = theta / m - 0.5L;
        const Real e = -kFiveSixteenths / t + 1;
        return kExpScale / m * (kFiveSixteenths * exp_over_power(e, t, 4) - 2 * exp_over_power(e, t, 3));
    }
    case Branch::fall:
        return -16 / m;
    }
    return 0;
}

} // namespace gradadv
