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

#pragma once

#include <array>

#include "gradadv/core.hpp"

namespace gradadv {

// Coefficients c_0..c_9 of sum c_i s^i.
struct PolyCoefficients {
    std::array<Real, 10> c{};
};

// Targets of the nine interpolation constraints at s = -m, 0, +m.
struct InterpolationTargets {
    std::array<Real, 3> value{};       // P(-m), P(0), P(m)
    std::array<Real, 3> slope{};       // P'(-m), P'(0), P'(m)
    std::array<Real, 3> curvature{};   // P''(-m), P''(0), P''(m)
};

// Degree-9 polynomial meeting all nine constraints, with the free coefficient c_3 fixed to 0.
PolyCoefficients solve_interpolation(Real m, const InterpolationTargets& t);

// Bump with zero value, slope and curvature at s = +-m.
PolyCoefficients solve_bump(Real m, Real f, Real fp, Real fpp);

Real poly_eval(const PolyCoefficients& p, Real s, int order);

// Largest constraint violation, each scaled by max(1, |target|).
Real interpolation_residual(const PolyCoefficients& p, Real m, const InterpolationTargets& t);

} // namespace gradadv
