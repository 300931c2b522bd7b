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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gradadv/objective.hpp"
#include "gradadv/trace.hpp"

namespace gradadv {

struct LandingTolerance {
    Real abs{"1e-9"};
    Real rel{"1e-9"};

    Real at(Real target) const;
};

// Default tolerance, overridden by GRAD_ADVERSARY_TOL when set.
LandingTolerance default_landing_tolerance();

struct ExpectedPoint {
    Real value = 0;
    // Half-width of the region where the objective is locally linear (or the bump half-width).
    std::optional<Real> radius;
};

struct ExpectedProbe {
    std::size_t record = 0;
    ProbeKind kind = ProbeKind::trial;
    ExpectedPoint point;
};

struct ExpectedPath {
    std::vector<ExpectedPoint> iterates;
    std::vector<ExpectedProbe> probes;
    Real origin = 0;
};

struct StepDiagnostic {
    std::size_t k = 0;
    std::string what;
    Real observed = 0;
    Real expected = 0;
    Real tolerance = 0;
    bool ok = true;
};

struct Verdict {
    std::string claim;
    bool pass = false;
    std::string message;
    std::vector<StepDiagnostic> steps;

    std::optional<std::size_t> first_failure() const;
};

namespace claims {
inline constexpr const char* anchor_tracking = "anchor_tracking";
inline constexpr const char* divergence = "divergence";
inline constexpr const char* gradient_floor = "gradient_floor";
inline constexpr const char* eval_growth = "eval_growth";
} // namespace claims

Verdict check_anchor_tracking(const Trace& trace, const ExpectedPath& path, const LandingTolerance& tol);

// With a path: F(theta_k) non-decreasing and F(theta_J) >= 7 (S_J - S_0)/16 - tol.
// Without: F(theta_k) strictly increasing. Values come from the uncounted shadow oracle.
Verdict check_divergence(const Trace& trace, const ScalarFunction& shadow, const ExpectedPath* path = nullptr);

// Minimum |F'| over main iterates and, when a shadow is given, over NAG y probes.
Verdict check_gradient_floor(const Trace& trace, Real bound, const ScalarFunction* shadow = nullptr);

Verdict check_eval_growth(const Trace& trace, unsigned base);

} // namespace gradadv
