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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gradadv/objective.hpp"
#include "gradadv/trace.hpp"
#include "gradadv/verify.hpp"

namespace gradadv {

enum class MethodId {
    constant_gd,
    bb,
    nag,
    bregman,
    negative_curvature,
    lipschitz_approx,
    wngrad,
    adagrad_like,
    polyak,
    armijo,
    cubic_newton,
    acr,
    dynamic
};

const char* to_string(MethodId method);

struct ParamSpec {
    std::string name;
    Real default_value = 0;
    std::string range;
    // Default computed from the other parameters; default_value is unused.
    bool derived = false;
};

struct ScenarioInfo {
    std::string name;
    MethodId method;
    std::string family;
    std::string notes;
    std::vector<ParamSpec> params;
};

const std::vector<ScenarioInfo>& catalog();

// Largest step budget accepted by any scenario with unbounded feasibility.
inline constexpr std::size_t kFeasibleCap = 1000000;

namespace detail {
class ScenarioImpl;
}

// An objective, a method configuration and the iterates the construction forces.
class Scenario {
public:
    explicit Scenario(std::shared_ptr<const detail::ScenarioImpl> impl);

    const ScenarioInfo& info() const;
    const std::string& name() const { return info().name; }
    MethodId method() const { return info().method; }
    const std::map<std::string, Real>& params() const;
    Real theta0() const;

    std::optional<unsigned> expected_eval_growth() const;
    std::optional<Real> expected_grad_floor() const;

    // The objective for a run of J steps (bump objectives depend on J).
    std::shared_ptr<const ScalarFunction> function(std::size_t J) const;

    std::size_t max_feasible_J() const;
    // Throws OverflowError carrying max_feasible_J() when J is out of range.
    void require_feasible(std::size_t J) const;

    std::vector<Real> expected_anchors(std::size_t J) const;
    ExpectedPath expected_path(std::size_t J) const;
    RunBudget budget(std::size_t J) const;

    Trace run(std::size_t J) const;
    Trace run(const Objective& obj, std::size_t J) const;

    // The scenario's verdict set for a trace of J = iterations - 1 steps.
    std::vector<Verdict> verify(const Trace& trace, const LandingTolerance& tol) const;

private:
    std::shared_ptr<const detail::ScenarioImpl> impl_;
};

Scenario build_scenario(const std::string& name, const std::map<std::string, Real>& params = {});
std::size_t max_feasible_J(const std::string& name, const std::map<std::string, Real>& params = {});
std::vector<Real> expected_anchors(const Scenario& s, std::size_t J);

} // namespace gradadv
