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
#include <optional>
#include <string>
#include <vector>

#include "gradadv/core.hpp"
#include "gradadv/objective.hpp"

namespace gradadv {

enum class ProbeKind { trial, nag_y, nag_z, bregman_seed };

const char* to_string(ProbeKind kind);
ProbeKind probe_kind_from_string(const std::string& name);

struct Probe {
    ProbeKind kind = ProbeKind::trial;
    Real theta = 0;
    std::optional<Real> f;
};

struct Control {
    std::optional<Real> step_size;
    std::optional<Real> penalty;
    std::optional<Real> b_k;
    std::optional<Real> w_k;
};

// State at the acceptance of theta_k. Probes are the evaluations made to produce theta_k.
struct IterationRecord {
    std::size_t k = 0;
    std::vector<Real> theta;
    std::optional<Real> f;
    std::vector<Real> grad;
    std::vector<Probe> probes;
    EvalCounts cum;
    Control control;
};

struct Trace {
    std::string scenario;
    std::map<std::string, Real> params;
    std::vector<IterationRecord> iterations;
    std::vector<std::string> flags;

    bool has_flag(const std::string& flag) const;
};

namespace flags {
inline constexpr const char* overflow = "overflow";
inline constexpr const char* zero_gradient_difference = "zero_gradient_difference";
inline constexpr const char* zero_gradient = "zero_gradient";
inline constexpr const char* inner_trial_cap = "inner_trial_cap";
inline constexpr const char* inner_solve_failed = "inner_solve_failed";
inline constexpr const char* stationary = "stationary";
} // namespace flags

enum class OverflowPolicy { flag, raise };

struct RunBudget {
    std::size_t max_outer_iterations = 10;
    std::size_t max_inner_trials = 64;
    OverflowPolicy overflow = OverflowPolicy::flag;
};

} // namespace gradadv
