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
#include <string>
#include <vector>

#include "gradadv/trace.hpp"
#include "gradadv/verify.hpp"

namespace gradadv {

enum class TraceFormat { json, csv };

TraceFormat trace_format_from_string(const std::string& name);

inline constexpr int kTraceSchemaVersion = 1;

// {schema_version, scenario, params, iterations:[{k, theta, f, grad, probes,
// cum_obj_evals, cum_grad_evals, cum_hess_evals, control}], flags}
std::string trace_to_json(const Trace& trace);
Trace trace_from_json(const std::string& text);

// One row per iterate plus one row per probe; scenario, params and flags go in
// leading '#' lines.
std::string trace_to_csv(const Trace& trace);
Trace trace_from_csv(const std::string& text);

std::string trace_to_string(const Trace& trace, TraceFormat format);
// Detects the format from the first non-blank character.
Trace trace_from_string(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

struct VerifyReport {
    std::string scenario;
    std::map<std::string, Real> params;
    std::size_t steps = 0;
    LandingTolerance tolerance;
    std::vector<Verdict> verdicts;
    std::vector<std::string> flags;

    bool all_pass() const;
};

std::string verify_report_json(const VerifyReport& report);

} // namespace gradadv
