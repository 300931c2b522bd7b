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
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gradadv/core.hpp"

namespace gradadv::audit {

// The audit models are independent of the chained/bump machinery and use
// hardware extended precision.
using Scalar = long double;
using Vector = std::vector<Scalar>;

enum class ModelKind { factor_analysis, ffnn, gee, inv_gaussian };

const char* to_string(ModelKind kind);
const std::vector<std::string>& model_names();

struct ModelCounts {
    std::size_t value = 0;
    std::size_t grad = 0;
    std::size_t hess = 0;
};

// Single-observation objectives with closed-form derivatives.
class ModelObjective {
public:
    static ModelObjective factor_analysis(Scalar x);
    // log(1 + exp(-w4 w3 w2 w1)); w1 is the fixed first weight of scalar paths.
    static ModelObjective ffnn(Scalar w1 = 0);
    static ModelObjective gee(Scalar y);
    static ModelObjective inv_gaussian(Scalar y);
    // Known keys: x (factor_analysis), w1 (ffnn), y (gee, inv_gaussian).
    static ModelObjective by_name(const std::string& name, const std::map<std::string, Scalar>& params = {});

    ModelKind kind() const { return kind_; }
    std::string name() const { return to_string(kind_); }
    std::size_t dimension() const { return kind_ == ModelKind::ffnn ? 4 : 1; }
    const std::map<std::string, Scalar>& params() const { return params_; }

    bool in_domain(const Vector& theta) const;
    // Maps a path parameter t to a point: t itself, or (w1, t, t, t) for ffnn.
    Vector embed(Scalar t) const;

    Scalar value(const Vector& theta) const;
    Vector grad(const Vector& theta) const;
    // Row-major dimension x dimension.
    Vector hess(const Vector& theta) const;

    ModelCounts counts() const { return counts_; }

private:
    ModelObjective(ModelKind kind, std::map<std::string, Scalar> params);
    void require_domain(const Vector& theta) const;
    Scalar param(const char* key) const { return params_.at(key); }

    ModelKind kind_;
    std::map<std::string, Scalar> params_;
    mutable ModelCounts counts_;
};

Scalar euclidean_norm(const Vector& v);
Scalar frobenius_norm(const Vector& m);

// |F''| / |F'|^2 with Frobenius and Euclidean norms. Throws DomainError outside
// the domain or at a zero gradient.
Scalar ratio(const ModelObjective& model, const Vector& theta);

struct PathSpec {
    enum class Kind { geometric, linear };
    Kind kind = Kind::geometric;
    Scalar start = 1;
    Scalar factor = 1;  // ratio or step
    std::size_t count = 1;

    Scalar at(std::size_t k) const;
    std::string describe() const;
};

// "geometric:start,ratio,K" or "linear:start,step,K".
PathSpec parse_path(const std::string& text);

struct AuditSample {
    std::size_t k = 0;
    Scalar t = 0;
    Vector theta;
    Scalar grad_norm = 0;
    Scalar hess_norm = 0;
    Scalar ratio = 0;
};

struct SkippedSample {
    std::size_t k = 0;
    Scalar t = 0;
    std::string reason;
};

struct Trend {
    // Least-squares slope of log ratio against log |F'| over the last third of the samples.
    std::optional<Scalar> slope;
    std::optional<Scalar> last_ratio;
    bool ratio_increasing = false;
    bool ratio_decreasing = false;
    // "diverging", "vanishing", "bounded" or "insufficient"
    std::string behaviour;
};

struct AuditReport {
    std::string model;
    std::map<std::string, Scalar> params;
    std::string path;
    std::vector<AuditSample> samples;
    std::vector<SkippedSample> skipped;
    Trend trend;
};

AuditReport probe_path(const ModelObjective& model, const PathSpec& path);
Trend summarize(const std::vector<AuditSample>& samples);

std::string format_scalar(Scalar x);
std::string report_json(const AuditReport& report);
std::string report_csv(const AuditReport& report);

} // namespace gradadv::audit
