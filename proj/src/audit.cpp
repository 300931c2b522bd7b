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

#include "gradadv/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "json_util.hpp"

namespace gradadv::audit {

namespace {

constexpr Scalar kDomainFloor = 1e-300L;

// log(1 + exp(z)) without overflow
Scalar softplus(Scalar z) {
    return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

// 1 / (1 + exp(-z))
Scalar sigmoid(Scalar z) {
    if (z >= 0) {
        return 1 / (1 + std::exp(-z));
    }
    const Scalar e = std::exp(z);
    return e / (1 + e);
}

std::array<Scalar, 4> leave_one_out(const Vector& w) {
    return {w[1] * w[2] * w[3], w[0] * w[2] * w[3], w[0] * w[1] * w[3], w[0] * w[1] * w[2]};
}

Scalar parse_scalar(const std::string& text) {
    std::size_t used = 0;
    Scalar v = 0;
    try {
        v = std::stold(text, &used);
    } catch (const std::exception&) {
        throw InvalidArgumentError("not a number: '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v)) {
        throw InvalidArgumentError("not a finite number: '" + text + "'");
    }
    return v;
}

} // namespace

const char* to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::factor_analysis: return "factor_analysis";
    case ModelKind::ffnn: return "ffnn";
    case ModelKind::gee: return "gee";
    case ModelKind::inv_gaussian: return "inv_gaussian";
    }
    return "unknown";
}

const std::vector<std::string>& model_names() {
    static const std::vector<std::string> names = {"factor_analysis", "ffnn", "gee", "inv_gaussian"};
    return names;
}

ModelObjective::ModelObjective(ModelKind kind, std::map<std::string, Scalar> params)
    : kind_(kind), params_(std::move(params)) {
    for (const auto& [key, v] : params_) {
        if (!std::isfinite(v)) {
            throw InvalidArgumentError("parameter '" + key + "' must be finite");
        }
    }
}

ModelObjective ModelObjective::factor_analysis(Scalar x) { return ModelObjective(ModelKind::factor_analysis, {{"x", x}}); }

ModelObjective ModelObjective::ffnn(Scalar w1) { return ModelObjective(ModelKind::ffnn, {{"w1", w1}}); }

ModelObjective ModelObjective::gee(Scalar y) {
    if (!(y > 0)) {
        throw InvalidArgumentError("gee needs y > 0");
    }
    return ModelObjective(ModelKind::gee, {{"y", y}});
}

ModelObjective ModelObjective::inv_gaussian(Scalar y) {
    if (!(y > 0)) {
        throw InvalidArgumentError("inv_gaussian needs y > 0");
    }
    return ModelObjective(ModelKind::inv_gaussian, {{"y", y}});
}

ModelObjective ModelObjective::by_name(const std::string& name, const std::map<std::string, Scalar>& params) {
    auto pick = [&](const char* key, Scalar fallback) {
        for (const auto& [k, v] : params) {
            if (k != key) {
                throw InvalidArgumentError("model '" + name + "' has no parameter '" + k + "'");
            }
            return v;
        }
        return fallback;
    };
    if (name == "factor_analysis") {
        return factor_analysis(pick("x", 1));
    }
    if (name == "ffnn") {
        return ffnn(pick("w1", 0));
    }
    if (name == "gee") {
        return gee(pick("y", 1));
    }
    if (name == "inv_gaussian") {
        return inv_gaussian(pick("y", 1));
    }
    throw InvalidArgumentError("unknown model '" + name + "'");
}

bool ModelObjective::in_domain(const Vector& theta) const {
    if (theta.size() != dimension()) {
        return false;
    }
    for (Scalar v : theta) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    switch (kind_) {
    case ModelKind::factor_analysis:
    case ModelKind::gee: return theta[0] >= kDomainFloor;
    case ModelKind::inv_gaussian: return theta[0] <= -kDomainFloor;
    case ModelKind::ffnn: return true;
    }
    return false;
}

void ModelObjective::require_domain(const Vector& theta) const {
    if (theta.size() != dimension()) {
        throw InvalidArgumentError(name() + " expects " + std::to_string(dimension()) + " coordinates");
    }
    if (!in_domain(theta)) {
        throw DomainError("theta outside the domain of " + name());
    }
}

Vector ModelObjective::embed(Scalar t) const {
    if (kind_ == ModelKind::ffnn) {
        return {param("w1"), t, t, t};
    }
    return {t};
}

Scalar ModelObjective::value(const Vector& theta) const {
    require_domain(theta);
    ++counts_.value;
    const Scalar t = theta[0];
    switch (kind_) {
    case ModelKind::factor_analysis: {
        const Scalar x = param("x");
        return 0.5L * std::log(2 * std::numbers::pi_v<Scalar>) - std::log(t) + 0.5L * t * t * x * x;
    }
    case ModelKind::ffnn: return softplus(-(theta[0] * theta[1] * theta[2] * theta[3]));
    case ModelKind::gee: return -param("y") * std::log(t) + 2 * std::sqrt(t);
    case ModelKind::inv_gaussian: {
        const Scalar y = param("y");
        return -(t * y + std::sqrt(-2 * t)) - 1 / (2 * y) - 0.5L * std::log(2 * std::numbers::pi_v<Scalar> * y * y * y);
    }
    }
    return 0;
}

Vector ModelObjective::grad(const Vector& theta) const {
    require_domain(theta);
    ++counts_.grad;
    const Scalar t = theta[0];
    switch (kind_) {
    case ModelKind::factor_analysis: return {-1 / t + t * param("x") * param("x")};
    case ModelKind::ffnn: {
        const Scalar p = theta[0] * theta[1] * theta[2] * theta[3];
        const Scalar s = sigmoid(-p);  // 1 / (exp(p) + 1)
        const auto q = leave_one_out(theta);
        return {-s * q[0], -s * q[1], -s * q[2], -s * q[3]};
    }
    case ModelKind::gee: return {-(param("y") - std::sqrt(t)) / t};
    case ModelKind::inv_gaussian: return {-(param("y") - 1 / std::sqrt(-2 * t))};
    }
    return {};
}

Vector ModelObjective::hess(const Vector& theta) const {
    require_domain(theta);
    ++counts_.hess;
    const Scalar t = theta[0];
    switch (kind_) {
    case ModelKind::factor_analysis: return {1 / (t * t) + param("x") * param("x")};
    case ModelKind::ffnn: {
        const Vector& w = theta;
        const Scalar p = w[0] * w[1] * w[2] * w[3];
        const Scalar s = sigmoid(-p);
        const Scalar curv = s * sigmoid(p);  // exp(p) / (exp(p) + 1)^2
        const auto q = leave_one_out(w);
        Vector h(16, 0);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                Scalar pair = 0;
                if (i != j) {
                    pair = 1;
                    for (int k = 0; k < 4; ++k) {
                        if (k != i && k != j) {
                            pair *= w[k];
                        }
                    }
                }
                h[i * 4 + j] = -s * pair + curv * q[i] * q[j];
            }
        }
        return h;
    }
    case ModelKind::gee: return {(param("y") - 0.5L * std::sqrt(t)) / (t * t)};
    case ModelKind::inv_gaussian: {
        const Scalar u = -2 * t;
        return {1 / (u * std::sqrt(u))};
    }
    }
    return {};
}

Scalar euclidean_norm(const Vector& v) {
    // scaled to avoid overflow of the squares
    Scalar scale = 0;
    for (Scalar x : v) {
        scale = std::max(scale, std::fabs(x));
    }
    if (scale == 0 || !std::isfinite(scale)) {
        return scale;
    }
    Scalar sum = 0;
    for (Scalar x : v) {
        sum += (x / scale) * (x / scale);
    }
    return scale * std::sqrt(sum);
}

Scalar frobenius_norm(const Vector& m) { return euclidean_norm(m); }

Scalar ratio(const ModelObjective& model, const Vector& theta) {
    const Scalar g = euclidean_norm(model.grad(theta));
    if (g == 0) {
        throw DomainError("zero gradient: the smoothness ratio is undefined");
    }
    const Scalar h = frobenius_norm(model.hess(theta));
    return (h / g) / g;
}

Scalar PathSpec::at(std::size_t k) const {
    const Scalar kk = static_cast<Scalar>(k);
    return kind == Kind::geometric ? start * std::pow(factor, kk) : start + factor * kk;
}

std::string PathSpec::describe() const {
    return std::string(kind == Kind::geometric ? "geometric:" : "linear:") + format_scalar(start) + "," +
           format_scalar(factor) + "," + std::to_string(count);
}

PathSpec parse_path(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw InvalidArgumentError("path must look like geometric:start,ratio,K or linear:start,step,K");
    }
    PathSpec p;
    const std::string kind = text.substr(0, colon);
    if (kind == "geometric") {
        p.kind = PathSpec::Kind::geometric;
    } else if (kind == "linear") {
        p.kind = PathSpec::Kind::linear;
    } else {
        throw InvalidArgumentError("unknown path kind '" + kind + "'");
    }
    std::vector<std::string> parts;
    std::stringstream ss(text.substr(colon + 1));
    for (std::string item; std::getline(ss, item, ',');) {
        parts.push_back(item);
    }
    if (parts.size() != 3) {
        throw InvalidArgumentError("path needs three comma-separated values");
    }
    p.start = parse_scalar(parts[0]);
    p.factor = parse_scalar(parts[1]);
    const Scalar count = parse_scalar(parts[2]);
    if (count < 1 || count != std::floor(count) || count > 1e7L) {
        throw InvalidArgumentError("path count must be a positive integer");
    }
    p.count = static_cast<std::size_t>(count);
    return p;
}

Trend summarize(const std::vector<AuditSample>& samples) {
    Trend t;
    if (samples.empty()) {
        t.behaviour = "insufficient";
        return t;
    }
    t.last_ratio = samples.back().ratio;
    t.ratio_increasing = samples.size() > 1;
    t.ratio_decreasing = samples.size() > 1;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        t.ratio_increasing = t.ratio_increasing && samples[i].ratio > samples[i - 1].ratio;
        t.ratio_decreasing = t.ratio_decreasing && samples[i].ratio < samples[i - 1].ratio;
    }
    const std::size_t n = samples.size();
    const std::size_t tail = std::max<std::size_t>(2, (n + 2) / 3);
    if (n < 2) {
        t.behaviour = "insufficient";
        return t;
    }
    Scalar sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t used = 0;
    for (std::size_t i = n - std::min(n, tail); i < n; ++i) {
        if (!(samples[i].ratio > 0) || !(samples[i].grad_norm > 0)) {
            continue;
        }
        const Scalar x = std::log(samples[i].grad_norm);
        const Scalar y = std::log(samples[i].ratio);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    const Scalar denom = static_cast<Scalar>(used) * sxx - sx * sx;
    if (used < 2 || !(std::fabs(denom) > 0)) {
        t.behaviour = "insufficient";
        return t;
    }
    const Scalar slope = (static_cast<Scalar>(used) * sxy - sx * sy) / denom;
    t.slope = slope;
    if (slope > 0.05L) {
        t.behaviour = "diverging";
    } else if (slope < -0.05L) {
        t.behaviour = "vanishing";
    } else {
        t.behaviour = "bounded";
    }
    return t;
}

AuditReport probe_path(const ModelObjective& model, const PathSpec& path) {
    AuditReport r;
    r.model = model.name();
    r.params = model.params();
    r.path = path.describe();
    for (std::size_t k = 0; k < path.count; ++k) {
        const Scalar t = path.at(k);
        const Vector theta = model.embed(t);
        if (!model.in_domain(theta)) {
            r.skipped.push_back({k, t, "outside domain"});
            continue;
        }
        const Vector g = model.grad(theta);
        const Vector h = model.hess(theta);
        AuditSample s;
        s.k = k;
        s.t = t;
        s.theta = theta;
        s.grad_norm = euclidean_norm(g);
        s.hess_norm = frobenius_norm(h);
        if (!(s.grad_norm > 0)) {
            r.skipped.push_back({k, t, "zero gradient"});
            continue;
        }
        s.ratio = (s.hess_norm / s.grad_norm) / s.grad_norm;
        if (!std::isfinite(s.ratio)) {
            r.skipped.push_back({k, t, "non-finite ratio"});
            continue;
        }
        r.samples.push_back(std::move(s));
    }
    r.trend = summarize(r.samples);
    return r;
}

std::string format_scalar(Scalar x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.21Lg", x);
    return buf;
}

std::string report_json(const AuditReport& report) {
    using detail::json_number;
    using detail::json_quote;
    auto num = [](Scalar x) { return json_number(format_scalar(x)); };
    auto opt = [&](const std::optional<Scalar>& x) { return x ? num(*x) : std::string("null"); };
    std::ostringstream o;
    o << "{\"model\":" << json_quote(report.model) << ",\"params\":{";
    bool first = true;
    for (const auto& [k, v] : report.params) {
        o << (first ? "" : ",") << json_quote(k) << ":" << num(v);
        first = false;
    }
    o << "},\"path\":" << json_quote(report.path) << ",\"samples\":[";
    for (std::size_t i = 0; i < report.samples.size(); ++i) {
        const auto& s = report.samples[i];
        o << (i ? "," : "") << "{\"k\":" << s.k << ",\"theta\":" << num(s.t) << ",\"point\":[";
        for (std::size_t j = 0; j < s.theta.size(); ++j) {
            o << (j ? "," : "") << num(s.theta[j]);
        }
        o << "],\"grad_norm\":" << num(s.grad_norm) << ",\"hess_norm\":" << num(s.hess_norm)
          << ",\"ratio\":" << num(s.ratio) << "}";
    }
    o << "],\"skipped\":[";
    for (std::size_t i = 0; i < report.skipped.size(); ++i) {
        const auto& s = report.skipped[i];
        o << (i ? "," : "") << "{\"k\":" << s.k << ",\"theta\":" << num(s.t) << ",\"reason\":" << json_quote(s.reason)
          << "}";
    }
    const Trend& t = report.trend;
    o << "],\"trend\":{\"slope\":" << opt(t.slope) << ",\"last_ratio\":" << opt(t.last_ratio)
      << ",\"ratio_increasing\":" << (t.ratio_increasing ? "true" : "false")
      << ",\"ratio_decreasing\":" << (t.ratio_decreasing ? "true" : "false")
      << ",\"behaviour\":" << json_quote(t.behaviour) << "}}";
    return o.str();
}

std::string report_csv(const AuditReport& report) {
    std::ostringstream o;
    o << "theta,grad_norm,hess_norm,ratio\n";
    for (const auto& s : report.samples) {
        o << format_scalar(s.t) << "," << format_scalar(s.grad_norm) << "," << format_scalar(s.hess_norm) << ","
          << format_scalar(s.ratio) << "\n";
    }
    return o.str();
}

} // namespace gradadv::audit
