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

#include "gradadv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace gradadv {

namespace {

const Real kTiny("1e-12");
const Real kLoose("1e-9");


void finish(Verdict& v) {
    v.pass = std::all_of(v.steps.begin(), v.steps.end(), [](const StepDiagnostic& s) { return s.ok; });
    if (v.pass && v.message.empty()) {
        v.message = "ok";
    }
    if (!v.pass && v.message.empty()) {
        const auto& s = *std::find_if(v.steps.begin(), v.steps.end(), [](const StepDiagnostic& d) { return !d.ok; });
        v.message = "first failure at k=" + std::to_string(s.k) + " (" + s.what + ")";
    }
}

Verdict failed(const char* claim, const std::string& message) {
    Verdict v;
    v.claim = claim;
    v.pass = false;
    v.message = message;
    return v;
}

StepDiagnostic landing(std::size_t k, const std::string& what, Real observed, const ExpectedPoint& target,
                       const LandingTolerance& tol) {
    StepDiagnostic d;
    d.k = k;
    d.what = what;
    d.observed = observed;
    d.expected = target.value;
    d.tolerance = tol.at(target.value);
    const Real err = abs(observed - target.value);
    d.ok = err <= d.tolerance && (!target.radius || err < *target.radius);
    return d;
}

} // namespace

Real LandingTolerance::at(Real target) const {
    return std::max(abs, rel * gradadv::abs(target));
}

LandingTolerance default_landing_tolerance() {
    LandingTolerance tol;
    if (const char* env = std::getenv("GRAD_ADVERSARY_TOL")) {
        try {
            const Real v = parse_real(env);
            if (v >= 0 && isfinite(v)) {
                tol.abs = v;
                tol.rel = v;
            }
        } catch (const InvalidArgumentError&) {
        }
    }
    return tol;
}

std::optional<std::size_t> Verdict::first_failure() const {
    for (const auto& s : steps) {
        if (!s.ok) {
            return s.k;
        }
    }
    return std::nullopt;
}

Verdict check_anchor_tracking(const Trace& trace, const ExpectedPath& path, const LandingTolerance& tol) {
    ensure_real_range();
    if (trace.iterations.empty()) {
        return failed(claims::anchor_tracking, "trace is empty");
    }
    Verdict v;
    v.claim = claims::anchor_tracking;
    const std::size_t n = std::min(trace.iterations.size(), path.iterates.size());
    for (std::size_t k = 0; k < n; ++k) {
        const auto& rec = trace.iterations[k];
        if (rec.theta.empty()) {
            v.steps.push_back({k, "theta missing", 0, path.iterates[k].value, 0, false});
            continue;
        }
        v.steps.push_back(landing(k, "theta", rec.theta[0], path.iterates[k], tol));
    }
    if (trace.iterations.size() != path.iterates.size()) {
        StepDiagnostic d;
        d.k = n;
        d.what = "length mismatch";
        d.observed = static_cast<Real>(trace.iterations.size());
        d.expected = static_cast<Real>(path.iterates.size());
        d.ok = false;
        v.steps.push_back(d);
    }
    for (const auto& p : path.probes) {
        if (p.record >= trace.iterations.size()) {
            continue;
        }
        const auto& probes = trace.iterations[p.record].probes;
        const auto it = std::find_if(probes.begin(), probes.end(),
                                     [&](const Probe& q) { return q.kind == p.kind; });
        const std::string what = to_string(p.kind);
        if (it == probes.end()) {
            v.steps.push_back({p.record, what + " missing", 0, p.point.value, 0, false});
            continue;
        }
        v.steps.push_back(landing(p.record, what, it->theta, p.point, tol));
    }
    std::stable_sort(v.steps.begin(), v.steps.end(),
                     [](const StepDiagnostic& a, const StepDiagnostic& b) { return a.k < b.k; });
    finish(v);
    return v;
}

Verdict check_divergence(const Trace& trace, const ScalarFunction& shadow, const ExpectedPath* path) {
    ensure_real_range();
    if (trace.iterations.empty()) {
        return failed(claims::divergence, "trace is empty");
    }
    Verdict v;
    v.claim = claims::divergence;
    Real prev = -std::numeric_limits<Real>::infinity();
    Real last = 0;
    for (const auto& rec : trace.iterations) {
        if (rec.theta.empty()) {
            return failed(claims::divergence, "theta missing at k=" + std::to_string(rec.k));
        }
        const Real f = shadow.value(rec.theta[0]);
        StepDiagnostic d;
        d.k = rec.k;
        d.observed = f;
        d.expected = prev;
        if (path) {
            d.what = "F non-decreasing";
            d.tolerance = kTiny * std::max<Real>(1, abs(prev));
            d.ok = rec.k == 0 || f >= prev - d.tolerance;
        } else {
            d.what = "F strictly increasing";
            d.ok = rec.k == 0 || f > prev;
        }
        v.steps.push_back(d);
        prev = f;
        last = f;
    }
    if (path) {
        const std::size_t J = trace.iterations.size() - 1;
        if (J >= path->iterates.size()) {
            return failed(claims::divergence, "trace longer than expected path");
        }
        const Real bound = 7 * (path->iterates[J].value - path->origin) / 16;
        StepDiagnostic d;
        d.k = J;
        d.what = "F(theta_J) >= 7(S_J - S_0)/16";
        d.observed = last;
        d.expected = bound;
        d.tolerance = kLoose * std::max<Real>(1, abs(bound));
        d.ok = last >= bound - d.tolerance;
        v.steps.push_back(d);
    }
    finish(v);
    return v;
}

Verdict check_gradient_floor(const Trace& trace, Real bound, const ScalarFunction* shadow) {
    ensure_real_range();
    if (trace.iterations.empty()) {
        return failed(claims::gradient_floor, "trace is empty");
    }
    Verdict v;
    v.claim = claims::gradient_floor;
    const Real tol = kTiny;
    for (const auto& rec : trace.iterations) {
        if (rec.grad.empty()) {
            v.steps.push_back({rec.k, "gradient missing", 0, bound, tol, false});
            continue;
        }
        Real norm = 0;
        for (Real g : rec.grad) {
            norm += g * g;
        }
        norm = sqrt(norm);
        v.steps.push_back({rec.k, "|F'(theta)|", norm, bound, tol, norm >= bound - tol});
        if (!shadow) {
            continue;
        }
        for (const auto& p : rec.probes) {
            if (p.kind != ProbeKind::nag_y) {
                continue;
            }
            const Real gy = abs(shadow->gradient(p.theta));
            v.steps.push_back({rec.k, "|F'(y)|", gy, bound, tol, gy >= bound - tol});
        }
    }
    finish(v);
    return v;
}

Verdict check_eval_growth(const Trace& trace, unsigned base) {
    ensure_real_range();
    if (trace.iterations.empty()) {
        return failed(claims::eval_growth, "trace is empty");
    }
    if (trace.iterations.size() < 2) {
        return failed(claims::eval_growth, "trace has no accepted iterates");
    }
    Verdict v;
    v.claim = claims::eval_growth;
    std::uint64_t expected = 1;
    for (std::size_t j = 1; j < trace.iterations.size(); ++j) {
        const bool overflow = expected > std::numeric_limits<std::uint64_t>::max() / base;
        expected *= base;
        const std::uint64_t observed = trace.iterations[j].cum.obj;
        StepDiagnostic d;
        d.k = j;
        d.what = "cum_obj_evals == base^j";
        d.observed = static_cast<Real>(observed);
        d.expected = static_cast<Real>(expected);
        d.ok = !overflow && observed == expected;
        v.steps.push_back(d);
    }
    finish(v);
    return v;
}

} // namespace gradadv
