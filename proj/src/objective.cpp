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

#include "gradadv/objective.hpp"

#include <limits>
#include <regex>
#include <utility>

namespace gradadv {

void ensure_real_range() {
    thread_local const bool widened = [] {
        mpfr_set_emax(mpfr_get_emax_max());
        mpfr_set_emin(mpfr_get_emin_min());
        return true;
    }();
    (void)widened;
}

std::string format_real(Real x) {
    ensure_real_range();
    if (isnan(x)) {
        return "nan";
    }
    if (isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    // shortest of a few widths that reads back exactly
    for (int digits : {17, 21, 30, 50}) {
        std::string s = x.str(digits);
        if (Real(s) == x) {
            return s;
        }
    }
    return x.str(std::numeric_limits<Real>::max_digits10);
}

std::string format_real(Real x, int digits) {
    if (!isfinite(x)) {
        return format_real(x);
    }
    return x.str(digits);
}

Real parse_real(const std::string& text) {
    ensure_real_range();
    static const std::regex number(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
    if (text == "inf" || text == "+inf") {
        return std::numeric_limits<Real>::infinity();
    }
    if (text == "-inf") {
        return -std::numeric_limits<Real>::infinity();
    }
    if (text == "nan") {
        return std::numeric_limits<Real>::quiet_NaN();
    }
    if (!std::regex_match(text, number)) {
        throw InvalidArgumentError("not a number: '" + text + "'");
    }
    return Real(text);
}

Real ScalarFunction::hessian(Real) const {
    throw InvalidArgumentError("objective has no Hessian oracle");
}

LambdaFunction::LambdaFunction(Fn value, Fn gradient, Fn hessian)
    : value_(std::move(value)), gradient_(std::move(gradient)), hessian_(std::move(hessian)) {
    if (!value_ || !gradient_) {
        throw InvalidArgumentError("value and gradient callables are required");
    }
}

Real LambdaFunction::hessian(Real theta) const {
    if (!hessian_) {
        return ScalarFunction::hessian(theta);
    }
    return hessian_(theta);
}

std::shared_ptr<const ScalarFunction> quartic() {
    return std::make_shared<LambdaFunction>(
        [](Real t) { return t * t * t * t / 4; },
        [](Real t) { return t * t * t; },
        [](Real t) { return 3 * t * t; });
}

std::shared_ptr<const ScalarFunction> half_square() {
    return std::make_shared<LambdaFunction>(
        [](Real t) { return t * t / 2; },
        [](Real t) { return t; },
        [](Real) { return Real(1); });
}

Objective::Objective(std::shared_ptr<const ScalarFunction> fn)
    : fn_(std::move(fn)), counters_(std::make_unique<Counters>()) {
    if (!fn_) {
        throw InvalidArgumentError("objective requires a function");
    }
}

Real Objective::value(Real theta) const {
    counters_->obj.fetch_add(1, std::memory_order_relaxed);
    return fn_->value(theta);
}

Real Objective::gradient(Real theta) const {
    counters_->grad.fetch_add(1, std::memory_order_relaxed);
    return fn_->gradient(theta);
}

Real Objective::hessian(Real theta) const {
    if (!fn_->has_hessian()) {
        return fn_->hessian(theta);
    }
    counters_->hess.fetch_add(1, std::memory_order_relaxed);
    return fn_->hessian(theta);
}

EvalCounts Objective::counts() const {
    EvalCounts c;
    c.obj = counters_->obj.load(std::memory_order_relaxed);
    c.grad = counters_->grad.load(std::memory_order_relaxed);
    c.hess = counters_->hess.load(std::memory_order_relaxed);
    return c;
}

} // namespace gradadv
