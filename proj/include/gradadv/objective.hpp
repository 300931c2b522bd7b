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

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>

#include "gradadv/core.hpp"

namespace gradadv {

// Pure scalar function with closed-form derivatives. Calls are never counted.
class ScalarFunction {
public:
    virtual ~ScalarFunction() = default;

    virtual Real value(Real theta) const = 0;
    virtual Real gradient(Real theta) const = 0;
    virtual bool has_hessian() const { return false; }
    virtual Real hessian(Real theta) const;
};

// Function assembled from callables; used for the smooth test objectives.
class LambdaFunction final : public ScalarFunction {
public:
    using Fn = std::function<Real(Real)>;

    LambdaFunction(Fn value, Fn gradient, Fn hessian = nullptr);

    Real value(Real theta) const override { return value_(theta); }
    Real gradient(Real theta) const override { return gradient_(theta); }
    bool has_hessian() const override { return static_cast<bool>(hessian_); }
    Real hessian(Real theta) const override;

private:
    Fn value_;
    Fn gradient_;
    Fn hessian_;
};

// theta^4 / 4
std::shared_ptr<const ScalarFunction> quartic();
// theta^2 / 2
std::shared_ptr<const ScalarFunction> half_square();

struct EvalCounts {
    std::uint64_t obj = 0;
    std::uint64_t grad = 0;
    std::uint64_t hess = 0;

    bool operator==(const EvalCounts&) const = default;
};

// Oracle wrapper that counts every evaluation. Safe to share between threads;
// the shadow() accessor gives counter-exempt access for out-of-band checks.
class Objective {
public:
    explicit Objective(std::shared_ptr<const ScalarFunction> fn);

    Objective(const Objective&) = delete;
    Objective& operator=(const Objective&) = delete;
    Objective(Objective&&) noexcept = default;
    Objective& operator=(Objective&&) noexcept = default;

    Real value(Real theta) const;
    Real gradient(Real theta) const;
    Real hessian(Real theta) const;
    bool has_hessian() const { return fn_->has_hessian(); }

    EvalCounts counts() const;

    const ScalarFunction& shadow() const { return *fn_; }
    std::shared_ptr<const ScalarFunction> function() const { return fn_; }

private:
    struct Counters {
        std::atomic<std::uint64_t> obj{0};
        std::atomic<std::uint64_t> grad{0};
        std::atomic<std::uint64_t> hess{0};
    };

    std::shared_ptr<const ScalarFunction> fn_;
    std::unique_ptr<Counters> counters_;
};

} // namespace gradadv
