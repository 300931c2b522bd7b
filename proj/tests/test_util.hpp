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

#include <cstdint>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "gradadv/core.hpp"

namespace gradadv::testing {

inline Real R(const char* text) { return Real(text); }

inline Real rel_err(const Real& got, const Real& want) {
    return abs(got - want) / std::max<Real>(1, abs(want));
}

inline ::testing::AssertionResult near_rel(const Real& got, const Real& want, const Real& tol) {
    if (rel_err(got, want) <= tol) {
        return ::testing::AssertionSuccess();
    }
    return ::testing::AssertionFailure() << "got " << format_real(got, 30) << ", want " << format_real(want, 30)
                                         << " (tol " << format_real(tol, 3) << ")";
}

// Deterministic uniform draws for property tests.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    Real real(double lo, double hi) { return Real(uniform(lo, hi)); }

private:
    std::mt19937_64 gen_;
};

} // namespace gradadv::testing
