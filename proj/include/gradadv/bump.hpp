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
#include <vector>

#include "gradadv/anchors.hpp"
#include "gradadv/interpolation.hpp"
#include "gradadv/objective.hpp"

namespace gradadv {

// F_J(theta) = P_j(theta - S_j) on [S_j - Delta, S_j + Delta], zero elsewhere.
class BumpObjective final : public ScalarFunction {
public:
    explicit BumpObjective(BumpAnchors anchors);

    Real value(Real theta) const override { return eval(theta, 0); }
    Real gradient(Real theta) const override { return eval(theta, 1); }
    bool has_hessian() const override { return true; }
    Real hessian(Real theta) const override { return eval(theta, 2); }

    std::size_t size() const { return anchors_.centers.size(); }
    const BumpAnchors& anchors() const { return anchors_; }
    const PolyCoefficients& poly(std::size_t j) const { return polys_.at(j); }

private:
    Real eval(Real theta, int order) const;

    BumpAnchors anchors_;
    std::vector<PolyCoefficients> polys_;
};

Objective make_bump(BumpAnchors anchors);

} // namespace gradadv
