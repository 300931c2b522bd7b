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

#include "gradadv/bump.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

namespace gradadv {

BumpObjective::BumpObjective(BumpAnchors anchors) : anchors_(std::move(anchors)) {
    ensure_real_range();
    validate(anchors_);
    polys_.reserve(anchors_.centers.size());
    for (std::size_t j = 0; j < anchors_.centers.size(); ++j) {
        const auto& t = anchors_.targets[j];
        PolyCoefficients p = solve_bump(anchors_.half_width, t[0], t[1], t[2]);
        for (Real c : p.c) {
            if (!isfinite(c)) {
                throw OverflowError("bump polynomial " + std::to_string(j) + " has non-finite coefficients");
            }
        }
        polys_.push_back(p);
    }
}

Real BumpObjective::eval(Real theta, int order) const {
    if (isnan(theta)) {
        throw DomainError("objective evaluated at NaN");
    }
    const auto& s = anchors_.centers;
    const Real h = anchors_.half_width;
    // nearest centre from either side
    const auto it = std::lower_bound(s.begin(), s.end(), theta);
    for (auto cand : {it, it == s.begin() ? it : it - 1}) {
        if (cand == s.end()) {
            continue;
        }
        const Real local = theta - *cand;
        if (abs(local) <= h) {
            return poly_eval(polys_[static_cast<std::size_t>(cand - s.begin())], local, order);
        }
    }
    return 0;
}

Objective make_bump(BumpAnchors anchors) {
    return Objective(std::make_shared<BumpObjective>(std::move(anchors)));
}

} // namespace gradadv
