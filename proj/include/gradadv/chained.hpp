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
#include <memory>
#include <shared_mutex>
#include <vector>

#include "gradadv/anchors.hpp"
#include "gradadv/block.hpp"
#include "gradadv/objective.hpp"

namespace gradadv {

// F(theta) = -d_0 (theta - S_0) below S_0, and
// F(theta) = f(theta - S_j; S_{j+1} - S_j, d_j, d_{j+1}) + F(S_j) on (S_j, S_{j+1}].
// Anchors and the levels F(S_j) are generated lazily and cached.
class ChainedObjective final : public ScalarFunction {
public:
    static constexpr std::size_t kDefaultMaxAnchors = std::size_t(1) << 21;

    explicit ChainedObjective(AnchorSpec spec, std::size_t max_anchors = kDefaultMaxAnchors);

    Real value(Real theta) const override;
    Real gradient(Real theta) const override;
    bool has_hessian() const override { return true; }
    Real hessian(Real theta) const override;

    struct Anchor {
        Real position;
        Real slope;
        Real level;
    };

    Anchor anchor(std::size_t j) const;
    // Half-width of the region around S_j on which F is linear with slope -d_j.
    Real flat_radius(std::size_t j) const;

    const AnchorSpec& spec() const { return spec_; }

private:
    struct Piece {
        bool below = false;
        Real local = 0;
        Real base = 0;
        BlockParams block;
    };

    Piece locate(Real theta) const;
    void extend_locked(std::size_t count) const;

    AnchorSpec spec_;
    std::size_t max_anchors_;
    mutable std::shared_mutex mutex_;
    mutable AnchorSpec::Generator generator_;
    mutable std::vector<Anchor> anchors_;
};

Objective make_chained(AnchorSpec spec);

} // namespace gradadv
