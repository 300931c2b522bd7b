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

#include "gradadv/chained.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <utility>

namespace gradadv {

ChainedObjective::ChainedObjective(AnchorSpec spec, std::size_t max_anchors)
    : spec_(std::move(spec)), max_anchors_(max_anchors), generator_(spec_.start()) {
    std::unique_lock lock(mutex_);
    extend_locked(2);
}

void ChainedObjective::extend_locked(std::size_t count) const {
    while (anchors_.size() < count) {
        const std::size_t j = anchors_.size();
        if (j >= max_anchors_) {
            throw OverflowError("chained objective needs more than " + std::to_string(max_anchors_) + " anchors");
        }
        const AnchorPoint next = generator_(j);
        if (anchors_.empty()) {
            validate_next_anchor(spec_, j, next, nullptr);
            anchors_.push_back({next.position, next.slope, 0});
            continue;
        }
        const Anchor& prev = anchors_.back();
        const AnchorPoint prev_point{prev.position, prev.slope};
        validate_next_anchor(spec_, j, next, &prev_point);
        const BlockParams block{next.position - prev.position, prev.slope, next.slope};
        if (!(block.m > 0) || !isfinite(block.m)) {
            throw OverflowError("anchor gap " + std::to_string(j) + " is not representable");
        }
        const Real level = block_rise(block) + prev.level;
        if (!isfinite(level)) {
            throw OverflowError("objective level at anchor " + std::to_string(j) + " is not finite");
        }
        anchors_.push_back({next.position, next.slope, level});
    }
}

ChainedObjective::Anchor ChainedObjective::anchor(std::size_t j) const {
    {
        std::shared_lock lock(mutex_);
        if (j < anchors_.size()) {
            return anchors_[j];
        }
    }
    std::unique_lock lock(mutex_);
    extend_locked(j + 1);
    return anchors_[j];
}

Real ChainedObjective::flat_radius(std::size_t j) const {
    const Anchor here = anchor(j);
    const Anchor next = anchor(j + 1);
    Real radius = (2 - here.slope) / 16 * (next.position - here.position);
    if (j > 0) {
        const Anchor prev = anchor(j - 1);
        radius = std::min(radius, (2 - here.slope) / 16 * (here.position - prev.position));
    }
    return radius;
}

ChainedObjective::Piece ChainedObjective::locate(Real theta) const {
    ensure_real_range();
    if (isnan(theta)) {
        throw DomainError("objective evaluated at NaN");
    }
    Piece piece;
    auto fill = [&](const std::vector<Anchor>& a) -> bool {
        if (theta <= a.front().position) {
            piece.below = true;
            piece.local = theta - a.front().position;
            piece.block.d = a.front().slope;
            return true;
        }
        if (theta > a.back().position) {
            return false;
        }
        const auto it = std::lower_bound(a.begin(), a.end(), theta,
                                         [](const Anchor& x, Real t) { return x.position < t; });
        const Anchor& hi = *it;
        const Anchor& lo = *(it - 1);
        piece.local = theta - lo.position;
        piece.base = lo.level;
        piece.block = BlockParams{hi.position - lo.position, lo.slope, hi.slope};
        return true;
    };
    {
        std::shared_lock lock(mutex_);
        if (fill(anchors_)) {
            return piece;
        }
    }
    if (isinf(theta)) {
        throw OverflowError("objective evaluated at infinity");
    }
    std::unique_lock lock(mutex_);
    while (!(anchors_.back().position >= theta)) {
        extend_locked(anchors_.size() + 1);
    }
    fill(anchors_);
    return piece;
}

Real ChainedObjective::value(Real theta) const {
    const Piece p = locate(theta);
    if (p.below) {
        return -p.block.d * p.local;
    }
    return eval_block(p.local, p.block) + p.base;
}

Real ChainedObjective::gradient(Real theta) const {
    const Piece p = locate(theta);
    if (p.below) {
        return -p.block.d;
    }
    return grad_block(p.local, p.block);
}

Real ChainedObjective::hessian(Real theta) const {
    const Piece p = locate(theta);
    if (p.below) {
        return 0;
    }
    return hess_block(p.local, p.block);
}

Objective make_chained(AnchorSpec spec) {
    return Objective(std::make_shared<ChainedObjective>(std::move(spec)));
}

} // namespace gradadv
