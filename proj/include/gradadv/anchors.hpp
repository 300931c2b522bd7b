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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gradadv/core.hpp"

namespace gradadv {

enum class AnchorKind {
    arithmetic,
    geometric_increment,
    nag,
    polyak,
    wngrad,
    adagrad,
    lipschitz_approx,
    armijo,
    cubic_newton,
    acr,
    dynamic
};

const char* to_string(AnchorKind kind);

struct AnchorPoint {
    Real position = 0;
    Real slope = 1;
};

// Rule-generated anchors S_j with slopes d_j. The generator returned by start()
// is stateful and must be called with j = 0, 1, 2, ... in order.
class AnchorSpec {
public:
    using Generator = std::function<AnchorPoint(std::size_t j)>;
    using Factory = std::function<Generator()>;

    AnchorSpec(AnchorKind kind, std::map<std::string, Real> params, Factory factory,
               bool decreasing_slopes = false, std::optional<std::size_t> j_max = std::nullopt);

    // S_j = start + step*j, d_j = slope0 * slope_ratio^j
    static AnchorSpec arithmetic(Real start, Real step, Real slope0 = 1, Real slope_ratio = 1);
    // S_0 = start, S_{j+1} = S_j + step0 * ratio^j, d_j = slope_ratio^j
    static AnchorSpec geometric_increment(Real start, Real step0, Real ratio, Real slope_ratio = 1);

    AnchorKind kind() const { return kind_; }
    const std::map<std::string, Real>& params() const { return params_; }
    bool decreasing_slopes() const { return decreasing_slopes_; }
    std::optional<std::size_t> j_max() const { return j_max_; }

    Generator start() const { return factory_(); }

    // First count anchors, validated.
    std::vector<AnchorPoint> generate(std::size_t count) const;

private:
    AnchorKind kind_;
    std::map<std::string, Real> params_;
    Factory factory_;
    bool decreasing_slopes_;
    std::optional<std::size_t> j_max_;
};

// Checks one freshly generated anchor against its predecessor.
void validate_next_anchor(const AnchorSpec& spec, std::size_t j, const AnchorPoint& next,
                          const AnchorPoint* previous);

// Centres, value triples (f_j, f_j', f_j'') and half-width of a bump objective.
struct BumpAnchors {
    std::vector<Real> centers;
    std::vector<std::array<Real, 3>> targets;
    Real half_width = 0;
};

void validate(const BumpAnchors& anchors);

} // namespace gradadv
