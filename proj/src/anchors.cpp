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

#include "gradadv/anchors.hpp"

#include <cmath>
#include <utility>

namespace gradadv {

const char* to_string(AnchorKind kind) {
    switch (kind) {
    case AnchorKind::arithmetic: return "arithmetic";
    case AnchorKind::geometric_increment: return "geometric-increment";
    case AnchorKind::nag: return "nag";
    case AnchorKind::polyak: return "polyak";
    case AnchorKind::wngrad: return "wngrad";
    case AnchorKind::adagrad: return "adagrad";
    case AnchorKind::lipschitz_approx: return "lipschitz-approx";
    case AnchorKind::armijo: return "armijo";
    case AnchorKind::cubic_newton: return "cubic-newton";
    case AnchorKind::acr: return "acr";
    case AnchorKind::dynamic: return "dynamic";
    }
    return "unknown";
}

AnchorSpec::AnchorSpec(AnchorKind kind, std::map<std::string, Real> params, Factory factory,
                       bool decreasing_slopes, std::optional<std::size_t> j_max)
    : kind_(kind), params_(std::move(params)), factory_(std::move(factory)),
      decreasing_slopes_(decreasing_slopes), j_max_(j_max) {
    if (!factory_) {
        throw InvalidArgumentError("anchor spec requires a generator factory");
    }
}

AnchorSpec AnchorSpec::arithmetic(Real start, Real step, Real slope0, Real slope_ratio) {
    if (!(step > 0)) {
        throw InvalidArgumentError("arithmetic anchors need a positive step");
    }
    auto factory = [=]() -> Generator {
        return [=, slope = slope0](std::size_t j) mutable {
            AnchorPoint p{start + step * static_cast<Real>(j), slope};
            slope *= slope_ratio;
            return p;
        };
    };
    return AnchorSpec(AnchorKind::arithmetic,
                      {{"start", start}, {"step", step}, {"slope0", slope0}, {"slope_ratio", slope_ratio}},
                      factory, slope_ratio < 1);
}

AnchorSpec AnchorSpec::geometric_increment(Real start, Real step0, Real ratio, Real slope_ratio) {
    if (!(step0 > 0) || !(ratio > 0)) {
        throw InvalidArgumentError("geometric anchors need positive step and ratio");
    }
    auto factory = [=]() -> Generator {
        return [=, s = start](std::size_t j) mutable {
            const Real jj = static_cast<Real>(j);
            AnchorPoint p{s, pow(slope_ratio, jj)};
            s += step0 * pow(ratio, jj);
            return p;
        };
    };
    return AnchorSpec(AnchorKind::geometric_increment,
                      {{"start", start}, {"step0", step0}, {"ratio", ratio}, {"slope_ratio", slope_ratio}},
                      factory, slope_ratio < 1);
}

void validate_next_anchor(const AnchorSpec& spec, std::size_t j, const AnchorPoint& next,
                          const AnchorPoint* previous) {
    const std::string where = std::string(to_string(spec.kind())) + " anchor " + std::to_string(j);
    if (spec.j_max() && j > *spec.j_max()) {
        throw OverflowError(where + " beyond the anchor cap", static_cast<long long>(*spec.j_max()));
    }
    if (!isfinite(next.position)) {
        throw OverflowError(where + " position is not finite");
    }
    if (!(next.slope > 0 && next.slope <= 1)) {
        throw OverflowError(where + " slope " + format_real(next.slope) + " left (0,1]");
    }
    if (previous == nullptr) {
        return;
    }
    if (!(next.position > previous->position)) {
        throw MonotonicityError(where + " does not increase: " + format_real(next.position) +
                                " after " + format_real(previous->position));
    }
    if (spec.decreasing_slopes() && !(previous->slope - next.slope > 0)) {
        throw OverflowError(where + " slope decrement underflows");
    }
}

std::vector<AnchorPoint> AnchorSpec::generate(std::size_t count) const {
    std::vector<AnchorPoint> out;
    out.reserve(count);
    auto gen = start();
    for (std::size_t j = 0; j < count; ++j) {
        AnchorPoint p = gen(j);
        validate_next_anchor(*this, j, p, out.empty() ? nullptr : &out.back());
        out.push_back(p);
    }
    return out;
}

void validate(const BumpAnchors& a) {
    if (!(a.half_width > 0) || !isfinite(a.half_width)) {
        throw InvalidArgumentError("bump half-width must be positive and finite");
    }
    if (a.centers.empty() || a.centers.size() != a.targets.size()) {
        throw InvalidArgumentError("bump anchors need one target triple per centre");
    }
    for (std::size_t j = 0; j < a.centers.size(); ++j) {
        if (!isfinite(a.centers[j])) {
            throw OverflowError("bump centre " + std::to_string(j) + " is not finite");
        }
        for (Real v : a.targets[j]) {
            if (!isfinite(v)) {
                throw OverflowError("bump target at centre " + std::to_string(j) + " is not finite");
            }
        }
        if (j > 0 && !(a.centers[j] - a.centers[j - 1] > 2 * a.half_width)) {
            throw DisjointnessError("bump intervals " + std::to_string(j - 1) + " and " + std::to_string(j) +
                                    " overlap");
        }
    }
}

} // namespace gradadv
