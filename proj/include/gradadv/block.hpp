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

#include "gradadv/core.hpp"

namespace gradadv {

// Building block on [0, m]: leaves with slope -d, rises over a smooth plateau,
// and enters the next block with slope -delta.
struct BlockParams {
    Real m = 1;
    Real d = 1;
    Real delta = 1;
};

void validate(const BlockParams& p);

Real eval_block(Real theta, const BlockParams& p);
// One-sided convention at the endpoints: -d at 0 and -delta at m.
Real grad_block(Real theta, const BlockParams& p);
// Right-limit at knots where the second derivative jumps.
Real hess_block(Real theta, const BlockParams& p);

// Block value at theta = m, m(22 + d^2 + delta^2 - 4d - 4delta)/32.
Real block_rise(const BlockParams& p);

} // namespace gradadv
