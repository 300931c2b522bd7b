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

#include "gradadv/objective.hpp"
#include "gradadv/trace.hpp"

namespace gradadv {

enum class CubicConvention { sixth, third };

// Global minimiser of g s + h s^2/2 + penalty |s|^3 / 6 (sixth) or / 3 (third).
Real cubic_subproblem_1d(Real g, Real h, Real penalty, CubicConvention convention);
Real cubic_model(Real s, Real g, Real h, Real penalty, CubicConvention convention);

Trace run_constant_gd(const Objective& obj, Real theta0, Real m, const RunBudget& budget);
Trace run_bb(const Objective& obj, Real theta0, Real m0, const RunBudget& budget);
Trace run_nag(const Objective& obj, Real theta0, Real m, const RunBudget& budget);

enum class SeedRule {
    // theta_k - m F'(theta_k): the stationary point of the proximal model where F is linear
    gradient_step,
    // theta_k itself
    current
};

Trace run_bregman(const Objective& obj, Real theta0, Real m, const RunBudget& budget,
                  SeedRule seed_rule = SeedRule::gradient_step);
Trace run_negative_curvature(const Objective& obj, Real theta0, Real m, Real m_prime, const RunBudget& budget);
Trace run_lipschitz_approx(const Objective& obj, Real theta0, Real m0, const RunBudget& budget);
Trace run_wngrad(const Objective& obj, Real theta0, Real b0, const RunBudget& budget);
Trace run_adagrad_like(const Objective& obj, Real theta0, Real zeta, Real mu, const RunBudget& budget);
Trace run_polyak(const Objective& obj, Real theta0, Real f_lower_bound, const RunBudget& budget);
Trace run_armijo(const Objective& obj, Real theta0, Real alpha, Real delta, Real rho, const RunBudget& budget);
Trace run_cubic_newton(const Objective& obj, Real theta0, Real L0, Real delta1, const RunBudget& budget);

struct AcrParams {
    Real sigma0 = 1;
    Real delta1 = 2;
    Real delta2 = 4;
    Real eta1 = 0.25;
    Real eta2 = 0.5;
};

Trace run_acr(const Objective& obj, Real theta0, const AcrParams& params, const RunBudget& budget);
Trace run_dynamic(const Objective& obj, Real theta0, Real L0, Real sigma0, Real delta1, const RunBudget& budget);

// Slack added to sufficient-decrease tests, 1e-12 max(1, |F(theta_k)|).
Real acceptance_slack(Real f);

} // namespace gradadv
