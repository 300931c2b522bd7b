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

#include "gradadv/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace gradadv {

namespace {

const Real kInf = std::numeric_limits<Real>::infinity();

void require(bool ok, const char* what) {
    if (!ok) {
        throw InvalidArgumentError(what);
    }
}

void require_budget(const RunBudget& b) {
    require(b.max_outer_iterations >= 1, "budget needs at least one outer iteration");
    require(b.max_inner_trials >= 1, "budget needs at least one inner trial");
}

Real sign_of(Real x) {
    return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

// Builds the trace; counters are sampled when a record is committed.
class Recorder {
public:
    Recorder(const Objective& obj, const RunBudget& budget) : obj_(obj), budget_(budget) { ensure_real_range(); }

    void probe(ProbeKind kind, Real theta, std::optional<Real> f = std::nullopt) {
        pending_.push_back(Probe{kind, theta, f});
    }

    void commit(Real theta, std::optional<Real> f, Real grad, Control control = {}) {
        IterationRecord r;
        r.k = trace_.iterations.size();
        r.theta = {theta};
        r.f = f;
        r.grad = {grad};
        r.probes = std::move(pending_);
        pending_.clear();
        r.cum = obj_.counts();
        r.control = control;
        trace_.iterations.push_back(std::move(r));
    }

    // False (and a flagged trace) when any value is not finite.
    bool finite(std::initializer_list<Real> values) {
        for (Real v : values) {
            if (!isfinite(v)) {
                if (budget_.overflow == OverflowPolicy::raise) {
                    throw OverflowError("iterate left the representable range after " +
                                        std::to_string(trace_.iterations.size()) + " records");
                }
                flag(flags::overflow);
                return false;
            }
        }
        return true;
    }

    void flag(const char* f) {
        if (!trace_.has_flag(f)) {
            trace_.flags.emplace_back(f);
        }
    }

    std::size_t outer() const { return budget_.max_outer_iterations; }
    std::size_t inner() const { return budget_.max_inner_trials; }

    Trace take() { return std::move(trace_); }

private:
    const Objective& obj_;
    const RunBudget& budget_;
    Trace trace_;
    std::vector<Probe> pending_;
};

Control step_control(Real step) {
    Control c;
    c.step_size = step;
    return c;
}

Control penalty_control(Real penalty) {
    Control c;
    c.penalty = penalty;
    return c;
}

} // namespace

Real acceptance_slack(Real f) {
    static const Real rel("1e-12");
    return rel * std::max<Real>(1, abs(f));
}

Real cubic_model(Real s, Real g, Real h, Real penalty, CubicConvention convention) {
    const Real k = convention == CubicConvention::sixth ? 6 : 3;
    const Real a = abs(s);
    return g * s + h * s * s / 2 + penalty * a * a * a / k;
}

Real cubic_subproblem_1d(Real g, Real h, Real penalty, CubicConvention convention) {
    require(penalty > 0, "cubic penalty must be positive");
    // stationarity: g + h s + a s|s| = 0
    const Real a = convention == CubicConvention::sixth ? penalty / 2 : penalty;
    if (h == 0) {
        if (g == 0) {
            return 0;
        }
        return -sign_of(g) * sqrt(abs(g) / a);
    }
    Real best = 0;
    Real best_value = 0;
    auto consider = [&](Real s) {
        const Real v = cubic_model(s, g, h, penalty, convention);
        if (v < best_value) {
            best = s;
            best_value = v;
        }
    };
    // s > 0: a s^2 + h s + g = 0, larger root
    const Real dp = h * h - 4 * a * g;
    if (dp >= 0) {
        const Real r = sqrt(dp);
        const Real s = h >= 0 ? -2 * g / (h + r) : (-h + r) / (2 * a);
        if (s > 0) {
            consider(s);
        }
    }
    // s < 0: a s^2 - h s - g = 0, smaller root
    const Real dn = h * h + 4 * a * g;
    if (dn >= 0) {
        const Real r = sqrt(dn);
        const Real s = h <= 0 ? (h - r) / (2 * a) : -2 * g / (h + r);
        if (s < 0) {
            consider(s);
        }
    }
    return best;
}

Trace run_constant_gd(const Objective& obj, Real theta0, Real m, const RunBudget& budget) {
    require(m > 0, "step size must be positive");
    require_budget(budget);
    Recorder rec(obj, budget);
    Real theta = theta0;
    Real g = obj.gradient(theta);
    if (!rec.finite({theta, g})) {
        return rec.take();
    }
    rec.commit(theta, std::nullopt, g, step_control(m));
    for (std::size_t k = 1; k <= rec.outer(); ++k) {
        theta = theta - m * g;
        if (!rec.finite({theta})) {
            break;
        }
        g = obj.gradient(theta);
        if (!rec.finite({g})) {
            break;
        }
        rec.commit(theta, std::nullopt, g, step_control(m));
    }
    return rec.take();
}

Trace run_bb(const Objective& obj, Real theta0, Real m0, const RunBudget& budget) {
    require(m0 > 0, "initial step size must be positive");
    require_budget(budget);
    Recorder rec(obj, budget);
    Real prev_theta = theta0;
    Real prev_g = obj.gradient(theta0);
    if (!rec.finite({theta0, prev_g})) {
        return rec.take();
    }
    rec.commit(theta0, std::nullopt, prev_g, step_control(m0));
    Real theta = prev_theta - m0 * prev_g;
    Real step = m0;
    for (std::size_t k = 1; k <= rec.outer(); ++k) {
        if (!rec.finite({theta})) {
            break;
        }
        const Real g = obj.gradient(theta);
        if (!rec.finite({g})) {
            break;
        }
        rec.commit(theta, std::nullopt, g, step_control(step));
        if (k == rec.outer()) {
            break;
        }
        const Real dg = g - prev_g;
        if (dg == 0) {
            rec.flag(flags::zero_gradient_difference);
            break;
        }
        step = (theta - prev_theta) / dg;
        prev_theta = theta;
        prev_g = g;
        theta = theta - step * g;
    }
    return rec.take();
}

Trace run_nag(const Objective& obj, Real theta0, Real m, const RunBudget& budget) {
    require(m > 0, "step size must be positive");
    require_budget(budget);
    Recorder rec(obj, budget);
    const Real inv_m = 1 / m;
    Real theta = theta0;
    Real z = theta0;
    Real B = 0;
    Real A = B + inv_m;
    rec.commit(theta, std::nullopt, obj.shadow().gradient(theta), step_control(m));
    for (std::size_t t = 0; t < rec.outer(); ++t) {
        const Real B1 = B + 0.5L * (1 + sqrt(4 * B + 1));
        const Real A1 = B1 + inv_m;
        const Real y = theta + (1 - A / A1) * (z - theta);
        if (!rec.finite({B1, A1, y})) {
            break;
        }
        const Real gy = obj.gradient(y);
        const Real next_theta = y - m * gy;
        const Real next_z = z - m * (A1 - A) * gy;
        if (!rec.finite({gy, next_theta, next_z})) {
            break;
        }
        rec.probe(ProbeKind::nag_y, y);
        rec.probe(ProbeKind::nag_z, z);
        theta = next_theta;
        z = next_z;
        B = B1;
        A = A1;
        const Real g_theta = obj.shadow().gradient(theta);
        Control c = step_control(m);
        c.b_k = B;
        rec.commit(theta, std::nullopt, g_theta, c);
    }
    return rec.take();
}

Trace run_bregman(const Objective& obj, Real theta0, Real m, const RunBudget& budget, SeedRule seed_rule) {
    require(m > 0, "step size must be positive");
    require(obj.has_hessian(), "Bregman inner solve needs a Hessian oracle");
    require_budget(budget);
    Recorder rec(obj, budget);
    Real theta = theta0;
    Real g = obj.gradient(theta);
    if (!rec.finite({theta, g})) {
        return rec.take();
    }
    rec.commit(theta, std::nullopt, g, step_control(m));
    for (std::size_t k = 1; k <= rec.outer(); ++k) {
        const Real center = theta;
        Real x = seed_rule == SeedRule::gradient_step ? center - m * g : center;
        if (!rec.finite({x})) {
            break;
        }
        rec.probe(ProbeKind::bregman_seed, x);
        // Newton on phi'(x) = F'(x) + (x - center)/m, accepting steps only when |phi'| shrinks
        Real gx = obj.gradient(x);
        Real phi1 = gx + (x - center) / m;
        bool solved = false;
        for (std::size_t it = 0; it <= rec.inner() && rec.finite({x, gx, phi1}); ++it) {
            static const Real rel("1e-10");
            const Real tol = rel * std::max({Real(1), abs(gx), abs(x - center) / m});
            const Real phi2 = obj.hessian(x) + 1 / m;
            if (abs(phi1) <= tol && phi2 > 0) {
                solved = true;
                break;
            }
            if (it == rec.inner() || !(phi2 > 0)) {
                break;
            }
            const Real candidate = x - phi1 / phi2;
            const Real gc = obj.gradient(candidate);
            const Real phic = gc + (candidate - center) / m;
            if (!(abs(phic) < abs(phi1))) {
                break;
            }
            x = candidate;
            gx = gc;
            phi1 = phic;
        }
        if (!solved) {
            if (isfinite(x) && isfinite(gx)) {
                rec.flag(flags::inner_solve_failed);
            }
            break;
        }
        theta = x;
        g = gx;
        rec.commit(theta, std::nullopt, g, step_control(m));
    }
    return rec.take();
}

Trace run_negative_curvature(const Objective& obj, Real theta0, Real m, Real m_prime, const RunBudget& budget) {
    require(m > 0 && m_prime > 0, "step sizes must be positive");
    require(obj.has_hessian(), "negative-curvature steps need a Hessian oracle");
    require_budget(budget);
    Recorder rec(obj, budget);
    Real theta = theta0;
    for (std::size_t k = 0;; ++k) {
        const Real g = obj.gradient(theta);
        const Real h = obj.hessian(theta);
        if (!rec.finite({theta, g, h})) {
            break;
        }
        rec.commit(theta, std::nullopt, g, step_control(m));
        if (k == rec.outer()) {
            break;
        }
        const Real s = -g;
        const Real s_prime = h >= 0 ? 0 : (g == 0 ? 1 : -sign_of(g));
        if (s == 0 && s_prime == 0) {
            rec.flag(flags::stationary);
            break;
        }
        theta = theta + m * s + m_prime * s_prime;
    }
    return rec.take();
}

Trace run_lipschitz_approx(const Objective& obj, Real theta0, Real m0, const RunBudget& budget) {
    require(m0 > 0, "initial step size must be positive");
    require_budget(budget);
    Recorder rec(obj, budget);
    Real prev_theta = theta0;
    Real prev_g = obj.gradient(theta0);
    if (!rec.finite({theta0, prev_g})) {
        return rec.take();
    }
    Control c0 = step_control(m0);
    c0.w_k = kInf;
    rec.commit(theta0, std::nullopt, prev_g, c0);
    Real theta = theta0 - m0 * prev_g;
    Real step = m0;
    Real w = kInf;
    Control c = c0;
    for (std::size_t k = 1; k <= rec.outer(); ++k) {
        if (!rec.finite({theta})) {
            break;
        }
        const Real g = obj.gradient(theta);
        if (!rec.finite({g})) {
            break;
        }
        rec.commit(theta, std::nullopt, g, c);
        if (k == rec.outer()) {
            break;
        }
        const Real growth = isinf(w) ? kInf : sqrt(1 + w) * step;
        const Real dg = abs(g - prev_g);
        const Real local = dg == 0 ? kInf : abs(theta - prev_theta) / (2 * dg);
        const Real next_step = std::min(growth, local);
        if (!isfinite(next_step)) {
            rec.flag(flags::zero_gradient_difference);
            break;
        }
        w = next_step / step;
        step = next_step;
        prev_theta = theta;
        prev_g = g;
        theta = theta - step * g;
        c = step_control(step);
        c.w_k = w;
    }
    return rec.take();
}

Trace run_wngrad(const Objective& obj, Real theta0, Real b0, const RunBudget& budget) {
    require(b0 > 0, "b0 must be positive");
    require_budget(budget);
    Recorder rec(obj, budget);
    Real theta = theta0;
    Real b = b0;
    Real g = obj.gradient(theta);
    if (!rec.finite({theta, g})) {
        return rec.take();
    }
    Control c;
    c.b_k = b;
    rec.commit(theta, std::nullopt, g, c);
    for (std::size_t k = 1; k <= rec.outer(); ++k) {
        theta = theta - (1 / b) * g;
        if (!rec.finite({theta})) {
            break;
        }
        const Real next_g = obj.gradient(theta);
        b = b + next_g * next_g / b;
        g = next_g;
        if (!rec.finite({g, b})) {
            break;
        }
        c.b_k = b;
        rec.commit(theta, std::nullopt, g, c);
    }
    return rec.take();
}

Trace run_adagrad_like(const Objective& obj, Real theta0, Real zeta, Real mu, const RunBudget& budget) {
    require(zeta > 0 && zeta <= 1, "zeta must lie in (0,1]");
    require(mu > 0 && mu < 1, "mu must lie in (0,1)");
    require_budget(budget);
    Recorder rec(obj, budget);
    Real theta = theta0;
    Real acc = zeta;
    for (std::size_t k = 0;; ++k) {
        const Real g = obj.gradient(theta);
        if (!rec.finite({theta, g})) {
            break;
        }
        acc += g * g;
        const Real w = pow(acc, mu);
        Control c;
        c.w_k = w;
        rec.commit(theta, std::nullopt, g, c);
        if (k == rec.outer()) {
            break;
        }
        theta = theta - g / w;
    }
    return rec.take();
}

Trace run_polyak(const Objective& obj, Real theta0, Real f_lower_bound, const RunBudget& budget) {
    require(isfinite(f_lower_bound), "lower bound must be finite");
    require_budget(budget);
    Recorder rec(obj, budget);
    Real theta = theta0;
    Control c;
    for (std::size_t k = 0;; ++k) {
        const Real f = obj.value(theta);
        const Real g = obj.gradient(theta);
        if (!rec.finite({theta, f, g})) {
            break;
        }
        rec.commit(theta, f, g, c);
        if (k == rec.outer()) {
            break;
        }
        if (g == 0) {
            rec.flag(f > f_lower_bound ? flags::zero_gradient : flags::stationary);
            break;
        }
        const Real step = (f - f_lower_bound) / (g * g);
        theta = theta - step * g;
        c = step_control(step);
    }
    return rec.take();
}

Trace run_armijo(const Objective& obj, Real theta0, Real alpha, Real delta, Real rho, const RunBudget& budget) {
    require(alpha > 0, "alpha must be positive");
    require(delta > 0 && delta < 1, "delta must lie in (0,1)");
    require(rho > 0 && rho < 1, "rho must lie in (0,1)");
    require_budget(budget);
    Recorder rec(obj, budget);
    Real theta = theta0;
    Real f = obj.value(theta);
    Real g = obj.gradient(theta);
    if (!rec.finite({theta, f, g})) {
        return rec.take();
    }
    rec.commit(theta, f, g, step_control(alpha));
    for (std::size_t k = 1; k <= rec.outer(); ++k) {
        const Real g2 = g * g;
        const Real slack = acceptance_slack(f);
        Real step = alpha;
        bool accepted = false;
        bool overflow = false;
        Real trial = theta;
        Real f_trial = f;
        for (std::size_t l = 0; l < rec.inner(); ++l) {
            trial = theta - step * g;
            f_trial = obj.value(trial);
            rec.probe(ProbeKind::trial, trial, f_trial);
            if (!rec.finite({trial, f_trial})) {
                overflow = true;
                break;
            }
            if (f_trial <= f - rho * step * g2 + slack) {
                accepted = true;
                break;
            }
            step *= delta;
        }
        if (!accepted) {
            if (!overflow) {
                rec.flag(flags::inner_trial_cap);
            }
            break;
        }
        theta = trial;
        f = f_trial;
        g = obj.gradient(theta);
        if (!rec.finite({g})) {
            break;
        }
        rec.commit(theta, f, g, step_control(step));
    }
    return rec.take();
}

Trace run_cubic_newton(const Objective& obj, Real theta0, Real L0, Real delta1, const RunBudget& budget) {
    require(L0 > 0, "L0 must be positive");
    require(delta1 > 1, "delta1 must exceed 1");
    require(obj.has_hessian(), "cubic Newton needs a Hessian oracle");
    require_budget(budget);
    Recorder rec(obj, budget);
    Real theta = theta0;
    Real f = obj.value(theta);
    Real g = obj.gradient(theta);
    Real h = obj.hessian(theta);
    if (!rec.finite({theta, f, g, h})) {
        return rec.take();
    }
    rec.commit(theta, f, g, penalty_control(L0));
    for (std::size_t k = 1; k <= rec.outer(); ++k) {
        const Real slack = acceptance_slack(f);
        Real M = L0;
        bool accepted = false;
        bool overflow = false;
        Real psi = theta;
        Real f_psi = f;
        for (std::size_t l = 0; l < rec.inner(); ++l) {
            const Real s = cubic_subproblem_1d(g, h, M, CubicConvention::sixth);
            const Real model = cubic_model(s, g, h, M, CubicConvention::sixth);
            psi = theta + s;
            f_psi = obj.value(psi);
            rec.probe(ProbeKind::trial, psi, f_psi);
            if (!rec.finite({psi, f_psi, model})) {
                overflow = true;
                break;
            }
            if (f_psi <= f + model + slack) {
                accepted = true;
                break;
            }
            M *= delta1;
        }
        if (!accepted) {
            if (!overflow) {
                rec.flag(flags::inner_trial_cap);
            }
            break;
        }
        theta = psi;
        f = f_psi;
        g = obj.gradient(theta);
        h = obj.hessian(theta);
        if (!rec.finite({g, h})) {
            break;
        }
        rec.commit(theta, f, g, penalty_control(M));
    }
    return rec.take();
}

Trace run_acr(const Objective& obj, Real theta0, const AcrParams& p, const RunBudget& budget) {
    require(p.sigma0 > 0, "sigma0 must be positive");
    require(p.delta1 > 1 && p.delta2 >= p.delta1, "need delta2 >= delta1 > 1");
    require(p.eta1 > 0 && p.eta2 >= p.eta1 && p.eta2 < 1, "need 1 > eta2 >= eta1 > 0");
    require(obj.has_hessian(), "ACR needs a Hessian oracle");
    require_budget(budget);
    Recorder rec(obj, budget);
    Real theta = theta0;
    Real f = obj.value(theta);
    Real g = obj.gradient(theta);
    Real B = obj.hessian(theta);
    if (!rec.finite({theta, f, g, B})) {
        return rec.take();
    }
    Real sigma = p.sigma0;
    rec.commit(theta, f, g, penalty_control(sigma));
    for (std::size_t k = 1; k <= rec.outer(); ++k) {
        bool accepted = false;
        bool stop = false;
        Real step = 0;
        Real f_trial = f;
        Real ratio = 0;
        for (std::size_t l = 0; l < rec.inner(); ++l) {
            step = cubic_subproblem_1d(g, B, sigma, CubicConvention::third);
            const Real predicted = -cubic_model(step, g, B, sigma, CubicConvention::third);
            if (!(predicted > 0)) {
                rec.flag(flags::stationary);
                stop = true;
                break;
            }
            f_trial = obj.value(theta + step);
            rec.probe(ProbeKind::trial, theta + step, f_trial);
            if (!rec.finite({theta + step, f_trial, predicted})) {
                stop = true;
                break;
            }
            ratio = (f - f_trial) / predicted;
            if (ratio >= p.eta1) {
                accepted = true;
                break;
            }
            sigma *= p.delta2;
        }
        if (!accepted) {
            if (!stop) {
                rec.flag(flags::inner_trial_cap);
            }
            break;
        }
        const Real used = sigma;
        theta = theta + step;
        f = f_trial;
        g = obj.gradient(theta);
        B = obj.hessian(theta);
        if (!rec.finite({g, B})) {
            break;
        }
        if (ratio > p.eta2) {
            sigma = p.sigma0;
        }
        rec.commit(theta, f, g, penalty_control(used));
    }
    return rec.take();
}

Trace run_dynamic(const Objective& obj, Real theta0, Real L0, Real sigma0, Real delta1, const RunBudget& budget) {
    require(L0 > 0 && sigma0 > 0, "L0 and sigma0 must be positive");
    require(delta1 > 1, "delta1 must exceed 1");
    require(obj.has_hessian(), "the dynamic method needs a Hessian oracle");
    require_budget(budget);
    Recorder rec(obj, budget);
    Real theta = theta0;
    Real f = obj.value(theta);
    Real g = obj.gradient(theta);
    Real h = obj.hessian(theta);
    if (!rec.finite({theta, f, g, h})) {
        return rec.take();
    }
    rec.commit(theta, f, g, penalty_control(L0));
    for (std::size_t k = 1; k <= rec.outer(); ++k) {
        const Real s = -g;
        const Real sp = h >= 0 ? 0 : (g == 0 ? 1 : -sign_of(g));
        if (s == 0 && sp == 0) {
            rec.flag(flags::stationary);
            break;
        }
        const Real slack = acceptance_slack(f);
        const Real sp3 = abs(sp * sp * sp);
        const Real c = sp * sp * h;
        Real L = L0;
        Real sigma = sigma0;
        bool accepted = false;
        bool overflow = false;
        Real trial = theta;
        Real f_trial = f;
        for (std::size_t l = 0; l < rec.inner(); ++l) {
            // in one dimension m_k(L) = -F' s / (L s^2) = 1/L
            const Real mg = s == 0 ? 0 : 1 / L;
            const Real U = mg * g * s + L * mg * mg * s * s / 2;
            Real mc = 0;
            Real Uc = 0;
            if (sp != 0) {
                mc = (-c + sqrt(c * c - 2 * sigma * sp3 * g * sp)) / (sigma * sp3);
                Uc = mc * g * sp + mc * mc * c / 2 + sigma / 6 * mc * mc * mc * sp3;
            }
            const bool gradient_step = U <= Uc;
            trial = gradient_step ? theta + mg * s : theta + mc * sp;
            f_trial = obj.value(trial);
            rec.probe(ProbeKind::trial, trial, f_trial);
            if (!rec.finite({trial, f_trial, U, Uc})) {
                overflow = true;
                break;
            }
            if (f_trial <= f + (gradient_step ? U : Uc) + slack) {
                accepted = true;
                break;
            }
            if (gradient_step) {
                L *= delta1;
            } else {
                sigma *= delta1;
            }
        }
        if (!accepted) {
            if (!overflow) {
                rec.flag(flags::inner_trial_cap);
            }
            break;
        }
        theta = trial;
        f = f_trial;
        g = obj.gradient(theta);
        h = obj.hessian(theta);
        if (!rec.finite({g, h})) {
            break;
        }
        rec.commit(theta, f, g, penalty_control(L));
    }
    return rec.take();
}

} // namespace gradadv
