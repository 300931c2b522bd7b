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

#include "gradadv/scenarios.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <utility>

#include "gradadv/anchors.hpp"
#include "gradadv/block.hpp"
#include "gradadv/bump.hpp"
#include "gradadv/chained.hpp"
#include "gradadv/interpolation.hpp"
#include "gradadv/optimizers.hpp"

namespace gradadv {

const char* to_string(MethodId method) {
    switch (method) {
    case MethodId::constant_gd: return "constant_gd";
    case MethodId::bb: return "bb";
    case MethodId::nag: return "nag";
    case MethodId::bregman: return "bregman";
    case MethodId::negative_curvature: return "negative_curvature";
    case MethodId::lipschitz_approx: return "lipschitz_approx";
    case MethodId::wngrad: return "wngrad";
    case MethodId::adagrad_like: return "adagrad_like";
    case MethodId::polyak: return "polyak";
    case MethodId::armijo: return "armijo";
    case MethodId::cubic_newton: return "cubic_newton";
    case MethodId::acr: return "acr";
    case MethodId::dynamic: return "dynamic";
    }
    return "unknown";
}

const std::vector<ScenarioInfo>& catalog() {
    static const std::vector<ScenarioInfo> entries = {
        {"constant", MethodId::constant_gd, "divergence",
         "constant step size on theta^4/4 started outside theta^2 <= 2/m; iterates, values and gradients grow",
         {{"m", Real("0.1"), "m > 0"}, {"theta0", 0, "theta0^2 > 2/m; default ceil(sqrt(2/m)) + 1", true}}},
        {"bb", MethodId::bb, "divergence",
         "Barzilai-Borwein steps on blocks with slopes 2^-j land on S_j = m0 j",
         {{"m0", 1, "m0 > 0"}}},
        {"nag", MethodId::nag, "divergence",
         "Nesterov acceleration; main and auxiliary sequences land on interleaved anchors",
         {{"m", 1, "m > 0"}}},
        {"bregman", MethodId::bregman, "divergence",
         "proximal (Bregman distance) steps choose the local minimiser S_{j+1} = S_j + m",
         {{"m", 1, "m > 0"}}},
        {"negcurve", MethodId::negative_curvature, "divergence",
         "alternating negative-curvature and gradient steps; curvature vanishes at every anchor",
         {{"m", 1, "m > 0"}, {"m_prime", 1, "m_prime > 0"}}},
        {"lipapprox", MethodId::lipschitz_approx, "divergence",
         "local Lipschitz estimates grow the step as (sqrt(5)/2)^j",
         {{"m0", 1, "m0 > 0"}}},
        {"wngrad", MethodId::wngrad, "divergence",
         "weight-normalised steps 1/b_k with b_k growing like sqrt(k)",
         {{"b0", 1, "b0 > 0"}}},
        {"adagrad", MethodId::adagrad_like, "divergence",
         "Adagrad-like steps (zeta + j + 1)^-mu never evaluate the objective",
         {{"zeta", 1, "0 < zeta <= 1"}, {"mu", 0.5L, "0 < mu < 1"}}},
        {"polyak", MethodId::polyak, "divergence",
         "Polyak steps with the largest lower bound -31/2048 on blocks with slopes 1/8",
         {}},
        {"armijo", MethodId::armijo, "evaluation-growth",
         "Armijo backtracking needs 2^j objective evaluations to accept theta_j",
         {{"alpha", 1, "alpha > 0"}, {"delta", 0.5L, "0 < delta < 1"}, {"rho", 0.5L, "0 < rho < 1"}}},
        {"cubic_newton", MethodId::cubic_newton, "evaluation-growth",
         "cubic-regularised Newton with penalty M/6 inflated by delta1",
         {{"L0", 1, "L0 > 0"}, {"delta1", 4, "delta1 > 1"}}},
        {"acr", MethodId::acr, "evaluation-growth",
         "adaptive cubic regularisation with penalty sigma/3 inflated by delta2",
         {{"sigma0", 1, "sigma0 > 0"},
          {"delta1", 2, "delta2 >= delta1 > 1"},
          {"delta2", 4, "delta2 >= delta1 > 1"},
          {"eta1", 0.25L, "1 > eta2 >= eta1 > 0"},
          {"eta2", 0.5L, "1 > eta2 >= eta1 > 0"}}},
        {"dynamic", MethodId::dynamic, "evaluation-growth",
         "dynamic method comparing gradient and negative-curvature upper models",
         {{"L0", 1, "L0 > 0"}, {"sigma0", 1, "sigma0 > 0"}, {"delta1", 2, "delta1 > 1"},
          {"fpp", 0, "fpp >= 0 (bump second derivatives)"}}},
    };
    return entries;
}

namespace detail {

class ScenarioImpl {
public:
    ScenarioImpl(ScenarioInfo info, std::map<std::string, Real> params)
        : info_(std::move(info)), params_(std::move(params)) {}
    virtual ~ScenarioImpl() = default;

    const ScenarioInfo& info() const { return info_; }
    const std::map<std::string, Real>& params() const { return params_; }
    Real param(const std::string& name) const { return params_.at(name); }

    virtual Real theta0() const = 0;
    virtual std::optional<unsigned> eval_growth() const { return std::nullopt; }
    virtual std::optional<Real> grad_floor() const { return std::nullopt; }
    virtual std::shared_ptr<const ScalarFunction> function(std::size_t J) const = 0;
    // Largest feasible J not exceeding limit.
    virtual std::size_t feasible_up_to(std::size_t limit) const = 0;
    virtual std::vector<Real> anchors(std::size_t J) const = 0;
    virtual ExpectedPath path(std::size_t J) const = 0;
    virtual RunBudget budget(std::size_t J) const {
        RunBudget b;
        b.max_outer_iterations = std::max<std::size_t>(J, 1);
        return b;
    }
    virtual Trace run(const Objective& obj, std::size_t J) const = 0;
    virtual std::vector<Verdict> verify(const Trace& trace, const LandingTolerance& tol) const = 0;

protected:
    ScenarioInfo info_;
    std::map<std::string, Real> params_;
};

} // namespace detail

namespace {

using detail::ScenarioImpl;

const Real kResolution = 256 * std::numeric_limits<Real>::epsilon();

bool all_finite(std::initializer_list<Real> values) {
    return std::all_of(values.begin(), values.end(), [](Real v) { return isfinite(v); });
}

// ---------------------------------------------------------------------------
// quartic objective

class ConstantScenario final : public ScenarioImpl {
public:
    using ScenarioImpl::ScenarioImpl;

    Real theta0() const override { return param("theta0"); }

    std::shared_ptr<const ScalarFunction> function(std::size_t) const override {
        static const auto fn = quartic();
        return fn;
    }

    std::size_t feasible_up_to(std::size_t limit) const override {
        const Real m = param("m");
        Real theta = theta0();
        std::size_t J = 0;
        while (J < limit) {
            const Real next = theta - m * (theta * theta * theta);
            if (!all_finite({next, next * next * next, next * next * next * next / 4})) {
                break;
            }
            theta = next;
            ++J;
        }
        return J;
    }

    std::vector<Real> anchors(std::size_t) const override { return {}; }
    ExpectedPath path(std::size_t) const override { return {}; }

    Trace run(const Objective& obj, std::size_t J) const override {
        return run_constant_gd(obj, theta0(), param("m"), budget(J));
    }

    std::vector<Verdict> verify(const Trace& trace, const LandingTolerance&) const override {
        return {check_divergence(trace, *function(0))};
    }
};

// ---------------------------------------------------------------------------
// chained objectives

using ChainedRunner = std::function<Trace(const Objective&, Real, const RunBudget&)>;
using AnchorCheck = std::function<bool(const AnchorPoint& prev, const AnchorPoint& next)>;

class ChainedScenario : public ScenarioImpl {
public:
    ChainedScenario(ScenarioInfo info, std::map<std::string, Real> params, AnchorSpec spec, Real theta0,
                    ChainedRunner runner, std::optional<Real> floor, std::size_t offset = 0,
                    AnchorCheck check = nullptr)
        : ScenarioImpl(std::move(info), std::move(params)),
          chained_(std::make_shared<ChainedObjective>(spec)),
          spec_(std::move(spec)),
          theta0_(theta0),
          runner_(std::move(runner)),
          floor_(floor),
          offset_(offset),
          check_(std::move(check)) {}

    Real theta0() const override { return theta0_; }
    std::optional<Real> grad_floor() const override { return floor_; }
    std::shared_ptr<const ScalarFunction> function(std::size_t) const override { return chained_; }

    std::size_t feasible_up_to(std::size_t limit) const override {
        const std::size_t wanted = anchors_needed(limit);
        const std::size_t have = valid_anchor_count(wanted);
        std::size_t J = limit;
        while (J > 0 && anchors_needed(J) > have) {
            --J;
        }
        return J;
    }

    std::vector<Real> anchors(std::size_t J) const override {
        std::vector<Real> out;
        for (std::size_t j = 0; j <= J; ++j) {
            out.push_back(chained_->anchor(j).position);
        }
        return out;
    }

    ExpectedPath path(std::size_t J) const override {
        ExpectedPath p;
        p.origin = chained_->anchor(0).position;
        for (std::size_t k = 0; k <= J; ++k) {
            p.iterates.push_back(point(iterate_anchor(k)));
        }
        return p;
    }

    Trace run(const Objective& obj, std::size_t J) const override { return runner_(obj, theta0_, budget(J)); }

    std::vector<Verdict> verify(const Trace& trace, const LandingTolerance& tol) const override {
        const std::size_t J = trace.iterations.empty() ? 0 : trace.iterations.size() - 1;
        const ExpectedPath p = path(J);
        std::vector<Verdict> out;
        out.push_back(check_anchor_tracking(trace, p, tol));
        out.push_back(check_divergence(trace, *chained_, &p));
        if (floor_) {
            out.push_back(check_gradient_floor(trace, *floor_, chained_.get()));
        }
        return out;
    }

protected:
    ExpectedPoint point(std::size_t j) const {
        return ExpectedPoint{chained_->anchor(j).position, chained_->flat_radius(j)};
    }

    virtual std::size_t iterate_anchor(std::size_t k) const { return k + offset_; }
    // Anchor count needed for J steps, including the right neighbour of the last iterate.
    virtual std::size_t anchors_needed(std::size_t J) const { return J + offset_ + 2; }

    std::size_t valid_anchor_count(std::size_t wanted) const {
        auto gen = spec_.start();
        AnchorPoint prev{};
        Real level = 0;
        for (std::size_t j = 0; j < wanted; ++j) {
            try {
                const AnchorPoint next = gen(j);
                validate_next_anchor(spec_, j, next, j == 0 ? nullptr : &prev);
                if (j > 0) {
                    const BlockParams block{next.position - prev.position, prev.slope, next.slope};
                    level += block_rise(block);
                    if (!all_finite({block.m, level}) || !(block.m > 0)) {
                        return j;
                    }
                    if (check_ && !check_(prev, next)) {
                        return j;
                    }
                }
                prev = next;
            } catch (const Error&) {
                return j;
            }
        }
        return wanted;
    }

    std::shared_ptr<ChainedObjective> chained_;
    AnchorSpec spec_;
    Real theta0_;
    ChainedRunner runner_;
    std::optional<Real> floor_;
    std::size_t offset_;
    AnchorCheck check_;
};

// Theta/Y/Z sequences of the accelerated method on a flat slope of -1.
struct NagSequence {
    std::vector<Real> theta;
    std::vector<Real> y;
    std::vector<Real> z;
};

class NagRecursion {
public:
    explicit NagRecursion(Real m) : m_(m), inv_m_(1 / m), A_(inv_m_) {}

    // Advances t -> t+1; returns Y_t.
    Real step() {
        const Real g = -1;
        const Real B1 = B_ + 0.5L * (1 + sqrt(4 * B_ + 1));
        const Real A1 = B1 + inv_m_;
        const Real y = theta_ + (1 - A_ / A1) * (z_ - theta_);
        theta_ = y - m_ * g;
        z_ = z_ - m_ * (A1 - A_) * g;
        B_ = B1;
        A_ = A1;
        return y;
    }

    Real theta() const { return theta_; }
    Real z() const { return z_; }

private:
    Real m_;
    Real inv_m_;
    Real B_ = 0;
    Real A_;
    Real theta_ = 0;
    Real z_ = 0;
};

NagSequence nag_sequence(Real m, std::size_t steps) {
    NagSequence s;
    NagRecursion r(m);
    s.theta.push_back(r.theta());
    s.z.push_back(r.z());
    for (std::size_t t = 0; t < steps; ++t) {
        s.y.push_back(r.step());
        s.theta.push_back(r.theta());
        s.z.push_back(r.z());
    }
    return s;
}

AnchorSpec nag_anchors(Real m) {
    auto factory = [m]() -> AnchorSpec::Generator {
        auto r = std::make_shared<NagRecursion>(m);
        auto pending = std::make_shared<Real>(0);
        return [r, pending](std::size_t j) {
            if (j == 0) {
                return AnchorPoint{0, 1};
            }
            if (j == 1) {
                r->step();           // Y_0
                const Real y1 = r->step();
                *pending = r->theta();  // Theta_2
                return AnchorPoint{y1, 1};
            }
            if (j % 2 == 0) {
                return AnchorPoint{*pending, 1};
            }
            const Real y = r->step();
            *pending = r->theta();
            return AnchorPoint{y, 1};
        };
    };
    return AnchorSpec(AnchorKind::nag, {{"m", m}}, factory);
}

class NagScenario final : public ChainedScenario {
public:
    using ChainedScenario::ChainedScenario;

    ExpectedPath path(std::size_t J) const override {
        const NagSequence seq = nag_sequence(param("m"), J);
        ExpectedPath p;
        p.origin = chained_->anchor(0).position;
        for (std::size_t k = 0; k <= J; ++k) {
            ExpectedPoint target = point(iterate_anchor(k));
            target.value = seq.theta[k];
            p.iterates.push_back(target);
        }
        for (std::size_t k = 1; k <= J; ++k) {
            ExpectedPoint y = point(y_anchor(k - 1));
            y.value = seq.y[k - 1];
            p.probes.push_back({k, ProbeKind::nag_y, y});
            p.probes.push_back({k, ProbeKind::nag_z, ExpectedPoint{seq.z[k - 1], std::nullopt}});
        }
        return p;
    }

protected:
    // Theta_0 = S_0, Theta_1 = S_1, Theta_k = S_{2k-2}
    std::size_t iterate_anchor(std::size_t k) const override { return k <= 1 ? k : 2 * k - 2; }
    // Y_0 = S_0, Y_k = S_{2k-1}
    static std::size_t y_anchor(std::size_t k) { return k == 0 ? 0 : 2 * k - 1; }
    std::size_t anchors_needed(std::size_t J) const override { return 2 * J + 2; }
};

// ---------------------------------------------------------------------------
// bump objectives

struct BumpRule {
    Real delta = 0.5L;  // spacing base
    std::function<std::array<Real, 3>(std::size_t j)> target;
    // Largest step-related magnitude from centre j; must stay finite.
    std::function<Real(std::size_t j, const std::array<Real, 3>& t)> step_scale;
};

using BumpRunner = std::function<Trace(const Objective&, const RunBudget&)>;

class BumpScenario final : public ScenarioImpl {
public:
    BumpScenario(ScenarioInfo info, std::map<std::string, Real> params, BumpRule rule, BumpRunner runner)
        : ScenarioImpl(std::move(info), std::move(params)), rule_(std::move(rule)), runner_(std::move(runner)) {}

    Real theta0() const override { return 0; }
    std::optional<unsigned> eval_growth() const override { return 2; }

    std::shared_ptr<const ScalarFunction> function(std::size_t J) const override {
        return std::make_shared<BumpObjective>(bump_anchors(J));
    }

    std::size_t feasible_up_to(std::size_t limit) const override {
        limit = std::min(limit, representable_up_to(62));
        std::lock_guard lock(mutex_);
        if (limit <= landed_ || limit == 0) {
            return limit;
        }
        if (failed_at_ && *failed_at_ <= limit) {
            return *failed_at_ - 1;
        }
        // Magnitudes alone do not show whether each accepted step still resolves the next
        // bump at working precision, so the method itself is run once and checked.
        std::size_t reached = limit;
        try {
            Objective obj(function(limit));
            const Trace t = runner_(obj, budget(limit));
            reached = std::min(reached, t.iterations.empty() ? 0 : t.iterations.size() - 1);
            for (const auto& v : verify(t, LandingTolerance{})) {
                if (const auto k = v.first_failure()) {
                    reached = std::min(reached, *k == 0 ? 0 : *k - 1);
                }
            }
        } catch (const Error&) {
            reached = 0;
        }
        if (reached < limit) {
            failed_at_ = reached + 1;
        }
        landed_ = std::max(landed_, reached);
        return reached;
    }

    std::size_t representable_up_to(std::size_t limit) const {
        // trial counts 2^j must fit the 64-bit evaluation counters
        limit = std::min<std::size_t>(limit, 62);
        const Real half = half_width();
        std::size_t J = 0;
        for (std::size_t j = 0; j <= limit; ++j) {
            const Real s = center(j);
            const auto t = rule_.target(j);
            if (!all_finite({s, t[0], t[1], t[2], rule_.step_scale(j, t)}) || !all_finite({s + rule_.step_scale(j, t)})) {
                break;
            }
            bool ok = true;
            try {
                const auto p = solve_bump(half, t[0], t[1], t[2]);
                for (Real c : p.c) {
                    ok = ok && isfinite(c);
                }
            } catch (const Error&) {
                ok = false;
            }
            // the gap S_{j-1} - S_{j-2} must stay resolvable next to S_j
            if (j >= 2 && !(spacing(j - 1) > kResolution * s)) {
                ok = false;
            }
            if (!ok) {
                break;
            }
            J = j;
        }
        return J;
    }

    std::vector<Real> anchors(std::size_t J) const override {
        std::vector<Real> out;
        Real s = 0;
        for (std::size_t j = 0; j <= J; ++j) {
            if (j > 0) {
                s += spacing(j);
            }
            out.push_back(s);
        }
        return out;
    }

    ExpectedPath path(std::size_t J) const override {
        ExpectedPath p;
        for (Real s : anchors(J)) {
            p.iterates.push_back(ExpectedPoint{s, half_width()});
        }
        return p;
    }

    RunBudget budget(std::size_t J) const override {
        RunBudget b = ScenarioImpl::budget(J);
        // iteration j of the construction rejects 2^j - 1 trials
        if (J >= 1 && J < 62) {
            b.max_inner_trials = std::max<std::size_t>(b.max_inner_trials, std::size_t(1) << J);
        }
        return b;
    }

    Trace run(const Objective& obj, std::size_t J) const override { return runner_(obj, budget(J)); }

    std::vector<Verdict> verify(const Trace& trace, const LandingTolerance& tol) const override {
        const std::size_t J = trace.iterations.empty() ? 0 : trace.iterations.size() - 1;
        return {check_anchor_tracking(trace, path(J), tol), check_eval_growth(trace, 2)};
    }

    BumpAnchors bump_anchors(std::size_t J) const {
        BumpAnchors a;
        a.centers = anchors(J);
        for (std::size_t j = 0; j <= J; ++j) {
            a.targets.push_back(rule_.target(j));
        }
        a.half_width = half_width();
        return a;
    }

private:
    Real half_width() const { return (1 - rule_.delta) / 2; }
    // S_j - S_{j-1} = delta^{j - 2^{j-1}}
    Real spacing(std::size_t j) const {
        const Real e = static_cast<Real>(j) - ldexp(Real(1), static_cast<int>(j) - 1);
        return pow(rule_.delta, e);
    }
    Real center(std::size_t j) const {
        Real s = 0;
        for (std::size_t i = 1; i <= j; ++i) {
            s += spacing(i);
        }
        return s;
    }

    BumpRule rule_;
    BumpRunner runner_;
    mutable std::mutex mutex_;
    mutable std::size_t landed_ = 0;
    mutable std::optional<std::size_t> failed_at_;
};

// delta^{k + 2 - 2^{k+1}}
Real bump_power(Real delta, std::size_t k) {
    const Real e = static_cast<Real>(k) + 2 - ldexp(Real(1), static_cast<int>(k) + 1);
    return pow(delta, e);
}

// ---------------------------------------------------------------------------
// parameters

std::map<std::string, Real> resolve_params(const ScenarioInfo& info, const std::map<std::string, Real>& given) {
    std::map<std::string, Real> out;
    for (const auto& p : info.params) {
        out[p.name] = p.default_value;
    }
    for (const auto& [key, value] : given) {
        if (!out.count(key)) {
            throw InvalidArgumentError("scenario '" + info.name + "' has no parameter '" + key + "'");
        }
        if (!isfinite(value)) {
            throw InvalidArgumentError("parameter '" + key + "' must be finite");
        }
        out[key] = value;
    }
    return out;
}

void require_range(bool ok, const ScenarioInfo& info, const std::string& key) {
    if (ok) {
        return;
    }
    for (const auto& p : info.params) {
        if (p.name == key) {
            throw InvalidArgumentError("parameter '" + key + "' of scenario '" + info.name + "' must satisfy " + p.range);
        }
    }
    throw InvalidArgumentError("invalid parameter '" + key + "' for scenario '" + info.name + "'");
}

const ScenarioInfo& find_info(const std::string& name) {
    for (const auto& info : catalog()) {
        if (info.name == name) {
            return info;
        }
    }
    throw InvalidArgumentError("unknown scenario '" + name + "'");
}

std::shared_ptr<const ScenarioImpl> make_impl(const std::string& name, const std::map<std::string, Real>& given) {
    const ScenarioInfo& info = find_info(name);
    const bool theta0_given = given.count("theta0") > 0;
    auto p = resolve_params(info, given);
    auto positive = [&](const std::string& key) { require_range(p.at(key) > 0, info, key); };
    const Real one = 1;

    switch (info.method) {
    case MethodId::constant_gd: {
        positive("m");
        const Real m = p["m"];
        if (!theta0_given) {
            p["theta0"] = ceil(sqrt(2 / m)) + 1;
        }
        require_range(p["theta0"] * p["theta0"] > 2 / m, info, "theta0");
        return std::make_shared<ConstantScenario>(info, p);
    }
    case MethodId::bb: {
        positive("m0");
        const Real m0 = p["m0"];
        auto runner = [m0](const Objective& obj, Real t0, const RunBudget& b) { return run_bb(obj, t0, m0, b); };
        auto check = [m0](const AnchorPoint& prev, const AnchorPoint& next) {
            return isfinite(m0 / (prev.slope - next.slope));
        };
        return std::make_shared<ChainedScenario>(info, p, AnchorSpec::arithmetic(0, m0, 1, 0.5L), 0, runner,
                                                 std::nullopt, 0, check);
    }
    case MethodId::nag: {
        positive("m");
        const Real m = p["m"];
        auto runner = [m](const Objective& obj, Real t0, const RunBudget& b) { return run_nag(obj, t0, m, b); };
        return std::make_shared<NagScenario>(info, p, nag_anchors(m), 0, runner, one);
    }
    case MethodId::bregman: {
        positive("m");
        const Real m = p["m"];
        auto runner = [m](const Objective& obj, Real t0, const RunBudget& b) { return run_bregman(obj, t0, m, b); };
        return std::make_shared<ChainedScenario>(info, p, AnchorSpec::arithmetic(0, m), 0, runner, one);
    }
    case MethodId::negative_curvature: {
        positive("m");
        positive("m_prime");
        const Real m = p["m"];
        const Real mp = p["m_prime"];
        auto runner = [m, mp](const Objective& obj, Real t0, const RunBudget& b) {
            return run_negative_curvature(obj, t0, m, mp, b);
        };
        return std::make_shared<ChainedScenario>(info, p, AnchorSpec::arithmetic(0, m), 0, runner, one);
    }
    case MethodId::lipschitz_approx: {
        positive("m0");
        const Real m0 = p["m0"];
        const Real r5 = sqrt(Real(5));
        auto runner = [m0](const Objective& obj, Real t0, const RunBudget& b) {
            return run_lipschitz_approx(obj, t0, m0, b);
        };
        auto check = [m0](const AnchorPoint& prev, const AnchorPoint& next) {
            return isfinite((next.position - prev.position) / prev.slope) && isfinite(m0 / prev.slope);
        };
        return std::make_shared<ChainedScenario>(info, p, AnchorSpec::geometric_increment(0, m0, r5 / 2, r5 / (r5 + 1)),
                                                 0, runner, std::nullopt, 0, check);
    }
    case MethodId::wngrad: {
        positive("b0");
        const Real b0 = p["b0"];
        auto factory = [b0]() -> AnchorSpec::Generator {
            return [s = Real(0), b = b0](std::size_t j) mutable {
                if (j > 0) {
                    s = s + 1 / b;
                    b = b + 1 / b;
                }
                return AnchorPoint{s, 1};
            };
        };
        auto runner = [b0](const Objective& obj, Real t0, const RunBudget& b) { return run_wngrad(obj, t0, b0, b); };
        return std::make_shared<ChainedScenario>(info, p, AnchorSpec(AnchorKind::wngrad, {{"b0", b0}}, factory), 0,
                                                 runner, one);
    }
    case MethodId::adagrad_like: {
        require_range(p["zeta"] > 0 && p["zeta"] <= 1, info, "zeta");
        require_range(p["mu"] > 0 && p["mu"] < 1, info, "mu");
        const Real zeta = p["zeta"];
        const Real mu = p["mu"];
        auto factory = [zeta, mu]() -> AnchorSpec::Generator {
            return [s = Real(0), acc = zeta, mu](std::size_t j) mutable {
                if (j > 0) {
                    acc += 1;
                    s = s + 1 / pow(acc, mu);
                }
                return AnchorPoint{s, 1};
            };
        };
        auto runner = [zeta, mu](const Objective& obj, Real t0, const RunBudget& b) {
            return run_adagrad_like(obj, t0, zeta, mu, b);
        };
        return std::make_shared<ChainedScenario>(
            info, p, AnchorSpec(AnchorKind::adagrad, {{"zeta", zeta}, {"mu", mu}}, factory), 0, runner, one);
    }
    case MethodId::polyak: {
        const Real slope = 0.125L;
        const Real lower = -31.0L / 2048;
        auto factory = [slope]() -> AnchorSpec::Generator {
            // O_j = F(S_j) = 1346/2048 (S_j - S_{j-1}) + O_{j-1}
            return [prev = Real(0), cur = Real(0), level = Real(0), slope](std::size_t j) mutable {
                if (j == 1) {
                    cur = 1;
                } else if (j > 1) {
                    level = 1346.0L / 2048 * (cur - prev) + level;
                    prev = cur;
                    cur = cur + 8 * level + 248.0L / 2048;
                }
                return AnchorPoint{cur, slope};
            };
        };
        auto runner = [lower](const Objective& obj, Real t0, const RunBudget& b) {
            return run_polyak(obj, t0, lower, b);
        };
        return std::make_shared<ChainedScenario>(info, p, AnchorSpec(AnchorKind::polyak, {}, factory), 1, runner,
                                                 slope, 1);
    }
    case MethodId::armijo: {
        positive("alpha");
        require_range(p["delta"] > 0 && p["delta"] < 1, info, "delta");
        require_range(p["rho"] > 0 && p["rho"] < 1, info, "rho");
        const Real alpha = p["alpha"];
        const Real delta = p["delta"];
        const Real rho = p["rho"];
        BumpRule rule;
        rule.delta = delta;
        rule.target = [=](std::size_t j) -> std::array<Real, 3> {
            Real sum = 0;
            for (std::size_t k = 0; k < j; ++k) {
                sum += pow(delta, 2 * static_cast<Real>(k) + 4 - ldexp(Real(1), static_cast<int>(k) + 2));
            }
            return {-rho / alpha * sum, -bump_power(delta, j) / alpha, 0};
        };
        rule.step_scale = [=](std::size_t, const std::array<Real, 3>& t) {
            return std::max(alpha * abs(t[1]), rho * alpha * (t[1] * t[1]));
        };
        auto runner = [=](const Objective& obj, const RunBudget& b) { return run_armijo(obj, 0, alpha, delta, rho, b); };
        return std::make_shared<BumpScenario>(info, p, rule, runner);
    }
    case MethodId::cubic_newton: {
        positive("L0");
        require_range(p["delta1"] > 1, info, "delta1");
        const Real L0 = p["L0"];
        const Real d1 = p["delta1"];
        BumpRule rule;
        rule.delta = 1 / sqrt(d1);
        const Real delta = rule.delta;
        rule.target = [=](std::size_t j) -> std::array<Real, 3> {
            Real sum = 0;
            for (std::size_t k = 0; k < j; ++k) {
                const Real x = bump_power(delta, k);
                sum += x * x * x;
            }
            const Real x = bump_power(delta, j);
            return {-L0 / 3 * sum, -L0 / 2 * (x * x), 0};
        };
        rule.step_scale = [=](std::size_t, const std::array<Real, 3>& t) {
            const Real s = sqrt(2 * abs(t[1]) / L0);
            return std::max(s, abs(t[1]) * s + L0 / 6 * s * s * s);
        };
        auto runner = [=](const Objective& obj, const RunBudget& b) { return run_cubic_newton(obj, 0, L0, d1, b); };
        return std::make_shared<BumpScenario>(info, p, rule, runner);
    }
    case MethodId::acr: {
        positive("sigma0");
        require_range(p["delta1"] > 1, info, "delta1");
        require_range(p["delta2"] >= p["delta1"], info, "delta2");
        require_range(p["eta1"] > 0, info, "eta1");
        require_range(p["eta2"] >= p["eta1"] && p["eta2"] < 1, info, "eta2");
        AcrParams acr{p["sigma0"], p["delta1"], p["delta2"], p["eta1"], p["eta2"]};
        BumpRule rule;
        rule.delta = 1 / sqrt(acr.delta2);
        const Real delta = rule.delta;
        rule.target = [=](std::size_t j) -> std::array<Real, 3> {
            Real sum = 0;
            for (std::size_t k = 0; k < j; ++k) {
                const Real x = bump_power(delta, k);
                sum += x * x * x;
            }
            const Real x = bump_power(delta, j);
            return {-(2 * (acr.eta2 + 1) * acr.sigma0 / 3) * sum, -acr.sigma0 * (x * x), 0};
        };
        rule.step_scale = [=](std::size_t, const std::array<Real, 3>& t) {
            const Real s = sqrt(abs(t[1]) / acr.sigma0);
            return std::max(s, abs(t[1]) * s + acr.sigma0 / 3 * s * s * s);
        };
        auto runner = [=](const Objective& obj, const RunBudget& b) { return run_acr(obj, 0, acr, b); };
        return std::make_shared<BumpScenario>(info, p, rule, runner);
    }
    case MethodId::dynamic: {
        positive("L0");
        positive("sigma0");
        require_range(p["delta1"] > 1, info, "delta1");
        require_range(p["fpp"] >= 0, info, "fpp");
        const Real L0 = p["L0"];
        const Real sigma0 = p["sigma0"];
        const Real d1 = p["delta1"];
        const Real fpp = p["fpp"];
        BumpRule rule;
        rule.delta = 1 / d1;
        const Real delta = rule.delta;
        rule.target = [=](std::size_t j) -> std::array<Real, 3> {
            Real sum = 0;
            for (std::size_t k = 0; k < j; ++k) {
                sum += pow(delta, 2 * static_cast<Real>(k) + 4 - ldexp(Real(1), static_cast<int>(k) + 2));
            }
            return {-L0 / 2 * sum, -L0 * bump_power(delta, j), fpp};
        };
        rule.step_scale = [=](std::size_t, const std::array<Real, 3>& t) {
            return std::max(abs(t[1]) / L0, t[1] * t[1] / (2 * L0));
        };
        auto runner = [=](const Objective& obj, const RunBudget& b) {
            return run_dynamic(obj, 0, L0, sigma0, d1, b);
        };
        return std::make_shared<BumpScenario>(info, p, rule, runner);
    }
    }
    throw InvalidArgumentError("unknown scenario '" + name + "'");
}

std::string describe(const ScenarioInfo& info, const std::map<std::string, Real>& params) {
    std::string out;
    for (const auto& [key, value] : params) {
        out += (out.empty() ? "" : ", ") + key + "=" + format_real(value);
    }
    return out.empty() ? info.name : out;
}

} // namespace

Scenario::Scenario(std::shared_ptr<const detail::ScenarioImpl> impl) : impl_(std::move(impl)) {}

const ScenarioInfo& Scenario::info() const { return impl_->info(); }
const std::map<std::string, Real>& Scenario::params() const { return impl_->params(); }
Real Scenario::theta0() const { return impl_->theta0(); }
std::optional<unsigned> Scenario::expected_eval_growth() const { return impl_->eval_growth(); }
std::optional<Real> Scenario::expected_grad_floor() const { return impl_->grad_floor(); }

std::shared_ptr<const ScalarFunction> Scenario::function(std::size_t J) const {
    ensure_real_range();
    require_feasible(J);
    return impl_->function(J);
}

std::size_t Scenario::max_feasible_J() const {
    ensure_real_range();
    return impl_->feasible_up_to(kFeasibleCap);
}

void Scenario::require_feasible(std::size_t J) const {
    ensure_real_range();
    if (J > kFeasibleCap || impl_->feasible_up_to(J) < J) {
        const std::size_t max = max_feasible_J();
        throw OverflowError("max feasible J = " + std::to_string(max) + " for " + describe(info(), params()),
                            static_cast<long long>(max));
    }
}

std::vector<Real> Scenario::expected_anchors(std::size_t J) const {
    require_feasible(J);
    return impl_->anchors(J);
}

ExpectedPath Scenario::expected_path(std::size_t J) const {
    require_feasible(J);
    return impl_->path(J);
}

RunBudget Scenario::budget(std::size_t J) const { return impl_->budget(J); }

Trace Scenario::run(std::size_t J) const {
    Objective obj(function(J));
    return run(obj, J);
}

Trace Scenario::run(const Objective& obj, std::size_t J) const {
    ensure_real_range();
    require_feasible(J);
    if (J == 0) {
        throw InvalidArgumentError("a run needs at least one step");
    }
    Trace t = impl_->run(obj, J);
    t.scenario = name();
    t.params = params();
    return t;
}

std::vector<Verdict> Scenario::verify(const Trace& trace, const LandingTolerance& tol) const {
    ensure_real_range();
    if (trace.iterations.empty()) {
        std::vector<Verdict> out;
        Verdict v;
        v.claim = "trace";
        v.message = "trace is empty";
        out.push_back(v);
        return out;
    }
    require_feasible(trace.iterations.size() - 1);
    return impl_->verify(trace, tol);
}

Scenario build_scenario(const std::string& name, const std::map<std::string, Real>& params) {
    ensure_real_range();
    return Scenario(make_impl(name, params));
}

std::size_t max_feasible_J(const std::string& name, const std::map<std::string, Real>& params) {
    return build_scenario(name, params).max_feasible_J();
}

std::vector<Real> expected_anchors(const Scenario& s, std::size_t J) { return s.expected_anchors(J); }

} // namespace gradadv
