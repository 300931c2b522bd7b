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

#include <cmath>

#include <gtest/gtest.h>

#include "gradadv/audit.hpp"
#include "test_util.hpp"

using namespace gradadv;
using namespace gradadv::audit;
using gradadv::testing::Draw;

namespace {

Vector random_point(const ModelObjective& m, Draw& draw) {
    switch (m.kind()) {
    case ModelKind::factor_analysis:
    case ModelKind::gee: return {static_cast<Scalar>(draw.uniform(0.05, 20))};
    case ModelKind::inv_gaussian: return {static_cast<Scalar>(-draw.uniform(0.05, 20))};
    case ModelKind::ffnn: {
        Vector w(4);
        for (auto& x : w) {
            x = static_cast<Scalar>(draw.uniform(-1.5, 1.5));
        }
        return w;
    }
    }
    return {};
}

Scalar scale_of(Scalar x) { return std::max<Scalar>(1, std::fabs(x)); }

} // namespace

TEST(Audit, FiniteDifferenceAgreement) {
    const std::vector<ModelObjective> models = {
        ModelObjective::factor_analysis(1.5L), ModelObjective::ffnn(), ModelObjective::gee(2),
        ModelObjective::inv_gaussian(0.7L)};
    Draw draw(51);
    for (const auto& m : models) {
        const std::size_t n = m.dimension();
        for (int i = 0; i < 500; ++i) {
            const Vector x = random_point(m, draw);
            const Vector g = m.grad(x);
            const Vector h = m.hess(x);
            for (std::size_t a = 0; a < n; ++a) {
                const Scalar step = 1e-6L * scale_of(x[a]);
                Vector up = x;
                Vector down = x;
                up[a] += step;
                down[a] -= step;
                const Scalar fd = (m.value(up) - m.value(down)) / (2 * step);
                EXPECT_LE(std::fabs(fd - g[a]), 1e-4L * scale_of(g[a])) << m.name() << " i=" << i;
                const Vector gu = m.grad(up);
                const Vector gd = m.grad(down);
                for (std::size_t b = 0; b < n; ++b) {
                    const Scalar hd = (gu[b] - gd[b]) / (2 * step);
                    EXPECT_LE(std::fabs(hd - h[b * n + a]), 1e-4L * scale_of(h[b * n + a]))
                        << m.name() << " i=" << i << " (" << a << "," << b << ")";
                }
            }
        }
    }
}

TEST(Audit, FfnnHessianSymmetricAndBounded) {
    const auto m = ModelObjective::ffnn(0);
    Draw draw(52);
    for (int i = 0; i < 200; ++i) {
        const Vector h = m.hess(random_point(m, draw));
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                EXPECT_LE(std::fabs(h[a * 4 + b] - h[b * 4 + a]), 1e-12L * scale_of(h[a * 4 + b]));
            }
        }
    }
    for (Scalar w = 0.5L; w <= 200; w *= 1.5L) {
        EXPECT_GE(frobenius_norm(m.hess(m.embed(w))), std::pow(w, 6) / 4) << static_cast<double>(w);
    }
}

TEST(Audit, ClosedFormPoints) {
    const auto ffnn = ModelObjective::ffnn();
    for (Scalar g : ffnn.grad({0, 0, 0, 0})) {
        EXPECT_EQ(g, 0);
    }
    const auto ig = ModelObjective::inv_gaussian(1);
    EXPECT_NEAR(static_cast<double>(ig.grad({-0.5L})[0]), 0, 1e-18);
    EXPECT_NEAR(static_cast<double>(ig.hess({-0.5L})[0]), 1, 1e-18);
    EXPECT_EQ(ModelObjective::gee(1).grad({1})[0], 0);
}

TEST(Audit, DomainsEnforced) {
    EXPECT_THROW(ModelObjective::factor_analysis(1).value({0}), DomainError);
    EXPECT_THROW(ModelObjective::gee(1).grad({-1}), DomainError);
    EXPECT_THROW(ModelObjective::inv_gaussian(1).hess({0.5L}), DomainError);
    EXPECT_NO_THROW(ModelObjective::factor_analysis(1).value({1e-300L}));
    EXPECT_THROW(ModelObjective::ffnn().value({1, 2}), InvalidArgumentError);
    EXPECT_THROW(ratio(ModelObjective::gee(1), {1}), DomainError);
    EXPECT_THROW(ModelObjective::by_name("lasso"), InvalidArgumentError);
}

TEST(Audit, CountersTrackCalls) {
    const auto m = ModelObjective::gee(2);
    m.value({1});
    m.grad({1});
    m.grad({2});
    m.hess({3});
    EXPECT_EQ(m.counts().value, 1u);
    EXPECT_EQ(m.counts().grad, 2u);
    EXPECT_EQ(m.counts().hess, 1u);
}

TEST(Audit, RatioReferenceValues) {
    // tests/oracles/reference_values.py
    EXPECT_NEAR(static_cast<double>(ratio(ModelObjective::factor_analysis(1), {2})), 0.555555555555555555556, 1e-15);
    EXPECT_NEAR(static_cast<double>(ratio(ModelObjective::factor_analysis(1), {1e-6L})), 1.000000000003, 1e-12);
    const auto gee_at = [](Scalar y) { return static_cast<double>(ratio(ModelObjective::gee(y), {1e-9L})); };
    EXPECT_NEAR(gee_at(1), 1.0000474361649815856, 1e-12);
    EXPECT_NEAR(gee_at(2), 0.50001185879123057258, 1e-12);
    EXPECT_NEAR(gee_at(5), 0.20000189738259622752, 1e-12);
    const auto ig = ModelObjective::inv_gaussian(1);
    EXPECT_NEAR(static_cast<double>(ratio(ig, {-std::pow(4.0L, -5)})), 24.768267734187148679, 1e-12);
    EXPECT_NEAR(static_cast<double>(ratio(ig, {-std::pow(4.0L, -10)})), 726.08149478140796442, 1e-9);
    EXPECT_NEAR(static_cast<double>(ratio(ig, {-std::pow(4.0L, -11)})), 1450.1567613809436969, 1e-9);
    const auto ffnn = ModelObjective::ffnn(0);
    EXPECT_NEAR(static_cast<double>(ratio(ffnn, ffnn.embed(10))), 1.0000001199999928, 1e-13);
}

TEST(Audit, PathTrends) {
    const auto ig = probe_path(ModelObjective::inv_gaussian(1), parse_path("geometric:-0.25,0.25,20"));
    ASSERT_EQ(ig.samples.size(), 20u);
    // the denominator vanishes at theta = -1/2, so the first sample sits on the far side of a pole
    EXPECT_NEAR(static_cast<double>(ig.samples[0].ratio), 16.485281374238570292, 1e-12);
    EXPECT_LT(ig.samples[1].ratio, ig.samples[0].ratio);
    for (std::size_t k = 2; k < ig.samples.size(); ++k) {
        EXPECT_GT(ig.samples[k].ratio, ig.samples[k - 1].ratio);
    }
    EXPECT_GT(ig.samples.back().ratio, 1e3L);
    EXPECT_EQ(ig.trend.behaviour, "diverging");

    const auto fa = probe_path(ModelObjective::factor_analysis(1), parse_path("linear:1,1,40"));
    // x = 1 makes theta = 1 stationary
    ASSERT_EQ(fa.skipped.size(), 1u);
    EXPECT_EQ(fa.skipped[0].k, 0u);
    EXPECT_TRUE(fa.trend.ratio_decreasing);
    EXPECT_LT(fa.samples.back().ratio, 1e-3L);

    const auto gee = probe_path(ModelObjective::gee(2), parse_path("geometric:1e-2,0.1,8"));
    EXPECT_NEAR(static_cast<double>(*gee.trend.last_ratio), 0.5, 1e-3);

    const auto ffnn = probe_path(ModelObjective::ffnn(0), parse_path("linear:10,1,91"));
    for (const auto& s : ffnn.samples) {
        EXPECT_GE(s.ratio, 1);
        EXPECT_LE(s.ratio, 3);
    }
    EXPECT_EQ(ffnn.trend.behaviour, "bounded");
}

TEST(Audit, SkipsOutOfDomainSamples) {
    const auto r = probe_path(ModelObjective::gee(1), parse_path("linear:-1,1,4"));
    // -1 and 0 are outside, 1 has zero gradient
    EXPECT_EQ(r.samples.size(), 1u);
    EXPECT_EQ(r.skipped.size(), 3u);
}

TEST(Audit, PathParsing) {
    const auto p = parse_path("geometric:1e-1,0.1,8");
    EXPECT_EQ(p.kind, PathSpec::Kind::geometric);
    EXPECT_EQ(p.count, 8u);
    EXPECT_NEAR(static_cast<double>(p.at(2)), 1e-3, 1e-18);
    EXPECT_THROW(parse_path("spiral:1,2,3"), InvalidArgumentError);
    EXPECT_THROW(parse_path("linear:1,2"), InvalidArgumentError);
    EXPECT_THROW(parse_path("linear:1,2,0"), InvalidArgumentError);
    EXPECT_THROW(parse_path("geometric:1,x,3"), InvalidArgumentError);
}

TEST(Audit, Reports) {
    const auto r = probe_path(ModelObjective::factor_analysis(1), parse_path("geometric:1e-1,0.1,3"));
    const std::string csv = report_csv(r);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "theta,grad_norm,hess_norm,ratio");
    const std::string json = report_json(r);
    EXPECT_NE(json.find("\"trend\""), std::string::npos);
    EXPECT_NE(json.find("\"samples\""), std::string::npos);
}
