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

#include <cstdio>
#include <filesystem>

#include <gtest/gtest.h>

#include "gradadv/scenarios.hpp"
#include "gradadv/trace_io.hpp"
#include "test_util.hpp"

using namespace gradadv;
using gradadv::testing::R;

namespace {

void expect_same_optional(const std::optional<Real>& a, const std::optional<Real>& b, const std::string& what) {
    ASSERT_EQ(a.has_value(), b.has_value()) << what;
    if (a) {
        if (isnan(*a)) {
            EXPECT_TRUE(isnan(*b)) << what;
        } else {
            EXPECT_EQ(*a, *b) << what;
        }
    }
}

void expect_same(const Trace& a, const Trace& b) {
    EXPECT_EQ(a.scenario, b.scenario);
    EXPECT_EQ(a.params, b.params);
    EXPECT_EQ(a.flags, b.flags);
    ASSERT_EQ(a.iterations.size(), b.iterations.size());
    for (std::size_t k = 0; k < a.iterations.size(); ++k) {
        const auto& x = a.iterations[k];
        const auto& y = b.iterations[k];
        const std::string at = "k=" + std::to_string(k);
        EXPECT_EQ(x.k, y.k) << at;
        EXPECT_EQ(x.theta, y.theta) << at;
        EXPECT_EQ(x.grad, y.grad) << at;
        expect_same_optional(x.f, y.f, at + " f");
        EXPECT_EQ(x.cum, y.cum) << at;
        expect_same_optional(x.control.step_size, y.control.step_size, at + " step_size");
        expect_same_optional(x.control.penalty, y.control.penalty, at + " penalty");
        expect_same_optional(x.control.b_k, y.control.b_k, at + " b_k");
        expect_same_optional(x.control.w_k, y.control.w_k, at + " w_k");
        ASSERT_EQ(x.probes.size(), y.probes.size()) << at;
        for (std::size_t i = 0; i < x.probes.size(); ++i) {
            EXPECT_EQ(x.probes[i].kind, y.probes[i].kind) << at;
            EXPECT_EQ(x.probes[i].theta, y.probes[i].theta) << at;
            expect_same_optional(x.probes[i].f, y.probes[i].f, at + " probe f");
        }
    }
}

Trace synthetic() {
    Trace t;
    t.scenario = "bb";
    t.params = {{"m0", R("0.1")}};
    IterationRecord a;
    a.k = 0;
    a.theta = {R("0.1"), R("-3")};
    a.grad = {Real(1) / 3, R("1e-300")};
    a.control.step_size = R("0.1");
    a.control.w_k = std::numeric_limits<Real>::infinity();
    a.cum = {0, 1, 0};
    IterationRecord b;
    b.k = 1;
    b.theta = {ldexp(Real(1), 5000), R("2")};
    b.f = -ldexp(Real(1), -5000);
    b.grad = {R("-1"), R("0")};
    b.probes = {{ProbeKind::trial, R("0.25"), R("-1.5")}, {ProbeKind::bregman_seed, R("7"), std::nullopt}};
    b.cum = {1, 2, 3};
    b.control.penalty = R("12.5");
    b.control.b_k = R("2");
    t.iterations = {a, b};
    t.flags = {flags::overflow};
    return t;
}

} // namespace

TEST(TraceIo, JsonRoundTripIsExact) {
    for (const auto& info : catalog()) {
        const auto t = build_scenario(info.name).run(8);
        expect_same(t, trace_from_json(trace_to_json(t)));
    }
    const auto s = synthetic();
    expect_same(s, trace_from_json(trace_to_json(s)));
}

TEST(TraceIo, CsvRoundTripIsExact) {
    for (const auto& info : catalog()) {
        const auto t = build_scenario(info.name).run(8);
        expect_same(t, trace_from_csv(trace_to_csv(t)));
    }
    const auto s = synthetic();
    expect_same(s, trace_from_csv(trace_to_csv(s)));
}

TEST(TraceIo, FormatsCarryIdenticalNumbers) {
    const auto t = build_scenario("nag").run(6);
    const std::string json = trace_to_json(t);
    const std::string csv = trace_to_csv(t);
    expect_same(trace_from_json(json), trace_from_csv(csv));
    for (const auto& r : t.iterations) {
        const std::string x = format_real(r.theta[0]);
        EXPECT_NE(json.find(x), std::string::npos) << x;
        EXPECT_NE(csv.find(x), std::string::npos) << x;
    }
}

TEST(TraceIo, JsonSchema) {
    const std::string json = trace_to_json(build_scenario("armijo").run(2));
    for (const char* key : {"\"schema_version\":1", "\"scenario\":\"armijo\"", "\"params\"", "\"iterations\"",
                            "\"cum_obj_evals\"", "\"cum_grad_evals\"", "\"cum_hess_evals\"", "\"control\"",
                            "\"probes\"", "\"kind\":\"trial\"", "\"flags\""}) {
        EXPECT_NE(json.find(key), std::string::npos) << key;
    }
}

TEST(TraceIo, CsvHeader) {
    const std::string csv = trace_to_csv(build_scenario("bb").run(2));
    EXPECT_NE(csv.find("record,k,kind,theta,f,grad,cum_obj_evals,cum_grad_evals,cum_hess_evals,step_size,penalty,b_k,w_k"),
              std::string::npos);
    EXPECT_EQ(csv.rfind("# scenario=bb", 0), 0u);
}

TEST(TraceIo, RejectsMalformedInput) {
    EXPECT_THROW(trace_from_json("{"), IoError);
    EXPECT_THROW(trace_from_json("[]"), IoError);
    EXPECT_THROW(trace_from_json(R"({"schema_version": 2, "scenario": "bb", "params": {}, "iterations": [], "flags": []})"),
                 IoError);
    EXPECT_THROW(trace_from_json(R"({"schema_version": 1, "scenario": "bb", "params": {}, "iterations": [{"k": 0}], "flags": []})"),
                 IoError);
    EXPECT_THROW(trace_from_csv("k,theta\n1,2\n"), IoError);
    EXPECT_THROW(trace_from_string(""), IoError);
    EXPECT_THROW(trace_format_from_string("xml"), InvalidArgumentError);
}

TEST(TraceIo, Files) {
    const auto dir = std::filesystem::temp_directory_path() / "gradadv_trace_io_test";
    std::filesystem::create_directories(dir);
    const auto t = build_scenario("polyak").run(5);
    for (auto format : {TraceFormat::json, TraceFormat::csv}) {
        const auto path = (dir / (format == TraceFormat::json ? "t.json" : "t.csv")).string();
        write_text_file(path, trace_to_string(t, format));
        expect_same(t, trace_from_string(read_text_file(path)));
    }
    EXPECT_THROW(read_text_file((dir / "missing.json").string()), IoError);
    EXPECT_THROW(write_text_file((dir / "no" / "such" / "dir.json").string(), "x"), IoError);
    std::filesystem::remove_all(dir);
}

TEST(TraceIo, VerifyReport) {
    const auto s = build_scenario("bb");
    VerifyReport r;
    r.scenario = "bb";
    r.params = s.params();
    r.steps = 4;
    r.verdicts = s.verify(s.run(4), r.tolerance);
    EXPECT_TRUE(r.all_pass());
    const std::string json = verify_report_json(r);
    EXPECT_NE(json.find("\"anchor_tracking\""), std::string::npos);
    EXPECT_NE(json.find("\"pass\":true"), std::string::npos);
}

TEST(RealFormat, ShortestRoundTrip) {
    EXPECT_EQ(format_real(R("0.1")), "0.1");
    EXPECT_EQ(format_real(Real(0)), "0");
    EXPECT_EQ(format_real(std::numeric_limits<Real>::infinity()), "inf");
    EXPECT_EQ(format_real(-std::numeric_limits<Real>::infinity()), "-inf");
    const Real third = Real(1) / 3;
    EXPECT_EQ(parse_real(format_real(third)), third);
    EXPECT_EQ(format_real(third, 5), "0.33333");
    EXPECT_THROW(parse_real("1.2.3"), InvalidArgumentError);
    EXPECT_THROW(parse_real(""), InvalidArgumentError);
    EXPECT_TRUE(isnan(parse_real("nan")));
}
