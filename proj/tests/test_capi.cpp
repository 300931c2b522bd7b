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
#include <cstring>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "gradadv/gradadv.h"

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    ga_string_free(s);
    return out;
}

ga_scenario* make(const char* name, std::initializer_list<std::pair<const char*, const char*>> params = {}) {
    std::vector<const char*> keys;
    std::vector<const char*> values;
    for (const auto& [k, v] : params) {
        keys.push_back(k);
        values.push_back(v);
    }
    ga_scenario* s = nullptr;
    EXPECT_EQ(ga_scenario_create(name, keys.data(), values.data(), keys.size(), &s), GA_OK) << ga_last_error();
    return s;
}

} // namespace

TEST(CApi, Catalog) {
    ASSERT_EQ(ga_catalog_size(), 13u);
    const char *name, *method, *family, *notes;
    size_t count = 0;
    ASSERT_EQ(ga_catalog_entry(1, &name, &method, &family, &notes, &count), GA_OK);
    EXPECT_STREQ(name, "bb");
    EXPECT_EQ(count, 1u);
    const char *pname, *pdefault, *prange;
    ASSERT_EQ(ga_catalog_param(1, 0, &pname, &pdefault, &prange), GA_OK);
    EXPECT_STREQ(pname, "m0");
    EXPECT_STREQ(pdefault, "1");
    ASSERT_EQ(ga_catalog_param(0, 1, &pname, &pdefault, &prange), GA_OK);
    EXPECT_STREQ(pdefault, "auto");
    EXPECT_EQ(ga_catalog_entry(13, &name, &method, &family, &notes, &count), GA_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(ga_catalog_param(1, 5, &pname, &pdefault, &prange), GA_ERR_INVALID_ARGUMENT);
    EXPECT_NE(std::strlen(ga_version()), 0u);
}

TEST(CApi, RunAndVerify) {
    ga_scenario* s = make("bb", {{"m0", "1"}});
    ga_trace* t = nullptr;
    ASSERT_EQ(ga_scenario_run(s, 10, &t), GA_OK);
    EXPECT_EQ(ga_trace_length(t), 11u);
    EXPECT_STREQ(ga_trace_scenario(t), "bb");
    ga_real theta = 0, grad = 0, f = 0;
    int has_f = 1;
    unsigned long long co = 9, cg = 0, ch = 0;
    ASSERT_EQ(ga_trace_record(t, 10, &theta, &grad, &f, &has_f, &co, &cg, &ch), GA_OK);
    EXPECT_EQ(theta, 10);
    EXPECT_EQ(has_f, 0);
    EXPECT_EQ(co, 0u);
    EXPECT_EQ(ga_trace_record(t, 11, &theta, &grad, &f, &has_f, &co, &cg, &ch), GA_ERR_INVALID_ARGUMENT);
    int pass = 0;
    char* report = nullptr;
    ASSERT_EQ(ga_scenario_verify(s, t, nullptr, &pass, &report), GA_OK);
    EXPECT_EQ(pass, 1);
    EXPECT_NE(take(report).find("\"divergence\""), std::string::npos);
    char* summary = nullptr;
    ASSERT_EQ(ga_scenario_summary(s, t, &summary), GA_OK);
    EXPECT_NE(take(summary).find("10"), std::string::npos);
    ga_trace_free(t);
    ga_scenario_free(s);
}

TEST(CApi, TightToleranceFails) {
    ga_scenario* s = make("lipapprox");
    ga_trace* t = nullptr;
    ASSERT_EQ(ga_scenario_run(s, 10, &t), GA_OK);
    int pass = 1;
    ASSERT_EQ(ga_scenario_verify(s, t, "1e-120", &pass, nullptr), GA_OK);
    EXPECT_EQ(pass, 0);
    EXPECT_EQ(ga_scenario_verify(s, t, "tight", &pass, nullptr), GA_ERR_INVALID_ARGUMENT);
    ga_trace_free(t);
    ga_scenario_free(s);
}

TEST(CApi, Errors) {
    ga_scenario* s = nullptr;
    EXPECT_EQ(ga_scenario_create("sgd", nullptr, nullptr, 0, &s), GA_ERR_INVALID_ARGUMENT);
    EXPECT_NE(std::string(ga_last_error()).find("sgd"), std::string::npos);
    const char* k[] = {"m0"};
    const char* v[] = {"-1"};
    EXPECT_EQ(ga_scenario_create("bb", k, v, 1, &s), GA_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(ga_scenario_create(nullptr, nullptr, nullptr, 0, &s), GA_ERR_INVALID_ARGUMENT);

    ga_scenario* armijo = make("armijo");
    ga_trace* t = nullptr;
    EXPECT_EQ(ga_scenario_run(armijo, 11, &t), GA_ERR_INFEASIBLE);
    EXPECT_EQ(ga_last_max_feasible(), 10);
    EXPECT_NE(std::string(ga_last_error()).find("max feasible J = 10"), std::string::npos);
    size_t max = 0;
    EXPECT_EQ(ga_scenario_max_feasible(armijo, &max), GA_OK);
    EXPECT_EQ(max, 10u);
    EXPECT_STREQ(ga_last_error(), "");
    ga_scenario_free(armijo);

    EXPECT_EQ(ga_trace_parse("{", &t), GA_ERR_IO);
    EXPECT_EQ(ga_trace_read("/nonexistent/trace.json", &t), GA_ERR_IO);
}

TEST(CApi, TraceSerialisation) {
    ga_scenario* s = make("acr");
    ga_trace* t = nullptr;
    ASSERT_EQ(ga_scenario_run(s, 5, &t), GA_OK);
    char* json = nullptr;
    ASSERT_EQ(ga_trace_serialize(t, "json", &json), GA_OK);
    char* csv = nullptr;
    ASSERT_EQ(ga_trace_serialize(t, "csv", &csv), GA_OK);
    ga_trace* back = nullptr;
    ASSERT_EQ(ga_trace_parse(csv, &back), GA_OK);
    char* again = nullptr;
    ASSERT_EQ(ga_trace_serialize(back, "json", &again), GA_OK);
    EXPECT_EQ(std::string(json), std::string(again));
    ga_scenario* rebuilt = nullptr;
    ASSERT_EQ(ga_trace_scenario_create(back, &rebuilt), GA_OK);
    int pass = 0;
    ASSERT_EQ(ga_scenario_verify(rebuilt, back, "1e-9", &pass, nullptr), GA_OK);
    EXPECT_EQ(pass, 1);
    EXPECT_EQ(ga_trace_serialize(t, "xml", &again), GA_ERR_INVALID_ARGUMENT);
    ga_string_free(json);
    ga_string_free(csv);
    ga_string_free(again);
    ga_trace_free(back);
    ga_trace_free(t);
    ga_scenario_free(rebuilt);
    ga_scenario_free(s);
}

TEST(CApi, Audit) {
    const char* k[] = {"y"};
    const char* v[] = {"2"};
    char* out = nullptr;
    ASSERT_EQ(ga_audit("gee", k, v, 1, "geometric:1e-2,0.1,8", "csv", &out), GA_OK);
    EXPECT_EQ(take(out).rfind("theta,grad_norm,hess_norm,ratio", 0), 0u);
    EXPECT_EQ(ga_audit("gee", k, v, 1, "geometric:1e-2", "json", &out), GA_ERR_INVALID_ARGUMENT);
    const char* kx[] = {"x"};
    const char* vx[] = {"1"};
    ga_real theta = 2;
    ga_real r = 0;
    ASSERT_EQ(ga_audit_ratio("factor_analysis", kx, vx, 1, &theta, 1, &r), GA_OK);
    EXPECT_NEAR(static_cast<double>(r), 5.0 / 9.0, 1e-15);
    theta = -1;
    EXPECT_EQ(ga_audit_ratio("factor_analysis", kx, vx, 1, &theta, 1, &r), GA_ERR_DOMAIN);
}

TEST(CApi, Interpolation) {
    ga_real c[10];
    ga_real residual = 1;
    ASSERT_EQ(ga_interp(0.25L, -0.5L, -1, 0, c, &residual), GA_OK);
    const double want[10] = {-0.5, -1, 0, 0, 768, 1536, -16384, -32768, 98304, 196608};
    for (int i = 0; i < 10; ++i) {
        EXPECT_EQ(static_cast<double>(c[i]), want[i]) << i;
    }
    EXPECT_LT(residual, 1e-10L);
    EXPECT_EQ(ga_interp(0, 1, 0, 0, c, &residual), GA_ERR_INVALID_ARGUMENT);
    char* text = nullptr;
    ASSERT_EQ(ga_interp_text("1", "1", "0", "0", &text), GA_OK);
    std::istringstream lines(take(text));
    const double one[10] = {1, 0, 0, 0, -6, 0, 8, 0, -3, 0};
    for (int i = 0; i < 10; ++i) {
        std::string name, eq, value;
        lines >> name >> eq >> value;
        EXPECT_EQ(name, "c" + std::to_string(i));
        EXPECT_NEAR(std::stod(value), one[i], 1e-30) << i;
    }
    std::string name;
    lines >> name;
    EXPECT_EQ(name, "residual");
    EXPECT_EQ(ga_interp_text("1", "one", "0", "0", &text), GA_ERR_INVALID_ARGUMENT);
}
