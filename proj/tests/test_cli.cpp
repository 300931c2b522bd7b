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

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "gradadv/gradadv.h"

namespace {

struct Result {
    int code = -1;
    std::string out;
};

// Runs the CLI with stderr folded into the captured output.
Result cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "\"" GRADADV_CLI "\" " + args + " 2>&1";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("gradadv_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string path(const char* name) const { return (dir_ / name).string(); }

    std::filesystem::path dir_;
};

double last_csv_ratio(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::string last;
    while (std::getline(in, line)) {
        if (!line.empty()) {
            last = line;
        }
    }
    return std::stod(last.substr(last.rfind(',') + 1));
}

} // namespace

TEST_F(Cli, List) {
    const auto r = cli("list");
    EXPECT_EQ(r.code, 0);
    for (const char* name : {"constant", "bb", "nag", "polyak", "armijo", "dynamic"}) {
        EXPECT_NE(r.out.find(name), std::string::npos) << name;
    }
}

TEST_F(Cli, RunWritesTrace) {
    const auto out = path("t.json");
    const auto r = cli("run --scenario bb --param m0=1 --steps 10 --out " + out);
    ASSERT_EQ(r.code, 0) << r.out;
    ga_trace* t = nullptr;
    ASSERT_EQ(ga_trace_read(out.c_str(), &t), GA_OK);
    ASSERT_EQ(ga_trace_length(t), 11u);
    ga_real theta = 0, grad = 0, f = 0;
    int has_f = 0;
    unsigned long long a = 0, b = 0, c = 0;
    ASSERT_EQ(ga_trace_record(t, 10, &theta, &grad, &f, &has_f, &a, &b, &c), GA_OK);
    EXPECT_EQ(theta, 10);
    ga_trace_free(t);
    EXPECT_NE(r.out.find("theta=10"), std::string::npos) << r.out;
}

TEST_F(Cli, RunConstantGrows) {
    const auto out = path("c.csv");
    ASSERT_EQ(cli("run --scenario constant --param m=0.1 --steps 5 --format csv --out " + out).code, 0);
    ga_trace* t = nullptr;
    ASSERT_EQ(ga_trace_read(out.c_str(), &t), GA_OK);
    ga_real prev = 0;
    for (size_t k = 0; k < ga_trace_length(t); ++k) {
        ga_real theta = 0, grad = 0, f = 0;
        int has_f = 0;
        unsigned long long a = 0, b = 0, c = 0;
        ASSERT_EQ(ga_trace_record(t, k, &theta, &grad, &f, &has_f, &a, &b, &c), GA_OK);
        if (k > 0) {
            EXPECT_GT(std::fabs(theta), std::fabs(prev));
        }
        prev = theta;
    }
    ga_trace_free(t);
}

TEST_F(Cli, RunRefusesInfeasibleBudget) {
    const auto r = cli("run --scenario armijo --steps 11");
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("max feasible J = 10"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("delta=0.5"), std::string::npos) << r.out;
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(cli("run --scenario sgd").code, 2);
    EXPECT_EQ(cli("run --scenario bb --param m0").code, 2);
    EXPECT_EQ(cli("run --scenario bb --param m0=-1").code, 2);
    EXPECT_EQ(cli("run --scenario bb --format xml").code, 2);
    EXPECT_EQ(cli("frobnicate").code, 2);
    EXPECT_EQ(cli("").code, 2);
    EXPECT_EQ(cli("verify --trace " + path("missing.json")).code, 2);
    EXPECT_EQ(cli("run --scenario bb --steps 2 --out " + path("no/such/dir/t.json")).code, 2);
}

TEST_F(Cli, VerifyExamples) {
    EXPECT_EQ(cli("verify --scenario polyak --steps 15").code, 0);
    const auto cn = cli("verify --scenario cubic_newton --steps 8");
    EXPECT_EQ(cn.code, 0) << cn.out;
    EXPECT_NE(cn.out.find("\"eval_growth\""), std::string::npos);
    EXPECT_NE(cn.out.find("256"), std::string::npos);
    // bb lands on the integers exactly, so even this tolerance passes
    EXPECT_EQ(cli("verify --scenario bb --steps 10 --tol 1e-30").code, 0);
    EXPECT_EQ(cli("verify --scenario lipapprox --steps 10 --tol 1e-120").code, 1);
    EXPECT_EQ(cli("verify --scenario lipapprox --steps 10", "GRAD_ADVERSARY_TOL=1e-120").code, 1);
    EXPECT_EQ(cli("verify --scenario lipapprox --steps 10 --tol 1e-9", "GRAD_ADVERSARY_TOL=1e-120").code, 0);
    EXPECT_EQ(cli("verify --scenario bb --tol zero").code, 2);
}

TEST_F(Cli, VerifyStoredTrace) {
    const auto json = path("nag.json");
    const auto csv = path("nag.csv");
    ASSERT_EQ(cli("run --scenario nag --steps 15 --out " + json).code, 0);
    ASSERT_EQ(cli("run --scenario nag --steps 15 --format csv --out " + csv).code, 0);
    const auto a = cli("verify --trace " + json);
    const auto b = cli("verify --trace " + csv);
    EXPECT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(b.code, 0) << b.out;
    EXPECT_EQ(a.out, b.out);

    std::ifstream in(json);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    const auto at = text.find("\"theta\":[3.2332");
    ASSERT_NE(at, std::string::npos);
    text.replace(at, 15, "\"theta\":[3.2432");
    std::ofstream(json) << text;
    EXPECT_EQ(cli("verify --trace " + json).code, 1);
}

TEST_F(Cli, VerifyAll) {
    const auto r = cli("verify --all");
    EXPECT_EQ(r.code, 0) << r.out;
    std::size_t last = 0;
    for (const char* name : {"\"constant\"", "\"bb\"", "\"nag\"", "\"polyak\"", "\"armijo\"", "\"dynamic\""}) {
        const auto at = r.out.find(name);
        ASSERT_NE(at, std::string::npos) << name;
        EXPECT_GT(at, last) << name;
        last = at;
    }
    EXPECT_EQ(cli("verify --all").out, r.out);
}

TEST_F(Cli, Audit) {
    const auto fa = cli("audit --objective factor_analysis --param x=1 --path geometric:1e-1,0.1,8 --format csv");
    ASSERT_EQ(fa.code, 0) << fa.out;
    EXPECT_NEAR(last_csv_ratio(fa.out), 1, 1e-3);
    const auto ig = cli("audit --objective inv_gaussian --param y=1 --path geometric:-1e-1,0.25,12");
    ASSERT_EQ(ig.code, 0);
    EXPECT_NE(ig.out.find("\"diverging\""), std::string::npos) << ig.out;
    const auto gee = cli("audit --objective gee --param y=2 --path geometric:1e-2,0.1,8 --format csv");
    ASSERT_EQ(gee.code, 0);
    EXPECT_NEAR(last_csv_ratio(gee.out), 0.5, 1e-3);
    EXPECT_EQ(cli("audit --objective gee --param y=2 --path geometric:1e-2,0.1").code, 2);
    EXPECT_EQ(cli("audit --objective lasso --path linear:1,1,3").code, 2);
    const auto out = path("a.csv");
    ASSERT_EQ(cli("audit --objective ffnn --path linear:10,10,10 --format csv --out " + out).code, 0);
    EXPECT_TRUE(std::filesystem::exists(out));
}

TEST_F(Cli, Interp) {
    const auto zero = cli("interp --halfwidth 1 --center 0,0,0");
    ASSERT_EQ(zero.code, 0);
    for (int i = 0; i < 10; ++i) {
        EXPECT_NE(zero.out.find("c" + std::to_string(i) + " = 0\n"), std::string::npos);
    }
    EXPECT_NE(zero.out.find("residual = 0\n"), std::string::npos);
    const auto bump = cli("interp --halfwidth 0.25 --center -0.5,-1,0");
    ASSERT_EQ(bump.code, 0);
    const auto at = bump.out.find("residual = ");
    ASSERT_NE(at, std::string::npos);
    EXPECT_LT(std::stod(bump.out.substr(at + 11)), 1e-10);
    EXPECT_NE(bump.out.find("c9 = 196608"), std::string::npos);
    const auto one = cli("interp --halfwidth 1 --center 1,0,0");
    EXPECT_NE(one.out.find("c0 = 1\n"), std::string::npos);
    EXPECT_EQ(cli("interp --halfwidth 1 --center 1,0").code, 2);
    EXPECT_EQ(cli("interp --halfwidth x --center 1,0,0").code, 2);
    EXPECT_EQ(cli("interp --halfwidth 0 --center 1,0,0").code, 2);
}
