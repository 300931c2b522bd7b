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
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "gradadv/gradadv.h"

namespace {

enum Exit { kPass = 0, kVerdictFailure = 1, kUsage = 2, kInfeasible = 3, kInternal = 4 };

int exit_code(ga_status status) {
    switch (status) {
    case GA_OK: return kPass;
    case GA_ERR_INFEASIBLE:
    case GA_ERR_NUMERIC: return kInfeasible;
    case GA_ERR_INTERNAL: return kInternal;
    default: return kUsage;
    }
}

struct Failure {
    ga_status status;
    std::string message;
};

void check(ga_status status) {
    if (status != GA_OK) {
        throw Failure{status, ga_last_error()};
    }
}

struct StringDeleter {
    void operator()(char* s) const { ga_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ScenarioDeleter {
    void operator()(ga_scenario* s) const { ga_scenario_free(s); }
};
using OwnedScenario = std::unique_ptr<ga_scenario, ScenarioDeleter>;

struct TraceDeleter {
    void operator()(ga_trace* t) const { ga_trace_free(t); }
};
using OwnedTrace = std::unique_ptr<ga_trace, TraceDeleter>;

struct Params {
    std::vector<std::string> keys;
    std::vector<std::string> values;

    std::vector<const char*> key_ptrs() const {
        std::vector<const char*> out;
        for (const auto& k : keys) out.push_back(k.c_str());
        return out;
    }
    std::vector<const char*> value_ptrs() const {
        std::vector<const char*> out;
        for (const auto& v : values) out.push_back(v.c_str());
        return out;
    }
};

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += (static_cast<unsigned char>(c) < 0x20) ? ' ' : c;
    }
    return out + "\"";
}

Params parse_params(const std::vector<std::string>& raw) {
    Params p;
    for (const auto& item : raw) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw Failure{GA_ERR_INVALID_ARGUMENT, "--param expects key=value, got '" + item + "'"};
        }
        p.keys.push_back(item.substr(0, eq));
        p.values.push_back(item.substr(eq + 1));
    }
    return p;
}

OwnedScenario make_scenario(const std::string& name, const Params& params) {
    ga_scenario* s = nullptr;
    const auto keys = params.key_ptrs();
    const auto values = params.value_ptrs();
    check(ga_scenario_create(name.c_str(), keys.data(), values.data(), keys.size(), &s));
    return OwnedScenario(s);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    FILE* f = std::fopen(out_path.c_str(), "wb");
    if (!f) {
        throw Failure{GA_ERR_IO, "cannot write '" + out_path + "'"};
    }
    const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
    if (std::fclose(f) != 0 || !ok) {
        throw Failure{GA_ERR_IO, "failed writing '" + out_path + "'"};
    }
}

int cmd_list() {
    const size_t n = ga_catalog_size();
    for (size_t i = 0; i < n; ++i) {
        const char *name, *method, *family, *notes;
        size_t count = 0;
        check(ga_catalog_entry(i, &name, &method, &family, &notes, &count));
        std::cout << name << "  [" << family << ", " << method << "]\n    " << notes << "\n";
        for (size_t p = 0; p < count; ++p) {
            const char *pname, *value, *range;
            check(ga_catalog_param(i, p, &pname, &value, &range));
            std::cout << "    --param " << pname << "=" << value << "  (" << range << ")\n";
        }
    }
    return kPass;
}

struct RunOptions {
    std::string scenario;
    std::vector<std::string> params;
    std::size_t steps = 10;
    std::string out;
    std::string format = "json";
};

int cmd_run(const RunOptions& o) {
    auto scenario = make_scenario(o.scenario, parse_params(o.params));
    ga_trace* raw = nullptr;
    check(ga_scenario_run(scenario.get(), o.steps, &raw));
    OwnedTrace trace(raw);
    char* summary = nullptr;
    check(ga_scenario_summary(scenario.get(), trace.get(), &summary));
    OwnedString summary_owned(summary);
    char* text = nullptr;
    check(ga_trace_serialize(trace.get(), o.format.c_str(), &text));
    OwnedString text_owned(text);
    emit(text, o.out);
    (o.out.empty() ? std::cerr : std::cout) << summary << "\n";
    return kPass;
}

struct VerifyOptions {
    std::string scenario;
    std::vector<std::string> params;
    std::size_t steps = 10;
    std::optional<std::string> tol;
    std::string trace;
    std::string out;
    bool all = false;
};

struct VerifyOutcome {
    int code = kPass;
    std::string json;
    std::string line;
};

VerifyOutcome verify_one(const std::string& name, const Params& params, std::size_t steps, const std::string& trace_path,
                         const std::optional<std::string>& tol) {
    VerifyOutcome r;
    try {
        OwnedTrace trace;
        OwnedScenario scenario;
        if (!trace_path.empty()) {
            ga_trace* raw = nullptr;
            check(ga_trace_read(trace_path.c_str(), &raw));
            trace.reset(raw);
            if (name.empty()) {
                ga_scenario* s = nullptr;
                check(ga_trace_scenario_create(trace.get(), &s));
                scenario.reset(s);
            } else {
                scenario = make_scenario(name, params);
            }
        } else {
            scenario = make_scenario(name, params);
            ga_trace* raw = nullptr;
            check(ga_scenario_run(scenario.get(), steps, &raw));
            trace.reset(raw);
        }
        int pass = 0;
        char* report = nullptr;
        check(ga_scenario_verify(scenario.get(), trace.get(), tol ? tol->c_str() : nullptr, &pass, &report));
        OwnedString owned(report);
        r.json = report;
        r.code = pass ? kPass : kVerdictFailure;
        r.line = std::string(pass ? "PASS " : "FAIL ") + (name.empty() ? ga_trace_scenario(trace.get()) : name);
    } catch (const Failure& f) {
        r.code = exit_code(f.status);
        r.json = "{\"scenario\":" + quote(name) + ",\"error\":" + quote(f.message) + "}";
        r.line = "ERROR " + name + ": " + f.message;
    }
    return r;
}

int cmd_verify(const VerifyOptions& o) {
    const Params params = parse_params(o.params);
    if (!o.all) {
        if (o.scenario.empty() && o.trace.empty()) {
            throw Failure{GA_ERR_INVALID_ARGUMENT, "verify needs --scenario, --trace or --all"};
        }
        VerifyOutcome r = verify_one(o.scenario, params, o.steps, o.trace, o.tol);
        emit(r.json, o.out);
        std::cerr << r.line << "\n";
        return r.code;
    }
    if (!o.scenario.empty() || !o.trace.empty() || !o.params.empty()) {
        throw Failure{GA_ERR_INVALID_ARGUMENT, "--all cannot be combined with --scenario, --trace or --param"};
    }
    const size_t n = ga_catalog_size();
    std::vector<std::string> names(n);
    for (size_t i = 0; i < n; ++i) {
        const char* name = nullptr;
        check(ga_catalog_entry(i, &name, nullptr, nullptr, nullptr, nullptr));
        names[i] = name;
    }
    std::vector<VerifyOutcome> results(n);
    std::vector<std::thread> workers;
    for (size_t i = 0; i < n; ++i) {
        workers.emplace_back([&, i] { results[i] = verify_one(names[i], Params{}, o.steps, "", o.tol); });
    }
    for (auto& w : workers) {
        w.join();
    }
    std::string json = "[";
    int code = kPass;
    for (size_t i = 0; i < n; ++i) {
        json += (i ? ",\n" : "") + results[i].json;
        std::cerr << results[i].line << "\n";
        if (results[i].code != kPass && (code == kPass || results[i].code > code)) {
            code = results[i].code;
        }
    }
    emit(json + "]", o.out);
    return code;
}

struct AuditOptions {
    std::string objective;
    std::vector<std::string> params;
    std::string path;
    std::string format = "json";
    std::string out;
};

int cmd_audit(const AuditOptions& o) {
    const Params params = parse_params(o.params);
    const auto keys = params.key_ptrs();
    const auto values = params.value_ptrs();
    char* text = nullptr;
    check(ga_audit(o.objective.c_str(), keys.data(), values.data(), keys.size(), o.path.c_str(), o.format.c_str(),
                   &text));
    OwnedString owned(text);
    emit(text, o.out);
    return kPass;
}

struct InterpOptions {
    std::string halfwidth;
    std::string center;
};

int cmd_interp(const InterpOptions& o) {
    std::vector<std::string> parts;
    std::stringstream ss(o.center);
    for (std::string item; std::getline(ss, item, ',');) {
        parts.push_back(item);
    }
    if (parts.size() != 3) {
        throw Failure{GA_ERR_INVALID_ARGUMENT, "--center expects f,fp,fpp"};
    }
    char* text = nullptr;
    check(ga_interp_text(o.halfwidth.c_str(), parts[0].c_str(), parts[1].c_str(), parts[2].c_str(), &text));
    OwnedString owned(text);
    std::cout << text;
    return kPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adversarial objectives for derivative-based optimisers"};
    app.require_subcommand(1, 1);

    auto* list = app.add_subcommand("list", "List scenarios and their parameters");

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Run a scenario and write its trace");
    run_cmd->add_option("--scenario", run.scenario, "Scenario name")->required();
    run_cmd->add_option("--param", run.params, "Parameter override key=value (repeatable)");
    run_cmd->add_option("--steps", run.steps, "Number of steps J")->check(CLI::PositiveNumber);
    run_cmd->add_option("--out", run.out, "Output file (default: stdout)");
    run_cmd->add_option("--format", run.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    VerifyOptions verify;
    std::string tol_text;
    auto* verify_cmd = app.add_subcommand("verify", "Run a scenario and check its claims");
    verify_cmd->add_option("--scenario", verify.scenario, "Scenario name");
    verify_cmd->add_option("--param", verify.params, "Parameter override key=value (repeatable)");
    verify_cmd->add_option("--steps", verify.steps, "Number of steps J")->check(CLI::PositiveNumber);
    auto* tol_opt = verify_cmd->add_option("--tol", tol_text, "Landing tolerance (overrides GRAD_ADVERSARY_TOL)");
    verify_cmd->add_option("--trace", verify.trace, "Verify an existing trace file instead of running");
    verify_cmd->add_option("--out", verify.out, "Write the verdict JSON here (default: stdout)");
    verify_cmd->add_flag("--all", verify.all, "Verify every scenario (concurrently)");

    AuditOptions audit;
    auto* audit_cmd = app.add_subcommand("audit", "Probe the smoothness ratio along a path");
    audit_cmd->add_option("--objective", audit.objective, "factor_analysis, ffnn, gee or inv_gaussian")->required();
    audit_cmd->add_option("--param", audit.params, "Model parameter key=value");
    audit_cmd->add_option("--path", audit.path, "geometric:start,ratio,K or linear:start,step,K")->required();
    audit_cmd->add_option("--format", audit.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    audit_cmd->add_option("--out", audit.out, "Output file (default: stdout)");

    InterpOptions interp;
    auto* interp_cmd = app.add_subcommand("interp", "Solve the degree-9 bump interpolation");
    interp_cmd->add_option("--halfwidth", interp.halfwidth, "Half-width m > 0")->required();
    interp_cmd->add_option("--center", interp.center, "f,fp,fpp at the centre")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (list->parsed()) {
            return cmd_list();
        }
        if (run_cmd->parsed()) {
            return cmd_run(run);
        }
        if (verify_cmd->parsed()) {
            if (tol_opt->count() > 0) {
                verify.tol = tol_text;
            }
            return cmd_verify(verify);
        }
        if (audit_cmd->parsed()) {
            return cmd_audit(audit);
        }
        if (interp_cmd->parsed()) {
            return cmd_interp(interp);
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return exit_code(f.status);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
