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

#include "gradadv/gradadv.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "gradadv/audit.hpp"
#include "gradadv/interpolation.hpp"
#include "gradadv/scenarios.hpp"
#include "gradadv/trace_io.hpp"

struct ga_scenario {
    gradadv::Scenario scenario;
};

struct ga_trace {
    gradadv::Trace trace;
};

namespace {

using gradadv::Real;

thread_local std::string g_last_error;
thread_local long long g_last_max_feasible = -1;

ga_status fail(ga_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

template <class Fn>
ga_status guarded(Fn&& fn) {
    g_last_error.clear();
    g_last_max_feasible = -1;
    try {
        gradadv::ensure_real_range();
        fn();
        return GA_OK;
    } catch (const gradadv::OverflowError& e) {
        g_last_max_feasible = e.max_feasible();
        return fail(GA_ERR_INFEASIBLE, e.what());
    } catch (const gradadv::Error& e) {
        switch (e.kind()) {
        case gradadv::ErrorKind::invalid_argument: return fail(GA_ERR_INVALID_ARGUMENT, e.what());
        case gradadv::ErrorKind::domain: return fail(GA_ERR_DOMAIN, e.what());
        case gradadv::ErrorKind::overflow: return fail(GA_ERR_INFEASIBLE, e.what());
        case gradadv::ErrorKind::io: return fail(GA_ERR_IO, e.what());
        default: return fail(GA_ERR_NUMERIC, e.what());
        }
    } catch (const std::bad_alloc&) {
        return fail(GA_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(GA_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(GA_ERR_INTERNAL, "unknown error");
    }
}

void require(bool ok, const char* what) {
    if (!ok) {
        throw gradadv::InvalidArgumentError(what);
    }
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::map<std::string, Real> real_params(const char* const* keys, const char* const* values, size_t count) {
    require(count == 0 || (keys && values), "parameter arrays must not be null");
    std::map<std::string, Real> out;
    for (size_t i = 0; i < count; ++i) {
        require(keys[i] && values[i], "parameter entries must not be null");
        if (out.count(keys[i])) {
            throw gradadv::InvalidArgumentError(std::string("parameter '") + keys[i] + "' given twice");
        }
        out[keys[i]] = gradadv::parse_real(values[i]);
    }
    return out;
}

std::map<std::string, gradadv::audit::Scalar> scalar_params(const char* const* keys, const char* const* values,
                                                            size_t count) {
    std::map<std::string, gradadv::audit::Scalar> out;
    for (const auto& [k, v] : real_params(keys, values, count)) {
        out[k] = static_cast<gradadv::audit::Scalar>(v);
    }
    return out;
}

std::string default_text(Real v) { return gradadv::format_real(v); }

} // namespace

extern "C" {

const char* ga_version(void) { return "1.0.0"; }

const char* ga_last_error(void) { return g_last_error.c_str(); }

long long ga_last_max_feasible(void) { return g_last_max_feasible; }

void ga_string_free(char* s) { std::free(s); }

size_t ga_catalog_size(void) { return gradadv::catalog().size(); }

ga_status ga_catalog_entry(size_t index, const char** name, const char** method, const char** family,
                           const char** notes, size_t* param_count) {
    return guarded([&] {
        const auto& cat = gradadv::catalog();
        require(index < cat.size(), "catalog index out of range");
        const auto& e = cat[index];
        if (name) *name = e.name.c_str();
        if (method) *method = gradadv::to_string(e.method);
        if (family) *family = e.family.c_str();
        if (notes) *notes = e.notes.c_str();
        if (param_count) *param_count = e.params.size();
    });
}

ga_status ga_catalog_param(size_t index, size_t param, const char** name, const char** default_value,
                           const char** range) {
    return guarded([&] {
        const auto& cat = gradadv::catalog();
        require(index < cat.size(), "catalog index out of range");
        require(param < cat[index].params.size(), "parameter index out of range");
        static thread_local std::string value_text;
        const auto& p = cat[index].params[param];
        value_text = p.derived ? "auto" : default_text(p.default_value);
        if (name) *name = p.name.c_str();
        if (default_value) *default_value = value_text.c_str();
        if (range) *range = p.range.c_str();
    });
}

ga_status ga_scenario_create(const char* name, const char* const* keys, const char* const* values, size_t count,
                             ga_scenario** out) {
    return guarded([&] {
        require(name && out, "name and out must not be null");
        *out = nullptr;
        *out = new ga_scenario{gradadv::build_scenario(name, real_params(keys, values, count))};
    });
}

void ga_scenario_free(ga_scenario* scenario) { delete scenario; }

ga_status ga_scenario_max_feasible(const ga_scenario* scenario, size_t* out) {
    return guarded([&] {
        require(scenario && out, "scenario and out must not be null");
        *out = scenario->scenario.max_feasible_J();
    });
}

ga_status ga_scenario_run(const ga_scenario* scenario, size_t steps, ga_trace** out) {
    return guarded([&] {
        require(scenario && out, "scenario and out must not be null");
        *out = nullptr;
        *out = new ga_trace{scenario->scenario.run(steps)};
    });
}

ga_status ga_scenario_verify(const ga_scenario* scenario, const ga_trace* trace, const char* tolerance,
                             int* all_pass, char** report) {
    return guarded([&] {
        require(scenario && trace, "scenario and trace must not be null");
        gradadv::LandingTolerance tol = gradadv::default_landing_tolerance();
        if (tolerance) {
            const Real t = gradadv::parse_real(tolerance);
            require(t >= 0 && gradadv::isfinite(t), "tolerance must be finite and non-negative");
            tol.abs = t;
            tol.rel = t;
        }
        gradadv::VerifyReport r;
        r.scenario = scenario->scenario.name();
        r.params = scenario->scenario.params();
        r.steps = trace->trace.iterations.empty() ? 0 : trace->trace.iterations.size() - 1;
        r.tolerance = tol;
        r.flags = trace->trace.flags;
        r.verdicts = scenario->scenario.verify(trace->trace, tol);
        if (all_pass) *all_pass = r.all_pass() ? 1 : 0;
        if (report) *report = copy_string(gradadv::verify_report_json(r));
    });
}

ga_status ga_scenario_summary(const ga_scenario* scenario, const ga_trace* trace, char** out) {
    return guarded([&] {
        require(scenario && trace && out, "arguments must not be null");
        const auto& its = trace->trace.iterations;
        require(!its.empty(), "trace is empty");
        const auto& last = its.back();
        require(!last.theta.empty(), "trace record has no theta");
        Real f;
        if (last.f) {
            f = *last.f;
        } else {
            f = scenario->scenario.function(its.size() - 1)->value(last.theta[0]);
        }
        std::ostringstream s;
        s << scenario->scenario.name() << ": J=" << last.k << " theta=" << gradadv::format_real(last.theta[0])
          << " F=" << gradadv::format_real(f) << " obj_evals=" << last.cum.obj << " grad_evals=" << last.cum.grad
          << " hess_evals=" << last.cum.hess;
        for (const auto& flag : trace->trace.flags) {
            s << " [" << flag << "]";
        }
        *out = copy_string(s.str());
    });
}

ga_status ga_trace_serialize(const ga_trace* trace, const char* format, char** out) {
    return guarded([&] {
        require(trace && out, "trace and out must not be null");
        const auto fmt = gradadv::trace_format_from_string(format ? format : "json");
        *out = copy_string(gradadv::trace_to_string(trace->trace, fmt));
    });
}

ga_status ga_trace_parse(const char* text, ga_trace** out) {
    return guarded([&] {
        require(text && out, "text and out must not be null");
        *out = nullptr;
        *out = new ga_trace{gradadv::trace_from_string(text)};
    });
}

ga_status ga_trace_write(const ga_trace* trace, const char* path, const char* format) {
    return guarded([&] {
        require(trace && path, "trace and path must not be null");
        const auto fmt = gradadv::trace_format_from_string(format ? format : "json");
        gradadv::write_text_file(path, gradadv::trace_to_string(trace->trace, fmt));
    });
}

ga_status ga_trace_read(const char* path, ga_trace** out) {
    return guarded([&] {
        require(path && out, "path and out must not be null");
        *out = nullptr;
        *out = new ga_trace{gradadv::trace_from_string(gradadv::read_text_file(path))};
    });
}

void ga_trace_free(ga_trace* trace) { delete trace; }

const char* ga_trace_scenario(const ga_trace* trace) { return trace ? trace->trace.scenario.c_str() : ""; }

size_t ga_trace_length(const ga_trace* trace) { return trace ? trace->trace.iterations.size() : 0; }

size_t ga_trace_flag_count(const ga_trace* trace) { return trace ? trace->trace.flags.size() : 0; }

const char* ga_trace_flag(const ga_trace* trace, size_t index) {
    if (!trace || index >= trace->trace.flags.size()) {
        return nullptr;
    }
    return trace->trace.flags[index].c_str();
}

ga_status ga_trace_record(const ga_trace* trace, size_t k, ga_real* theta, ga_real* grad, ga_real* f, int* has_f,
                          unsigned long long* cum_obj, unsigned long long* cum_grad, unsigned long long* cum_hess) {
    return guarded([&] {
        require(trace != nullptr, "trace must not be null");
        require(k < trace->trace.iterations.size(), "record index out of range");
        const auto& r = trace->trace.iterations[k];
        if (theta) *theta = r.theta.empty() ? 0 : static_cast<ga_real>(r.theta[0]);
        if (grad) *grad = r.grad.empty() ? 0 : static_cast<ga_real>(r.grad[0]);
        if (f) *f = r.f ? static_cast<ga_real>(*r.f) : 0;
        if (has_f) *has_f = r.f ? 1 : 0;
        if (cum_obj) *cum_obj = r.cum.obj;
        if (cum_grad) *cum_grad = r.cum.grad;
        if (cum_hess) *cum_hess = r.cum.hess;
    });
}

ga_status ga_trace_scenario_create(const ga_trace* trace, ga_scenario** out) {
    return guarded([&] {
        require(trace && out, "trace and out must not be null");
        *out = nullptr;
        *out = new ga_scenario{gradadv::build_scenario(trace->trace.scenario, trace->trace.params)};
    });
}

ga_status ga_audit(const char* model, const char* const* keys, const char* const* values, size_t count,
                   const char* path, const char* format, char** out) {
    return guarded([&] {
        require(model && path && out, "model, path and out must not be null");
        const auto m = gradadv::audit::ModelObjective::by_name(model, scalar_params(keys, values, count));
        const auto spec = gradadv::audit::parse_path(path);
        const auto report = gradadv::audit::probe_path(m, spec);
        const std::string fmt = format ? format : "json";
        if (fmt == "json") {
            *out = copy_string(gradadv::audit::report_json(report));
        } else if (fmt == "csv") {
            *out = copy_string(gradadv::audit::report_csv(report));
        } else {
            throw gradadv::InvalidArgumentError("unknown format '" + fmt + "' (expected json or csv)");
        }
    });
}

ga_status ga_audit_ratio(const char* model, const char* const* keys, const char* const* values, size_t count,
                         const ga_real* theta, size_t dimension, ga_real* out) {
    return guarded([&] {
        require(model && theta && out, "model, theta and out must not be null");
        const auto m = gradadv::audit::ModelObjective::by_name(model, scalar_params(keys, values, count));
        const gradadv::audit::Vector point(theta, theta + dimension);
        *out = gradadv::audit::ratio(m, point);
    });
}

ga_status ga_interp(ga_real halfwidth, ga_real f, ga_real fp, ga_real fpp, ga_real coefficients[10],
                    ga_real* residual) {
    return guarded([&] {
        require(coefficients != nullptr, "coefficients must not be null");
        const Real m = halfwidth;
        gradadv::InterpolationTargets t;
        t.value[1] = f;
        t.slope[1] = fp;
        t.curvature[1] = fpp;
        require(gradadv::isfinite(m) && gradadv::isfinite(t.value[1]) && gradadv::isfinite(t.slope[1]) &&
                    gradadv::isfinite(t.curvature[1]),
                "interpolation targets must be finite");
        require(m > 0, "halfwidth must be positive");
        const auto p = gradadv::solve_bump(m, f, fp, fpp);
        for (int i = 0; i < 10; ++i) {
            coefficients[i] = static_cast<ga_real>(p.c[i]);
        }
        if (residual) *residual = static_cast<ga_real>(gradadv::interpolation_residual(p, m, t));
    });
}

ga_status ga_interp_text(const char* halfwidth, const char* f, const char* fp, const char* fpp, char** text) {
    return guarded([&] {
        require(halfwidth && f && fp && fpp && text, "arguments must not be null");
        const Real m = gradadv::parse_real(halfwidth);
        gradadv::InterpolationTargets t;
        t.value[1] = gradadv::parse_real(f);
        t.slope[1] = gradadv::parse_real(fp);
        t.curvature[1] = gradadv::parse_real(fpp);
        require(gradadv::isfinite(m) && gradadv::isfinite(t.value[1]) && gradadv::isfinite(t.slope[1]) &&
                    gradadv::isfinite(t.curvature[1]),
                "interpolation targets must be finite");
        require(m > 0, "--halfwidth must be positive");
        const auto p = gradadv::solve_bump(m, t.value[1], t.slope[1], t.curvature[1]);
        std::ostringstream s;
        for (int i = 0; i < 10; ++i) {
            s << "c" << i << " = " << gradadv::format_real(p.c[i], 21) << "\n";
        }
        s << "residual = " << gradadv::format_real(gradadv::interpolation_residual(p, m, t), 6) << "\n";
        *text = copy_string(s.str());
    });
}

} // extern "C"
