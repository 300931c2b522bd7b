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

#ifndef GRADADV_GRADADV_H
#define GRADADV_GRADADV_H

#include <stddef.h>

#if defined(_WIN32)
#define GA_API __declspec(dllexport)
#else
#define GA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ga_status {
    GA_OK = 0,
    GA_ERR_INVALID_ARGUMENT = 1,
    GA_ERR_DOMAIN = 2,
    GA_ERR_INFEASIBLE = 3, /* budget or value beyond the representable range */
    GA_ERR_NUMERIC = 4,    /* singular system, non-monotone or overlapping anchors */
    GA_ERR_IO = 5,
    GA_ERR_INTERNAL = 6
} ga_status;

/* Numbers handed back as binary values are rounded to long double; the string
 * interfaces carry the library's full precision. */
typedef long double ga_real;

typedef struct ga_scenario ga_scenario;
typedef struct ga_trace ga_trace;

GA_API const char* ga_version(void);

/* Message of the last failed call on this thread ("" after success). */
GA_API const char* ga_last_error(void);
/* Largest admissible step count reported by the last GA_ERR_INFEASIBLE on this thread, or -1. */
GA_API long long ga_last_max_feasible(void);

/* Strings returned through char** out-parameters are released with ga_string_free. */
GA_API void ga_string_free(char* s);

/* Scenario catalog. */
GA_API size_t ga_catalog_size(void);
GA_API ga_status ga_catalog_entry(size_t index, const char** name, const char** method, const char** family,
                                  const char** notes, size_t* param_count);
GA_API ga_status ga_catalog_param(size_t index, size_t param, const char** name, const char** default_value,
                                  const char** range);

/* Parameter values are decimal strings; unknown keys are rejected. */
GA_API ga_status ga_scenario_create(const char* name, const char* const* keys, const char* const* values,
                                    size_t count, ga_scenario** out);
GA_API void ga_scenario_free(ga_scenario* scenario);
GA_API ga_status ga_scenario_max_feasible(const ga_scenario* scenario, size_t* out);
/* Fresh counted objective per call. */
GA_API ga_status ga_scenario_run(const ga_scenario* scenario, size_t steps, ga_trace** out);
/* tolerance: decimal string, or NULL for GRAD_ADVERSARY_TOL / 1e-9. report: verdict JSON (may be NULL). */
GA_API ga_status ga_scenario_verify(const ga_scenario* scenario, const ga_trace* trace, const char* tolerance,
                                    int* all_pass, char** report);
/* One line: steps, final theta, F(theta_J) (shadow-evaluated when not recorded) and cumulative counts. */
GA_API ga_status ga_scenario_summary(const ga_scenario* scenario, const ga_trace* trace, char** out);

/* Traces. format is "json" or "csv". */
GA_API ga_status ga_trace_serialize(const ga_trace* trace, const char* format, char** out);
GA_API ga_status ga_trace_parse(const char* text, ga_trace** out);
GA_API ga_status ga_trace_write(const ga_trace* trace, const char* path, const char* format);
GA_API ga_status ga_trace_read(const char* path, ga_trace** out);
GA_API void ga_trace_free(ga_trace* trace);
GA_API const char* ga_trace_scenario(const ga_trace* trace);
GA_API size_t ga_trace_length(const ga_trace* trace);
GA_API size_t ga_trace_flag_count(const ga_trace* trace);
GA_API const char* ga_trace_flag(const ga_trace* trace, size_t index);
/* First coordinate of theta_k and of the gradient; has_f tells whether F(theta_k) was evaluated. */
GA_API ga_status ga_trace_record(const ga_trace* trace, size_t k, ga_real* theta, ga_real* grad, ga_real* f,
                                 int* has_f, unsigned long long* cum_obj, unsigned long long* cum_grad,
                                 unsigned long long* cum_hess);
/* Builds a scenario from the name and parameters stored in a trace. */
GA_API ga_status ga_trace_scenario_create(const ga_trace* trace, ga_scenario** out);

/* Smoothness audit. path: "geometric:start,ratio,K" or "linear:start,step,K"; format "json" or "csv". */
GA_API ga_status ga_audit(const char* model, const char* const* keys, const char* const* values, size_t count,
                          const char* path, const char* format, char** out);
GA_API ga_status ga_audit_ratio(const char* model, const char* const* keys, const char* const* values, size_t count,
                                const ga_real* theta, size_t dimension, ga_real* out);

/* Degree-9 bump with value/slope/curvature (f, fp, fpp) at 0 and zero targets at +-halfwidth. */
GA_API ga_status ga_interp(ga_real halfwidth, ga_real f, ga_real fp, ga_real fpp, ga_real coefficients[10],
                           ga_real* residual);
/* Same, from decimal strings; text lists c0..c9 and the residual, one per line. */
GA_API ga_status ga_interp_text(const char* halfwidth, const char* f, const char* fp, const char* fpp, char** text);

#ifdef __cplusplus
}
#endif

#endif
