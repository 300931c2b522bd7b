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

#include "gradadv/trace_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "json_util.hpp"

namespace gradadv {

namespace {

using detail::json_number;
using detail::json_quote;
using nlohmann::json;

// Number tokens are kept as text behind this marker so no digits are lost to binary64.
constexpr char kNumberTag = '\x01';

// Rewrites every number token as a tagged string; the stock lexer would round it to
// binary64 or reject it outright beyond the double range.
std::string quote_numbers(const std::string& text) {
    std::string out;
    out.reserve(text.size() + text.size() / 4);
    bool in_string = false;
    for (std::size_t i = 0; i < text.size();) {
        const char c = text[i];
        if (in_string) {
            out += c;
            if (c == '\\' && i + 1 < text.size()) {
                out += text[i + 1];
                i += 2;
                continue;
            }
            in_string = c != '"';
            ++i;
            continue;
        }
        if (c == '"') {
            in_string = true;
            out += c;
            ++i;
            continue;
        }
        if (c == '-' || (c >= '0' && c <= '9')) {
            std::size_t j = i + 1;
            while (j < text.size() && std::strchr("0123456789+-.eE", text[j]) != nullptr) {
                ++j;
            }
            out += "\"\\u0001";
            out.append(text, i, j - i);
            out += '"';
            i = j;
            continue;
        }
        out += c;
        ++i;
    }
    return out;
}

json parse_exact(const std::string& text) {
    try {
        return json::parse(quote_numbers(text));
    } catch (const json::parse_error& e) {
        throw IoError(std::string("malformed JSON: ") + e.what());
    }
}

bool is_number(const json& j) {
    if (!j.is_string()) {
        return false;
    }
    const auto& s = j.get_ref<const std::string&>();
    return (!s.empty() && s[0] == kNumberTag) || detail::is_nonfinite_token(s);
}

std::string number_text(const json& j) {
    const auto& s = j.get_ref<const std::string&>();
    return s[0] == kNumberTag ? s.substr(1) : s;
}

const json& field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw IoError(std::string("trace is missing field '") + key + "'");
    }
    return obj.at(key);
}

Real real_of(const json& j, const char* what) {
    if (!is_number(j)) {
        throw IoError(std::string("field '") + what + "' must be a number");
    }
    try {
        return parse_real(number_text(j));
    } catch (const InvalidArgumentError&) {
        throw IoError(std::string("field '") + what + "' is not a number");
    }
}

std::optional<Real> optional_real(const json& obj, const char* key) {
    if (!obj.contains(key) || obj.at(key).is_null()) {
        return std::nullopt;
    }
    return real_of(obj.at(key), key);
}

std::uint64_t count_of(const json& obj, const char* key) {
    const json& j = field(obj, key);
    if (!is_number(j)) {
        throw IoError(std::string("field '") + key + "' must be an integer");
    }
    const std::string s = number_text(j);
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || s[0] == '-') {
        throw IoError(std::string("field '") + key + "' must be a non-negative integer");
    }
    return v;
}

std::string text_of(const json& j, const char* what) {
    if (!j.is_string() || is_number(j)) {
        throw IoError(std::string("field '") + what + "' must be a string");
    }
    return j.get<std::string>();
}

std::vector<Real> reals_of(const json& j, const char* what) {
    if (!j.is_array()) {
        throw IoError(std::string("field '") + what + "' must be an array");
    }
    std::vector<Real> out;
    for (const auto& v : j) {
        out.push_back(real_of(v, what));
    }
    return out;
}

std::string num(Real x) { return json_number(format_real(x)); }
std::string opt_num(const std::optional<Real>& x) { return x ? num(*x) : std::string("null"); }

std::string reals_json(const std::vector<Real>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? "," : "") + num(v[i]);
    }
    return out + "]";
}

std::string params_json(const std::map<std::string, Real>& params) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : params) {
        out += (first ? "" : ",") + json_quote(k) + ":" + num(v);
        first = false;
    }
    return out + "}";
}

// --- CSV helpers

const char* const kCsvHeader =
    "record,k,kind,theta,f,grad,cum_obj_evals,cum_grad_evals,cum_hess_evals,step_size,penalty,b_k,w_k";

std::string csv_opt(const std::optional<Real>& x) { return x ? format_real(*x) : std::string(); }

std::string csv_vec(const std::vector<Real>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? ";" : "") + format_real(v[i]);
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

Real csv_real(const std::string& s, std::size_t line) {
    try {
        return parse_real(s);
    } catch (const InvalidArgumentError&) {
        throw IoError("line " + std::to_string(line) + ": bad number '" + s + "'");
    }
}

std::optional<Real> csv_opt_real(const std::string& s, std::size_t line) {
    if (s.empty()) {
        return std::nullopt;
    }
    return csv_real(s, line);
}

std::vector<Real> csv_reals(const std::string& s, std::size_t line) {
    std::vector<Real> out;
    if (s.empty()) {
        return out;
    }
    for (const auto& part : split(s, ';')) {
        out.push_back(csv_real(part, line));
    }
    return out;
}

std::uint64_t csv_count(const std::string& s, std::size_t line) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || s[0] == '-') {
        throw IoError("line " + std::to_string(line) + ": bad count '" + s + "'");
    }
    return v;
}

std::string verdict_json(const Verdict& v) {
    std::ostringstream o;
    const auto first = v.first_failure();
    o << "{\"claim\":" << json_quote(v.claim) << ",\"pass\":" << (v.pass ? "true" : "false")
      << ",\"message\":" << json_quote(v.message) << ",\"first_failure\":";
    if (first) {
        o << v.steps[*first].k;
    } else {
        o << "null";
    }
    o << ",\"steps\":[";
    for (std::size_t i = 0; i < v.steps.size(); ++i) {
        const auto& s = v.steps[i];
        o << (i ? "," : "") << "{\"k\":" << s.k << ",\"what\":" << json_quote(s.what) << ",\"observed\":" << num(s.observed)
          << ",\"expected\":" << num(s.expected) << ",\"tolerance\":" << json_number(format_real(s.tolerance, 17))
          << ",\"ok\":" << (s.ok ? "true" : "false") << "}";
    }
    o << "]}";
    return o.str();
}

} // namespace

TraceFormat trace_format_from_string(const std::string& name) {
    if (name == "json") {
        return TraceFormat::json;
    }
    if (name == "csv") {
        return TraceFormat::csv;
    }
    throw InvalidArgumentError("unknown format '" + name + "' (expected json or csv)");
}

std::string trace_to_json(const Trace& trace) {
    std::ostringstream o;
    o << "{\"schema_version\":" << kTraceSchemaVersion << ",\"scenario\":" << json_quote(trace.scenario)
      << ",\"params\":" << params_json(trace.params) << ",\"iterations\":[";
    for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
        const IterationRecord& r = trace.iterations[i];
        o << (i ? "," : "") << "\n{\"k\":" << r.k << ",\"theta\":" << reals_json(r.theta) << ",\"f\":" << opt_num(r.f)
          << ",\"grad\":" << reals_json(r.grad) << ",\"probes\":[";
        for (std::size_t p = 0; p < r.probes.size(); ++p) {
            const Probe& pr = r.probes[p];
            o << (p ? "," : "") << "{\"kind\":" << json_quote(to_string(pr.kind)) << ",\"theta\":" << num(pr.theta)
              << ",\"f\":" << opt_num(pr.f) << "}";
        }
        o << "],\"cum_obj_evals\":" << r.cum.obj << ",\"cum_grad_evals\":" << r.cum.grad
          << ",\"cum_hess_evals\":" << r.cum.hess << ",\"control\":{\"step_size\":" << opt_num(r.control.step_size)
          << ",\"penalty\":" << opt_num(r.control.penalty) << ",\"b_k\":" << opt_num(r.control.b_k)
          << ",\"w_k\":" << opt_num(r.control.w_k) << "}}";
    }
    o << "],\"flags\":[";
    for (std::size_t i = 0; i < trace.flags.size(); ++i) {
        o << (i ? "," : "") << json_quote(trace.flags[i]);
    }
    o << "]}\n";
    return o.str();
}

Trace trace_from_json(const std::string& text) {
    ensure_real_range();
    const json root = parse_exact(text);
    if (!root.is_object()) {
        throw IoError("trace must be a JSON object");
    }
    const json& version = field(root, "schema_version");
    if (!is_number(version) || number_text(version) != std::to_string(kTraceSchemaVersion)) {
        throw IoError("unsupported trace schema_version");
    }
    Trace t;
    t.scenario = text_of(field(root, "scenario"), "scenario");
    const json& params = field(root, "params");
    if (!params.is_object()) {
        throw IoError("field 'params' must be an object");
    }
    for (const auto& [k, v] : params.items()) {
        t.params[k] = real_of(v, "params");
    }
    const json& iterations = field(root, "iterations");
    if (!iterations.is_array()) {
        throw IoError("field 'iterations' must be an array");
    }
    for (const auto& it : iterations) {
        IterationRecord r;
        r.k = static_cast<std::size_t>(count_of(it, "k"));
        r.theta = reals_of(field(it, "theta"), "theta");
        r.f = optional_real(it, "f");
        r.grad = reals_of(field(it, "grad"), "grad");
        const json& probes = field(it, "probes");
        if (!probes.is_array()) {
            throw IoError("field 'probes' must be an array");
        }
        for (const auto& p : probes) {
            Probe pr;
            try {
                pr.kind = probe_kind_from_string(text_of(field(p, "kind"), "kind"));
            } catch (const InvalidArgumentError& e) {
                throw IoError(e.what());
            }
            pr.theta = real_of(field(p, "theta"), "theta");
            pr.f = optional_real(p, "f");
            r.probes.push_back(pr);
        }
        r.cum.obj = count_of(it, "cum_obj_evals");
        r.cum.grad = count_of(it, "cum_grad_evals");
        r.cum.hess = count_of(it, "cum_hess_evals");
        if (it.contains("control")) {
            const json& c = it.at("control");
            if (!c.is_object()) {
                throw IoError("field 'control' must be an object");
            }
            r.control.step_size = optional_real(c, "step_size");
            r.control.penalty = optional_real(c, "penalty");
            r.control.b_k = optional_real(c, "b_k");
            r.control.w_k = optional_real(c, "w_k");
        }
        t.iterations.push_back(std::move(r));
    }
    if (root.contains("flags")) {
        const json& flags = root.at("flags");
        if (!flags.is_array()) {
            throw IoError("field 'flags' must be an array");
        }
        for (const auto& f : flags) {
            t.flags.push_back(text_of(f, "flags"));
        }
    }
    return t;
}

std::string trace_to_csv(const Trace& trace) {
    std::ostringstream o;
    o << "# scenario=" << trace.scenario << "\n";
    for (const auto& [k, v] : trace.params) {
        o << "# param " << k << "=" << format_real(v) << "\n";
    }
    for (const auto& f : trace.flags) {
        o << "# flag " << f << "\n";
    }
    o << kCsvHeader << "\n";
    for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
        const IterationRecord& r = trace.iterations[i];
        for (const Probe& p : r.probes) {
            o << i << "," << r.k << "," << to_string(p.kind) << "," << format_real(p.theta) << "," << csv_opt(p.f)
              << ",,,,,,,,\n";
        }
        o << i << "," << r.k << ",iterate," << csv_vec(r.theta) << "," << csv_opt(r.f) << "," << csv_vec(r.grad) << ","
          << r.cum.obj << "," << r.cum.grad << "," << r.cum.hess << "," << csv_opt(r.control.step_size) << ","
          << csv_opt(r.control.penalty) << "," << csv_opt(r.control.b_k) << "," << csv_opt(r.control.w_k) << "\n";
    }
    return o.str();
}

Trace trace_from_csv(const std::string& text) {
    ensure_real_range();
    Trace t;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    std::vector<Probe> pending;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            const std::string body = line.substr(line.find_first_not_of("# "));
            if (body.rfind("scenario=", 0) == 0) {
                t.scenario = body.substr(9);
            } else if (body.rfind("param ", 0) == 0) {
                const std::string kv = body.substr(6);
                const auto eq = kv.find('=');
                if (eq == std::string::npos) {
                    throw IoError("line " + std::to_string(line_no) + ": malformed parameter");
                }
                t.params[kv.substr(0, eq)] = csv_real(kv.substr(eq + 1), line_no);
            } else if (body.rfind("flag ", 0) == 0) {
                t.flags.push_back(body.substr(5));
            }
            continue;
        }
        if (!header) {
            if (line != kCsvHeader) {
                throw IoError("unexpected CSV header");
            }
            header = true;
            continue;
        }
        const auto cols = split(line, ',');
        if (cols.size() != 13) {
            throw IoError("line " + std::to_string(line_no) + ": expected 13 columns");
        }
        const std::uint64_t record = csv_count(cols[0], line_no);
        if (record != t.iterations.size()) {
            throw IoError("line " + std::to_string(line_no) + ": records out of order");
        }
        if (cols[2] != "iterate") {
            Probe p;
            try {
                p.kind = probe_kind_from_string(cols[2]);
            } catch (const InvalidArgumentError& e) {
                throw IoError(e.what());
            }
            p.theta = csv_real(cols[3], line_no);
            p.f = csv_opt_real(cols[4], line_no);
            pending.push_back(p);
            continue;
        }
        IterationRecord r;
        r.k = static_cast<std::size_t>(csv_count(cols[1], line_no));
        r.theta = csv_reals(cols[3], line_no);
        r.f = csv_opt_real(cols[4], line_no);
        r.grad = csv_reals(cols[5], line_no);
        r.cum.obj = csv_count(cols[6], line_no);
        r.cum.grad = csv_count(cols[7], line_no);
        r.cum.hess = csv_count(cols[8], line_no);
        r.control.step_size = csv_opt_real(cols[9], line_no);
        r.control.penalty = csv_opt_real(cols[10], line_no);
        r.control.b_k = csv_opt_real(cols[11], line_no);
        r.control.w_k = csv_opt_real(cols[12], line_no);
        r.probes = std::move(pending);
        pending.clear();
        t.iterations.push_back(std::move(r));
    }
    if (!header) {
        throw IoError("CSV trace has no header");
    }
    if (!pending.empty()) {
        throw IoError("CSV trace ends with probes that belong to no iterate");
    }
    return t;
}

std::string trace_to_string(const Trace& trace, TraceFormat format) {
    return format == TraceFormat::json ? trace_to_json(trace) : trace_to_csv(trace);
}

Trace trace_from_string(const std::string& text) {
    const auto pos = text.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && text[pos] == '{') {
        return trace_from_json(text);
    }
    return trace_from_csv(text);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

bool VerifyReport::all_pass() const {
    for (const auto& v : verdicts) {
        if (!v.pass) {
            return false;
        }
    }
    return !verdicts.empty();
}

std::string verify_report_json(const VerifyReport& report) {
    std::ostringstream o;
    o << "{\"scenario\":" << json_quote(report.scenario) << ",\"params\":" << params_json(report.params)
      << ",\"steps\":" << report.steps << ",\"tolerance\":{\"abs\":" << num(report.tolerance.abs)
      << ",\"rel\":" << num(report.tolerance.rel) << "},\"all_pass\":" << (report.all_pass() ? "true" : "false")
      << ",\"flags\":[";
    for (std::size_t i = 0; i < report.flags.size(); ++i) {
        o << (i ? "," : "") << json_quote(report.flags[i]);
    }
    o << "],\"verdicts\":[";
    for (std::size_t i = 0; i < report.verdicts.size(); ++i) {
        o << (i ? "," : "") << verdict_json(report.verdicts[i]);
    }
    o << "]}";
    return o.str();
}

} // namespace gradadv
