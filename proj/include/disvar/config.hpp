#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "disvar/csv.hpp"
#include "disvar/errors.hpp"
#include "disvar/irf.hpp"
#include "disvar/minnesota.hpp"
#include "disvar/rng.hpp"
#include "disvar/series.hpp"

namespace disvar {

/// Everything a run needs, with every default explicit so `print-config` can
/// show exactly which knobs a run used.
struct PipelineConfig {
    std::vector<std::string> survey_paths; ///< input.survey, comma-separated in the file
    std::string macro_path;                ///< input.macro
    std::vector<std::string> countries;    ///< empty = every country present in the inputs
    Metric metric = Metric::D;
    bool collapse_consumer = true; ///< map 6-category consumer replies to (P, E, M)
    ShareUnit unit = ShareUnit::percent;
    double share_tolerance = 0.02; ///< renormalization slack for rounded inputs
    AlignMethod align = AlignMethod::step;
    int pmax = 12;
    bool intercept = true;
    MinnesotaHyper prior{};
    int horizon = 24;
    int draws = 1000;
    std::uint64_t seed = 42;
    double lower_q = 0.16;
    double upper_q = 0.84;
    StabilityRule stability = StabilityRule::reject;
    int ccf_max_lag = 12;
    std::string out_dir = "out";
    int jobs = 1;
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= value.size(); ++i) {
        if (i == value.size() || value[i] == ',') {
            std::string item = trim(std::string_view(value).substr(begin, i - begin));
            if (!item.empty()) out.push_back(std::move(item));
            begin = i + 1;
        }
    }
    return out;
}

inline std::string join_list(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ',';
        out += items[i];
    }
    return out;
}

inline bool parse_bool(const std::string& value, std::size_t line, const std::string& key) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ValidationError("config line " + std::to_string(line) + ": " + key +
                          " expects true or false, got '" + value + "'");
}

inline std::int64_t parse_int(const std::string& value, std::size_t line, const std::string& key) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("config line " + std::to_string(line) + ": " + key +
                              " expects an integer, got '" + value + "'");
    }
}

} // namespace detail

/// Parse the plain-text key-value config format: one `key = value` per line,
/// `#` comments, blank lines ignored, dotted keys for grouping. Unknown and
/// duplicate keys are hard errors so silent typos cannot change a run.
inline PipelineConfig parse_config(const std::string& text) {
    PipelineConfig cfg;
    std::map<std::string, bool> seen;

    using Setter = std::function<void(const std::string&, std::size_t)>;
    const std::map<std::string, Setter> setters = {
        {"input.survey", [&](const std::string& v, std::size_t) {
             cfg.survey_paths = detail::split_list(v);
         }},
        {"input.macro", [&](const std::string& v, std::size_t) { cfg.macro_path = v; }},
        {"countries", [&](const std::string& v, std::size_t) {
             cfg.countries = detail::split_list(v);
         }},
        {"metric", [&](const std::string& v, std::size_t) { cfg.metric = parse_metric(v); }},
        {"collapse_consumer", [&](const std::string& v, std::size_t ln) {
             cfg.collapse_consumer = detail::parse_bool(v, ln, "collapse_consumer");
         }},
        {"shares.unit", [&](const std::string& v, std::size_t) {
             cfg.unit = parse_share_unit(v);
         }},
        {"shares.tolerance", [&](const std::string& v, std::size_t ln) {
             cfg.share_tolerance = parse_double(v, ln, "shares.tolerance");
         }},
        {"align.method", [&](const std::string& v, std::size_t) {
             cfg.align = parse_align_method(v);
         }},
        {"var.pmax", [&](const std::string& v, std::size_t ln) {
             cfg.pmax = static_cast<int>(detail::parse_int(v, ln, "var.pmax"));
         }},
        {"var.intercept", [&](const std::string& v, std::size_t ln) {
             cfg.intercept = detail::parse_bool(v, ln, "var.intercept");
         }},
        {"prior.delta", [&](const std::string& v, std::size_t ln) {
             cfg.prior.delta = parse_double(v, ln, "prior.delta");
         }},
        {"prior.lambda1", [&](const std::string& v, std::size_t ln) {
             cfg.prior.lambda1 = parse_double(v, ln, "prior.lambda1");
         }},
        {"prior.lambda2", [&](const std::string& v, std::size_t ln) {
             cfg.prior.lambda2 = parse_double(v, ln, "prior.lambda2");
         }},
        {"prior.lambda3", [&](const std::string& v, std::size_t ln) {
             cfg.prior.lambda3 = parse_double(v, ln, "prior.lambda3");
         }},
        {"prior.lambda4", [&](const std::string& v, std::size_t ln) {
             cfg.prior.lambda4 = parse_double(v, ln, "prior.lambda4");
         }},
        {"irf.horizon", [&](const std::string& v, std::size_t ln) {
             cfg.horizon = static_cast<int>(detail::parse_int(v, ln, "irf.horizon"));
         }},
        {"irf.draws", [&](const std::string& v, std::size_t ln) {
             cfg.draws = static_cast<int>(detail::parse_int(v, ln, "irf.draws"));
         }},
        {"irf.seed", [&](const std::string& v, std::size_t ln) {
             cfg.seed = static_cast<std::uint64_t>(detail::parse_int(v, ln, "irf.seed"));
         }},
        {"irf.lower_q", [&](const std::string& v, std::size_t ln) {
             cfg.lower_q = parse_double(v, ln, "irf.lower_q");
         }},
        {"irf.upper_q", [&](const std::string& v, std::size_t ln) {
             cfg.upper_q = parse_double(v, ln, "irf.upper_q");
         }},
        {"irf.stability", [&](const std::string& v, std::size_t) {
             cfg.stability = parse_stability_rule(v);
         }},
        {"ccf.max_lag", [&](const std::string& v, std::size_t ln) {
             cfg.ccf_max_lag = static_cast<int>(detail::parse_int(v, ln, "ccf.max_lag"));
         }},
        {"output.dir", [&](const std::string& v, std::size_t) { cfg.out_dir = v; }},
        {"jobs", [&](const std::string& v, std::size_t ln) {
             cfg.jobs = static_cast<int>(detail::parse_int(v, ln, "jobs"));
         }},
    };

    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = detail::trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
        }
        const std::string key = detail::trim(std::string_view(stripped).substr(0, eq));
        const std::string value = detail::trim(std::string_view(stripped).substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw ValidationError("config line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
        }
        if (seen[key]) {
            throw ValidationError("config line " + std::to_string(line_no) +
                                  ": duplicate key '" + key + "'");
        }
        seen[key] = true;
        it->second(value, line_no);
    }
    return cfg;
}

/// Canonical text form: every key, fixed order, resolved values. parse_config
/// of the result reproduces the config exactly.
inline std::string render_config(const PipelineConfig& cfg) {
    std::string out;
    const auto put = [&](const std::string& key, const std::string& value) {
        out += key + " = " + value + "\n";
    };
    put("input.survey", detail::join_list(cfg.survey_paths));
    put("input.macro", cfg.macro_path);
    put("countries", detail::join_list(cfg.countries));
    put("metric", to_string(cfg.metric));
    put("collapse_consumer", cfg.collapse_consumer ? "true" : "false");
    put("shares.unit", to_string(cfg.unit));
    put("shares.tolerance", format_double(cfg.share_tolerance));
    put("align.method", to_string(cfg.align));
    put("var.pmax", std::to_string(cfg.pmax));
    put("var.intercept", cfg.intercept ? "true" : "false");
    put("prior.delta", format_double(cfg.prior.delta));
    put("prior.lambda1", format_double(cfg.prior.lambda1));
    put("prior.lambda2", format_double(cfg.prior.lambda2));
    put("prior.lambda3", format_double(cfg.prior.lambda3));
    put("prior.lambda4", format_double(cfg.prior.lambda4));
    put("irf.horizon", std::to_string(cfg.horizon));
    put("irf.draws", std::to_string(cfg.draws));
    put("irf.seed", std::to_string(cfg.seed));
    put("irf.lower_q", format_double(cfg.lower_q));
    put("irf.upper_q", format_double(cfg.upper_q));
    put("irf.stability", to_string(cfg.stability));
    put("ccf.max_lag", std::to_string(cfg.ccf_max_lag));
    put("output.dir", cfg.out_dir);
    put("jobs", std::to_string(cfg.jobs));
    return out;
}

/// FNV-1a hash of the canonical config text, as 16 hex digits.
inline std::string config_hash(const PipelineConfig& cfg) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(render_config(cfg))));
    return buf;
}

/// Range checks that do not touch the filesystem.
inline void validate_config(const PipelineConfig& cfg) {
    if (cfg.horizon < 1) throw ValidationError("irf.horizon must be >= 1");
    if (cfg.draws < 100) {
        throw ValidationError("irf.draws must be >= 100 (got " + std::to_string(cfg.draws) + ")");
    }
    if (!(cfg.lower_q > 0.0 && cfg.lower_q < cfg.upper_q && cfg.upper_q < 1.0)) {
        throw ValidationError("irf quantiles must satisfy 0 < lower < upper < 1");
    }
    if (cfg.pmax < 1) throw ValidationError("var.pmax must be >= 1");
    if (cfg.ccf_max_lag < 1) throw ValidationError("ccf.max_lag must be >= 1");
    if (cfg.jobs < 1) throw ValidationError("jobs must be >= 1");
    if (!(cfg.share_tolerance >= 0.0)) {
        throw ValidationError("shares.tolerance must be >= 0");
    }
    cfg.prior.validate();
}

/// Filesystem half of validation, separate so flag overrides can run between
/// parsing and checking.
inline void check_input_files(const PipelineConfig& cfg) {
    if (cfg.survey_paths.empty()) throw ValidationError("input.survey is required");
    if (cfg.macro_path.empty()) throw ValidationError("input.macro is required");
    for (const auto& p : cfg.survey_paths) {
        if (!std::filesystem::exists(p)) throw IoError("input file not found: " + p);
    }
    if (!std::filesystem::exists(cfg.macro_path)) {
        throw IoError("input file not found: " + cfg.macro_path);
    }
}

inline PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace disvar
