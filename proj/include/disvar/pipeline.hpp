#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "disvar/config.hpp"
#include "disvar/csv.hpp"
#include "disvar/errors.hpp"
#include "disvar/indicators.hpp"
#include "disvar/irf.hpp"
#include "disvar/minnesota.hpp"
#include "disvar/series.hpp"
#include "disvar/shares.hpp"
#include "disvar/simulate.hpp"
#include "disvar/stats.hpp"
#include "disvar/svg.hpp"
#include "disvar/var.hpp"
#include "disvar/version.hpp"

namespace disvar {

/// Write via a temp file plus rename so readers never observe a half-written
/// file and a failed run never leaves a corrupt output behind.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (!path.parent_path().empty()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " +
                              ec.message());
    }
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out.good()) throw IoError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// All parsed inputs, ready for per-country work. Panels are post-collapse
/// (when configured) and macro series are aligned to monthly.
struct LoadedInputs {
    std::vector<SurveyPanel> panels;
    std::map<std::string, MacroSeries> macro_monthly;
    std::vector<std::string> countries; ///< resolved filter, sorted
};

inline LoadedInputs load_inputs(const PipelineConfig& cfg) {
    check_input_files(cfg);
    LoadedInputs in;

    SurveyCsvSchema schema;
    schema.unit = cfg.unit;
    schema.renorm_tol = cfg.share_tolerance;
    for (const auto& path : cfg.survey_paths) {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw IoError("cannot open survey file: " + path);
        std::vector<SurveyPanel> panels;
        try {
            panels = parse_survey_csv(f, schema);
        } catch (const ValidationError& e) {
            throw ValidationError(path + ": " + e.what());
        }
        for (auto& p : panels) {
            for (const auto& existing : in.panels) {
                if (existing.country == p.country && existing.agent == p.agent &&
                    existing.question == p.question) {
                    throw ValidationError("duplicate panel " + p.country + "/" +
                                          to_string(p.agent) + "/" + to_string(p.question) +
                                          " across survey files");
                }
            }
            in.panels.push_back(std::move(p));
        }
    }
    if (cfg.collapse_consumer) {
        for (auto& p : in.panels) {
            if (p.agent == Agent::consumer && p.categories() == 6) {
                for (auto& row : p.shares) row = collapse_consumer_categories(row);
            }
        }
    }

    {
        std::ifstream f(cfg.macro_path, std::ios::binary);
        if (!f) throw IoError("cannot open macro file: " + cfg.macro_path);
        std::vector<MacroSeries> macro;
        try {
            macro = parse_macro_csv(f);
        } catch (const ValidationError& e) {
            throw ValidationError(cfg.macro_path + ": " + e.what());
        }
        for (auto& m : macro) {
            MacroSeries monthly =
                m.frequency == Frequency::quarterly ? align_frequency(m, cfg.align) : std::move(m);
            in.macro_monthly.emplace(monthly.country, std::move(monthly));
        }
    }

    std::vector<std::string> available;
    for (const auto& p : in.panels) {
        if (std::find(available.begin(), available.end(), p.country) == available.end()) {
            available.push_back(p.country);
        }
    }
    std::sort(available.begin(), available.end());
    if (cfg.countries.empty()) {
        in.countries = std::move(available);
    } else {
        for (const auto& c : cfg.countries) {
            if (std::find(available.begin(), available.end(), c) == available.end()) {
                throw ValidationError("country " + c + " not present in survey inputs");
            }
        }
        in.countries = cfg.countries;
        std::sort(in.countries.begin(), in.countries.end());
        in.countries.erase(std::unique(in.countries.begin(), in.countries.end()),
                           in.countries.end());
    }
    if (in.countries.empty()) throw ValidationError("no countries found in survey inputs");
    return in;
}

/// Per-agent results for one country: the three question-level series plus
/// their aggregate (DB for businesses, DC for consumers).
struct AgentData {
    std::vector<IndicatorSeries> components;
    AggregateDisagreement aggregate;
};

struct CountryData {
    std::string country;
    std::optional<AgentData> business;
    std::optional<AgentData> consumer;
    const MacroSeries* growth = nullptr; ///< monthly; null when absent from macro input
};

namespace pipe {

inline std::string aggregate_label(Agent a) { return a == Agent::business ? "DB" : "DC"; }

inline IndicatorSeries as_indicator(const AggregateDisagreement& agg) {
    IndicatorSeries s;
    s.metric = agg.metric;
    s.country = agg.country;
    s.agent = agg.agent;
    s.start = agg.start;
    s.values = agg.values;
    return s;
}

inline const char* variable_name(int index) {
    return index == AlignedMatrix::kDisagreementCol ? "disagreement" : "growth";
}

} // namespace pipe

inline CountryData compute_country(const LoadedInputs& in, const PipelineConfig& cfg,
                                   const std::string& country) {
    CountryData data;
    data.country = country;
    std::vector<IndicatorSeries> business, consumer;
    for (const auto& p : in.panels) {
        if (p.country != country) continue;
        if (cfg.metric == Metric::Disp && p.categories() != 3) {
            throw ValidationError("metric DISP needs 3 reply categories but panel " + p.country +
                                  "/" + to_string(p.agent) + "/" + to_string(p.question) +
                                  " has " + std::to_string(p.categories()) +
                                  "; set collapse_consumer = true to collapse 6-category "
                                  "consumer replies to (positive, neutral, negative)");
        }
        auto& bucket = p.agent == Agent::business ? business : consumer;
        bucket.push_back(indicator_series(p, cfg.metric));
    }
    const auto finish = [](std::vector<IndicatorSeries> components) {
        std::sort(components.begin(), components.end(),
                  [](const IndicatorSeries& a, const IndicatorSeries& b) {
                      return static_cast<int>(a.question) < static_cast<int>(b.question);
                  });
        AgentData out;
        out.aggregate = aggregate(components);
        out.components = std::move(components);
        return out;
    };
    if (!business.empty()) data.business = finish(std::move(business));
    if (!consumer.empty()) data.consumer = finish(std::move(consumer));
    const auto it = in.macro_monthly.find(country);
    if (it != in.macro_monthly.end()) data.growth = &it->second;
    return data;
}

/// Everything one country contributes to a run: files already written, rows
/// destined for the cross-country CSVs, and its manifest entry.
struct CountryOutcome {
    std::string country;
    bool ok = true;
    std::string error;
    double elapsed_ms = 0.0;
    std::vector<std::string> files; ///< paths relative to the output directory
    std::vector<std::string> table1_rows;
    std::vector<std::string> model_rows;
};

enum : unsigned {
    kStageIndicators = 1u,
    kStageTable1 = 2u,
    kStageCcf = 4u,
    kStageIrf = 8u,
    kStageAll = 15u,
};

namespace pipe {

inline void emit(const PipelineConfig& cfg, CountryOutcome& oc, const std::string& rel_path,
                 const std::string& content) {
    write_file_atomic(std::filesystem::path(cfg.out_dir) / rel_path, content);
    oc.files.push_back(rel_path);
}

inline void stage_indicators(const CountryData& data, const PipelineConfig& cfg,
                             CountryOutcome& oc) {
    for (const auto* agent_data : {&data.business, &data.consumer}) {
        if (!agent_data->has_value()) continue;
        const AgentData& ad = **agent_data;
        const std::string agent = to_string(ad.aggregate.agent);
        for (const auto& comp : ad.components) {
            std::ostringstream out;
            write_indicator_csv(out, comp);
            emit(cfg, oc,
                 "indicators/" + data.country + "_" + agent + "_" + to_string(comp.question) +
                     ".csv",
                 out.str());
        }
        std::ostringstream out;
        write_aggregate_csv(out, ad.aggregate);
        emit(cfg, oc, "indicators/" + data.country + "_" + agent + "_aggregate.csv", out.str());
    }
}

inline void stage_table1(const CountryData& data, CountryOutcome& oc) {
    for (const auto* agent_data : {&data.business, &data.consumer}) {
        if (!agent_data->has_value()) continue;
        const AgentData& ad = **agent_data;
        if (!data.growth) {
            throw ValidationError("no macro series for " + data.country +
                                  "; cannot correlate with GDP growth");
        }
        const AlignedMatrix joined = join_for_var(as_indicator(ad.aggregate), *data.growth);
        std::vector<double> dis(joined.size()), gdp(joined.size());
        for (std::size_t t = 0; t < joined.size(); ++t) {
            dis[t] = joined.data(static_cast<Eigen::Index>(t), AlignedMatrix::kDisagreementCol);
            gdp[t] = joined.data(static_cast<Eigen::Index>(t), AlignedMatrix::kGrowthCol);
        }
        const SummaryRow row = summary(dis);
        const double corr = pearson(dis, gdp);
        oc.table1_rows.push_back(data.country + "," + to_string(ad.aggregate.agent) + "," +
                                 format_double(row.mean) + "," + format_double(row.sd) + "," +
                                 format_double(corr));
    }
}

inline void stage_ccf(const CountryData& data, const PipelineConfig& cfg, CountryOutcome& oc) {
    if (!data.business || !data.consumer) {
        throw ValidationError("cross-correlogram needs both business and consumer aggregates "
                              "for " +
                              data.country);
    }
    const AggregateDisagreement& db = data.business->aggregate;
    const AggregateDisagreement& dc = data.consumer->aggregate;
    const YearMonth lo = std::max(db.start, dc.start);
    const YearMonth hi = std::min(db.end(), dc.end());
    if (lo > hi) throw ValidationError("empty overlap between DB and DC for " + data.country);
    const int T = months_between(lo, hi) + 1;
    std::vector<double> a(static_cast<std::size_t>(T)), b(static_cast<std::size_t>(T));
    const int db_off = months_between(db.start, lo);
    const int dc_off = months_between(dc.start, lo);
    for (int t = 0; t < T; ++t) {
        a[static_cast<std::size_t>(t)] = db.values[static_cast<std::size_t>(db_off + t)];
        b[static_cast<std::size_t>(t)] = dc.values[static_cast<std::size_t>(dc_off + t)];
    }
    const CrossCorrelogram ccf = cross_correlogram(a, b, cfg.ccf_max_lag);

    std::string csv = "# value at lag k = corr(DB_t, DC_{t+k})\n";
    csv += "country,lag,value\n";
    for (int k = -cfg.ccf_max_lag; k <= cfg.ccf_max_lag; ++k) {
        csv += data.country + "," + std::to_string(k) + "," + format_double(ccf.at(k)) + "\n";
    }
    emit(cfg, oc, "ccf/" + data.country + ".csv", csv);

    char r0[32];
    std::snprintf(r0, sizeof(r0), "%.3f", ccf.at(0));
    const std::string svg = bar_chart(
        data.country + ": DB vs lagged DC (contemporaneous " + r0 + ")",
        "bar at lag k = corr(DB_t, DC_{t+k}), k in [-" + std::to_string(cfg.ccf_max_lag) + ", " +
            std::to_string(cfg.ccf_max_lag) + "]",
        ccf.values, -cfg.ccf_max_lag);
    emit(cfg, oc, "ccf/" + data.country + ".svg", svg);
}

inline void stage_irf(const CountryData& data, const PipelineConfig& cfg, CountryOutcome& oc) {
    if (!data.growth) {
        throw ValidationError("no macro series for " + data.country + "; cannot estimate a VAR");
    }
    std::string csv = "country,agent,shock,response_variable,horizon,point,lower,upper\n";
    std::vector<SvgSeries> overlay;
    const char* colors[2] = {"#1f6f8b", "#c05746"};

    for (const auto* agent_data : {&data.business, &data.consumer}) {
        if (!agent_data->has_value()) continue;
        const AgentData& ad = **agent_data;
        const Agent agent = ad.aggregate.agent;
        const AlignedMatrix joined = join_for_var(as_indicator(ad.aggregate), *data.growth);

        const BicScan scan = bic_scan(joined.data, cfg.pmax, cfg.intercept);
        VarSpec spec;
        spec.p = scan.selected;
        spec.intercept = cfg.intercept;
        spec.n = 2;
        const MinnesotaResult post = minnesota_posterior(joined.data, spec, cfg.prior);

        IrfParams params;
        params.horizon = cfg.horizon;
        params.draws = cfg.draws;
        params.seed = mix_seed(cfg.seed, fnv1a64(data.country),
                               static_cast<std::uint64_t>(agent) + 1);
        params.lower_q = cfg.lower_q;
        params.upper_q = cfg.upper_q;
        params.rule = cfg.stability;
        const IrfBundle bundle = irf_bands(post, params);

        for (int shock = 0; shock < 2; ++shock) {
            for (int var = 0; var < 2; ++var) {
                for (int h = 0; h <= bundle.horizon; ++h) {
                    const auto hs = static_cast<std::size_t>(h);
                    csv += data.country + "," + to_string(agent) + "," +
                           pipe::variable_name(shock) + "," + pipe::variable_name(var) + "," +
                           std::to_string(h) + "," + format_double(bundle.point[hs](var, shock)) +
                           "," + format_double(bundle.lower[hs](var, shock)) + "," +
                           format_double(bundle.upper[hs](var, shock)) + "\n";
                }
            }
        }

        SvgSeries series;
        series.label = "GDP growth after a one-SD " + aggregate_label(agent) + " shock";
        series.color = colors[agent == Agent::business ? 0 : 1];
        for (int h = 0; h <= bundle.horizon; ++h) {
            const auto hs = static_cast<std::size_t>(h);
            series.values.push_back(bundle.point[hs](AlignedMatrix::kGrowthCol, 0));
            series.lower.push_back(bundle.lower[hs](AlignedMatrix::kGrowthCol, 0));
            series.upper.push_back(bundle.upper[hs](AlignedMatrix::kGrowthCol, 0));
        }
        overlay.push_back(std::move(series));

        const VarEstimate mean_est = posterior_mean_estimate(post);
        const double radius = spectral_radius(mean_est);
        const Eigen::MatrixXd se = hc_se(post.ols);
        const std::string prefix = data.country + "," + to_string(agent) + "," +
                                   std::to_string(spec.p) + "," +
                                   format_double(scan.bic[static_cast<std::size_t>(spec.p - 1)]) +
                                   "," + format_double(radius) + "," +
                                   std::to_string(bundle.rejected_explosive);
        for (int eq = 0; eq < spec.n; ++eq) {
            for (int lag = 1; lag <= spec.p; ++lag) {
                for (int var = 0; var < spec.n; ++var) {
                    const Eigen::Index idx = coef_index(lag, var, spec.n);
                    oc.model_rows.push_back(
                        prefix + "," + pipe::variable_name(eq) + ",lag" + std::to_string(lag) +
                        "." + pipe::variable_name(var) + "," +
                        format_double(post.ols.coef_matrix(idx, eq)) + "," +
                        format_double(se(idx, eq)) + "," +
                        format_double(post.equations[static_cast<std::size_t>(eq)].mean(idx)));
                }
            }
            if (spec.intercept) {
                const Eigen::Index idx = spec.k() - 1;
                oc.model_rows.push_back(
                    prefix + "," + pipe::variable_name(eq) + ",const," +
                    format_double(post.ols.coef_matrix(idx, eq)) + "," + format_double(se(idx, eq)) +
                    "," + format_double(post.equations[static_cast<std::size_t>(eq)].mean(idx)));
            }
        }
    }

    emit(cfg, oc, "irf/" + data.country + ".csv", csv);
    if (!overlay.empty()) {
        char band[64];
        std::snprintf(band, sizeof(band), "%g-%g quantile band", cfg.lower_q, cfg.upper_q);
        const std::string svg = line_chart(
            data.country + ": GDP growth response to disagreement shocks",
            std::string("Cholesky identification, disagreement ordered first; ") + band +
                ", horizon 0.." + std::to_string(cfg.horizon),
            overlay, "0", std::to_string(cfg.horizon));
        emit(cfg, oc, "irf/" + data.country + ".svg", svg);
    }
}

} // namespace pipe

inline CountryOutcome run_country(const LoadedInputs& in, const PipelineConfig& cfg,
                                  unsigned stages, const std::string& country) {
    const auto t0 = std::chrono::steady_clock::now();
    CountryOutcome oc;
    oc.country = country;
    std::vector<std::string> errors;

    std::optional<CountryData> data;
    try {
        data = compute_country(in, cfg, country);
    } catch (const std::exception& e) {
        errors.push_back(std::string("indicators: ") + e.what());
    }
    if (data) {
        const auto attempt = [&](unsigned stage, const char* name, auto&& fn) {
            if (!(stages & stage)) return;
            try {
                fn();
            } catch (const std::exception& e) {
                errors.push_back(std::string(name) + ": " + e.what());
            }
        };
        attempt(kStageIndicators, "indicators",
                [&] { pipe::stage_indicators(*data, cfg, oc); });
        attempt(kStageTable1, "table1", [&] { pipe::stage_table1(*data, oc); });
        attempt(kStageCcf, "ccf", [&] { pipe::stage_ccf(*data, cfg, oc); });
        attempt(kStageIrf, "irf", [&] { pipe::stage_irf(*data, cfg, oc); });
    }

    oc.ok = errors.empty();
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (i) oc.error += "; ";
        oc.error += errors[i];
    }
    oc.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              t0)
                        .count();
    return oc;
}

struct RunResult {
    int exit_code = 0;
    std::vector<CountryOutcome> outcomes;
    std::vector<std::string> outputs; ///< relative paths, sorted
    std::string manifest_path;
};

/// Run the requested stages for every resolved country, at most `cfg.jobs`
/// countries in flight. Per-country outputs are written inside the workers;
/// cross-country tables and the manifest are assembled afterwards so the
/// emitted bytes cannot depend on scheduling.
inline RunResult run_stages(const PipelineConfig& cfg, unsigned stages,
                            const std::string& command) {
    validate_config(cfg);
    const LoadedInputs inputs = load_inputs(cfg);

    std::vector<CountryOutcome> outcomes(inputs.countries.size());
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), inputs.countries.size());
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= inputs.countries.size()) return;
            outcomes[i] = run_country(inputs, cfg, stages, inputs.countries[i]);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    RunResult result;
    result.outcomes = std::move(outcomes);

    std::vector<std::string> outputs;
    for (const auto& oc : result.outcomes) {
        outputs.insert(outputs.end(), oc.files.begin(), oc.files.end());
    }

    if (stages & kStageTable1) {
        std::vector<std::string> rows;
        for (const auto& oc : result.outcomes) {
            rows.insert(rows.end(), oc.table1_rows.begin(), oc.table1_rows.end());
        }
        std::sort(rows.begin(), rows.end());
        std::string csv = "country,agent,mean,sd,corr_with_gdp\n";
        for (const auto& r : rows) csv += r + "\n";
        write_file_atomic(std::filesystem::path(cfg.out_dir) / "table1.csv", csv);
        outputs.push_back("table1.csv");
    }
    if (stages & kStageIrf) {
        std::vector<std::string> rows;
        for (const auto& oc : result.outcomes) {
            rows.insert(rows.end(), oc.model_rows.begin(), oc.model_rows.end());
        }
        std::sort(rows.begin(), rows.end());
        std::string csv =
            "country,agent,p,bic,spectral_radius,rejected_explosive,equation,term,ols_coef,"
            "hc0_se,posterior_mean\n";
        for (const auto& r : rows) csv += r + "\n";
        write_file_atomic(std::filesystem::path(cfg.out_dir) / "models.csv", csv);
        outputs.push_back("models.csv");
    }

    outputs.push_back("manifest.json");
    std::sort(outputs.begin(), outputs.end());

    nlohmann::json manifest;
    manifest["artifact"] = kArtifactName;
    manifest["artifact_version"] = kVersion;
    manifest["command"] = command;
    manifest["config_hash"] = config_hash(cfg);
    manifest["config"] = render_config(cfg);
    nlohmann::json countries = nlohmann::json::object();
    for (const auto& oc : result.outcomes) {
        countries[oc.country] = {
            {"status", oc.ok ? "ok" : "failed: " + oc.error},
            {"elapsed_ms", oc.elapsed_ms},
        };
    }
    manifest["countries"] = std::move(countries);
    manifest["outputs"] = outputs;
    write_file_atomic(std::filesystem::path(cfg.out_dir) / "manifest.json",
                      manifest.dump(2) + "\n");

    result.outputs = std::move(outputs);
    result.manifest_path =
        (std::filesystem::path(cfg.out_dir) / "manifest.json").string();
    const bool all_ok = std::all_of(result.outcomes.begin(), result.outcomes.end(),
                                    [](const CountryOutcome& oc) { return oc.ok; });
    result.exit_code = all_ok ? 0 : 2;
    return result;
}

/// Parameters of the shipped synthetic fixture (survey + macro + config).
struct FixtureSpec {
    std::uint64_t seed = 42;
    std::vector<std::string> countries = {"AT", "DE"};
    int months = 180; ///< monthly survey span; macro covers the same span quarterly
    std::string dir;
};

/// Write a self-contained synthetic input set: a 3-category business survey,
/// a 6-category consumer survey, a quarterly macro series, and a config file
/// pointing at all three. Returns the paths written.
inline std::vector<std::string> write_fixture(const FixtureSpec& fx) {
    if (fx.dir.empty()) throw ValidationError("fixture directory is required");
    if (fx.months < 24 || fx.months % 3 != 0) {
        throw ValidationError("fixture months must be a multiple of 3 and at least 24");
    }
    if (fx.countries.empty()) throw ValidationError("fixture needs at least one country");
    const YearMonth start{2005, 1};
    const std::array<Question, 3> questions = {Question::activity, Question::prices,
                                               Question::employment};

    // Neutral-heavy latent centers so simulated reply shares sit where real
    // survey data does (most respondents answer "same").
    const std::vector<double> business_center = {0.0, 1.4, -0.2};
    const std::vector<double> consumer_center = {-0.6, 0.3, 1.3, 0.2, -0.7, -1.0};

    std::vector<SurveyPanel> business, consumer;
    std::vector<MacroSeries> macro;
    for (const auto& country : fx.countries) {
        const std::uint64_t c_key = fnv1a64(country);
        for (const auto& q : questions) {
            business.push_back(simulate_share_panel(
                mix_seed(fx.seed, c_key, 0x100u + static_cast<std::uint64_t>(q)),
                static_cast<std::size_t>(fx.months), 3, 0.85, 220.0, country, Agent::business, q,
                start, nullptr, business_center));
            consumer.push_back(simulate_share_panel(
                mix_seed(fx.seed, c_key, 0x200u + static_cast<std::uint64_t>(q)),
                static_cast<std::size_t>(fx.months), 6, 0.85, 320.0, country, Agent::consumer, q,
                start, nullptr, consumer_center));
        }
        macro.push_back(simulate_macro_series(mix_seed(fx.seed, c_key, 0x300u),
                                              static_cast<std::size_t>(fx.months / 3),
                                              Frequency::quarterly, country, start));
    }

    const std::filesystem::path dir(fx.dir);
    std::vector<std::string> written;
    const auto emit = [&](const std::string& name, const std::string& content) {
        const auto path = dir / name;
        write_file_atomic(path, content);
        written.push_back(path.string());
    };

    {
        std::ostringstream out;
        write_survey_csv(out, business, ShareUnit::percent, {"up", "same", "down"});
        emit("survey_business.csv", out.str());
    }
    {
        std::ostringstream out;
        write_survey_csv(out, consumer, ShareUnit::percent,
                         {"strong_up", "up", "same", "down", "strong_down", "dont_know"});
        emit("survey_consumer.csv", out.str());
    }
    {
        std::ostringstream out;
        write_macro_csv(out, macro);
        emit("macro.csv", out.str());
    }
    {
        PipelineConfig cfg;
        cfg.survey_paths = {(dir / "survey_business.csv").string(),
                            (dir / "survey_consumer.csv").string()};
        cfg.macro_path = (dir / "macro.csv").string();
        cfg.seed = fx.seed;
        cfg.out_dir = (dir / "out").string();
        emit("fixture.conf", render_config(cfg));
    }
    return written;
}

} // namespace disvar
