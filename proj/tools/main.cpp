// disvar command-line tool: survey disagreement indices, descriptive tables,
// cross-correlograms, and Bayesian VAR impulse responses, driven by a plain
// key-value config file.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "disvar/disvar.hpp"

namespace {

struct GlobalFlags {
    std::string config_path;
    std::string out_dir;
    std::string countries;
    std::uint64_t seed = 0;
    int jobs = 0;
    CLI::Option* config_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* countries_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* jobs_opt = nullptr;
};

disvar::PipelineConfig resolve_config(const GlobalFlags& flags, bool config_required) {
    disvar::PipelineConfig cfg;
    if (flags.config_opt->count() > 0) {
        cfg = disvar::load_config(flags.config_path);
    } else if (config_required) {
        throw disvar::ValidationError("--config PATH is required for this subcommand");
    }
    if (flags.seed_opt->count() > 0) cfg.seed = flags.seed;
    if (flags.jobs_opt->count() > 0) cfg.jobs = flags.jobs;
    if (flags.out_opt->count() > 0) cfg.out_dir = flags.out_dir;
    if (flags.countries_opt->count() > 0) {
        cfg.countries = disvar::detail::split_list(flags.countries);
    }
    return cfg;
}

int run_command(const GlobalFlags& flags, unsigned stages, const std::string& name) {
    const disvar::PipelineConfig cfg = resolve_config(flags, /*config_required=*/true);
    const disvar::RunResult result = disvar::run_stages(cfg, stages, name);
    for (const auto& oc : result.outcomes) {
        if (oc.ok) {
            std::cout << oc.country << ": ok (" << static_cast<long>(oc.elapsed_ms) << " ms)\n";
        } else {
            std::cerr << oc.country << ": failed: " << oc.error << "\n";
        }
    }
    std::cout << result.outputs.size() << " files under " << cfg.out_dir << " ("
              << result.manifest_path << ")\n";
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"survey disagreement indices and per-country bivariate VAR analysis"};
    app.set_version_flag("--version", std::string(disvar::kVersion));
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags flags;
    flags.config_opt = app.add_option("--config", flags.config_path, "config file (key = value)");
    flags.seed_opt = app.add_option("--seed", flags.seed, "override irf.seed");
    flags.jobs_opt = app.add_option("--jobs", flags.jobs, "override jobs (countries in flight)");
    flags.out_opt = app.add_option("--out", flags.out_dir, "override output.dir");
    flags.countries_opt =
        app.add_option("--countries", flags.countries, "override countries (comma-separated)");

    auto* cmd_indicators =
        app.add_subcommand("indicators", "per-question disagreement series and DB/DC aggregates");
    auto* cmd_table1 =
        app.add_subcommand("table1", "mean/SD of DB and DC plus correlation with GDP growth");
    auto* cmd_ccf = app.add_subcommand("ccf", "cross-correlogram of DB against lagged DC");
    auto* cmd_irf =
        app.add_subcommand("irf", "BIC lag choice, Minnesota posterior, and 24-month IRFs");
    auto* cmd_pipeline = app.add_subcommand("pipeline", "all stages in order, plus run manifest");
    auto* cmd_simulate =
        app.add_subcommand("simulate", "write a seeded synthetic fixture (surveys, macro, config)");
    auto* cmd_print = app.add_subcommand("print-config", "print the fully resolved config");

    try {
        app.parse(argc, argv);

        if (cmd_print->parsed()) {
            const disvar::PipelineConfig cfg = resolve_config(flags, /*config_required=*/false);
            disvar::validate_config(cfg);
            std::cout << disvar::render_config(cfg);
            return 0;
        }
        if (cmd_simulate->parsed()) {
            disvar::FixtureSpec fx;
            fx.dir = flags.out_opt->count() > 0 ? flags.out_dir : "fixtures";
            if (flags.seed_opt->count() > 0) fx.seed = flags.seed;
            if (flags.countries_opt->count() > 0) {
                fx.countries = disvar::detail::split_list(flags.countries);
            }
            for (const auto& path : disvar::write_fixture(fx)) std::cout << path << "\n";
            return 0;
        }
        if (cmd_indicators->parsed()) {
            return run_command(flags, disvar::kStageIndicators, "indicators");
        }
        if (cmd_table1->parsed()) return run_command(flags, disvar::kStageTable1, "table1");
        if (cmd_ccf->parsed()) return run_command(flags, disvar::kStageCcf, "ccf");
        if (cmd_irf->parsed()) return run_command(flags, disvar::kStageIrf, "irf");
        if (cmd_pipeline->parsed()) return run_command(flags, disvar::kStageAll, "pipeline");
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const disvar::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const disvar::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
