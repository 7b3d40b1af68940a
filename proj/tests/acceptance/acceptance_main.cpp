// Acceptance gate for the disagreement-VAR artifact. Runs ten checks, prints
// one [PASS]/[FAIL] line per criterion, and exits nonzero when any fail.
//
// usage: acceptance <path-to-cli-binary> <repo-root>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "disvar/disvar.hpp"

#ifdef __unix__
#include <sys/wait.h>
#endif

namespace fs = std::filesystem;
using namespace disvar;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %2d %s%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Run the CLI with the given argument string; returns its exit code.
int run_cli(const std::string& cli, const std::string& args, const fs::path& log) {
    const std::string command = "\"" + cli + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int raw = std::system(command.c_str());
#ifdef __unix__
    if (raw == -1) return -1;
    if (WIFEXITED(raw)) return WEXITSTATUS(raw);
    return -1;
#else
    return raw;
#endif
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> csv_files_under(const fs::path& root) {
    std::vector<std::string> rel;
    if (!fs::exists(root)) return rel;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") {
            rel.push_back(fs::relative(entry.path(), root).generic_string());
        }
    }
    std::sort(rel.begin(), rel.end());
    return rel;
}

// ---------------------------------------------------------------------------
// Shared fixtures
// ---------------------------------------------------------------------------

/// Reference bivariate VAR(1) dataset used by the prior-limit and band checks.
Eigen::MatrixXd reference_var_data() {
    Eigen::MatrixXd A(2, 2);
    A << 0.5, 0.1, 0.0, 0.3;
    Eigen::VectorXd c(2);
    c << 0.4, -0.2;
    return simulate_var({A}, c, Eigen::MatrixXd::Identity(2, 2), 400, 20240515);
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

void criterion_1_indicator_exactness() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string why;
    const auto expect = [&](bool cond, const std::string& label) {
        if (!cond && ok) {
            ok = false;
            why = label;
        }
    };

    const auto near = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
    expect(near(disp(ShareVector({0.2, 0.7, 0.1})), std::sqrt(0.29)), "disp(0.2,0.7,0.1)");
    expect(near(disp(ShareVector({0.5, 0.0, 0.5})), 1.0), "disp polarized");
    expect(disp(ShareVector({1.0, 0.0, 0.0})) == 0.0, "disp vertex P");
    expect(disp(ShareVector({0.0, 1.0, 0.0})) == 0.0, "disp all neutral");
    expect(disp(ShareVector({0.0, 0.0, 1.0})) == 0.0, "disp vertex M");
    expect(near(discrepancy(ShareVector({0.5, 0.5, 0.0})), 0.5), "D(0.5,0.5,0)");
    const double third = 1.0 / 3.0;
    expect(near(discrepancy(ShareVector({third, third, third})), 1.0), "D barycenter");
    expect(near(discrepancy(ShareVector({1.0, 0.0, 0.0})), 0.0), "D vertex");
    expect(near(discrepancy(ShareVector({0.25, 0.25, 0.25, 0.25})), 1.0), "D barycenter N=4");
    expect(near(discrepancy(ShareVector({0.0, 0.0, 1.0, 0.0})), 0.0), "D vertex N=4");

    bool rejected = false;
    try {
        disp(ShareVector({0.25, 0.25, 0.25, 0.25}));
    } catch (const ValidationError&) {
        rejected = true;
    }
    expect(rejected, "disp must reject N != 3");

    Rng rng(424242);
    std::vector<double> alpha{1.0, 1.0, 1.0};
    for (int i = 0; i < 10000 && ok; ++i) {
        const ShareVector s{rng.dirichlet(alpha)};
        const double d = discrepancy(s);
        const double v = disp(s);
        expect(d >= 0.0 && d <= 1.0, "D out of [0,1]");
        expect(v >= 0.0 && v <= 1.0, "DISP out of [0,1]");
        const double d_perm = discrepancy(ShareVector({s[2], s[0], s[1]}));
        expect(std::abs(d - d_perm) <= 1e-12, "D permutation invariance");
    }

    const double elapsed = seconds_since(t0);
    expect(elapsed < 1.0, "runtime over 1 s");
    report(1, "indicator exactness and property suite", ok,
           ok ? fmt(elapsed) + " s" : why);
}

void criterion_2_dual_coding() {
    Rng rng(31337);
    std::vector<double> alpha{1.0, 1.0, 1.0};
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const ShareVector s{rng.dirichlet(alpha)};
        // literal three-category formula, written out independently
        const double dist =
            std::sqrt((s[0] - 1.0 / 3) * (s[0] - 1.0 / 3) + (s[1] - 1.0 / 3) * (s[1] - 1.0 / 3) +
                      (s[2] - 1.0 / 3) * (s[2] - 1.0 / 3));
        const double literal = 1.0 - dist / std::sqrt(2.0 / 3.0);
        worst = std::max(worst, std::abs(literal - discrepancy(s)));
    }
    report(2, "three-category formula agrees with the general implementation", worst <= 1e-12,
           "max |diff| = " + fmt(worst));
}

void criterion_3_metric_relationship() {
    // Frozen after running this oracle: observed corr(D, DISP) = 0.9964 on
    // this fixture; the gate uses a conservative floor well above the 0.5
    // minimum the relationship claims.
    constexpr double kFrozenCorrFloor = 0.9;

    // Neutral-heavy center (~17/70/14 shares), like a real business survey.
    const SurveyPanel panel =
        simulate_share_panel(42, 2000, 3, 0.85, 220.0, "SIM", Agent::business,
                             Question::activity, YearMonth{2005, 5}, nullptr, {0.0, 1.4, -0.2});
    std::vector<double> d(panel.size()), v(panel.size());
    for (std::size_t t = 0; t < panel.size(); ++t) {
        d[t] = discrepancy(panel.shares[t]);
        v[t] = disp(panel.shares[t]);
    }
    const double corr = pearson(d, v);

    Rng rng(777);
    std::vector<double> alpha{1.0, 1.0, 1.0};
    double mean_d = 0.0, mean_v = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const ShareVector s{rng.dirichlet(alpha)};
        mean_d += discrepancy(s);
        mean_v += disp(s);
    }
    mean_d /= n;
    mean_v /= n;

    const bool ok = corr > kFrozenCorrFloor && corr > 0.5 && mean_v > mean_d;
    report(3, "balance dispersion tracks but overstates geometric disagreement", ok,
           "corr = " + fmt(corr) + " (floor " + fmt(kFrozenCorrFloor) + "), mean DISP = " +
               fmt(mean_v) + " > mean D = " + fmt(mean_d));
}

void criterion_4_prior_limits() {
    const Eigen::MatrixXd data = reference_var_data();
    const VarSpec spec{1, true, 2};

    MinnesotaHyper flat;
    flat.lambda1 = 1e6;
    const MinnesotaResult flat_post = minnesota_posterior(data, spec, flat);
    double flat_err = 0.0;
    for (int i = 0; i < 2; ++i) {
        const Eigen::VectorXd ols = flat_post.ols.coef_matrix.col(i);
        flat_err = std::max(flat_err,
                            (flat_post.equations[static_cast<std::size_t>(i)].mean - ols).norm() /
                                (1.0 + ols.norm()));
    }

    MinnesotaHyper dogmatic;
    dogmatic.lambda1 = 1e-8;
    dogmatic.delta = 0.0;
    const MinnesotaResult dog_post = minnesota_posterior(data, spec, dogmatic);
    double dog_err = 0.0;
    for (int i = 0; i < 2; ++i) {
        dog_err = std::max(
            dog_err, dog_post.equations[static_cast<std::size_t>(i)].mean.cwiseAbs().maxCoeff());
    }

    const bool ok = flat_err <= 1e-6 && dog_err <= 1e-6;
    report(4, "flat prior reproduces OLS; dogmatic prior reproduces the prior mean", ok,
           "flat rel err = " + fmt(flat_err) + ", dogmatic |mean| = " + fmt(dog_err));
}

void criterion_5_irf_oracle() {
    Eigen::MatrixXd A(2, 2);
    A << 0.5, 0.0, 0.2, 0.3;
    const Eigen::MatrixXd B0 = Eigen::MatrixXd::Identity(2, 2);
    const auto phi = irf_point({A}, B0, 24);

    double err = 0.0;
    const auto track = [&](double got, double want) {
        err = std::max(err, std::abs(got - want));
    };
    track(phi[0](0, 0), 1.0);
    track(phi[0](1, 0), 0.0);
    track(phi[1](0, 0), 0.5);
    track(phi[1](1, 0), 0.2);
    track(phi[2](0, 0), 0.25);
    track(phi[2](1, 0), 0.16);

    Eigen::MatrixXd Ah = Eigen::MatrixXd::Identity(2, 2);
    for (int h = 0; h <= 24; ++h) {
        err = std::max(err, (phi[static_cast<std::size_t>(h)] - Ah).cwiseAbs().maxCoeff());
        Ah = A * Ah;
    }
    report(5, "analytic impulse responses for the hand-worked VAR(1)", err <= 1e-10,
           "max |diff| = " + fmt(err));
}

void criterion_6_cholesky_contract() {
    Rng rng(606060);
    double worst = 0.0;
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 4;
        Eigen::MatrixXd g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
        const Eigen::MatrixXd sigma =
            g * g.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n);

        std::vector<int> ordering = identity_ordering(n);
        for (int i = n - 1; i > 0; --i) {
            const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
            std::swap(ordering[static_cast<std::size_t>(i)], ordering[static_cast<std::size_t>(j)]);
        }
        const Eigen::MatrixXd b = cholesky_impact(sigma, ordering);
        Eigen::MatrixXd permuted(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                permuted(i, j) = sigma(ordering[static_cast<std::size_t>(i)],
                                       ordering[static_cast<std::size_t>(j)]);
        worst = std::max(worst, (b * b.transpose() - permuted).cwiseAbs().maxCoeff());
        for (int i = 0; i < n && ok; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (b(i, j) != 0.0) ok = false;
            }
        }
    }
    if (worst > 1e-10) ok = false;

    bool rejected = false;
    try {
        Eigen::MatrixXd indef(2, 2);
        indef << 1.0, 2.0, 2.0, 1.0;
        cholesky_impact(indef, identity_ordering(2));
    } catch (const ValidationError&) {
        rejected = true;
    }
    ok = ok && rejected;
    report(6, "recursive identification reconstructs the permuted covariance", ok,
           "max |B0*B0' - P*sigma*P'| = " + fmt(worst) +
               (rejected ? ", non-SPD rejected" : ", non-SPD NOT rejected"));
}

void criterion_7_bic_recovery() {
    // Frozen after running this oracle: observed 100/100 correct on the
    // strong VAR(2) fixture and 100/100 on white noise.
    constexpr int kFrozenVar2Floor = 85;
    constexpr int kFrozenNoiseFloor = 90;

    const auto t0 = std::chrono::steady_clock::now();
    Eigen::MatrixXd A1(2, 2), A2(2, 2), zero(2, 2);
    A1 << 0.25, 0.05, 0.0, 0.25;
    A2 << 0.5, 0.0, 0.0, 0.5;
    zero.setZero();
    const Eigen::MatrixXd impact = Eigen::MatrixXd::Identity(2, 2);

    int var2_hits = 0;
    int noise_hits = 0;
    for (std::uint64_t s = 1; s <= 100; ++s) {
        const Eigen::MatrixXd strong =
            simulate_var({A1, A2}, Eigen::VectorXd(), impact, 400, mix_seed(7100, s));
        if (bic_select(strong, 6, true) == 2) ++var2_hits;
        const Eigen::MatrixXd noise =
            simulate_var({zero}, Eigen::VectorXd(), impact, 500, mix_seed(7200, s));
        if (bic_select(noise, 6, true) == 1) ++noise_hits;
    }
    const double elapsed = seconds_since(t0);
    const bool ok =
        var2_hits >= kFrozenVar2Floor && noise_hits >= kFrozenNoiseFloor && elapsed < 30.0;
    report(7, "lag-order recovery across 100 seeds", ok,
           "VAR(2): " + std::to_string(var2_hits) + "/100 (floor " +
               std::to_string(kFrozenVar2Floor) + "), white noise: " +
               std::to_string(noise_hits) + "/100 (floor " + std::to_string(kFrozenNoiseFloor) +
               "), " + fmt(elapsed) + " s");
}

void criterion_8_band_sanity() {
    const Eigen::MatrixXd data = reference_var_data();
    const VarSpec spec{2, true, 2};

    bool point_inside = true;
    double mean_width_prev = -1.0;
    bool monotone = true;
    std::string widths;
    for (const double lambda1 : {0.5, 0.2, 0.05}) {
        MinnesotaHyper h;
        h.lambda1 = lambda1;
        const MinnesotaResult post = minnesota_posterior(data, spec, h);
        IrfParams params;
        params.draws = 10000;
        params.horizon = 24;
        params.seed = 4711;
        const IrfBundle bundle = irf_bands(post, params);

        double width_sum = 0.0;
        std::size_t cells = 0;
        for (int h_idx = 0; h_idx <= 24; ++h_idx) {
            const auto hs = static_cast<std::size_t>(h_idx);
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    if (lambda1 == 0.2) {
                        if (bundle.point[hs](i, j) < bundle.lower[hs](i, j) ||
                            bundle.point[hs](i, j) > bundle.upper[hs](i, j)) {
                            point_inside = false;
                        }
                    }
                    width_sum += bundle.upper[hs](i, j) - bundle.lower[hs](i, j);
                    ++cells;
                }
            }
        }
        const double mean_width = width_sum / static_cast<double>(cells);
        if (!widths.empty()) widths += " >= ";
        widths += fmt(mean_width);
        if (mean_width_prev >= 0.0 && mean_width > mean_width_prev) monotone = false;
        mean_width_prev = mean_width;
    }

    const bool ok = point_inside && monotone;
    report(8, "credible bands cover the point response and tighten with the prior", ok,
           std::string(point_inside ? "point inside band at every horizon"
                                    : "point escapes the band") +
               "; mean widths " + widths);
}

void criterion_9_golden_run(const std::string& cli, const fs::path& repo) {
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path work = fs::temp_directory_path() / "disvar_acceptance_run";
    fs::remove_all(work);
    fs::create_directories(work);
    const fs::path fixture = work / "fixture";
    const fs::path run1 = work / "run_jobs1";
    const fs::path run2 = work / "run_jobs4";

    bool ok = true;
    std::string why;
    const auto step = [&](bool cond, const std::string& label) {
        if (!cond && ok) {
            ok = false;
            why = label;
        }
    };

    step(run_cli(cli, "simulate --out \"" + fixture.string() + "\" --seed 42",
                 work / "simulate.log") == 0,
         "simulate failed");
    const std::string conf = (fixture / "fixture.conf").string();
    step(run_cli(cli, "pipeline --config \"" + conf + "\" --out \"" + run1.string() +
                          "\" --jobs 1",
                 work / "run1.log") == 0,
         "pipeline --jobs 1 failed");
    step(run_cli(cli, "pipeline --config \"" + conf + "\" --out \"" + run2.string() +
                          "\" --jobs 4",
                 work / "run2.log") == 0,
         "pipeline --jobs 4 failed");

    if (ok) {
        const auto rel1 = csv_files_under(run1);
        step(!rel1.empty(), "no CSV outputs produced");
        step(rel1 == csv_files_under(run2), "jobs settings produced different file sets");
        for (const auto& rel : rel1) {
            if (slurp(run1 / rel) != slurp(run2 / rel)) {
                step(false, "bytes differ between jobs settings: " + rel);
                break;
            }
        }
    }

    if (ok) {
        const fs::path golden = repo / "tests" / "golden" / "pipeline";
        const auto golden_rel = csv_files_under(golden);
        step(!golden_rel.empty(), "golden directory is empty: " + golden.string());
        for (const auto& rel : golden_rel) {
            if (slurp(golden / rel) != slurp(run1 / rel)) {
                step(false, "output differs from golden file: " + rel);
                break;
            }
        }
    }

    const double elapsed = seconds_since(t0);
    step(elapsed < 60.0, "runtime over 60 s");
    report(9, "seeded pipeline reproduces golden outputs across reruns and jobs", ok,
           ok ? fmt(elapsed) + " s" : why);
    if (ok) fs::remove_all(work);
}

void criterion_10_documented_targets(const std::string& cli, const fs::path& repo) {
    bool ok = true;
    std::string why;
    const auto step = [&](bool cond, const std::string& label) {
        if (!cond && ok) {
            ok = false;
            why = label;
        }
    };

    const std::string readme = slurp(repo / "README.md");
    step(!readme.empty(), "README.md missing");
    step(readme.find("0.447") != std::string::npos, "README does not document the 0.447 target");
    step(readme.find("0.034") != std::string::npos, "README does not document the 0.034 target");
    step(readme.find("data-dependent") != std::string::npos,
         "README does not label the target data-dependent");
    step(readme.find("not CI-enforced") != std::string::npos,
         "README does not state the target is not CI-enforced");

    const fs::path work = fs::temp_directory_path() / "disvar_acceptance_table1";
    fs::remove_all(work);
    fs::create_directories(work);
    const fs::path fixture = work / "fixture";
    step(run_cli(cli, "simulate --out \"" + fixture.string() + "\" --seed 42",
                 work / "simulate.log") == 0,
         "simulate failed");
    const fs::path out = work / "out";
    step(run_cli(cli,
                 "table1 --config \"" + (fixture / "fixture.conf").string() + "\" --out \"" +
                     out.string() + "\"",
                 work / "table1.log") == 0,
         "table1 failed");
    if (ok) {
        std::istringstream in(slurp(out / "table1.csv"));
        std::string header;
        std::getline(in, header);
        step(header == "country,agent,mean,sd,corr_with_gdp", "table1 header layout wrong");
        std::string row;
        int rows = 0;
        while (std::getline(in, row)) {
            if (row.empty()) continue;
            ++rows;
            step(std::count(row.begin(), row.end(), ',') == 4, "table1 row has wrong arity");
        }
        step(rows >= 1, "table1 emitted no rows");
    }
    report(10, "descriptive table layout and documented spot-check targets", ok, ok ? "" : why);
    if (ok) fs::remove_all(work);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: %s <cli-binary> <repo-root>\n", argv[0]);
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path repo = argv[2];

    criterion_1_indicator_exactness();
    criterion_2_dual_coding();
    criterion_3_metric_relationship();
    criterion_4_prior_limits();
    criterion_5_irf_oracle();
    criterion_6_cholesky_contract();
    criterion_7_bic_recovery();
    criterion_8_band_sanity();
    criterion_9_golden_run(cli, repo);
    criterion_10_documented_targets(cli, repo);

    if (g_failures == 0) {
        std::printf("all 10 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
