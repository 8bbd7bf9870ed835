// Command-line front end: Bell-state symmetry tables, correlation
// geometry, and reproduction of the polarization-entanglement
// measurements from a config file.

#include "tripletcv/bell.hpp"
#include "tripletcv/config.hpp"
#include "tripletcv/experiment.hpp"
#include "tripletcv/report.hpp"
#include "tripletcv/validate.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

namespace fs = std::filesystem;
using tripletcv::report::ResultTable;
using tripletcv::report::RunManifest;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsageError = 2;

fs::path output_dir() {
    if (const char* dir = std::getenv("TRIPLETCV_OUTPUT_DIR")) return fs::path(dir);
    return fs::current_path();
}

int run_bell_table() {
    const auto table = tripletcv::bell::invariance_table();
    ResultTable out;
    out.columns = {"state"};
    for (const char* name : tripletcv::bell::kTransformNames) out.columns.push_back(name);
    for (int row = 0; row < 4; ++row) {
        std::vector<tripletcv::report::Cell> cells;
        cells.emplace_back(std::string(to_string(tripletcv::bell::kAllBellLabels[row])));
        for (int col = 0; col < 6; ++col)
            cells.emplace_back(std::string(table.invariant[row][col] ? "yes" : "no"));
        out.add_row(std::move(cells));
    }
    out.write_csv(std::cout, RunManifest::for_command("bell table"));
    std::cout << "# witness-angle lines for each 'no' entry (state,transform,alpha_rad,fidelity)\n";
    for (int row = 0; row < 4; ++row)
        for (int col = 0; col < 6; ++col)
            if (!table.invariant[row][col])
                std::cout << "# witness " << to_string(tripletcv::bell::kAllBellLabels[row]) << ","
                          << tripletcv::bell::kTransformNames[col] << ","
                          << tripletcv::report::format_number(table.witness_alpha[row][col]) << ","
                          << tripletcv::report::format_number(table.witness_fidelity[row][col])
                          << "\n";
    return kExitOk;
}

int run_bell_correlate(const std::string& state_name, double nx, double ny, double nz) {
    const auto label = tripletcv::bell::bell_label_from_string(state_name);
    tripletcv::bell::BlochVector n{nx, ny, nz};
    if (n.norm() == 0.0) throw CLI::ValidationError("--nx/--ny/--nz must not all be zero");
    if (std::abs(n.norm() - 1.0) > 1e-6)
        std::cerr << "tripletcv: warning: input direction normalized (|n| = " << n.norm() << ")\n";
    n = n.normalized();

    const auto m = tripletcv::bell::correlated_direction(label, n);
    const auto r = tripletcv::bell::mirror_matrix(label);

    ResultTable out;
    out.columns = {"quantity", "x", "y", "z"};
    out.add_row({std::string("measured_direction"), n.x, n.y, n.z});
    out.add_row({std::string("correlated_direction"), m.x, m.y, m.z});
    for (int i = 0; i < 3; ++i)
        out.add_row({std::string("mirror_row_") + char('x' + i), r(i, 0), r(i, 1), r(i, 2)});
    out.write_csv(std::cout, RunManifest::for_command("bell correlate"));
    return kExitOk;
}

RunManifest manifest_for(const std::string& command,
                         const tripletcv::experiment::ExperimentConfig& cfg) {
    RunManifest m = RunManifest::for_command(command);
    m.config_digest = tripletcv::report::digest_hex(tripletcv::config::config_digest(cfg));
    m.metadata = cfg.metadata;
    return m;
}

int run_cv_sweep(const std::string& config_path, const std::string& mode_name, double phi2,
                 double start, double stop, double step, std::string out_name) {
    const auto cfg = tripletcv::config::load_config(config_path);
    const bool mirror = (mode_name == "mirror");
    const auto mode = mirror ? tripletcv::experiment::SweepMode::mirror
                             : tripletcv::experiment::SweepMode::fixed_phi2;
    if (mirror && start == 0.0 && stop == -90.0) stop = 90.0;  // natural default per mode

    const auto result = tripletcv::experiment::sweep(cfg, mode, phi2, start, stop, step);

    ResultTable out;
    out.columns = {"phi1_deg", "phi2_deg", "variance_linear", "variance_db"};
    for (const auto& row : result.rows)
        out.add_row({row.phi1_deg, row.phi2_deg, row.variance_linear, row.variance_db});

    if (out_name.empty()) out_name = mirror ? "sweep_mirror.csv" : "sweep_fixed.csv";
    const fs::path path = output_dir() / out_name;
    std::ofstream file(path);
    if (!file) {
        std::cerr << "tripletcv: cannot write " << path << "\n";
        return kExitUsageError;
    }
    out.write_csv(file, manifest_for("cv sweep --mode " + mode_name, cfg));
    std::cout << path.string() << "\n";
    return kExitOk;
}

int run_cv_fig2(const std::string& config_path) {
    using namespace tripletcv::experiment;
    const auto cfg = tripletcv::config::load_config(config_path);
    const auto state = entangle(cfg);
    const double theta_sq = cfg.input_a.theta_sq;

    const auto indiv_c = individual_noise(state, OutputMode::C, {0.0}, theta_sq);
    const auto indiv_d = individual_noise(state, OutputMode::D, {0.0}, theta_sq);

    const StokesObservable c_sq{OutputMode::C, 0.0, StokesReference::squeezed};
    const StokesObservable d_sq{OutputMode::D, 0.0, StokesReference::squeezed};
    const StokesObservable c_asq{OutputMode::C, 0.0, StokesReference::antisqueezed};
    const StokesObservable d_asq{OutputMode::D, 0.0, StokesReference::antisqueezed};
    const CombinerSpec sum{cfg.combiner.gain, CombinerSign::sum};
    const CombinerSpec diff{cfg.combiner.gain, CombinerSign::difference};
    const auto sum_corr = measure_correlation(state, c_sq, d_sq, sum, theta_sq);
    const auto diff_corr = measure_correlation(state, c_asq, d_asq, diff, theta_sq);

    ResultTable out;
    out.columns = {"quantity", "variance_db"};
    out.add_row({std::string("individual_noise_C"), indiv_c.front().variance_db});
    out.add_row({std::string("individual_noise_D"), indiv_d.front().variance_db});
    out.add_row({std::string("sum_correlation"), sum_corr.variance_db});
    out.add_row({std::string("difference_correlation"), diff_corr.variance_db});
    out.write_csv(std::cout, manifest_for("cv fig2", cfg));
    return kExitOk;
}

int run_validate(std::uint64_t seed, std::int64_t samples) {
    const auto report = tripletcv::validate::run(seed, samples);
    ResultTable out;
    out.columns = {"check", "analytic", "sampled", "std_error", "deviation_se", "status"};
    for (const auto& c : report.checks)
        out.add_row({c.name, c.analytic, c.sampled, c.std_error, c.deviation_se,
                     std::string(c.passed ? "pass" : "FAIL")});
    RunManifest m = RunManifest::for_command("validate");
    m.seed = seed;
    m.has_seed = true;
    out.write_csv(std::cout, m);
    std::cout << "# result: " << (report.all_passed ? "all checks passed" : "validation FAILED")
              << "\n";
    return report.all_passed ? kExitOk : kExitValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous-variable triplet-like correlation toolkit"};
    app.require_subcommand(1);

    auto* bell = app.add_subcommand("bell", "Two-qubit Bell-state symmetry commands");
    bell->require_subcommand(1);
    auto* bell_table = bell->add_subcommand("table", "Print the Bell-state invariance table");

    std::string state_name;
    double nx = 0.0, ny = 0.0, nz = 0.0;
    auto* bell_corr =
        bell->add_subcommand("correlate", "Correlated measurement direction on the Bloch sphere");
    bell_corr->add_option("--state", state_name, "Bell state: psi-|psi+|phi-|phi+")->required();
    bell_corr->add_option("--nx", nx, "Bloch x component");
    bell_corr->add_option("--ny", ny, "Bloch y component");
    bell_corr->add_option("--nz", nz, "Bloch z component");

    auto* cv = app.add_subcommand("cv", "Continuous-variable experiment commands");
    cv->require_subcommand(1);

    std::string config_path, sweep_mode = "fixed", out_name;
    double phi2 = 45.0, start = 0.0, stop = -90.0, step = 5.0;
    auto* cv_sweep = cv->add_subcommand("sweep", "Angle sweep of the correlated variance (CSV)");
    cv_sweep->add_option("--config", config_path, "Experiment config file")->required();
    cv_sweep->add_option("--mode", sweep_mode, "Sweep mode: fixed|mirror")
        ->check(CLI::IsMember({"fixed", "mirror"}));
    cv_sweep->add_option("--phi2", phi2, "Fixed phi2 in degrees (fixed mode)");
    cv_sweep->add_option("--start", start, "Range start in degrees");
    cv_sweep->add_option("--stop", stop, "Range stop in degrees");
    cv_sweep->add_option("--step", step, "Step in degrees");
    cv_sweep->add_option("--out", out_name, "Output file name");

    std::string fig2_config;
    auto* cv_fig2 =
        cv->add_subcommand("fig2", "Individual noise and sum/difference correlations");
    cv_fig2->add_option("--config", fig2_config, "Experiment config file")->required();

    std::uint64_t seed = 20260824ull;
    std::int64_t samples = 1000000;
    auto* validate = app.add_subcommand("validate", "Monte-Carlo vs analytic oracle suite");
    validate->add_option("--seed", seed, "RNG seed");
    validate->add_option("--samples", samples, "Samples per check (>= 10000)")
        ->check(CLI::Range(std::int64_t{10000}, std::int64_t{1} << 40));

    try {
        app.parse(argc, argv);
        if (bell_table->parsed()) return run_bell_table();
        if (bell_corr->parsed()) return run_bell_correlate(state_name, nx, ny, nz);
        if (cv_sweep->parsed())
            return run_cv_sweep(config_path, sweep_mode, phi2, start, stop, step, out_name);
        if (cv_fig2->parsed()) return run_cv_fig2(fig2_config);
        if (validate->parsed()) return run_validate(seed, samples);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsageError;
    } catch (const tripletcv::config::ConfigError& e) {
        std::cerr << "tripletcv: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const std::exception& e) {
        std::cerr << "tripletcv: " << e.what() << "\n";
        return kExitUsageError;
    }
    return kExitUsageError;
}
