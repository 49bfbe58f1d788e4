#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "compdiff/analysis.hpp"
#include "compdiff/config.hpp"
#include "compdiff/runner.hpp"

using namespace compdiff;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void warn_if_degenerate_growth(const Trajectory& traj) {
    if (traj.growth_touched_zero) {
        std::cerr << "warning: min r = 0 somewhere on the grid; results that assume r > 0 "
                     "may not apply\n";
    }
}

int cmd_run(const std::string& config_path, const std::string& out_override) {
    SimConfig cfg = load_config(config_path);
    if (!out_override.empty()) cfg.output.dir = out_override;
    const Trajectory traj = run(cfg);
    warn_if_degenerate_growth(traj);

    const EnergyRecord& last = traj.records.back();
    std::cout << "steps completed to t=" << fmt(last.t) << "\n"
              << "final energy_u=" << fmt(last.energy_u) << " energy_v=" << fmt(last.energy_v)
              << "\n"
              << "final mass_u=" << fmt(last.mass_u) << " mass_v=" << fmt(last.mass_v) << "\n";
    const int window = std::min<int>(50, static_cast<int>(traj.records.size()));
    std::cout << "observed outcome: " << to_string(detect_outcome(traj, 1e-8, window)) << "\n";
    if (!cfg.output.dir.empty()) {
        std::cout << "outputs written to " << cfg.output.dir << "\n";
    }
    return kExitOk;
}

int cmd_preset(const std::string& name, const std::string& variant, const std::string& emit) {
    const SimConfig cfg = preset(name, variant);
    if (emit.empty()) {
        std::cout << config_to_json_text(cfg);
    } else {
        emit_config(cfg, emit);
        std::cout << "wrote " << emit << "\n";
    }
    return kExitOk;
}

// thresholds for the applicable side(s) of (mu, nu), when they exist
std::optional<Thresholds> estimate_thresholds(const SimConfig& cfg, const ModelParams& params) {
    if (!cfg.coefficients.stationary() || params.mu >= 1.0 || params.nu >= 1.0) {
        return std::nullopt;
    }
    Thresholds th;
    const Grid g(cfg.n);
    if (params.mu <= params.nu) {
        const SteadyState ss =
            steady_state_single(Species::U, cfg.coefficients, params, 1e-8, g);
        if (!ss.trivial) th.nu1 = nu1_estimate(ss, cfg.coefficients, params);
    }
    if (params.nu <= params.mu) {
        const SteadyState ss =
            steady_state_single(Species::V, cfg.coefficients, params, 1e-8, g);
        if (!ss.trivial) th.mu1 = mu1_estimate(ss, cfg.coefficients, params);
    }
    return th;
}

int cmd_regime(double mu, double nu, const std::string& config_path) {
    ModelParams params{1.0, 1.0, mu, nu};
    RegimeReport report;

    if (!config_path.empty()) {
        SimConfig cfg = load_config(config_path);
        params.d1 = cfg.params.d1;
        params.d2 = cfg.params.d2;
        if (!cfg.coefficients.stationary()) {
            std::cout << "coefficients are time-dependent; thresholds not defined\n";
        }
        if (const auto th = estimate_thresholds(cfg, params)) {
            report.nu1 = th->nu1;
            report.mu1 = th->mu1;
            if (report.nu1) std::cout << "nu1 = " << fmt(*report.nu1) << "\n";
            if (report.mu1) std::cout << "mu1 = " << fmt(*report.mu1) << "\n";
        }
    }

    std::optional<Thresholds> thresholds;
    if (report.nu1 || report.mu1) thresholds = Thresholds{report.nu1, report.mu1};
    report.predicted = classify_regime(params, thresholds);
    std::cout << "predicted: " << to_string(report.predicted) << "\n";
    return kExitOk;
}

int cmd_eig(const std::string& config_path, const std::string& state) {
    const SimConfig cfg = load_config(config_path);
    const Grid g(cfg.n);
    const ModelParams& p = cfg.params;

    auto report = [](const char* label, const EigenPair& pair) {
        std::cout << label << " = " << fmt(pair.lambda) << " (residual " << fmt(pair.residual)
                  << ", " << pair.iterations << " iterations)\n";
    };

    if (state == "trivial") {
        const SteadyState zero_u{ScalarField(g, 0.0), Species::U, 0.0, 0, true};
        const SteadyState zero_v{ScalarField(g, 0.0), Species::V, 0.0, 0, true};
        const ScalarField q_u =
            linearized_potential_at_semitrivial(Species::U, zero_v, cfg.coefficients, p);
        const ScalarField q_v =
            linearized_potential_at_semitrivial(Species::V, zero_u, cfg.coefficients, p);
        report("gamma1 (u at (0,0))", principal_eigenvalue(p.d1, q_u));
        report("sigma1 (v at (0,0))", principal_eigenvalue(p.d2, q_v));
    } else if (state == "u-star") {
        const SteadyState ss = steady_state_single(Species::U, cfg.coefficients, p, 1e-8, g);
        if (ss.trivial) std::cout << "note: u* is trivial (mu >= 1)\n";
        const ScalarField q =
            linearized_potential_at_semitrivial(Species::V, ss, cfg.coefficients, p);
        report("sigma1 (v invading (u*,0))", principal_eigenvalue(p.d2, q));
    } else if (state == "v-star") {
        const SteadyState ss = steady_state_single(Species::V, cfg.coefficients, p, 1e-8, g);
        if (ss.trivial) std::cout << "note: v* is trivial (nu >= 1)\n";
        const ScalarField q =
            linearized_potential_at_semitrivial(Species::U, ss, cfg.coefficients, p);
        report("sigma1 (u invading (0,v*))", principal_eigenvalue(p.d1, q));
    } else {
        throw ConfigError("unknown --state '" + state + "'; use trivial, u-star or v-star");
    }
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::vector<double>& mus,
              const std::vector<double>& nus, const std::string& out_path,
              bool with_thresholds) {
    const SimConfig base = load_config(config_path);
    const std::filesystem::path out = out_path.empty() ? "sweep.csv" : out_path;

    std::ofstream csv(out);
    if (!csv) throw ConfigError("cannot open " + out.string() + " for writing");
    csv << "mu,nu,predicted,observed,energy_u,energy_v\n";

    for (double mu : mus) {
        for (double nu : nus) {
            SimConfig cfg = base;
            cfg.params.mu = mu;
            cfg.params.nu = nu;
            cfg.output.dir.clear();

            RegimeReport report;
            if (with_thresholds) {
                if (const auto th = estimate_thresholds(cfg, cfg.params)) {
                    report.nu1 = th->nu1;
                    report.mu1 = th->mu1;
                }
            }
            std::optional<Thresholds> thresholds;
            if (report.nu1 || report.mu1) thresholds = Thresholds{report.nu1, report.mu1};
            report.predicted = classify_regime(cfg.params, thresholds);

            const Trajectory traj = run(cfg);
            const int window = std::min<int>(50, static_cast<int>(traj.records.size()));
            report.observed = detect_outcome(traj, 1e-8, window);
            const EnergyRecord& last = traj.records.back();

            char row[160];
            std::snprintf(row, sizeof(row), "%.17g,%.17g,%s,%s,%.17g,%.17g\n", mu, nu,
                          to_string(report.predicted).c_str(),
                          to_string(report.observed).c_str(), last.energy_u, last.energy_v);
            csv << row;
            std::cout << "done mu=" << fmt(mu) << " nu=" << fmt(nu) << " predicted="
                      << to_string(report.predicted)
                      << " observed=" << to_string(report.observed) << "\n";
        }
    }
    std::cout << "summary written to " << out.string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-species competition-diffusion simulator with growth-proportional "
                 "harvesting"};
    app.require_subcommand(1);

    std::string config_path, out_dir, preset_name, preset_variant, emit_path, eig_state;
    double mu = 0.0, nu = 0.0;
    std::vector<double> mu_list, nu_list;
    std::string sweep_out;
    bool sweep_thresholds = false;

    CLI::App* c_run = app.add_subcommand("run", "simulate a config and write outputs");
    c_run->add_option("--config", config_path, "JSON config path")->required();
    c_run->add_option("--out", out_dir, "override output.dir");

    CLI::App* c_preset = app.add_subcommand("preset", "emit a ready-made experiment config");
    c_preset->add_option("--name", preset_name, "exp1..exp5")->required();
    c_preset->add_option("--variant", preset_variant, "variant where the experiment has several");
    c_preset->add_option("--emit", emit_path, "write to this path instead of stdout");

    CLI::App* c_regime = app.add_subcommand("regime", "predicted long-time outcome for (mu,nu)");
    c_regime->add_option("--mu", mu, "harvesting coefficient of u")->required();
    c_regime->add_option("--nu", nu, "harvesting coefficient of v")->required();
    c_regime->add_option("--config", config_path,
                         "stationary config: also estimate the nu1/mu1 threshold");

    CLI::App* c_eig = app.add_subcommand("eig", "principal eigenvalue of a linearization");
    c_eig->add_option("--config", config_path, "JSON config path")->required();
    c_eig->add_option("--state", eig_state, "trivial | u-star | v-star")->required();

    CLI::App* c_sweep = app.add_subcommand("sweep", "grid of runs over harvesting pairs");
    c_sweep->add_option("--config", config_path, "JSON config path")->required();
    c_sweep->add_option("--mu", mu_list, "mu values")->required()->delimiter(',');
    c_sweep->add_option("--nu", nu_list, "nu values")->required()->delimiter(',');
    c_sweep->add_option("--out", sweep_out, "summary CSV path (default sweep.csv)");
    c_sweep->add_flag("--thresholds", sweep_thresholds,
                      "also estimate nu1/mu1 per pair (slower)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c_run->parsed()) return cmd_run(config_path, out_dir);
        if (c_preset->parsed()) return cmd_preset(preset_name, preset_variant, emit_path);
        if (c_regime->parsed()) return cmd_regime(mu, nu, config_path);
        if (c_eig->parsed()) return cmd_eig(config_path, eig_state);
        if (c_sweep->parsed()) {
            return cmd_sweep(config_path, mu_list, nu_list, sweep_out, sweep_thresholds);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ExprParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const ExprDomainError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitUsage;
}
