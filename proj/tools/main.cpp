// ltvnorm command-line tool: induced-norm analysis of finite-horizon LTV
// systems from JSON system specifications.
//
//   ltvnorm validate <spec.json>
//   ltvnorm analyze  <spec.json> [--algo combined|power|bisect] [--tol T] ...
//   ltvnorm l2e      <spec.json> --tau all|t1,t2,... [--budget S] ...
//   ltvnorm bench    [--orders 10,50,100] [--samples 3] ...
//
// Exit codes: 0 converged / valid, 1 input error, 2 not converged.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ltvnorm/bench.hpp"
#include "ltvnorm/combined.hpp"
#include "ltvnorm/errors.hpp"
#include "ltvnorm/gramian.hpp"
#include "ltvnorm/json_io.hpp"
#include "ltvnorm/power_iteration.hpp"
#include "ltvnorm/rde.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNotConverged = 2;

struct CommonArgs {
    std::string spec_path;
    std::optional<int> steps;
    std::optional<std::uint64_t> seed;
};

// Loads and validates; prints violations to stderr and returns nullopt on
// failure. CLI flags override the spec's solver/seed settings.
std::optional<ltvnorm::LoadedSpec> load_checked(const CommonArgs& args) {
    ltvnorm::LoadedSpec spec;
    try {
        spec = ltvnorm::load_system_spec(args.spec_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::nullopt;
    }
    const auto issues = ltvnorm::validate(spec.system);
    if (!issues.empty()) {
        for (const auto& issue : issues) {
            std::cerr << "error: " << issue << "\n";
        }
        return std::nullopt;
    }
    if (args.steps.has_value()) {
        spec.options.steps = *args.steps;
    }
    if (args.seed.has_value()) {
        spec.options.seed = *args.seed;
    }
    return spec;
}

void emit_report(const ltvnorm::AnalysisReport& report, const std::string& out_path) {
    const std::string text = ltvnorm::report_to_json(report);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            throw std::runtime_error("cannot open output file: " + out_path);
        }
        out << text;
    }
}

std::vector<double> parse_tau_list(const std::string& text) {
    std::vector<double> taus;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        taus.push_back(std::stod(cell));
    }
    return taus;
}

int cmd_analyze(const CommonArgs& common, const std::string& algo, double tol,
                const std::string& out_path, const std::string& dist_path, int max_iters) {
    const auto spec = load_checked(common);
    if (!spec.has_value()) {
        return kExitInputError;
    }
    const ltvnorm::LtvSystem& sys = spec->system;
    ltvnorm::AnalysisOptions opts = spec->options;
    opts.max_power_iterations = max_iters;

    ltvnorm::AnalysisReport report;
    report.algorithm = algo;
    report.tolerance = tol;
    std::optional<ltvnorm::Signal> disturbance;
    int exit_code = kExitOk;

    try {
        if (algo == "power") {
            const auto grid = ltvnorm::analysis_grid(sys, opts);
            const auto d1 = ltvnorm::random_unit_signal(grid, sys.input_dim, opts.seed);
            const auto start = std::chrono::steady_clock::now();
            const auto result =
                ltvnorm::power_iterate(sys, d1, opts.max_power_iterations, tol,
                                       opts.divergence_threshold);
            report.wall_time_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
            report.gamma_lb = result.gamma_star;
            report.iterations = result.iterations;
            report.power_iterations = result.iterations;
            switch (result.termination) {
                case ltvnorm::PowerIterTermination::tolerance_met:
                    report.termination = "converged";
                    break;
                case ltvnorm::PowerIterTermination::max_iters:
                    report.termination = "max_iterations";
                    exit_code = kExitNotConverged;
                    break;
                case ltvnorm::PowerIterTermination::nonmonotone_detected:
                    report.termination = "nonmonotone_detected";
                    std::cerr << "warning: the gain sequence decreased beyond integration "
                                 "slack; reduce the step size (--steps)\n";
                    exit_code = kExitNotConverged;
                    break;
            }
            disturbance = result.d_star;
        } else if (algo == "bisect" || algo == "combined") {
            const ltvnorm::GainBounds bounds =
                algo == "bisect" ? ltvnorm::bisect(sys, tol, opts)
                                 : ltvnorm::combined_gain(sys, tol, opts);
            report.gamma_lb = bounds.gamma_lb;
            if (std::isfinite(bounds.gamma_ub)) {
                report.gamma_ub = bounds.gamma_ub;
            }
            report.rde_solves = bounds.rde_solves;
            report.iterations =
                algo == "bisect" ? bounds.bisections : bounds.outer_iterations;
            if (algo == "combined") {
                report.power_iterations = bounds.power_iterations;
            }
            report.wall_time_s = bounds.wall_time_s;
            report.termination = bounds.converged ? "converged" : "max_iterations";
            if (!bounds.converged) {
                exit_code = kExitNotConverged;
            }
            disturbance = bounds.d_lb;
        } else {
            std::cerr << "error: unknown algorithm: " << algo << "\n";
            return kExitInputError;
        }
    } catch (const ltvnorm::DegenerateDirectionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotConverged;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    if (!dist_path.empty()) {
        if (disturbance.has_value()) {
            ltvnorm::write_signal_csv(dist_path, *disturbance);
            report.disturbance_csv = dist_path;
        } else {
            std::cerr << "warning: no worst-case disturbance available to write\n";
        }
    }
    emit_report(report, out_path);
    return exit_code;
}

int cmd_l2e(const CommonArgs& common, const std::string& tau_arg, double budget,
            const std::string& out_path, const std::string& dist_path) {
    const auto spec = load_checked(common);
    if (!spec.has_value()) {
        return kExitInputError;
    }
    const ltvnorm::LtvSystem& sys = spec->system;
    if (sys.l2_dim != 0) {
        std::cerr << "error: the gain profile requires a system with no running output "
                     "channel (n_I = 0); this spec has n_I = "
                  << sys.l2_dim << "\n";
        return kExitInputError;
    }
    if (sys.terminal_dim == 0) {
        std::cerr << "error: the gain profile requires a terminal output channel "
                     "(n_E >= 1)\n";
        return kExitInputError;
    }

    try {
        const auto grid = ltvnorm::analysis_grid(sys, spec->options);
        const ltvnorm::GramianTrace trace = ltvnorm::solve_lde(sys, grid);

        std::vector<std::size_t> indices;
        std::vector<double> requested;
        if (tau_arg == "all") {
            indices.resize(trace.times.size());
            for (std::size_t i = 0; i < indices.size(); ++i) {
                indices[i] = i;
            }
        } else {
            requested = parse_tau_list(tau_arg);
            for (double tau : requested) {
                const auto gain = ltvnorm::l2e_gain(trace, tau);
                if (std::abs(gain.tau - tau) > 1e-9 * std::max(1.0, sys.horizon)) {
                    std::cerr << "warning: tau " << tau << " snapped to grid point "
                              << gain.tau << "\n";
                }
                indices.push_back(gain.grid_index);
            }
        }
        if (out_path.empty()) {
            for (std::size_t idx : indices) {
                std::printf("%.17g,%.17g\n", trace.times[idx],
                            budget * std::sqrt(std::max(0.0, trace.lambda1[idx])));
            }
        } else {
            ltvnorm::write_gain_profile_csv(out_path, trace, indices, budget);
        }

        if (!dist_path.empty()) {
            if (indices.size() != 1) {
                std::cerr << "error: --dist-out needs exactly one --tau value\n";
                return kExitInputError;
            }
            const ltvnorm::Signal d =
                ltvnorm::wc_disturbance_l2e(sys, trace, trace.times[indices.front()]);
            ltvnorm::write_signal_csv(dist_path, d);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-horizon induced-norm analysis for linear time-varying systems"};
    app.require_subcommand(1);

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "Check a system spec file");
    std::string validate_path;
    validate_cmd->add_option("spec", validate_path, "System spec JSON file")->required();

    // analyze
    auto* analyze_cmd =
        app.add_subcommand("analyze", "Compute the induced gain of a system");
    CommonArgs analyze_args;
    std::string algo = "combined";
    double tol = 1e-2;
    std::string report_path;
    std::string dist_path;
    int max_iters = 50;
    int steps_flag = 0;
    std::uint64_t seed_flag = 0;
    analyze_cmd->add_option("spec", analyze_args.spec_path, "System spec JSON file")
        ->required();
    analyze_cmd->add_option("--algo", algo, "power, bisect, or combined")
        ->check(CLI::IsMember({"power", "bisect", "combined"}))
        ->capture_default_str();
    analyze_cmd->add_option("--tol", tol, "Absolute tolerance on the gain")
        ->capture_default_str();
    analyze_cmd->add_option("--out", report_path, "Report JSON path (default stdout)");
    analyze_cmd->add_option("--dist-out", dist_path, "Worst-case disturbance CSV path");
    analyze_cmd->add_option("--max-iters", max_iters, "Power iteration cap")
        ->capture_default_str();
    auto* analyze_steps = analyze_cmd->add_option("--steps", steps_flag,
                                                  "Integration steps (overrides spec)");
    auto* analyze_seed =
        analyze_cmd->add_option("--seed", seed_flag, "RNG seed (overrides spec)");

    // l2e
    auto* l2e_cmd = app.add_subcommand(
        "l2e", "Terminal-output gain profile from one Gramian sweep (needs n_I = 0)");
    CommonArgs l2e_args;
    std::string tau_arg = "all";
    double budget = 1.0;
    std::string l2e_out;
    std::string l2e_dist;
    l2e_cmd->add_option("spec", l2e_args.spec_path, "System spec JSON file")->required();
    l2e_cmd->add_option("--tau", tau_arg, "\"all\" or comma-separated horizon times")
        ->capture_default_str();
    l2e_cmd->add_option("--budget", budget, "Disturbance norm scale applied to the bound")
        ->capture_default_str();
    l2e_cmd->add_option("--out", l2e_out, "Gain profile CSV path (default stdout)");
    l2e_cmd->add_option("--dist-out", l2e_dist,
                        "Worst-case disturbance CSV (single --tau only)");
    auto* l2e_steps =
        l2e_cmd->add_option("--steps", steps_flag, "Integration steps (overrides spec)");
    auto* l2e_seed = l2e_cmd->add_option("--seed", seed_flag, "RNG seed (overrides spec)");

    // bench
    auto* bench_cmd = app.add_subcommand(
        "bench", "Time RDE integrations against power-iteration steps on random systems");
    std::string orders_arg = "10,50,100";
    ltvnorm::BenchOptions bench_opts;
    std::string bench_out;
    std::string mode = "full";
    bench_cmd->add_option("--orders", orders_arg, "Comma-separated system orders")
        ->capture_default_str();
    bench_cmd->add_option("--samples", bench_opts.samples, "Random systems per order")
        ->capture_default_str();
    bench_cmd->add_option("--horizon", bench_opts.horizon, "Analysis horizon in seconds")
        ->capture_default_str();
    bench_cmd->add_option("--tol", bench_opts.tol, "Tolerance for the timed algorithms")
        ->capture_default_str();
    bench_cmd->add_option("--steps", bench_opts.steps, "Integration steps")
        ->capture_default_str();
    bench_cmd->add_option("--seed", bench_opts.seed, "RNG seed")->capture_default_str();
    bench_cmd->add_option("--jobs", bench_opts.jobs, "Concurrent samples")
        ->capture_default_str();
    bench_cmd
        ->add_option("--mode", mode,
                     "\"ratio\" times only the RDE/power-step pair; \"full\" also runs "
                     "the three gain algorithms")
        ->check(CLI::IsMember({"ratio", "full"}))
        ->capture_default_str();
    bench_cmd->add_option("--out", bench_out, "Benchmark CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) {
            ltvnorm::LoadedSpec spec;
            try {
                spec = ltvnorm::load_system_spec(validate_path);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitInputError;
            }
            const auto issues = ltvnorm::validate(spec.system);
            if (issues.empty()) {
                std::cout << "valid\n";
                return kExitOk;
            }
            for (const auto& issue : issues) {
                std::cerr << "error: " << issue << "\n";
            }
            return kExitInputError;
        }
        if (analyze_cmd->parsed()) {
            if (analyze_steps->count() > 0) {
                analyze_args.steps = steps_flag;
            }
            if (analyze_seed->count() > 0) {
                analyze_args.seed = seed_flag;
            }
            return cmd_analyze(analyze_args, algo, tol, report_path, dist_path, max_iters);
        }
        if (l2e_cmd->parsed()) {
            if (l2e_steps->count() > 0) {
                l2e_args.steps = steps_flag;
            }
            if (l2e_seed->count() > 0) {
                l2e_args.seed = seed_flag;
            }
            return cmd_l2e(l2e_args, tau_arg, budget, l2e_out, l2e_dist);
        }
        if (bench_cmd->parsed()) {
            bench_opts.orders.clear();
            for (double v : parse_tau_list(orders_arg)) {
                bench_opts.orders.push_back(static_cast<int>(v));
            }
            bench_opts.run_algorithms = mode == "full";
            const auto rows = ltvnorm::run_benchmark(bench_opts);
            if (bench_out.empty()) {
                for (const auto& row : rows) {
                    std::printf("%d,%.6g,%.6g,%.6g\n", row.order, row.t_rde_s, row.t_pi_s,
                                row.ratio);
                }
            } else {
                ltvnorm::write_benchmark_csv(bench_out, rows, bench_opts.run_algorithms);
            }
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
