#include "ltvnorm/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <thread>

#include "ltvnorm/combined.hpp"
#include "ltvnorm/power_iteration.hpp"
#include "ltvnorm/rde.hpp"

namespace ltvnorm {

namespace {

class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : rng_(seed) {}
    double operator()() {
        const double u1 = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
        const double u2 = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    double uniform(double lo, double hi) {
        const double u = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

private:
    std::mt19937_64 rng_;
};

template <class F>
double mean_time(F&& op, double min_elapsed_s = 0.02, int max_reps = 8) {
    using clock = std::chrono::steady_clock;
    double total = 0.0;
    int reps = 0;
    while (reps < max_reps) {
        const auto t0 = clock::now();
        op();
        total += std::chrono::duration<double>(clock::now() - t0).count();
        ++reps;
        if (total >= min_elapsed_s) {
            break;
        }
    }
    return total / reps;
}

struct SampleTiming {
    double t_rde = 0.0;
    double t_pi = 0.0;
    double t_power = 0.0;
    double t_bisect = 0.0;
    double t_combined = 0.0;
};

}  // namespace

LtvSystem random_stable_system(int order, double horizon, std::uint64_t seed, int steps) {
    if (order < 1) {
        throw std::invalid_argument("random_stable_system: order must be >= 1");
    }
    NormalSource rng(seed);
    const std::size_t n = static_cast<std::size_t>(order);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = rng.uniform(-2.0, -0.1);
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = 0.5 * rng();
        }
    }
    Matrix b(n, 1);
    Matrix c(1, n);
    for (std::size_t i = 0; i < n; ++i) {
        b(i, 0) = rng();
        c(0, i) = rng();
    }
    LtvSystem sys = make_lti_system(a, b, c, Matrix(1, 1), Matrix(0, n), horizon);

    // Rescale the output so the analyzed gain is O(1); a coarse power
    // iteration stands in for exact norm normalization.
    AnalysisOptions opts;
    opts.steps = steps;
    opts.seed = seed ^ 0x9e3779b97f4a7c15ull;
    const std::vector<double> grid = analysis_grid(sys, opts);
    const Signal d1 = random_unit_signal(grid, 1, opts.seed);
    const PowerIterResult first = power_iterate(sys, d1, 2, 1e-12);
    const PowerIterResult est =
        power_iterate(sys, d1, 20, std::max(1e-6, 0.02 * first.history.back().second));
    const double scale = est.gamma_star > 0.0 ? 1.0 / est.gamma_star : 1.0;
    Matrix c_scaled = c;
    c_scaled *= scale;
    return make_lti_system(a, b, c_scaled, Matrix(1, 1), Matrix(0, n), horizon);
}

std::vector<BenchRow> run_benchmark(const BenchOptions& opts) {
    if (opts.orders.empty() || opts.samples < 1) {
        throw std::invalid_argument("run_benchmark: need at least one order and one sample");
    }

    struct Task {
        int order_index;
        int sample;
    };
    std::vector<Task> tasks;
    for (std::size_t oi = 0; oi < opts.orders.size(); ++oi) {
        for (int s = 0; s < opts.samples; ++s) {
            tasks.push_back({static_cast<int>(oi), s});
        }
    }
    std::vector<SampleTiming> timings(tasks.size());

    const auto worker_body = [&](std::size_t task_index) {
        const Task& task = tasks[task_index];
        const int order = opts.orders[static_cast<std::size_t>(task.order_index)];
        const std::uint64_t seed =
            opts.seed + 7919ull * static_cast<std::uint64_t>(order) +
            static_cast<std::uint64_t>(task.sample);

        const LtvSystem sys = random_stable_system(order, opts.horizon, seed, opts.steps);
        AnalysisOptions run_opts;
        run_opts.steps = opts.steps;
        run_opts.seed = seed;
        const std::vector<double> grid = analysis_grid(sys, run_opts);

        // A gamma at which the certificate holds, so the timed integration
        // covers the whole horizon.
        const Signal d1 = random_unit_signal(grid, sys.input_dim, seed);
        const PowerIterResult pi = power_iterate(sys, d1, 20, opts.tol / 5.0);
        double gamma_full = 1.3 * pi.gamma_star + 0.05;
        for (int attempt = 0; attempt < 8; ++attempt) {
            if (solve_rde(sys, gamma_full, grid).exists) {
                break;
            }
            gamma_full *= 2.0;
        }

        SampleTiming t;
        t.t_rde = mean_time([&] { solve_rde(sys, gamma_full, grid); });
        const Signal d_step = pi.d_star;
        t.t_pi = mean_time([&] {
            const ForwardResult fwd = forward_gain(sys, d_step);
            adjoint_output(sys, fwd.e_E_T, fwd.e_I);
        });

        if (opts.run_algorithms) {
            using clock = std::chrono::steady_clock;
            auto t0 = clock::now();
            power_iterate(sys, d1, 50, opts.tol);
            t.t_power = std::chrono::duration<double>(clock::now() - t0).count();
            t.t_bisect = bisect(sys, opts.tol, run_opts).wall_time_s;
            t.t_combined = combined_gain(sys, opts.tol, run_opts).wall_time_s;
        }
        timings[task_index] = t;
    };

    if (opts.jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            worker_body(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const int n_threads = std::min<int>(opts.jobs, static_cast<int>(tasks.size()));
        for (int w = 0; w < n_threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < tasks.size();
                     i = next.fetch_add(1)) {
                    worker_body(i);
                }
            });
        }
        for (std::thread& th : pool) {
            th.join();
        }
    }

    std::vector<BenchRow> rows;
    for (std::size_t oi = 0; oi < opts.orders.size(); ++oi) {
        BenchRow row;
        row.order = opts.orders[oi];
        for (int s = 0; s < opts.samples; ++s) {
            const SampleTiming& t = timings[oi * static_cast<std::size_t>(opts.samples) +
                                            static_cast<std::size_t>(s)];
            row.t_rde_s += t.t_rde;
            row.t_pi_s += t.t_pi;
            row.t_power_s += t.t_power;
            row.t_bisect_s += t.t_bisect;
            row.t_combined_s += t.t_combined;
        }
        const double inv = 1.0 / opts.samples;
        row.t_rde_s *= inv;
        row.t_pi_s *= inv;
        row.t_power_s *= inv;
        row.t_bisect_s *= inv;
        row.t_combined_s *= inv;
        row.ratio = row.t_pi_s > 0.0 ? row.t_rde_s / row.t_pi_s : 0.0;
        rows.push_back(row);
    }
    return rows;
}

void write_benchmark_csv(const std::string& path, const std::vector<BenchRow>& rows,
                         bool with_algorithms) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << "n_x,t_rde_s,t_pi_s,ratio";
    if (with_algorithms) {
        out << ",t_power_s,t_bisect_s,t_combined_s";
    }
    out << "\n";
    char buf[40];
    const auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    for (const BenchRow& row : rows) {
        out << row.order << "," << fmt(row.t_rde_s) << "," << fmt(row.t_pi_s) << ","
            << fmt(row.ratio);
        if (with_algorithms) {
            out << "," << fmt(row.t_power_s) << "," << fmt(row.t_bisect_s) << ","
                << fmt(row.t_combined_s);
        }
        out << "\n";
    }
}

}  // namespace ltvnorm
