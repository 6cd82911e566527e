#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltvnorm/system.hpp"

namespace ltvnorm {

struct BenchOptions {
    std::vector<int> orders = {10, 50, 100};
    int samples = 3;
    double horizon = 15.0;
    double tol = 0.05;
    int steps = 500;
    std::uint64_t seed = 1;
    int jobs = 1;
    // Also run and time the three gain algorithms per sample (slower).
    bool run_algorithms = true;
};

struct BenchRow {
    int order = 0;
    double t_rde_s = 0.0;  // mean wall time of one full RDE integration
    double t_pi_s = 0.0;   // mean wall time of one power-iteration step
    double ratio = 0.0;    // t_rde_s / t_pi_s
    double t_power_s = 0.0;
    double t_bisect_s = 0.0;
    double t_combined_s = 0.0;
};

// Random stable SISO plant of the given order: state matrix with eigenvalues
// drawn in [-2, -0.1] plus random upper-triangular coupling (the spectrum is
// the diagonal), standard-normal input/output vectors, then the running
// output is rescaled so the finite-horizon gain is about one.
LtvSystem random_stable_system(int order, double horizon, std::uint64_t seed, int steps);

std::vector<BenchRow> run_benchmark(const BenchOptions& opts);

void write_benchmark_csv(const std::string& path, const std::vector<BenchRow>& rows,
                         bool with_algorithms);

}  // namespace ltvnorm
