#pragma once

#include <optional>
#include <string>

#include "ltvnorm/gramian.hpp"
#include "ltvnorm/options.hpp"
#include "ltvnorm/signal.hpp"
#include "ltvnorm/system.hpp"

namespace ltvnorm {

// System specification document:
//
// {
//   "horizon": 10.0,
//   "dims": {"n_x": 2, "n_d": 1, "n_I": 1, "n_E": 0},
//   "matrices": {
//     "A":   {"constant": [[-0.1, 0.4], [-0.5, 0.0]]},
//     "B":   {"gridded": {"times": [0.0, 10.0], "samples": [[[2.0],[0.0]], [[2.0],[0.0]]]}},
//     "C_I": {"constant": [[0.0, 1.0]]},
//     "D_I": {"constant": [[0.0]]}
//   },
//   "solver": {"steps": 2000, "divergence_threshold": 1e9},
//   "seed": 1
// }
//
// Omitted C_I/D_I or C_E blocks mean the corresponding output channel is
// absent (zero rows). "solver" and "seed" are optional.
struct LoadedSpec {
    LtvSystem system;
    AnalysisOptions options;
};

// Parse only; semantic checks are left to validate(system) so every
// violation can be reported. Structural problems (bad JSON, wrong types,
// ragged matrices) throw std::invalid_argument with the offending path.
LoadedSpec parse_system_spec(const std::string& json_text);
LoadedSpec load_system_spec(const std::string& path);

struct AnalysisReport {
    std::string algorithm;
    double tolerance = 0.0;
    std::optional<double> gamma_lb;
    std::optional<double> gamma_ub;
    std::optional<int> iterations;
    std::optional<int> rde_solves;
    std::optional<int> power_iterations;
    double wall_time_s = 0.0;
    std::string termination;
    std::optional<std::string> disturbance_csv;
};

// Fields that do not apply are omitted rather than written as null.
std::string report_to_json(const AnalysisReport& report);

// CSV helpers. All values are written with 17 significant digits so that a
// round trip reproduces the exact doubles. One header row; comma separated.
void write_signal_csv(const std::string& path, const Signal& sig);
Signal read_signal_csv(const std::string& path);

// Rows (tau, scale * gain, v1 components) for each requested grid index.
void write_gain_profile_csv(const std::string& path, const GramianTrace& trace,
                            const std::vector<std::size_t>& indices, double scale);

}  // namespace ltvnorm
