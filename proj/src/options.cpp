#include "ltvnorm/options.hpp"

#include <algorithm>
#include <cmath>

namespace ltvnorm {

namespace {

double inf_norm(const Matrix& m) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row += std::abs(m(i, j));
        }
        worst = std::max(worst, row);
    }
    return worst;
}

}  // namespace

int default_step_count(const LtvSystem& sys) {
    double rate = 0.0;
    const int scan_points = 201;
    for (int k = 0; k < scan_points; ++k) {
        const double t = sys.horizon * static_cast<double>(k) / (scan_points - 1);
        rate = std::max(rate, inf_norm(sys.A.eval(t)));
    }
    const double wanted = std::ceil(40.0 * sys.horizon * rate);
    return std::max(2000, static_cast<int>(std::min(wanted, 1e7)));
}

std::vector<double> analysis_grid(const LtvSystem& sys, const AnalysisOptions& opts) {
    const int steps = opts.steps > 0 ? opts.steps : default_step_count(sys);
    std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k) {
        grid[static_cast<std::size_t>(k)] =
            sys.horizon * static_cast<double>(k) / static_cast<double>(steps);
    }
    grid.back() = sys.horizon;
    return grid;
}

}  // namespace ltvnorm
