#include "ltvnorm/ode.hpp"

#include <cmath>
#include <stdexcept>

namespace ltvnorm {

namespace {

bool state_ok(const std::vector<double>& x, double threshold) {
    for (double v : x) {
        if (!std::isfinite(v) || std::abs(v) > threshold) {
            return false;
        }
    }
    return true;
}

bool all_finite(const std::vector<double>& x) {
    for (double v : x) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

void check_grid(std::span<const double> grid) {
    if (grid.size() < 2) {
        throw std::invalid_argument("integration grid needs at least two points");
    }
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        if (!(grid[k] < grid[k + 1])) {
            throw std::invalid_argument("integration grid must be strictly increasing");
        }
    }
}

}  // namespace

OdeTrace rk4_integrate(const VectorRhs& rhs, const std::vector<double>& x0,
                       std::span<const double> grid, Direction direction,
                       double divergence_threshold) {
    check_grid(grid);
    if (!all_finite(x0)) {
        throw std::invalid_argument("initial state is not finite");
    }

    const std::size_t n_points = grid.size();
    const std::size_t dim = x0.size();
    OdeTrace trace;
    trace.times.reserve(n_points);
    trace.states.reserve(n_points);

    const bool fwd = direction == Direction::forward;
    std::vector<double> x = x0;
    trace.times.push_back(fwd ? grid.front() : grid.back());
    trace.states.push_back(x);

    std::vector<double> stage(dim), xnext(dim);
    for (std::size_t step = 0; step + 1 < n_points; ++step) {
        const double t0 = fwd ? grid[step] : grid[n_points - 1 - step];
        const double t1 = fwd ? grid[step + 1] : grid[n_points - 2 - step];
        const double h = t1 - t0;

        const std::vector<double> k1 = rhs(t0, x);
        if (step == 0 && !all_finite(k1)) {
            throw std::runtime_error("non-finite derivative at the initial point");
        }
        for (std::size_t i = 0; i < dim; ++i) {
            stage[i] = x[i] + 0.5 * h * k1[i];
        }
        const std::vector<double> k2 = rhs(t0 + 0.5 * h, stage);
        for (std::size_t i = 0; i < dim; ++i) {
            stage[i] = x[i] + 0.5 * h * k2[i];
        }
        const std::vector<double> k3 = rhs(t0 + 0.5 * h, stage);
        for (std::size_t i = 0; i < dim; ++i) {
            stage[i] = x[i] + h * k3[i];
        }
        const std::vector<double> k4 = rhs(t1, stage);

        for (std::size_t i = 0; i < dim; ++i) {
            xnext[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if (!state_ok(xnext, divergence_threshold)) {
            trace.diverged = true;
            trace.t_star = t1;
            return trace;
        }
        x = xnext;
        trace.times.push_back(t1);
        trace.states.push_back(x);
    }
    return trace;
}

std::vector<double> pack_symmetric(const Matrix& m) {
    const std::size_t n = m.rows();
    std::vector<double> packed;
    packed.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            packed.push_back(m(i, j));
        }
    }
    return packed;
}

Matrix unpack_symmetric(const std::vector<double>& packed, std::size_t n) {
    Matrix m(n, n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            m(i, j) = packed[k];
            m(j, i) = packed[k];
            ++k;
        }
    }
    return m;
}

OdeTrace integrate_matrix(const MatrixRhs& rhs, const Matrix& value_at_start,
                          std::span<const double> grid, Direction direction,
                          double divergence_threshold) {
    if (value_at_start.rows() != value_at_start.cols()) {
        throw std::invalid_argument("integrate_matrix requires a square matrix");
    }
    const std::size_t n = value_at_start.rows();
    const double scale = std::max(value_at_start.max_abs(), 1e-300);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(value_at_start(i, j) - value_at_start(j, i)) > 1e-10 * scale) {
                throw std::invalid_argument("integrate_matrix requires a symmetric start value");
            }
        }
    }

    auto packed_rhs = [&rhs, n](double t, const std::vector<double>& packed) {
        const Matrix p = unpack_symmetric(packed, n);
        const Matrix dp = rhs(t, p);
        std::vector<double> out;
        out.reserve(packed.size());
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                out.push_back(0.5 * (dp(i, j) + dp(j, i)));
            }
        }
        return out;
    };
    return rk4_integrate(packed_rhs, pack_symmetric(value_at_start), grid, direction,
                         divergence_threshold);
}

}  // namespace ltvnorm
