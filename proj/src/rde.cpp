#include "ltvnorm/rde.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "ltvnorm/errors.hpp"
#include "ltvnorm/linalg.hpp"
#include "ltvnorm/power_iteration.hpp"

namespace ltvnorm {

namespace {

double lambda_max(const Matrix& sym) {
    if (sym.empty()) {
        return -std::numeric_limits<double>::infinity();
    }
    return sym_eig(sym).eigenvalues.front();
}

}  // namespace

Matrix RdeCoefficients::Q(double t) const {
    const Matrix ci = c_i.eval(t);
    return ci.transpose() * ci;
}

Matrix RdeCoefficients::S(double t) const {
    return c_i.eval(t).transpose() * d_i.eval(t);
}

Matrix RdeCoefficients::R(double t) const {
    const Matrix di = d_i.eval(t);
    Matrix r = di.transpose() * di;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        r(i, i) -= gamma * gamma;
    }
    return r;
}

RdeCoefficients rde_coefficients(const LtvSystem& sys, double gamma,
                                 std::span<const double> grid) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("rde_coefficients: gamma must be positive");
    }
    RdeCoefficients coeffs;
    coeffs.gamma = gamma;
    coeffs.c_i = sys.C_I;
    coeffs.d_i = sys.D_I;
    const Matrix ce_T = sys.C_E.eval(sys.horizon);
    coeffs.terminal_cost = ce_T.transpose() * ce_T;
    if (coeffs.terminal_cost.rows() == 0) {
        coeffs.terminal_cost = Matrix(sys.state_dim, sys.state_dim);
    }

    coeffs.feasible = true;
    if (sys.input_dim > 0) {
        for (double t : grid) {
            if (lambda_max(coeffs.R(t)) >= 0.0) {
                coeffs.feasible = false;
                coeffs.first_infeasible_time = t;
                break;
            }
        }
    }
    return coeffs;
}

Matrix RdeSolution::value_at(std::size_t trace_index) const {
    return unpack_symmetric(trace.states.at(trace_index), state_dim);
}

std::optional<std::size_t> RdeSolution::index_of_time(double t) const {
    const double slack = 1e-9 * std::max(std::abs(t), 1.0);
    for (std::size_t k = 0; k < trace.times.size(); ++k) {
        if (std::abs(trace.times[k] - t) <= slack) {
            return k;
        }
    }
    return std::nullopt;
}

RdeSolution solve_rde(const LtvSystem& sys, double gamma, std::span<const double> grid,
                      double divergence_threshold) {
    const RdeCoefficients coeffs = rde_coefficients(sys, gamma, grid);
    if (!coeffs.feasible) {
        throw std::runtime_error(
            "solve_rde: R(t) is not negative definite at t = " +
            std::to_string(coeffs.first_infeasible_time.value()) +
            "; no certificate exists at gamma = " + std::to_string(gamma));
    }

    const double stage_floor = 1e-12 * std::max(1.0, gamma * gamma);
    const auto rhs = [&sys, &coeffs, stage_floor](double t, const Matrix& p) {
        const Matrix a = sys.A.eval(t);
        const Matrix atp = a.transpose() * p;
        Matrix dp = atp + atp.transpose() + coeffs.Q(t);
        if (sys.input_dim > 0) {
            const Matrix w = p * sys.B.eval(t) + coeffs.S(t);
            const Matrix r = coeffs.R(t);
            if (lambda_max(r) >= -stage_floor) {
                throw std::runtime_error(
                    "solve_rde: R(t) lost negative definiteness between grid points");
            }
            dp -= w * solve(r, w.transpose());
        }
        dp *= -1.0;
        return dp;
    };

    RdeSolution sol;
    sol.gamma = gamma;
    sol.state_dim = sys.state_dim;
    sol.trace = integrate_matrix(rhs, coeffs.F(), grid, Direction::backward,
                                 divergence_threshold);
    sol.exists = !sol.trace.diverged;
    sol.t_star = sol.trace.t_star;
    return sol;
}

std::pair<double, double> initial_bounds(const LtvSystem& sys, std::span<const double> grid,
                                         double divergence_threshold, int* rde_solves) {
    double lb = 0.0;
    if (sys.l2_dim > 0 && sys.input_dim > 0) {
        for (double t : grid) {
            lb = std::max(lb, max_singular_value(sys.D_I.eval(t)));
        }
    }

    double candidate = std::max(2.0 * lb, 1.0);
    const double cap = std::ldexp(1.0, 60);
    while (candidate <= cap) {
        const RdeSolution sol = solve_rde(sys, candidate, grid, divergence_threshold);
        if (rde_solves != nullptr) {
            ++*rde_solves;
        }
        if (sol.exists) {
            return {lb, candidate};
        }
        candidate *= 2.0;
    }
    throw UnboundedGainError(
        "initial_bounds: no certificate found below the search cap; "
        "the gain appears unbounded");
}

GainBounds bisect(const LtvSystem& sys, double tol, const AnalysisOptions& opts,
                  std::optional<std::pair<double, double>> fixed_bounds) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("bisect: tolerance must be positive");
    }
    const auto start = std::chrono::steady_clock::now();
    const std::vector<double> grid = analysis_grid(sys, opts);

    GainBounds bounds;
    if (fixed_bounds.has_value()) {
        bounds.gamma_lb = fixed_bounds->first;
        bounds.gamma_ub = fixed_bounds->second;
        if (!(bounds.gamma_lb < bounds.gamma_ub)) {
            throw std::invalid_argument("bisect: fixed bounds must satisfy lb < ub");
        }
    } else {
        std::tie(bounds.gamma_lb, bounds.gamma_ub) =
            initial_bounds(sys, grid, opts.divergence_threshold, &bounds.rde_solves);
    }

    std::optional<RdeSolution> last_incomplete;
    while (bounds.gamma_ub - bounds.gamma_lb > tol) {
        const double gamma_try = 0.5 * (bounds.gamma_ub + bounds.gamma_lb);
        ++bounds.bisections;
        const RdeCoefficients coeffs = rde_coefficients(sys, gamma_try, grid);
        if (!coeffs.feasible) {
            // R(t) < 0 fails, so no certificate at gamma_try: lower-bound step.
            bounds.gamma_lb = gamma_try;
            continue;
        }
        RdeSolution sol = solve_rde(sys, gamma_try, grid, opts.divergence_threshold);
        ++bounds.rde_solves;
        if (sol.exists) {
            bounds.gamma_ub = gamma_try;
        } else {
            bounds.gamma_lb = gamma_try;
            last_incomplete = std::move(sol);
        }
    }

    if (last_incomplete.has_value()) {
        try {
            bounds.d_lb = disturbance_from_incomplete_rde(sys, *last_incomplete, grid, tol,
                                                          opts.divergence_threshold);
        } catch (const ConstructionFailedError&) {
            // Bounds stand on their own; only the witness signal is omitted.
        }
    }
    bounds.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return bounds;
}

Signal disturbance_from_incomplete_rde(const LtvSystem& sys, const RdeSolution& sol,
                                       std::span<const double> grid, double tol,
                                       double divergence_threshold) {
    if (sol.exists) {
        throw std::invalid_argument(
            "disturbance_from_incomplete_rde: solution exists on the full horizon");
    }
    if (!sol.t_star.has_value()) {
        throw std::invalid_argument("disturbance_from_incomplete_rde: missing blow-up time");
    }
    if (sys.input_dim == 0) {
        throw std::invalid_argument("disturbance_from_incomplete_rde: system has no input");
    }

    const RdeCoefficients coeffs = rde_coefficients(sys, sol.gamma, grid);
    const std::size_t n_points = grid.size();
    const double target = sol.gamma - 10.0 * tol;
    double best_gain = 0.0;

    // The backward trace stores grid[n-1], grid[n-2], ...; grid index k maps
    // to trace index n-1-k wherever the solution survived.
    const std::size_t stored = sol.trace.times.size();
    const std::size_t first_valid = n_points - stored;

    for (std::size_t shift = 3; shift < n_points; shift *= 2) {
        const std::size_t idx0 = first_valid + shift - 1;
        if (idx0 + 2 >= n_points) {
            break;
        }

        // Worst-case feedback gain K(t) = R^{-1} (P B + S)^T at grid points,
        // linearly interpolated for integrator stage times.
        std::vector<double> k_times;
        std::vector<Matrix> k_samples;
        k_times.reserve(n_points - idx0);
        k_samples.reserve(n_points - idx0);
        for (std::size_t k = idx0; k < n_points; ++k) {
            const double t = grid[k];
            const Matrix p = sol.value_at(n_points - 1 - k);
            const Matrix w = p * sys.B.eval(t) + coeffs.S(t);
            k_times.push_back(t);
            k_samples.push_back(solve(coeffs.R(t), w.transpose()));
        }
        const TvMatrixFn gain_fn = TvMatrixFn::gridded(std::move(k_times), std::move(k_samples));

        const auto closed_loop = [&sys, &gain_fn](double t, const std::vector<double>& x) {
            const Matrix gain = gain_fn.eval(t);
            std::vector<double> dx = sys.A.eval(t) * x;
            const std::vector<double> d = gain * x;  // actual disturbance is -d
            const std::vector<double> bd = sys.B.eval(t) * d;
            for (std::size_t i = 0; i < dx.size(); ++i) {
                dx[i] -= bd[i];
            }
            return dx;
        };

        // The loop matrix is huge near the blow-up; split each grid interval
        // into enough substeps to keep the explicit integration stable.
        const Matrix p0 = sol.value_at(n_points - 1 - idx0);
        const SymEig eig = sym_eig(p0);
        std::vector<double> x(sys.state_dim);
        for (std::size_t i = 0; i < sys.state_dim; ++i) {
            x[i] = eig.eigenvectors(i, 0);
        }

        Signal d_lb = zero_signal(grid, sys.input_dim);
        {
            const Matrix g0 = gain_fn.eval(grid[idx0]);
            const std::vector<double> d0 = g0 * x;
            for (std::size_t i = 0; i < sys.input_dim; ++i) {
                d_lb.samples[idx0][i] = -d0[i];
            }
        }

        bool overflowed = false;
        for (std::size_t k = idx0; k + 1 < n_points && !overflowed; ++k) {
            const double t0 = grid[k];
            const double t1 = grid[k + 1];
            double rate = 0.0;
            {
                const Matrix gain = gain_fn.eval(t0);
                const Matrix a_cl = sys.A.eval(t0) - sys.B.eval(t0) * gain;
                for (std::size_t i = 0; i < a_cl.rows(); ++i) {
                    double row = 0.0;
                    for (std::size_t j = 0; j < a_cl.cols(); ++j) {
                        row += std::abs(a_cl(i, j));
                    }
                    rate = std::max(rate, row);
                }
            }
            const int substeps = static_cast<int>(
                std::clamp(std::ceil(4.0 * (t1 - t0) * rate), 1.0, 4096.0));
            const double h = (t1 - t0) / substeps;
            std::vector<double> stage(x.size());
            for (int s = 0; s < substeps; ++s) {
                const double ts = t0 + s * h;
                const std::vector<double> k1 = closed_loop(ts, x);
                for (std::size_t i = 0; i < x.size(); ++i) stage[i] = x[i] + 0.5 * h * k1[i];
                const std::vector<double> k2 = closed_loop(ts + 0.5 * h, stage);
                for (std::size_t i = 0; i < x.size(); ++i) stage[i] = x[i] + 0.5 * h * k2[i];
                const std::vector<double> k3 = closed_loop(ts + 0.5 * h, stage);
                for (std::size_t i = 0; i < x.size(); ++i) stage[i] = x[i] + h * k3[i];
                const std::vector<double> k4 = closed_loop(ts + h, stage);
                for (std::size_t i = 0; i < x.size(); ++i) {
                    x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
                }
            }
            for (double v : x) {
                if (!std::isfinite(v) || std::abs(v) > 1e100) {
                    overflowed = true;
                }
            }
            if (overflowed) {
                break;
            }
            const Matrix gain = gain_fn.eval(t1);
            const std::vector<double> d = gain * x;
            for (std::size_t i = 0; i < sys.input_dim; ++i) {
                d_lb.samples[k + 1][i] = -d[i];
            }
        }
        if (overflowed) {
            continue;  // back further off the blow-up and retry
        }

        Signal candidate;
        try {
            candidate = normalize(d_lb);
        } catch (const std::domain_error&) {
            continue;
        }
        const double achieved =
            forward_gain(sys, candidate, divergence_threshold).gamma_f;
        best_gain = std::max(best_gain, achieved);
        if (achieved >= target) {
            return candidate;
        }
    }

    throw ConstructionFailedError(
        "disturbance_from_incomplete_rde: constructed signal reached " +
            std::to_string(best_gain) + " but needed " + std::to_string(target),
        best_gain);
}

}  // namespace ltvnorm
