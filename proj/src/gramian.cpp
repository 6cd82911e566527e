#include "ltvnorm/gramian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ltvnorm/linalg.hpp"
#include "ltvnorm/ode.hpp"

namespace ltvnorm {

GramianTrace solve_lde(const LtvSystem& sys, std::span<const double> grid) {
    if (sys.terminal_dim == 0) {
        throw std::invalid_argument("solve_lde: system has no terminal output channel");
    }
    const auto rhs = [&sys](double t, const Matrix& x) {
        const Matrix ax = sys.A.eval(t) * x;
        const Matrix b = sys.B.eval(t);
        return ax + ax.transpose() + b * b.transpose();
    };
    // The equation is linear with bounded coefficients, so it cannot blow up
    // on a finite horizon; the threshold only catches broken inputs.
    const OdeTrace trace = integrate_matrix(rhs, Matrix(sys.state_dim, sys.state_dim), grid,
                                            Direction::forward, 1e300);
    if (trace.diverged) {
        throw std::runtime_error("solve_lde: integration diverged");
    }

    GramianTrace out;
    out.times.assign(grid.begin(), grid.end());
    out.l2_dim = sys.l2_dim;
    out.state_gramians.reserve(grid.size());
    out.output_gramians.reserve(grid.size());
    out.lambda1.reserve(grid.size());
    out.v1.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        Matrix x = unpack_symmetric(trace.states[k], sys.state_dim);
        const Matrix ce = sys.C_E.eval(grid[k]);
        Matrix y = ce * x * ce.transpose();
        // Roundoff in the triple product must not break symmetry.
        for (std::size_t i = 0; i < y.rows(); ++i) {
            for (std::size_t j = i + 1; j < y.cols(); ++j) {
                const double avg = 0.5 * (y(i, j) + y(j, i));
                y(i, j) = avg;
                y(j, i) = avg;
            }
        }
        const SymEig eig = sym_eig(y);
        out.lambda1.push_back(eig.eigenvalues.front());
        std::vector<double> vec(sys.terminal_dim);
        for (std::size_t i = 0; i < sys.terminal_dim; ++i) {
            vec[i] = eig.eigenvectors(i, 0);
        }
        out.v1.push_back(std::move(vec));
        out.state_gramians.push_back(std::move(x));
        out.output_gramians.push_back(std::move(y));
    }
    return out;
}

namespace {

std::size_t nearest_index(const std::vector<double>& times, double tau) {
    const auto it = std::lower_bound(times.begin(), times.end(), tau);
    if (it == times.begin()) {
        return 0;
    }
    if (it == times.end()) {
        return times.size() - 1;
    }
    const std::size_t hi = static_cast<std::size_t>(it - times.begin());
    return (tau - times[hi - 1] <= times[hi] - tau) ? hi - 1 : hi;
}

}  // namespace

L2eGain l2e_gain(const GramianTrace& trace, double tau) {
    if (trace.l2_dim != 0) {
        throw std::invalid_argument(
            "l2e_gain: the closed-form gain requires a system with no running "
            "output channel (n_I = 0)");
    }
    if (trace.times.empty()) {
        throw std::invalid_argument("l2e_gain: empty trace");
    }
    L2eGain out;
    out.grid_index = nearest_index(trace.times, tau);
    out.tau = trace.times[out.grid_index];
    out.gain = std::sqrt(std::max(0.0, trace.lambda1[out.grid_index]));
    out.v1 = trace.v1[out.grid_index];
    return out;
}

Signal wc_disturbance_l2e(const LtvSystem& sys, const GramianTrace& trace, double tau) {
    const std::size_t idx = nearest_index(trace.times, tau);
    const double tau_snap = trace.times[idx];
    const double lam = trace.lambda1[idx];
    if (!(lam > 1e-12)) {
        throw std::runtime_error(
            "wc_disturbance_l2e: terminal output is unreachable at this horizon "
            "(largest Gramian eigenvalue is zero)");
    }
    if (idx == 0) {
        throw std::runtime_error("wc_disturbance_l2e: horizon must be positive");
    }

    const std::vector<double> w = trace.v1[idx];
    std::vector<double> p_tau = sys.C_E.eval(tau_snap).transpose() * w;
    const double inv_sqrt = 1.0 / std::sqrt(lam);
    for (double& v : p_tau) {
        v *= inv_sqrt;
    }

    const std::span<const double> sub(trace.times.data(), idx + 1);
    const auto rhs = [&sys](double t, const std::vector<double>& p) {
        std::vector<double> dp = sys.A.eval(t).transpose() * p;
        for (double& v : dp) {
            v = -v;
        }
        return dp;
    };
    const OdeTrace adj = rk4_integrate(rhs, p_tau, sub, Direction::backward, 1e300);
    if (adj.diverged) {
        throw std::runtime_error("wc_disturbance_l2e: adjoint integration diverged");
    }

    Signal d = zero_signal(trace.times, sys.input_dim);
    for (std::size_t k = 0; k <= idx; ++k) {
        // adjoint trace runs from tau down to 0
        d.samples[k] = sys.B.eval(trace.times[k]).transpose() * adj.states[idx - k];
    }
    return d;
}

}  // namespace ltvnorm
