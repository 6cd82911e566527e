#include "ltvnorm/power_iteration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ltvnorm/errors.hpp"
#include "ltvnorm/ode.hpp"

namespace ltvnorm {

namespace {

std::vector<double> add(std::vector<double> a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] += b[i];
    }
    return a;
}

}  // namespace

ForwardResult forward_gain(const LtvSystem& sys, const Signal& d,
                           double divergence_threshold) {
    if (d.dim != sys.input_dim) {
        throw std::invalid_argument("forward_gain: disturbance dimension mismatch");
    }
    const auto rhs = [&sys, &d](double t, const std::vector<double>& x) {
        return add(sys.A.eval(t) * x, sys.B.eval(t) * sample_at(d, t));
    };
    std::vector<double> x0(sys.state_dim, 0.0);
    const OdeTrace trace =
        rk4_integrate(rhs, x0, d.times, Direction::forward, divergence_threshold);
    if (trace.diverged) {
        throw std::runtime_error("forward simulation diverged; check system coefficients");
    }

    ForwardResult result;
    result.e_I = zero_signal(d.times, sys.l2_dim);
    for (std::size_t k = 0; k < d.times.size(); ++k) {
        const double t = d.times[k];
        result.e_I.samples[k] =
            add(sys.C_I.eval(t) * trace.states[k], sys.D_I.eval(t) * d.samples[k]);
    }
    result.e_E_T = sys.C_E.eval(sys.horizon) * trace.states.back();

    double terminal_sq = 0.0;
    for (double v : result.e_E_T) {
        terminal_sq += v * v;
    }
    const double running = l2_norm(result.e_I);
    result.gamma_f = std::sqrt(terminal_sq + running * running);
    return result;
}

Signal adjoint_output(const LtvSystem& sys, const std::vector<double>& terminal_weight,
                      const Signal& q, double divergence_threshold) {
    if (terminal_weight.size() != sys.terminal_dim) {
        throw std::invalid_argument("adjoint_output: terminal weight dimension mismatch");
    }
    if (q.dim != sys.l2_dim) {
        throw std::invalid_argument("adjoint_output: running input dimension mismatch");
    }
    const AdjointSystem adj = adjoint(sys);
    const auto rhs = [&adj, &q](double t, const std::vector<double>& p) {
        return add(adj.state_matrix.eval(t) * p, adj.input_matrix.eval(t) * sample_at(q, t));
    };
    const std::vector<double> p_T = adj.terminal_map * terminal_weight;
    const OdeTrace trace =
        rk4_integrate(rhs, p_T, q.times, Direction::backward, divergence_threshold);
    if (trace.diverged) {
        throw std::runtime_error("adjoint simulation diverged; check system coefficients");
    }

    Signal r = zero_signal(q.times, sys.input_dim);
    const std::size_t last = q.times.size() - 1;
    for (std::size_t k = 0; k < q.times.size(); ++k) {
        // trace runs from T down to 0; flip back into forward grid order
        const double t = q.times[k];
        const std::vector<double>& p = trace.states[last - k];
        r.samples[k] = add(adj.output_matrix.eval(t) * p,
                           adj.feedthrough.eval(t) * q.samples[k]);
    }
    return r;
}

PowerIterResult power_iterate(const LtvSystem& sys, const Signal& d1, int max_iters,
                              double tol, double divergence_threshold) {
    PowerIterResult result;
    Signal d = normalize(d1);

    double gamma_prev = -std::numeric_limits<double>::infinity();
    for (int iter = 1; iter <= max_iters; ++iter) {
        const ForwardResult fwd = forward_gain(sys, d, divergence_threshold);
        const Signal r = adjoint_output(sys, fwd.e_E_T, fwd.e_I, divergence_threshold);
        const double gamma = l2_norm(r);
        if (gamma <= 1e-150) {
            throw DegenerateDirectionError(
                "adjoint output is zero: the system maps this disturbance to nothing; "
                "re-seed the iteration with a different initial disturbance");
        }

        result.history.emplace_back(fwd.gamma_f, gamma);
        result.iterations = iter;
        result.gamma_star = fwd.gamma_f;
        Signal d_next = r;
        const double inv = 1.0 / gamma;
        for (auto& sample : d_next.samples) {
            for (double& v : sample) {
                v *= inv;
            }
        }
        result.d_star = d_next;

        // Exact arithmetic guarantees a nondecreasing gamma sequence; a drop
        // beyond this slack indicates integration error, so stop and report.
        if (gamma < gamma_prev - std::max(1e-8, 1e-6 * gamma_prev)) {
            result.termination = PowerIterTermination::nonmonotone_detected;
            return result;
        }
        if (gamma - gamma_prev < tol) {
            result.termination = PowerIterTermination::tolerance_met;
            return result;
        }
        gamma_prev = gamma;
        d = std::move(d_next);
    }
    result.termination = PowerIterTermination::max_iters;
    return result;
}

}  // namespace ltvnorm
