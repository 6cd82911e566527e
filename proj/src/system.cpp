#include "ltvnorm/system.hpp"

#include <cmath>
#include <stdexcept>

namespace ltvnorm {

namespace {

void check_source(std::vector<std::string>& issues, const TvMatrixFn& fn, const char* name,
                  std::size_t want_rows, std::size_t want_cols, double horizon) {
    for (const std::string& msg : fn.check()) {
        issues.push_back(std::string("matrices.") + name + ": " + msg);
    }
    if (fn.samples().empty()) {
        return;
    }
    if (fn.rows() != want_rows || fn.cols() != want_cols) {
        issues.push_back(std::string("matrices.") + name + ": expected " +
                         std::to_string(want_rows) + "x" + std::to_string(want_cols) +
                         ", got " + std::to_string(fn.rows()) + "x" +
                         std::to_string(fn.cols()));
    }
    if (!fn.is_constant() && !fn.covers(0.0, horizon)) {
        issues.push_back(std::string("matrices.") + name +
                         ": grid does not cover the horizon [0, " +
                         std::to_string(horizon) + "]");
    }
}

}  // namespace

LtvSystem make_lti_system(const Matrix& a, const Matrix& b, const Matrix& c_i,
                          const Matrix& d_i, const Matrix& c_e, double horizon) {
    LtvSystem sys;
    sys.A = TvMatrixFn::constant(a);
    sys.B = TvMatrixFn::constant(b);
    sys.C_I = TvMatrixFn::constant(c_i);
    sys.D_I = TvMatrixFn::constant(d_i);
    sys.C_E = TvMatrixFn::constant(c_e);
    sys.horizon = horizon;
    sys.state_dim = a.rows();
    sys.input_dim = b.cols();
    sys.l2_dim = c_i.rows();
    sys.terminal_dim = c_e.rows();
    const auto issues = validate(sys);
    if (!issues.empty()) {
        throw std::invalid_argument("invalid system: " + issues.front());
    }
    return sys;
}

SystemMatrices eval(const LtvSystem& sys, double t) {
    const double slack = 1e-9 * std::max(sys.horizon, 1.0);
    if (t < -slack || t > sys.horizon + slack) {
        throw std::domain_error("evaluation time outside [0, horizon]");
    }
    return SystemMatrices{sys.A.eval(t), sys.B.eval(t), sys.C_I.eval(t), sys.D_I.eval(t),
                          sys.C_E.eval(t)};
}

std::vector<std::string> validate(const LtvSystem& sys) {
    std::vector<std::string> issues;
    if (!(sys.horizon > 0.0) || !std::isfinite(sys.horizon)) {
        issues.push_back("horizon: must be finite and positive");
    }
    if (sys.l2_dim + sys.terminal_dim == 0) {
        issues.push_back("dims: at least one output channel required (n_I + n_E >= 1)");
    }
    check_source(issues, sys.A, "A", sys.state_dim, sys.state_dim, sys.horizon);
    check_source(issues, sys.B, "B", sys.state_dim, sys.input_dim, sys.horizon);
    check_source(issues, sys.C_I, "C_I", sys.l2_dim, sys.state_dim, sys.horizon);
    check_source(issues, sys.D_I, "D_I", sys.l2_dim, sys.input_dim, sys.horizon);
    check_source(issues, sys.C_E, "C_E", sys.terminal_dim, sys.state_dim, sys.horizon);
    return issues;
}

AdjointSystem adjoint(const LtvSystem& sys) {
    AdjointSystem adj;
    adj.state_matrix = sys.A.negated_transposed();
    adj.input_matrix = sys.C_I.negated_transposed();
    adj.output_matrix = sys.B.transposed();
    adj.feedthrough = sys.D_I.transposed();
    adj.terminal_map = sys.C_E.eval(sys.horizon).transpose();
    adj.horizon = sys.horizon;
    adj.state_dim = sys.state_dim;
    adj.input_dim = sys.l2_dim;
    adj.output_dim = sys.input_dim;
    return adj;
}

}  // namespace ltvnorm
