#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "ltvnorm/matrix.hpp"
#include "ltvnorm/signal.hpp"
#include "ltvnorm/system.hpp"

namespace helpers {

using ltvnorm::LtvSystem;
using ltvnorm::Matrix;
using ltvnorm::TvMatrixFn;

// Two-state oscillator with a weakly damped resonance; its 10 s horizon gain
// is about 7.159.
inline LtvSystem g1_system(double horizon = 10.0) {
    const Matrix a = Matrix::from_rows({{-0.1, 0.4}, {-0.5, 0.0}});
    const Matrix b = Matrix::from_rows({{2.0}, {0.0}});
    const Matrix c_i = Matrix::from_rows({{0.0, 1.0}});
    const Matrix d_i = Matrix::from_rows({{0.0}});
    return ltvnorm::make_lti_system(a, b, c_i, d_i, Matrix(0, 2), horizon);
}

// Block diagonal pairing of g1 with a 0.95-scaled copy: same norm, but the
// two dominant gain directions are nearly tied, which slows power iteration.
inline LtvSystem g2_system(double horizon = 10.0) {
    Matrix a(4, 4);
    a(0, 0) = -0.1; a(0, 1) = 0.4; a(1, 0) = -0.5;
    a(2, 2) = -0.1; a(2, 3) = 0.4; a(3, 2) = -0.5;
    Matrix b(4, 2);
    b(0, 0) = 2.0;
    b(2, 1) = 2.0;
    Matrix c_i(2, 4);
    c_i(0, 1) = 1.0;
    c_i(1, 3) = 0.95;
    return ltvnorm::make_lti_system(a, b, c_i, Matrix(2, 2), Matrix(0, 4), horizon);
}

// Time-varying two-state plant with A11 = -1 + sin(t), sampled on a uniform
// grid fine enough that the piecewise-linear approximation is negligible.
inline LtvSystem imae_system(int grid_points = 2001, double horizon = 10.0) {
    std::vector<double> times(static_cast<std::size_t>(grid_points));
    std::vector<Matrix> samples;
    samples.reserve(times.size());
    for (int k = 0; k < grid_points; ++k) {
        const double t = horizon * static_cast<double>(k) / (grid_points - 1);
        times[static_cast<std::size_t>(k)] = t;
        samples.push_back(Matrix::from_rows({{-1.0 + std::sin(t), 1.0}, {0.0, -4.0}}));
    }
    LtvSystem sys;
    sys.A = TvMatrixFn::gridded(std::move(times), std::move(samples));
    sys.B = TvMatrixFn::constant(Matrix::identity(2));
    sys.C_I = TvMatrixFn::constant(Matrix::identity(2));
    sys.D_I = TvMatrixFn::constant(Matrix(2, 2));
    sys.C_E = TvMatrixFn::constant(Matrix(0, 2));
    sys.horizon = horizon;
    sys.state_dim = 2;
    sys.input_dim = 2;
    sys.l2_dim = 2;
    sys.terminal_dim = 0;
    return sys;
}

// x' = -x + d with terminal output x on [0, 1]; the horizon-1 gain is
// sqrt((1 - e^-2) / 2) with worst-case input proportional to e^{-(1-t)}.
inline LtvSystem scalar_l2e_system() {
    return ltvnorm::make_lti_system(Matrix::from_rows({{-1.0}}), Matrix::from_rows({{1.0}}),
                                    Matrix(0, 1), Matrix(0, 1),
                                    Matrix::from_rows({{1.0}}), 1.0);
}

// Pure feedthrough e_I = 3 d; the gain is exactly 3.
inline LtvSystem memoryless_system(double horizon = 2.0) {
    return ltvnorm::make_lti_system(Matrix(1, 1), Matrix(1, 1), Matrix(1, 1),
                                    Matrix::from_rows({{3.0}}), Matrix(0, 1), horizon);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : rng_(seed) {}
    double normal() {
        const double u1 = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
        const double u2 = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    double uniform(double lo, double hi) {
        const double u = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }
    std::uint64_t integer(std::uint64_t n) { return rng_() % n; }

private:
    std::mt19937_64 rng_;
};

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double scale) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = scale * rng.normal();
        }
    }
    return m;
}

struct RandomLtvConfig {
    std::size_t state_dim = 3;
    std::size_t input_dim = 2;
    std::size_t l2_dim = 1;
    std::size_t terminal_dim = 1;
    double horizon = 4.0;
    int segments = 5;  // coefficient grid intervals; keep it a divisor of the steps
    bool zero_feedthrough = false;
};

// Gridded LTV plant with bounded random coefficients. The coefficient grid is
// uniform so it can be aligned with the analysis grid (kinks never fall
// inside an integrator step when segments divides the step count).
inline LtvSystem random_ltv_system(std::uint64_t seed, const RandomLtvConfig& cfg) {
    Rng rng(seed);
    const int points = cfg.segments + 1;
    std::vector<double> times(static_cast<std::size_t>(points));
    std::vector<Matrix> a_s, b_s, ci_s, di_s, ce_s;
    for (int k = 0; k < points; ++k) {
        times[static_cast<std::size_t>(k)] =
            cfg.horizon * static_cast<double>(k) / cfg.segments;
        Matrix a = random_matrix(rng, cfg.state_dim, cfg.state_dim, 0.4);
        for (std::size_t i = 0; i < cfg.state_dim; ++i) {
            a(i, i) -= rng.uniform(0.4, 1.0);
        }
        a_s.push_back(std::move(a));
        b_s.push_back(random_matrix(rng, cfg.state_dim, cfg.input_dim, 0.8));
        ci_s.push_back(random_matrix(rng, cfg.l2_dim, cfg.state_dim, 0.8));
        di_s.push_back(cfg.zero_feedthrough
                           ? Matrix(cfg.l2_dim, cfg.input_dim)
                           : random_matrix(rng, cfg.l2_dim, cfg.input_dim, 0.3));
        ce_s.push_back(random_matrix(rng, cfg.terminal_dim, cfg.state_dim, 0.8));
    }
    LtvSystem sys;
    sys.A = TvMatrixFn::gridded(times, a_s);
    sys.B = TvMatrixFn::gridded(times, b_s);
    sys.C_I = TvMatrixFn::gridded(times, ci_s);
    sys.D_I = TvMatrixFn::gridded(times, di_s);
    sys.C_E = TvMatrixFn::gridded(times, ce_s);
    sys.horizon = cfg.horizon;
    sys.state_dim = cfg.state_dim;
    sys.input_dim = cfg.input_dim;
    sys.l2_dim = cfg.l2_dim;
    sys.terminal_dim = cfg.terminal_dim;
    return sys;
}

// Smooth random signal: normal samples on a coarse uniform grid, linearly
// interpolated onto the target grid, then normalized.
inline ltvnorm::Signal random_smooth_signal(std::span<const double> grid, std::size_t dim,
                                            std::uint64_t seed, int knots = 41) {
    Rng rng(seed);
    ltvnorm::Signal coarse;
    coarse.dim = dim;
    const double t0 = grid.front();
    const double t1 = grid.back();
    for (int k = 0; k < knots; ++k) {
        coarse.times.push_back(t0 + (t1 - t0) * static_cast<double>(k) / (knots - 1));
        std::vector<double> sample(dim);
        for (double& v : sample) {
            v = rng.normal();
        }
        coarse.samples.push_back(std::move(sample));
    }
    return ltvnorm::normalize(ltvnorm::resample(coarse, grid));
}

}  // namespace helpers
