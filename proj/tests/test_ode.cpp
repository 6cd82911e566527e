#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "helpers.hpp"
#include "ltvnorm/ode.hpp"

using ltvnorm::Direction;
using ltvnorm::Matrix;
using ltvnorm::OdeTrace;

namespace {

std::vector<double> uniform_grid(double t0, double t1, int points) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        grid[static_cast<std::size_t>(k)] = t0 + (t1 - t0) * k / (points - 1);
    }
    return grid;
}

}  // namespace

TEST_CASE("constant solution stays put") {
    const auto rhs = [](double, const std::vector<double>& x) {
        return std::vector<double>(x.size(), 0.0);
    };
    const OdeTrace trace =
        ltvnorm::rk4_integrate(rhs, {3.0}, uniform_grid(0.0, 2.0, 9), Direction::forward, 1e9);
    CHECK(!trace.diverged);
    for (const auto& s : trace.states) {
        CHECK(s[0] == 3.0);
    }
}

TEST_CASE("exponential decay hits e^-1 to RK4 accuracy") {
    const auto rhs = [](double, const std::vector<double>& x) {
        return std::vector<double>{-x[0]};
    };
    const OdeTrace trace =
        ltvnorm::rk4_integrate(rhs, {1.0}, uniform_grid(0.0, 1.0, 101), Direction::forward, 1e9);
    CHECK(std::abs(trace.states.back()[0] - std::exp(-1.0)) <= 1e-9);
}

TEST_CASE("quadratic blow-up is detected near t = 1") {
    const auto rhs = [](double, const std::vector<double>& x) {
        return std::vector<double>{x[0] * x[0]};
    };
    const OdeTrace trace = ltvnorm::rk4_integrate(rhs, {1.0}, uniform_grid(0.0, 2.0, 2001),
                                                  Direction::forward, 1e9);
    REQUIRE(trace.diverged);
    REQUIRE(trace.t_star.has_value());
    CHECK(std::abs(*trace.t_star - 1.0) <= 0.01);  // analytic pole of 1/(1-t)
    for (const auto& s : trace.states) {
        CHECK(std::isfinite(s[0]));
        CHECK(std::abs(s[0]) <= 1e9);
    }
    CHECK(trace.states.size() == trace.times.size());
}

TEST_CASE("non-finite derivative at the initial point is an error, not divergence") {
    const auto rhs = [](double, const std::vector<double>&) {
        return std::vector<double>{std::numeric_limits<double>::quiet_NaN()};
    };
    CHECK_THROWS_AS(ltvnorm::rk4_integrate(rhs, {1.0}, uniform_grid(0.0, 1.0, 11),
                                           Direction::forward, 1e9),
                    std::runtime_error);
}

TEST_CASE("order-4 convergence on exponential decay") {
    const auto rhs = [](double, const std::vector<double>& x) {
        return std::vector<double>{-x[0]};
    };
    double prev_err = 0.0;
    for (int points : {11, 21, 41}) {  // h = 0.1, 0.05, 0.025
        const OdeTrace trace = ltvnorm::rk4_integrate(rhs, {1.0}, uniform_grid(0.0, 1.0, points),
                                                      Direction::forward, 1e9);
        const double err = std::abs(trace.states.back()[0] - std::exp(-1.0));
        if (prev_err > 0.0) {
            CHECK(err <= prev_err / 8.0);  // asymptotically 16x per halving
        }
        prev_err = err;
    }
}

TEST_CASE("forward then backward returns to the start") {
    // linear time-varying scalar system, smooth coefficient
    const auto rhs = [](double t, const std::vector<double>& x) {
        return std::vector<double>{std::sin(t) * x[0] + 0.5 * std::cos(2.0 * t)};
    };
    const auto grid = uniform_grid(0.0, 3.0, 601);
    const OdeTrace fwd = ltvnorm::rk4_integrate(rhs, {0.7}, grid, Direction::forward, 1e9);
    const OdeTrace back =
        ltvnorm::rk4_integrate(rhs, fwd.states.back(), grid, Direction::backward, 1e9);
    CHECK(std::abs(back.states.back()[0] - 0.7) <= 1e-8);
}

TEST_CASE("matrix ODE with zero derivative keeps the identity") {
    const auto rhs = [](double, const Matrix& p) { return Matrix(p.rows(), p.cols()); };
    const OdeTrace trace = ltvnorm::integrate_matrix(rhs, Matrix::identity(3),
                                                     uniform_grid(0.0, 1.0, 5),
                                                     Direction::forward, 1e9);
    const Matrix last = ltvnorm::unpack_symmetric(trace.states.back(), 3);
    CHECK((last - Matrix::identity(3)).max_abs() == 0.0);
}

TEST_CASE("scalar matrix ODE matches the analytic exponential") {
    const auto decay = [](double, const Matrix& p) {
        Matrix dp = p;
        dp *= -2.0;
        return dp;
    };
    const OdeTrace fwd = ltvnorm::integrate_matrix(decay, Matrix::identity(1),
                                                   uniform_grid(0.0, 1.0, 101),
                                                   Direction::forward, 1e9);
    CHECK(std::abs(fwd.states.back()[0] - std::exp(-2.0)) <= 1e-9);

    // Cost-to-go Lyapunov form dP/dt = -(A^T P + P A) with A = -1, integrated
    // backward from P(1) = 1: P(t) = e^{2(t-1)}, so P(0) = e^-2.
    const auto lyap = [](double, const Matrix& p) {
        Matrix dp = p;
        dp *= 2.0;
        return dp;
    };
    const OdeTrace back = ltvnorm::integrate_matrix(lyap, Matrix::identity(1),
                                                    uniform_grid(0.0, 1.0, 101),
                                                    Direction::backward, 1e9);
    CHECK(back.times.front() == 1.0);
    CHECK(back.times.back() == 0.0);
    CHECK(std::abs(back.states.back()[0] - std::exp(-2.0)) <= 1e-9);
}

TEST_CASE("matrix path symmetry is exact even for asymmetric derivatives") {
    helpers::Rng rng(5);
    const Matrix skew_part = helpers::random_matrix(rng, 3, 3, 1.0);
    const auto rhs = [&skew_part](double, const Matrix& p) {
        return skew_part * p;  // asymmetric derivative on purpose
    };
    const OdeTrace trace = ltvnorm::integrate_matrix(rhs, Matrix::identity(3),
                                                     uniform_grid(0.0, 0.5, 21),
                                                     Direction::forward, 1e9);
    for (const auto& packed : trace.states) {
        const Matrix p = ltvnorm::unpack_symmetric(packed, 3);
        CHECK((p - p.transpose()).max_abs() == 0.0);
    }
}

TEST_CASE("bad grids are rejected") {
    const auto rhs = [](double, const std::vector<double>& x) { return x; };
    CHECK_THROWS_AS(
        ltvnorm::rk4_integrate(rhs, {1.0}, std::vector<double>{0.0, 0.0, 1.0},
                               Direction::forward, 1e9),
        std::invalid_argument);
    CHECK_THROWS_AS(ltvnorm::rk4_integrate(rhs, {1.0}, std::vector<double>{0.0},
                                           Direction::forward, 1e9),
                    std::invalid_argument);
}

TEST_CASE("zero-dimensional states integrate trivially") {
    const auto rhs = [](double, const std::vector<double>& x) { return x; };
    const OdeTrace trace = ltvnorm::rk4_integrate(rhs, {}, uniform_grid(0.0, 1.0, 5),
                                                  Direction::forward, 1e9);
    CHECK(!trace.diverged);
    CHECK(trace.states.size() == 5);
}
