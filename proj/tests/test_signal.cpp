#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "ltvnorm/signal.hpp"

using ltvnorm::Signal;

namespace {

std::vector<double> uniform_grid(double t0, double t1, int points) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        grid[static_cast<std::size_t>(k)] = t0 + (t1 - t0) * k / (points - 1);
    }
    return grid;
}

Signal sampled(const std::vector<double>& grid, double (*f)(double)) {
    Signal sig;
    sig.times = grid;
    sig.dim = 1;
    for (double t : grid) {
        sig.samples.push_back({f(t)});
    }
    return sig;
}

Signal constant_signal(const std::vector<double>& grid, double value) {
    Signal sig = ltvnorm::zero_signal(grid, 1);
    for (auto& s : sig.samples) {
        s[0] = value;
    }
    return sig;
}

}  // namespace

TEST_CASE("l2_norm of constants and zero") {
    const auto grid = uniform_grid(0.0, 4.0, 17);
    CHECK(ltvnorm::l2_norm(constant_signal(grid, 1.0)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ltvnorm::l2_norm(ltvnorm::zero_signal(grid, 3)) == 0.0);
}

TEST_CASE("l2_norm of sin over a full period") {
    const auto grid = uniform_grid(0.0, 2.0 * M_PI, 2001);
    const Signal sig = sampled(grid, [](double t) { return std::sin(t); });
    CHECK(std::abs(ltvnorm::l2_norm(sig) - std::sqrt(M_PI)) <= 1e-6);
}

TEST_CASE("inner products") {
    const auto grid = uniform_grid(0.0, 4.0, 33);
    const Signal ones = constant_signal(grid, 1.0);
    CHECK(ltvnorm::inner_product(ones, ones) == doctest::Approx(4.0).epsilon(1e-12));

    const auto fine = uniform_grid(0.0, 2.0 * M_PI, 4001);
    const Signal s = sampled(fine, [](double t) { return std::sin(t); });
    const Signal c = sampled(fine, [](double t) { return std::cos(t); });
    CHECK(std::abs(ltvnorm::inner_product(s, c)) <= 1e-6);

    const double n = ltvnorm::l2_norm(s);
    CHECK(std::abs(ltvnorm::inner_product(s, s) - n * n) <= 1e-12);
}

TEST_CASE("inner_product rejects grid mismatch") {
    const Signal a = constant_signal(uniform_grid(0.0, 1.0, 5), 1.0);
    const Signal b = constant_signal(uniform_grid(0.0, 1.0, 6), 1.0);
    CHECK_THROWS_AS(ltvnorm::inner_product(a, b), std::invalid_argument);
}

TEST_CASE("normalize") {
    const auto grid = uniform_grid(0.0, 1.0, 11);
    const Signal two = constant_signal(grid, 2.0);
    const Signal unit = ltvnorm::normalize(two);
    CHECK(unit.samples[5][0] == doctest::Approx(1.0).epsilon(1e-12));

    const Signal rnd = ltvnorm::random_unit_signal(grid, 3, 99);
    CHECK(std::abs(ltvnorm::l2_norm(rnd) - 1.0) <= 1e-12);

    CHECK_THROWS_AS(ltvnorm::normalize(ltvnorm::zero_signal(grid, 2)), std::domain_error);
}

TEST_CASE("resample is the identity on equal grids and exact on linear data") {
    const auto grid = uniform_grid(0.0, 2.0, 21);
    const Signal lin = sampled(grid, [](double t) { return 3.0 * t - 1.0; });
    const Signal same = ltvnorm::resample(lin, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(same.samples[k][0] == lin.samples[k][0]);
    }
    const auto shifted = uniform_grid(0.1, 1.9, 13);
    const Signal moved = ltvnorm::resample(lin, shifted);
    for (std::size_t k = 0; k < shifted.size(); ++k) {
        CHECK(moved.samples[k][0] == doctest::Approx(3.0 * shifted[k] - 1.0).epsilon(1e-12));
    }
}

TEST_CASE("resample rejects grids outside the source span") {
    const Signal sig = constant_signal(uniform_grid(0.0, 1.0, 5), 1.0);
    const auto outside = uniform_grid(0.0, 2.0, 5);
    CHECK_THROWS_AS(ltvnorm::resample(sig, outside), std::domain_error);
}

TEST_CASE("downsampled norm stays within O(h^2) of a 10x finer quadrature") {
    const auto fine = uniform_grid(0.0, 3.0, 4001);
    const Signal smooth = sampled(fine, [](double t) { return std::sin(2.0 * t) + 0.3 * t; });
    const double reference = ltvnorm::l2_norm(smooth);
    const auto coarse = uniform_grid(0.0, 3.0, 401);
    const double down = ltvnorm::l2_norm(ltvnorm::resample(smooth, coarse));
    CHECK(std::abs(down - reference) <= 1e-3);  // h = 7.5e-3, comfortably O(h^2)
}

TEST_CASE("quadrature error shrinks like h^2") {
    const auto ref_grid = uniform_grid(0.0, 1.5, 12001);
    const Signal ref = sampled(ref_grid, [](double t) { return std::exp(t) * std::sin(3.0 * t); });
    const double exact = ltvnorm::l2_norm(ref);

    double prev_err = 0.0;
    for (int points : {76, 151, 301}) {  // halving h each time
        const Signal sig = ltvnorm::resample(ref, uniform_grid(0.0, 1.5, points));
        const double err = std::abs(ltvnorm::l2_norm(sig) - exact);
        if (prev_err > 0.0) {
            CHECK(err <= prev_err / 3.0);  // h^2 predicts a factor of 4
        }
        prev_err = err;
    }
}

TEST_CASE("Cauchy-Schwarz and scale homogeneity on random signals") {
    const auto grid = uniform_grid(0.0, 2.0, 257);
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const Signal a = ltvnorm::random_unit_signal(grid, 2, seed);
        const Signal b = ltvnorm::random_unit_signal(grid, 2, seed + 100);
        CHECK(std::abs(ltvnorm::inner_product(a, b)) <=
              ltvnorm::l2_norm(a) * ltvnorm::l2_norm(b) + 1e-12);

        Signal scaled = a;
        for (auto& s : scaled.samples) {
            for (double& v : s) {
                v *= -2.5;
            }
        }
        CHECK(std::abs(ltvnorm::l2_norm(scaled) - 2.5 * ltvnorm::l2_norm(a)) <= 1e-12);
    }
}
