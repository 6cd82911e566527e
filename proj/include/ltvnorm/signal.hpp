#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ltvnorm {

// A vector-valued signal sampled on a strictly increasing time grid, treated
// as piecewise linear between samples. Norms and inner products use composite
// trapezoidal quadrature on the stored grid, matching the piecewise-linear
// representation. Signals are immutable values; every operation here is pure.
struct Signal {
    std::vector<double> times;
    std::vector<std::vector<double>> samples;  // one vector of length dim per time
    std::size_t dim = 0;
};

Signal zero_signal(std::span<const double> grid, std::size_t dim);

// Fixed-seed pseudorandom signal (standard normal samples via Box-Muller on a
// 64-bit Mersenne generator), normalized to unit L2 norm. Deterministic for a
// given (grid, dim, seed) on a given platform.
Signal random_unit_signal(std::span<const double> grid, std::size_t dim, std::uint64_t seed);

double l2_norm(const Signal& sig);

// Requires identical grids and dimensions; throws std::invalid_argument.
double inner_product(const Signal& a, const Signal& b);

// Throws std::domain_error for a zero signal.
Signal normalize(const Signal& sig);

// Linear interpolation onto a target grid inside the source span; throws
// std::domain_error when the target grid reaches outside it.
Signal resample(const Signal& sig, std::span<const double> times);

// Piecewise-linear value at time t (used by integrators for stage times).
std::vector<double> sample_at(const Signal& sig, double t);

}  // namespace ltvnorm
