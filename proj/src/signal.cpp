#include "ltvnorm/signal.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ltvnorm {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

void require_valid(const Signal& sig) {
    if (sig.times.size() < 2 || sig.samples.size() != sig.times.size()) {
        throw std::invalid_argument("signal needs >= 2 grid points with one sample each");
    }
}

}  // namespace

Signal zero_signal(std::span<const double> grid, std::size_t dim) {
    Signal sig;
    sig.times.assign(grid.begin(), grid.end());
    sig.samples.assign(grid.size(), std::vector<double>(dim, 0.0));
    sig.dim = dim;
    return sig;
}

Signal random_unit_signal(std::span<const double> grid, std::size_t dim, std::uint64_t seed) {
    Signal sig = zero_signal(grid, dim);
    std::mt19937_64 rng(seed);
    // Box-Muller keeps the sample stream independent of the standard
    // library's normal_distribution implementation.
    auto next_normal = [&rng]() {
        const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        const double u2 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    };
    for (auto& sample : sig.samples) {
        for (double& x : sample) {
            x = next_normal();
        }
    }
    return normalize(sig);
}

double l2_norm(const Signal& sig) {
    require_valid(sig);
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < sig.times.size(); ++k) {
        const double h = sig.times[k + 1] - sig.times[k];
        acc += 0.5 * h * (dot(sig.samples[k], sig.samples[k]) +
                          dot(sig.samples[k + 1], sig.samples[k + 1]));
    }
    return std::sqrt(std::max(0.0, acc));
}

double inner_product(const Signal& a, const Signal& b) {
    require_valid(a);
    require_valid(b);
    if (a.dim != b.dim || a.times.size() != b.times.size()) {
        throw std::invalid_argument("inner_product: grid or dimension mismatch");
    }
    for (std::size_t k = 0; k < a.times.size(); ++k) {
        if (a.times[k] != b.times[k]) {
            throw std::invalid_argument("inner_product: grid mismatch");
        }
    }
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < a.times.size(); ++k) {
        const double h = a.times[k + 1] - a.times[k];
        acc += 0.5 * h * (dot(a.samples[k], b.samples[k]) +
                          dot(a.samples[k + 1], b.samples[k + 1]));
    }
    return acc;
}

Signal normalize(const Signal& sig) {
    const double norm = l2_norm(sig);
    if (norm <= 0.0) {
        throw std::domain_error("normalize: signal has zero L2 norm");
    }
    Signal out = sig;
    const double inv = 1.0 / norm;
    for (auto& sample : out.samples) {
        for (double& x : sample) {
            x *= inv;
        }
    }
    return out;
}

std::vector<double> sample_at(const Signal& sig, double t) {
    const double lo = sig.times.front();
    const double hi = sig.times.back();
    const double slack = 1e-9 * std::max(hi - lo, 1.0);
    if (t < lo - slack || t > hi + slack) {
        throw std::domain_error("sample_at: time outside the signal span");
    }
    const double tc = std::clamp(t, lo, hi);
    auto it = std::upper_bound(sig.times.begin(), sig.times.end(), tc);
    if (it == sig.times.begin()) {
        return sig.samples.front();
    }
    if (it == sig.times.end()) {
        return sig.samples.back();
    }
    const std::size_t hi_idx = static_cast<std::size_t>(it - sig.times.begin());
    const std::size_t lo_idx = hi_idx - 1;
    const double t0 = sig.times[lo_idx];
    const double t1 = sig.times[hi_idx];
    if (tc == t0) {
        return sig.samples[lo_idx];
    }
    const double w = (tc - t0) / (t1 - t0);
    std::vector<double> out = sig.samples[lo_idx];
    const std::vector<double>& next = sig.samples[hi_idx];
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += w * (next[i] - out[i]);
    }
    return out;
}

Signal resample(const Signal& sig, std::span<const double> times) {
    require_valid(sig);
    Signal out;
    out.times.assign(times.begin(), times.end());
    out.dim = sig.dim;
    out.samples.reserve(times.size());
    for (double t : times) {
        out.samples.push_back(sample_at(sig, t));
    }
    return out;
}

}  // namespace ltvnorm
