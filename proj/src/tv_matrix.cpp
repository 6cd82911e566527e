#include "ltvnorm/tv_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ltvnorm {

TvMatrixFn TvMatrixFn::constant(Matrix value) {
    TvMatrixFn fn;
    fn.samples_.push_back(std::move(value));
    return fn;
}

TvMatrixFn TvMatrixFn::gridded(std::vector<double> times, std::vector<Matrix> samples) {
    TvMatrixFn fn;
    fn.times_ = std::move(times);
    fn.samples_ = std::move(samples);
    return fn;
}

std::size_t TvMatrixFn::rows() const {
    return samples_.empty() ? 0 : samples_.front().rows();
}

std::size_t TvMatrixFn::cols() const {
    return samples_.empty() ? 0 : samples_.front().cols();
}

std::vector<std::string> TvMatrixFn::check() const {
    std::vector<std::string> issues;
    if (samples_.empty()) {
        issues.push_back("no samples stored");
        return issues;
    }
    if (is_constant()) {
        if (samples_.size() != 1) {
            issues.push_back("constant source must hold exactly one sample");
        }
    } else {
        if (samples_.size() != times_.size()) {
            issues.push_back("sample count does not match grid point count");
        }
        for (std::size_t i = 0; i + 1 < times_.size(); ++i) {
            if (!(times_[i] < times_[i + 1])) {
                issues.push_back("times not strictly increasing");
                break;
            }
        }
        for (double t : times_) {
            if (!std::isfinite(t)) {
                issues.push_back("grid contains a non-finite time");
                break;
            }
        }
    }
    const std::size_t r = rows();
    const std::size_t c = cols();
    for (const Matrix& s : samples_) {
        if (s.rows() != r || s.cols() != c) {
            issues.push_back("samples have inconsistent shapes");
            break;
        }
    }
    for (const Matrix& s : samples_) {
        if (!s.all_finite()) {
            issues.push_back("sample contains a non-finite entry");
            break;
        }
    }
    return issues;
}

Matrix TvMatrixFn::eval(double t) const {
    if (samples_.empty()) {
        throw std::logic_error("evaluating an empty matrix source");
    }
    if (is_constant()) {
        return samples_.front();
    }
    const double lo = times_.front();
    const double hi = times_.back();
    const double slack = 1e-9 * std::max(hi - lo, 1.0);
    if (t < lo - slack || t > hi + slack) {
        throw std::domain_error("time outside the stored grid; no extrapolation");
    }
    const double tc = std::clamp(t, lo, hi);

    auto it = std::upper_bound(times_.begin(), times_.end(), tc);
    if (it == times_.begin()) {
        return samples_.front();
    }
    if (it == times_.end()) {
        return samples_.back();
    }
    const std::size_t hi_idx = static_cast<std::size_t>(it - times_.begin());
    const std::size_t lo_idx = hi_idx - 1;
    const double t0 = times_[lo_idx];
    const double t1 = times_[hi_idx];
    if (tc == t0) {
        return samples_[lo_idx];
    }
    const double w = (tc - t0) / (t1 - t0);

    Matrix out = samples_[lo_idx];
    const Matrix& next = samples_[hi_idx];
    for (std::size_t k = 0; k < out.data().size(); ++k) {
        out.data()[k] += w * (next.data()[k] - out.data()[k]);
    }
    return out;
}

bool TvMatrixFn::covers(double t0, double t1) const {
    if (is_constant()) {
        return true;
    }
    if (times_.empty()) {
        return false;
    }
    const double slack = 1e-9 * std::max(times_.back() - times_.front(), 1.0);
    return times_.front() <= t0 + slack && times_.back() >= t1 - slack;
}

TvMatrixFn TvMatrixFn::transposed() const {
    TvMatrixFn fn;
    fn.times_ = times_;
    fn.samples_.reserve(samples_.size());
    for (const Matrix& s : samples_) {
        fn.samples_.push_back(s.transpose());
    }
    return fn;
}

TvMatrixFn TvMatrixFn::negated_transposed() const {
    TvMatrixFn fn;
    fn.times_ = times_;
    fn.samples_.reserve(samples_.size());
    for (const Matrix& s : samples_) {
        Matrix t = s.transpose();
        t *= -1.0;
        fn.samples_.push_back(std::move(t));
    }
    return fn;
}

}  // namespace ltvnorm
