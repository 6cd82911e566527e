#pragma once

#include <string>
#include <vector>

#include "ltvnorm/matrix.hpp"

namespace ltvnorm {

// A time-varying matrix source: either a constant matrix or a strictly
// increasing time grid with one sample per grid point, evaluated by linear
// interpolation between the bracketing samples. Evaluation at a grid point
// returns the stored sample exactly; there is no extrapolation.
class TvMatrixFn {
public:
    TvMatrixFn() = default;

    static TvMatrixFn constant(Matrix value);
    static TvMatrixFn gridded(std::vector<double> times, std::vector<Matrix> samples);

    bool is_constant() const { return times_.empty(); }
    std::size_t rows() const;
    std::size_t cols() const;

    // Checks the stored data against the type's invariants; each violation is
    // reported as one message. A default-constructed source is invalid.
    std::vector<std::string> check() const;

    // Throws std::domain_error for t outside the stored grid span (a slack of
    // 1e-9 * span absorbs floating-point drift from step arithmetic).
    Matrix eval(double t) const;

    // Span covered by the source; constants cover every t.
    bool covers(double t0, double t1) const;

    const std::vector<double>& times() const { return times_; }
    const std::vector<Matrix>& samples() const { return samples_; }

    // Samplewise map preserving the grid, used to build adjoint sources.
    TvMatrixFn transposed() const;
    TvMatrixFn negated_transposed() const;

private:
    std::vector<double> times_;    // empty for the constant variant
    std::vector<Matrix> samples_;  // size 1 for the constant variant
};

}  // namespace ltvnorm
