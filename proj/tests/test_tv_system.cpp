#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "ltvnorm/system.hpp"

using ltvnorm::LtvSystem;
using ltvnorm::Matrix;
using ltvnorm::TvMatrixFn;

TEST_CASE("constant source returns its matrix for every t") {
    const auto fn = TvMatrixFn::constant(Matrix::from_rows({{-1.0}}));
    CHECK(fn.eval(0.5)(0, 0) == -1.0);
    CHECK(fn.eval(123.0)(0, 0) == -1.0);
}

TEST_CASE("gridded source interpolates linearly and hits samples exactly") {
    const auto fn = TvMatrixFn::gridded(
        {0.0, 1.0}, {Matrix::from_rows({{0.0}}), Matrix::from_rows({{2.0}})});
    CHECK(fn.eval(0.5)(0, 0) == doctest::Approx(1.0));
    CHECK(fn.eval(0.0)(0, 0) == 0.0);
    CHECK(fn.eval(1.0)(0, 0) == 2.0);
}

TEST_CASE("gridded source rejects out-of-span evaluation") {
    const auto fn = TvMatrixFn::gridded(
        {0.0, 1.0}, {Matrix::from_rows({{0.0}}), Matrix::from_rows({{2.0}})});
    CHECK_THROWS_AS(fn.eval(1.5), std::domain_error);
    CHECK_THROWS_AS(fn.eval(-0.5), std::domain_error);
}

TEST_CASE("gridded eval at every grid time is bit-exact") {
    helpers::Rng rng(3);
    std::vector<double> times;
    std::vector<Matrix> samples;
    for (int k = 0; k < 9; ++k) {
        times.push_back(0.3 * k);
        samples.push_back(helpers::random_matrix(rng, 2, 3, 1.0));
    }
    const auto fn = TvMatrixFn::gridded(times, samples);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const Matrix at = fn.eval(times[k]);
        CHECK((at - samples[k]).max_abs() == 0.0);
    }
}

TEST_CASE("gridded eval is continuous between samples") {
    helpers::Rng rng(4);
    std::vector<double> times{0.0, 0.5, 1.0, 2.0};
    std::vector<Matrix> samples;
    for (std::size_t k = 0; k < times.size(); ++k) {
        samples.push_back(helpers::random_matrix(rng, 2, 2, 1.0));
    }
    const auto fn = TvMatrixFn::gridded(times, samples);
    // Lipschitz bound from adjacent samples: |f(t+h) - f(t)| <= h * max slope
    double max_slope = 0.0;
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        max_slope = std::max(max_slope, (samples[k + 1] - samples[k]).max_abs() /
                                            (times[k + 1] - times[k]));
    }
    const double h = 1e-6;
    for (double t = 0.0; t < 2.0 - h; t += 0.137) {
        CHECK((fn.eval(t + h) - fn.eval(t)).max_abs() <= h * max_slope + 1e-15);
    }
}

TEST_CASE("system eval matches the time-varying entry") {
    const LtvSystem sys = helpers::imae_system();
    const auto at = ltvnorm::eval(sys, M_PI / 2.0);
    CHECK(std::abs(at.A(0, 0)) <= 1e-5);  // -1 + sin(pi/2)
    CHECK(at.A(0, 1) == 1.0);
    CHECK(at.A(1, 1) == -4.0);
    CHECK_THROWS_AS(ltvnorm::eval(sys, 10.5), std::domain_error);
}

TEST_CASE("adjoint transposes and negates the state matrix") {
    const LtvSystem sys = ltvnorm::make_lti_system(
        Matrix::from_rows({{-1.0}}), Matrix::from_rows({{2.0}}),
        Matrix::from_rows({{1.0}}), Matrix::from_rows({{0.0}}), Matrix(0, 1), 1.0);
    const auto adj = ltvnorm::adjoint(sys);
    CHECK(adj.state_matrix.eval(0.3)(0, 0) == 1.0);
    CHECK(adj.output_matrix.eval(0.3)(0, 0) == 2.0);
}

TEST_CASE("adjoint of g1 flips the coupling terms") {
    const auto adj = ltvnorm::adjoint(helpers::g1_system());
    const Matrix at = adj.state_matrix.eval(5.0);
    CHECK(at(0, 0) == doctest::Approx(0.1));
    CHECK(at(0, 1) == doctest::Approx(0.5));
    CHECK(at(1, 0) == doctest::Approx(-0.4));
    CHECK(at(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("adjoint dimension bookkeeping") {
    helpers::RandomLtvConfig cfg;
    cfg.state_dim = 3;
    cfg.input_dim = 2;
    cfg.l2_dim = 4;
    cfg.terminal_dim = 1;
    const LtvSystem sys = helpers::random_ltv_system(11, cfg);
    const auto adj = ltvnorm::adjoint(sys);
    CHECK(adj.output_matrix.rows() == 2);   // r lives in the input space
    CHECK(adj.input_matrix.cols() == 4);    // q lives in the running-output space
    CHECK(adj.terminal_map.rows() == 3);
    CHECK(adj.terminal_map.cols() == 1);
}

TEST_CASE("adjoint of a gridded system shares the parent grid exactly") {
    const LtvSystem sys = helpers::imae_system(101);
    const auto adj = ltvnorm::adjoint(sys);
    REQUIRE(adj.state_matrix.times() == sys.A.times());
    for (double t : {0.17, 3.33, 7.71}) {
        const Matrix a = sys.A.eval(t);
        const Matrix n = adj.state_matrix.eval(t);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                CHECK(n(i, j) == -a(j, i));  // bit-exact
            }
        }
    }
}

TEST_CASE("validate accepts g1 and reports specific violations") {
    CHECK(ltvnorm::validate(helpers::g1_system()).empty());

    LtvSystem bad = helpers::g1_system();
    bad.A = TvMatrixFn::gridded({0.0, 0.0, 1.0},
                                {Matrix(2, 2), Matrix(2, 2), Matrix(2, 2)});
    auto issues = ltvnorm::validate(bad);
    REQUIRE(!issues.empty());
    bool found = false;
    for (const auto& msg : issues) {
        if (msg.find("strictly increasing") != std::string::npos) {
            found = true;
        }
    }
    CHECK(found);

    LtvSystem mismatched = helpers::g1_system();
    mismatched.B = TvMatrixFn::constant(Matrix(3, 1));  // state_dim + 1 rows
    issues = ltvnorm::validate(mismatched);
    REQUIRE(!issues.empty());
    CHECK(issues.front().find("matrices.B") != std::string::npos);
}

TEST_CASE("validate flags grids that do not cover the horizon") {
    LtvSystem sys = helpers::g1_system();
    sys.A = TvMatrixFn::gridded({0.0, 5.0}, {Matrix(2, 2), Matrix(2, 2)});
    const auto issues = ltvnorm::validate(sys);
    REQUIRE(!issues.empty());
    CHECK(issues.front().find("cover") != std::string::npos);
}

TEST_CASE("validate requires an output channel") {
    LtvSystem sys = helpers::g1_system();
    sys.C_I = TvMatrixFn::constant(Matrix(0, 2));
    sys.D_I = TvMatrixFn::constant(Matrix(0, 1));
    sys.l2_dim = 0;
    const auto issues = ltvnorm::validate(sys);
    REQUIRE(!issues.empty());
    CHECK(issues.front().find("output channel") != std::string::npos);
}
