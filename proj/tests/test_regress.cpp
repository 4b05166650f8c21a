#include <doctest.h>

#include <cmath>
#include <random>

#include "dalyproj/regress.hpp"
#include "oracles.hpp"

using namespace dalyproj;
using namespace dalyproj::regress;
using doctest::Approx;

namespace {

Vector<double> vec(std::initializer_list<double> v) {
    Vector<double> out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double e : v)
        out(i++) = e;
    return out;
}

Vector<double> vec(const std::vector<double>& v) {
    return Eigen::Map<const Vector<double>>(v.data(), static_cast<Eigen::Index>(v.size()));
}

template <typename F>
ErrorKind error_kind(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Io;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("fit_linear on exact line") {
    const auto f = fit_linear(vec({0, 1, 2}), vec({0, 1, 2}));
    CHECK(f.model.slope == Approx(1.0));
    CHECK(f.model.intercept == Approx(0.0));
    CHECK(f.diagnostics.r_squared == Approx(1.0));
    CHECK(f.diagnostics.n_points == 3);
    CHECK_FALSE(f.diagnostics.poorly_conditioned);
}

TEST_CASE("fit_linear India HDI on decade index") {
    const auto f = fit_linear(vec({0, 1, 2}), vec({0.495, 0.586, 0.633}));
    CHECK(std::abs(f.model.slope - 0.069) < 1e-6);
    CHECK(std::abs(f.model.intercept - 0.502333) < 1e-6);
    const auto o = oracle::ols({0, 1, 2}, {0.495, 0.586, 0.633});
    CHECK(f.model.slope == Approx(static_cast<double>(o.slope)).epsilon(1e-12));
    CHECK(f.model.intercept == Approx(static_cast<double>(o.intercept)).epsilon(1e-12));
    CHECK(std::abs(predict(f.model, 3.0) - 0.709333) < 1e-6);
}

TEST_CASE("fit_linear India DALY_C on HDI") {
    const std::vector<double> x{0.495, 0.586, 0.633}, y{4854.11, 4123.92, 3357.39};
    const auto f = fit_linear(vec(x), vec(y));
    CHECK(rel(f.model.slope, -10463.2) < 5e-4);
    CHECK(rel(f.model.intercept, 10089.8) < 5e-4);
    CHECK(f.model.slope == Approx(-10463.247782217102).epsilon(1e-10));
    CHECK(f.model.intercept == Approx(10089.80889957337).epsilon(1e-10));
    CHECK(rel(predict(f.model, 0.709), 2671.37) < 5e-4);

    // Nothing on the grid beats the closed form.
    const auto o = oracle::ols(x, y);
    CHECK(oracle::sse(f.model.slope, f.model.intercept, x, y) <= oracle::grid_min_sse(x, y, o) * (1 + 1e-12));
}

TEST_CASE("fit_linear rejects degenerate regressor and bad input") {
    CHECK(error_kind([] { fit_linear(vec({1, 1, 1}), vec({1, 2, 3})); }) == ErrorKind::DegenerateRegressor);
    CHECK(error_kind([] { fit_linear(vec({1}), vec({1})); }) == ErrorKind::InsufficientSample);
    CHECK(error_kind([] { fit_linear(vec({1, 2}), vec({1, 2, 3})); }) == ErrorKind::Invariant);
    CHECK(error_kind([] { fit_linear(vec({1, NAN}), vec({1, 2})); }) == ErrorKind::Invariant);
}

TEST_CASE("fit_linear with tiny Sxx stays accurate") {
    // Jharkhand-like spread: Sxx around 6e-4, offset far from zero.
    const std::vector<double> x{0.5, 0.52, 0.53}, y{4000.0, 3500.0, 3100.0};
    const auto f = fit_linear(vec(x), vec(y));
    const auto o = oracle::ols(x, y);
    CHECK(f.model.slope == Approx(static_cast<double>(o.slope)).epsilon(1e-11));
    CHECK(f.model.intercept == Approx(static_cast<double>(o.intercept)).epsilon(1e-11));
}

TEST_CASE("fit_quadratic") {
    SUBCASE("exact parabola") {
        const auto f = fit_quadratic(vec({0, 1, 2}), vec({1, 2, 5}));
        CHECK(f.model.c0() == Approx(1.0));
        CHECK(std::abs(f.model.c1()) < 1e-12);
        CHECK(f.model.c2() == Approx(1.0));
        CHECK(f.diagnostics.r_squared == Approx(1.0));
        CHECK(f.diagnostics.poorly_conditioned);
    }
    SUBCASE("collinear four points") {
        const auto f = fit_quadratic(vec({0, 1, 2, 3}), vec({0, 1, 2, 3}));
        CHECK(std::abs(f.model.c2()) < 1e-9);
        CHECK(f.diagnostics.r_squared == Approx(1.0));
        CHECK_FALSE(f.diagnostics.poorly_conditioned);
    }
    SUBCASE("duplicate regressor is singular") {
        try {
            fit_quadratic(vec({0.615, 0.747, 0.747}), vec({17541.23, 19907.03, 22860.01}));
            FAIL("no throw");
        } catch (const SingularFitError& e) {
            CHECK(e.kind() == ErrorKind::Singular);
            CHECK(e.poorly_conditioned());
        }
    }
    SUBCASE("near-duplicate regressor is flagged") {
        const auto f = fit_quadratic(vec({0.0, 1.0, 1.0 + 1e-8, 2.0}), vec({1, 2, 2, 5}));
        CHECK(f.diagnostics.poorly_conditioned);
    }
    SUBCASE("too few points") {
        CHECK_THROWS_AS(fit_quadratic(vec({0, 1}), vec({1, 2})), SingularFitError);
    }
}

TEST_CASE("fit_exponential") {
    SUBCASE("exact decay") {
        const auto f = fit_exponential(vec({0, 1, 2}), vec({1, std::exp(-1.0), std::exp(-2.0)}));
        CHECK(std::abs(f.model.ln_scale) < 1e-12);
        CHECK(f.model.rate == Approx(-1.0));
        REQUIRE(f.diagnostics.log_r_squared);
        CHECK(*f.diagnostics.log_r_squared == Approx(1.0));
        CHECK(f.diagnostics.r_squared == Approx(1.0));
    }
    SUBCASE("India DALY_A on HDI") {
        const auto f = fit_exponential(vec({0.495, 0.586, 0.633}), vec({24986.39, 16308.69, 12450.01}));
        CHECK(rel(f.model.rate, -4.999) < 1e-3);
        CHECK(rel(f.model.ln_scale, 12.608) < 1e-3);
        CHECK(f.model.rate == Approx(-4.999142762695969).epsilon(1e-10));
        CHECK(f.model.ln_scale == Approx(12.607849109847884).epsilon(1e-10));
        CHECK(predict(f.model, 0.709) == Approx(8633.945735316642).epsilon(1e-10));
    }
    SUBCASE("domain errors") {
        CHECK(error_kind([] { fit_exponential(vec({0, 1, 2}), vec({1, 0, 2})); }) == ErrorKind::Domain);
        CHECK(error_kind([] { fit_exponential(vec({0, 1, 2}), vec({1, -1, 2})); }) == ErrorKind::Domain);
        CHECK(error_kind([] { fit_exponential(vec({2, 2, 2}), vec({1, 3, 2})); }) ==
              ErrorKind::DegenerateRegressor);
    }
}

TEST_CASE("predict") {
    CHECK(std::abs(predict(LinearFit<double>{0.069, 0.502333}, 3.0) - 0.709333) < 1e-9);
    CHECK(predict(ExpFit<double>{0.0, 0.0}, 123.0) == 1.0);
    QuadFit<double> q;
    q.coefficients << 1, 0, 1;
    CHECK(predict(q, 3.0) == 10.0);
    const Vector<double> out = predict(q, vec({0, 1, 2}));
    CHECK(out(2) == 5.0);
}

TEST_CASE("r_squared") {
    const auto x = vec({0, 1, 2}), y = vec({1, 2, 5});
    const auto q = fit_quadratic(x, y).model;
    CHECK(r_squared(q, x, y) == Approx(1.0));
    CHECK(r_squared(LinearFit<double>{0.0, y.mean()}, x, y) == Approx(0.0).epsilon(1e-15));
    CHECK(error_kind([&] { r_squared(q, x, vec({2, 2, 2})); }) == ErrorKind::UndefinedVariance);

    const auto hx = vec({0.495, 0.586, 0.633}), by = vec({18393.83, 19077.47, 20465.66});
    const auto b = fit_linear(hx, by);
    const double r2 = r_squared(b.model, hx, by);
    CHECK(r2 == Approx(0.8652211896370797).epsilon(1e-9));
    CHECK(b.diagnostics.r_squared == Approx(r2).epsilon(1e-14));
    CHECK(b.model.slope == Approx(13996.36723775986).epsilon(1e-9));

    // Exponential scored in log space through its linear view.
    const auto ay = vec({24986.39, 16308.69, 12450.01});
    const auto e = fit_exponential(hx, ay);
    const Vector<double> log_y = ay.array().log();
    CHECK(r_squared(log_space(e.model), hx, log_y) == Approx(*e.diagnostics.log_r_squared).epsilon(1e-14));
}

TEST_CASE("constant response") {
    const auto f = fit_linear(vec({0, 1, 2}), vec({7, 7, 7}));
    CHECK(f.model.slope == 0.0);
    CHECK(f.model.intercept == 7.0);
    CHECK(f.diagnostics.r_squared == 1.0);
    const auto e = fit_exponential(vec({0, 1, 2}), vec({7, 7, 7}));
    CHECK(std::abs(e.model.rate) < 1e-15);
    CHECK(predict(e.model, 10.0) == Approx(7.0).epsilon(1e-14));
}

TEST_CASE("PointSet overloads match column overloads") {
    PointSet<double> pts(3, 2);
    pts << 0.495, 24986.39, 0.586, 16308.69, 0.633, 12450.01;
    CHECK(fit_linear(pts).model.slope == fit_linear(pts.col(0), pts.col(1)).model.slope);
    CHECK(fit_exponential(pts).model.rate == fit_exponential(pts.col(0), pts.col(1)).model.rate);
    CHECK(fit_quadratic(pts).model.c2() == fit_quadratic(pts.col(0), pts.col(1)).model.c2());
}

TEST_CASE("other scalar types") {
    Vector<float> xf(3), yf(3);
    xf << 0.f, 1.f, 2.f;
    yf << 1.f, 3.f, 5.f;
    const auto ff = fit_linear(xf, yf);
    CHECK(ff.model.slope == Approx(2.0f));
    CHECK(ff.model.intercept == Approx(1.0f));

    Vector<long double> xl(3), yl(3);
    xl << 0.495L, 0.586L, 0.633L;
    yl << 24986.39L, 16308.69L, 12450.01L;
    const auto el = fit_exponential(xl, yl);
    CHECK(static_cast<double>(el.model.rate) == Approx(-4.999142762695969).epsilon(1e-12));
}

TEST_CASE("properties on randomized instances") {
    std::mt19937_64 rng(20310101);
    std::uniform_int_distribution<std::size_t> size(3, 10);
    for (int trial = 0; trial < 200; ++trial) {
        CAPTURE(trial);
        const auto inst = oracle::random_instance(rng, size(rng));
        const auto x = vec(inst.x), y = vec(inst.y);
        const auto f = fit_linear(x, y);

        // Grid-search dominance (3-point instances as stated; larger too).
        const auto o = oracle::ols(inst.x, inst.y);
        const long double fit_sse = oracle::sse(f.model.slope, f.model.intercept, inst.x, inst.y);
        CHECK(fit_sse <= oracle::grid_min_sse(inst.x, inst.y, o, 25) * (1 + 1e-9L) + 1e-9L);

        // Normal equations hold on the residuals.
        const Vector<double> res = y - predict(f.model, x);
        CHECK(std::abs(res.sum()) <= 1e-9 * y.cwiseAbs().mean() * x.size());
        CHECK(std::abs(res.dot(x)) <= 1e-9 * (y.cwiseAbs().mean() * x.cwiseAbs().sum() + 1.0));
        CHECK(f.diagnostics.r_squared >= 0.0);
        CHECK(f.diagnostics.r_squared <= 1.0 + 1e-12);

        // Translation covariance.
        const double k = 37.25;
        const auto shifted = fit_linear(x, (y.array() + k).matrix());
        CHECK(std::abs(shifted.model.intercept - (f.model.intercept + k)) <= 1e-9 * (1 + std::abs(f.model.intercept)));
        CHECK(std::abs(shifted.model.slope - f.model.slope) <= 1e-9 * (1 + std::abs(f.model.slope)));

        // Scale covariance of the exponential fit.
        const auto e = fit_exponential(x, y);
        const double m = 3.5;
        const auto scaled = fit_exponential(x, (y * m).eval());
        CHECK(std::abs(scaled.model.ln_scale - (e.model.ln_scale + std::log(m))) <= 1e-9 * (1 + std::abs(e.model.ln_scale)));
        CHECK(std::abs(scaled.model.rate - e.model.rate) <= 1e-9 * (1 + std::abs(e.model.rate)));

        // Exponential is literally the log-space line.
        const auto l = fit_linear(x, y.array().log().matrix().eval());
        CHECK(e.model.rate == l.model.slope);
        CHECK(e.model.ln_scale == l.model.intercept);

        // Quadratic interpolates any three distinct points.
        const std::vector<double> x3(inst.x.begin(), inst.x.begin() + 3), y3(inst.y.begin(), inst.y.begin() + 3);
        const auto q = fit_quadratic(vec(x3), vec(y3));
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(predict(q.model, x3[i]) - y3[i]) <= 1e-9 * std::abs(y3[i]));
        CHECK(q.diagnostics.r_squared == Approx(1.0).epsilon(1e-9));
        CHECK(q.diagnostics.poorly_conditioned);
        const auto c = oracle::parabola_through(x3, y3);
        CHECK(q.model.c2() == Approx(static_cast<double>(c[2])).epsilon(1e-7));
    }
}
