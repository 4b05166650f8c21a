#pragma once

// Closed-form small-sample fits: simple linear, quadratic and log-linear
// exponential, with R² and conditioning diagnostics.
//
// Every fit takes the regressor and the response as Eigen column expressions
// of equal length, so callers can pass transformed data directly:
//
//     auto fit = regress::fit_linear(x, y.array().log().matrix());
//
// All sums are formed on mean-centred data.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dalyproj/error.hpp"

namespace dalyproj::regress {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Column 0 holds x, column 1 holds y.
template <typename Scalar>
using PointSet = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;

enum class ModelKind { Linear, Quadratic, Exponential };

inline const char* to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::Linear: return "linear";
    case ModelKind::Quadratic: return "quadratic";
    case ModelKind::Exponential: return "exponential";
    }
    return "?";
}

// y = intercept + slope * x
template <typename Scalar_>
struct LinearFit {
    using Scalar = Scalar_;
    Scalar slope{0};
    Scalar intercept{0};
};

// y = c0 + c1 * x + c2 * x^2
template <typename Scalar_>
struct QuadFit {
    using Scalar = Scalar_;
    Eigen::Matrix<Scalar, 3, 1> coefficients = Eigen::Matrix<Scalar, 3, 1>::Zero();

    Scalar c0() const { return coefficients(0); }
    Scalar c1() const { return coefficients(1); }
    Scalar c2() const { return coefficients(2); }
};

// y = exp(ln_scale + rate * x). rate may take either sign.
template <typename Scalar_>
struct ExpFit {
    using Scalar = Scalar_;
    Scalar ln_scale{0};
    Scalar rate{0};

    Scalar scale() const { return std::exp(ln_scale); }
};

template <typename Scalar>
struct FitDiagnostics {
    // In the original response space for every model kind.
    Scalar r_squared{0};
    // Log-space R², set for exponential fits only.
    std::optional<Scalar> log_r_squared;
    // Sum of original-space residuals y - f(x).
    Scalar residual_sum{0};
    bool poorly_conditioned = false;
    Eigen::Index n_points = 0;
};

template <typename Model>
struct Fitted {
    Model model;
    FitDiagnostics<typename Model::Scalar> diagnostics;
};

template <typename Scalar>
Scalar predict(const LinearFit<Scalar>& m, Scalar x) {
    return m.intercept + m.slope * x;
}

template <typename Scalar>
Scalar predict(const QuadFit<Scalar>& m, Scalar x) {
    return m.c0() + x * (m.c1() + x * m.c2());
}

template <typename Scalar>
Scalar predict(const ExpFit<Scalar>& m, Scalar x) {
    return std::exp(m.ln_scale + m.rate * x);
}

// Element-wise evaluation over a column of regressor values.
template <typename Model, typename Derived>
Vector<typename Model::Scalar> predict(const Model& m, const Eigen::MatrixBase<Derived>& x) {
    Vector<typename Model::Scalar> out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        out(i) = predict(m, static_cast<typename Model::Scalar>(x(i)));
    return out;
}

namespace detail {

template <typename DX, typename DY>
void check_inputs(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y,
                  Eigen::Index min_points, const char* what) {
    if (x.size() != y.size())
        throw Error(ErrorKind::Invariant, std::string(what) + ": x and y differ in length");
    if (x.size() < min_points)
        throw Error(ErrorKind::InsufficientSample, std::string(what) + ": needs at least " +
                                                       std::to_string(min_points) + " points");
    if (!x.allFinite() || !y.allFinite())
        throw Error(ErrorKind::Invariant, std::string(what) + ": non-finite input");
}

template <typename Derived>
bool all_equal(const Eigen::MatrixBase<Derived>& x) {
    return x.size() == 0 || x.maxCoeff() == x.minCoeff();
}

template <typename Derived>
Eigen::Index distinct_count(const Eigen::MatrixBase<Derived>& x) {
    std::vector<typename Derived::Scalar> v(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i)
        v[static_cast<std::size_t>(i)] = x(i);
    std::sort(v.begin(), v.end());
    return static_cast<Eigen::Index>(std::unique(v.begin(), v.end()) - v.begin());
}

// Smallest gap between sorted regressor values, relative to their range.
template <typename Derived>
typename Derived::Scalar relative_min_gap(const Eigen::MatrixBase<Derived>& x) {
    using Scalar = typename Derived::Scalar;
    std::vector<Scalar> v(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i)
        v[static_cast<std::size_t>(i)] = x(i);
    std::sort(v.begin(), v.end());
    const Scalar range = v.back() - v.front();
    if (range == Scalar(0))
        return Scalar(0);
    Scalar gap = range;
    for (std::size_t i = 1; i < v.size(); ++i)
        gap = std::min(gap, v[i] - v[i - 1]);
    return gap / range;
}

// 1 - SSres/SStot; a constant response reproduced exactly scores 1.
template <typename DY, typename DF>
typename DY::Scalar fit_r_squared(const Eigen::MatrixBase<DY>& y, const Eigen::MatrixBase<DF>& f) {
    using Scalar = typename DY::Scalar;
    const Scalar ss_tot = (y.array() - y.mean()).square().sum();
    const Scalar ss_res = (y - f).squaredNorm();
    if (ss_tot == Scalar(0))
        return ss_res == Scalar(0) ? Scalar(1) : Scalar(0);
    return Scalar(1) - ss_res / ss_tot;
}

template <typename Model, typename DX, typename DY>
FitDiagnostics<typename Model::Scalar> diagnose(const Model& m, const Eigen::MatrixBase<DX>& x,
                                                const Eigen::MatrixBase<DY>& y) {
    FitDiagnostics<typename Model::Scalar> d;
    const auto fitted = predict(m, x);
    d.r_squared = fit_r_squared(y, fitted);
    d.residual_sum = (y - fitted).sum();
    d.n_points = x.size();
    return d;
}

} // namespace detail

// Ordinary least squares of y on x with intercept.
template <typename DX, typename DY>
Fitted<LinearFit<typename DX::Scalar>> fit_linear(const Eigen::MatrixBase<DX>& x,
                                                  const Eigen::MatrixBase<DY>& y) {
    using Scalar = typename DX::Scalar;
    detail::check_inputs(x, y, 2, "fit_linear");
    if (detail::all_equal(x))
        throw Error(ErrorKind::DegenerateRegressor, "fit_linear: all x values are equal");

    const Scalar mx = x.mean();
    const Scalar my = y.mean();
    const Vector<Scalar> dx = x.array() - mx;
    const Vector<Scalar> dy = y.array() - my;
    const Scalar sxx = dx.squaredNorm();

    LinearFit<Scalar> m;
    m.slope = dx.dot(dy) / sxx;
    m.intercept = my - m.slope * mx;

    auto d = detail::diagnose(m, x, y);
    d.poorly_conditioned = sxx <= Scalar(1e-12) * x.squaredNorm();
    return {m, d};
}

template <typename Scalar>
Fitted<LinearFit<Scalar>> fit_linear(const PointSet<Scalar>& points) {
    return fit_linear(points.col(0), points.col(1));
}

// Least-squares quadratic. Solved by column-pivoting QR on a centred and
// scaled Vandermonde matrix, then mapped back to raw-x coefficients.
//
// poorly_conditioned is set for exactly three points (exact interpolation) or
// when two regressor values lie within 1e-6 of the x range of each other.
template <typename DX, typename DY>
Fitted<QuadFit<typename DX::Scalar>> fit_quadratic(const Eigen::MatrixBase<DX>& x,
                                                   const Eigen::MatrixBase<DY>& y) {
    using Scalar = typename DX::Scalar;
    if (x.size() != y.size())
        throw Error(ErrorKind::Invariant, "fit_quadratic: x and y differ in length");
    if (!x.allFinite() || !y.allFinite())
        throw Error(ErrorKind::Invariant, "fit_quadratic: non-finite input");
    const Vector<Scalar> xv = x;
    if (detail::distinct_count(xv) < 3)
        throw SingularFitError("fit_quadratic: fewer than 3 distinct x values (poorly conditioned)");

    const Scalar centre = xv.mean();
    const Scalar spread = (xv.array() - centre).abs().maxCoeff();
    const Vector<Scalar> u = (xv.array() - centre) / spread;

    Eigen::Matrix<Scalar, Eigen::Dynamic, 3> design(u.size(), 3);
    design.col(0).setOnes();
    design.col(1) = u;
    design.col(2) = u.array().square();
    Eigen::ColPivHouseholderQR<Eigen::Matrix<Scalar, Eigen::Dynamic, 3>> qr(design);
    if (qr.rank() < 3)
        throw SingularFitError("fit_quadratic: design matrix is rank deficient (poorly conditioned)");
    const Eigen::Matrix<Scalar, 3, 1> d = qr.solve(y.derived().template cast<Scalar>());

    // y = d0 + d1 (x - m)/s + d2 (x - m)^2 / s^2
    const Scalar s2 = spread * spread;
    QuadFit<Scalar> m;
    m.coefficients(2) = d(2) / s2;
    m.coefficients(1) = d(1) / spread - Scalar(2) * d(2) * centre / s2;
    m.coefficients(0) = d(0) - d(1) * centre / spread + d(2) * centre * centre / s2;

    auto diag = detail::diagnose(m, x, y);
    diag.poorly_conditioned = x.size() == 3 || detail::relative_min_gap(x) < Scalar(1e-6);
    return {m, diag};
}

template <typename Scalar>
Fitted<QuadFit<Scalar>> fit_quadratic(const PointSet<Scalar>& points) {
    return fit_quadratic(points.col(0), points.col(1));
}

// Log-linear fit: ordinary least squares of ln(y) on x. The diagnostics carry
// R² in both the original and the log space.
template <typename DX, typename DY>
Fitted<ExpFit<typename DX::Scalar>> fit_exponential(const Eigen::MatrixBase<DX>& x,
                                                    const Eigen::MatrixBase<DY>& y) {
    using Scalar = typename DX::Scalar;
    detail::check_inputs(x, y, 2, "fit_exponential");
    if ((y.array() <= Scalar(0)).any())
        throw Error(ErrorKind::Domain, "fit_exponential: every y must be positive");
    if (detail::all_equal(x))
        throw Error(ErrorKind::DegenerateRegressor, "fit_exponential: all x values are equal");

    const Vector<Scalar> log_y = y.array().log();
    const auto log_fit = fit_linear(x, log_y);

    ExpFit<Scalar> m;
    m.ln_scale = log_fit.model.intercept;
    m.rate = log_fit.model.slope;

    auto d = detail::diagnose(m, x, y);
    d.log_r_squared = log_fit.diagnostics.r_squared;
    d.poorly_conditioned = log_fit.diagnostics.poorly_conditioned;
    return {m, d};
}

template <typename Scalar>
Fitted<ExpFit<Scalar>> fit_exponential(const PointSet<Scalar>& points) {
    return fit_exponential(points.col(0), points.col(1));
}

// 1 - SSres/SStot of the model on the given points, in their response space.
// Score an ExpFit in log space by passing ln(y) and a LinearFit view of it.
template <typename Model, typename DX, typename DY>
typename Model::Scalar r_squared(const Model& m, const Eigen::MatrixBase<DX>& x,
                                 const Eigen::MatrixBase<DY>& y) {
    using Scalar = typename Model::Scalar;
    detail::check_inputs(x, y, 2, "r_squared");
    const Scalar ss_tot = (y.array() - y.mean()).square().sum();
    if (ss_tot == Scalar(0))
        throw Error(ErrorKind::UndefinedVariance, "r_squared: response has zero variance");
    return Scalar(1) - (y - predict(m, x)).squaredNorm() / ss_tot;
}

// An ExpFit read as the straight line it is in log space.
template <typename Scalar>
LinearFit<Scalar> log_space(const ExpFit<Scalar>& m) {
    return LinearFit<Scalar>{m.rate, m.ln_scale};
}

} // namespace dalyproj::regress
