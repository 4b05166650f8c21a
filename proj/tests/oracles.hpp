#pragma once

// Reference computations for the tests. Deliberately written without Eigen and
// without the library's centred formulation: raw normal-equation sums in long
// double, Lagrange interpolation, brute-force grid searches.

#include <cmath>
#include <cstddef>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Real = long double;

struct Line {
    Real slope = 0;
    Real intercept = 0;
};

// Cramer's rule on the 2x2 normal equations.
inline Line ols(const std::vector<double>& x, const std::vector<double>& y) {
    Real n = static_cast<Real>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += static_cast<Real>(x[i]) * x[i];
        sxy += static_cast<Real>(x[i]) * y[i];
    }
    const Real det = n * sxx - sx * sx;
    return {(n * sxy - sx * sy) / det, (sxx * sy - sx * sxy) / det};
}

inline Real sse(Real slope, Real intercept, const std::vector<double>& x, const std::vector<double>& y) {
    Real s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Real r = y[i] - (intercept + slope * x[i]);
        s += r * r;
    }
    return s;
}

// Smallest SSE over a (2*half+1)^2 grid spanning [-2|b|, 2|b|] for slope and
// the analogous bracket around the intercept.
inline Real grid_min_sse(const std::vector<double>& x, const std::vector<double>& y, Line centre,
                         int half = 100) {
    const Real bs = 2 * std::fabs(centre.slope) + 1e-9L;
    const Real bi = 2 * std::fabs(centre.intercept) + 1e-9L;
    Real best = INFINITY;
    for (int i = -half; i <= half; ++i)
        for (int j = -half; j <= half; ++j) {
            const Real s = bs * i / half;
            const Real c = bi * j / half;
            const Real e = sse(s, c, x, y);
            if (e < best)
                best = e;
        }
    return best;
}

// Coefficients (c0, c1, c2) of the parabola through three points.
inline std::vector<Real> parabola_through(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<Real> c(3, 0);
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const Real d = (static_cast<Real>(x[i]) - x[j]) * (static_cast<Real>(x[i]) - x[k]);
        const Real w = y[i] / d;
        c[0] += w * x[j] * x[k];
        c[1] -= w * (static_cast<Real>(x[j]) + x[k]);
        c[2] += w;
    }
    return c;
}

inline std::pair<Real, Real> mean_population_sd(const std::vector<double>& v) {
    Real m = 0;
    for (double e : v)
        m += e;
    m /= v.size();
    Real ss = 0;
    for (double e : v)
        ss += (e - m) * (e - m);
    return {m, std::sqrt(ss / v.size())};
}

struct Instance {
    std::vector<double> x;
    std::vector<double> y;
};

// Distinct x spread over at least 0.01, positive y.
inline Instance random_instance(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> ux(-5.0, 5.0), uy(0.5, 500.0);
    Instance inst;
    while (true) {
        inst.x.clear();
        inst.y.clear();
        for (std::size_t i = 0; i < n; ++i) {
            inst.x.push_back(ux(rng));
            inst.y.push_back(uy(rng));
        }
        double lo = inst.x[0], hi = inst.x[0], gap = INFINITY;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                gap = std::min(gap, std::fabs(inst.x[i] - inst.x[j]));
        for (double v : inst.x) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo >= 0.01 && gap > 1e-3)
            return inst;
    }
}

} // namespace oracle
