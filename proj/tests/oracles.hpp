// Test-only oracles, independent of the implementation paths they check:
// a fixed-subdivision Simpson integrator, Monte Carlo CDF comparison helpers,
// central finite differences and the Kolmogorov-Smirnov statistic.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

// composite Simpson with a fixed (even) number of panels; no adaptivity so it
// cannot share failure modes with the adaptive integrator under test
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    const int n = panels % 2 == 0 ? panels : panels + 1;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Simpson with explicit breakpoints for piecewise-smooth integrands
inline double simpson_split(const std::function<double(double)>& f, double a, double b,
                            std::vector<double> cuts, int panels_per_piece = 4096) {
    cuts.push_back(a);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                              [&](double x) { return x < a || x > b; }),
               cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += simpson(f, cuts[i], cuts[i + 1], panels_per_piece);
    }
    return total;
}

inline double central_diff(const std::function<double(double)>& f, double x, double h = 1e-6) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// empirical CDF count at a point
inline double empirical_cdf(const std::vector<std::pair<double, double>>& uv, double u, double v) {
    std::size_t c = 0;
    for (const auto& [x, y] : uv) c += (x <= u && y <= v) ? 1 : 0;
    return static_cast<double>(c) / static_cast<double>(uv.size());
}

// Kolmogorov-Smirnov statistic of a sample against U(0,1)
inline double ks_uniform(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double fn_hi = static_cast<double>(i + 1) / n;
        const double fn_lo = static_cast<double>(i) / n;
        d = std::max(d, std::max(std::fabs(fn_hi - xs[i]), std::fabs(xs[i] - fn_lo)));
    }
    return d;
}

// brute-force midrank oracle: rank by pairwise comparison
inline std::vector<double> brute_midranks(const std::vector<double>& x) {
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::size_t less = 0, equal = 0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (x[j] < x[i]) ++less;
            if (x[j] == x[i]) ++equal;
        }
        r[i] = (static_cast<double>(less) + 0.5 * static_cast<double>(equal + 1)) /
               static_cast<double>(x.size());
    }
    return r;
}

} // namespace oracle
