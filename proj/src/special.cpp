#include "taildep/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace taildep {

namespace {

// Continued fraction for the incomplete beta function, modified Lentz.
double beta_cf(double a, double b, double x) {
    constexpr int max_iter = 400;
    constexpr double eps = 1e-15;
    constexpr double fpmin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    throw std::runtime_error("regularized_incomplete_beta: continued fraction did not converge");
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete beta: a, b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double x, double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("student_t_cdf: nu must be positive");
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    const double t2 = x * x;
    // I_z(nu/2, 1/2) with z = nu/(nu+x^2) gives the two-sided tail.
    const double z = nu / (nu + t2);
    const double p = 0.5 * regularized_incomplete_beta(0.5 * nu, 0.5, z);
    return x > 0.0 ? 1.0 - p : p;
}

double student_t_pdf(double x, double nu) {
    const double ln = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                      0.5 * std::log(nu * M_PI) -
                      0.5 * (nu + 1.0) * std::log1p(x * x / nu);
    return std::exp(ln);
}

double student_t_quantile(double p, double nu) {
    if (!(p > 0.0) || !(p < 1.0)) throw std::invalid_argument("student_t_quantile: p must lie in (0,1)");
    if (p == 0.5) return 0.0;
    // Bracket, then Newton with bisection fallback.
    double lo = -1.0, hi = 1.0;
    while (student_t_cdf(lo, nu) > p) lo *= 2.0;
    while (student_t_cdf(hi, nu) < p) hi *= 2.0;
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double f = student_t_cdf(x, nu) - p;
        if (f > 0.0) hi = x; else lo = x;
        const double dens = student_t_pdf(x, nu);
        double step = (dens > 0.0) ? f / dens : 0.0;
        double next = x - step;
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - x) < 1e-14 * (1.0 + std::fabs(x))) return next;
        x = next;
    }
    return x;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

} // namespace taildep
