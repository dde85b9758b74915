#include "taildep/rng.hpp"

#include <cmath>

namespace taildep {

double Rng::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    cached_normal_ = r * std::sin(a);
    has_cached_normal_ = true;
    return r * std::cos(a);
}

double Rng::exponential() { return -std::log(uniform01()); }

double Rng::gamma(double shape) {
    if (shape < 1.0) {
        const double u = uniform01();
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double Rng::positive_stable(double alpha) {
    // S = (a(U)/E)^((1-alpha)/alpha),
    // a(u) = sin(alpha*pi*u)^(alpha/(1-alpha)) * sin((1-alpha)*pi*u) / sin(pi*u)^(1/(1-alpha)).
    const double u = uniform01();
    const double e = exponential();
    const double pu = M_PI * u;
    const double log_a = (alpha / (1.0 - alpha)) * std::log(std::sin(alpha * pu)) +
                         std::log(std::sin((1.0 - alpha) * pu)) -
                         (1.0 / (1.0 - alpha)) * std::log(std::sin(pu));
    return std::exp(((1.0 - alpha) / alpha) * (log_a - std::log(e)));
}

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}
} // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 1));
}

} // namespace taildep
