#pragma once

#include <cstdint>
#include <random>

namespace taildep {

// Seedable random source. The engine is std::mt19937_64 (bit-exact across
// platforms by the standard); all variate transforms below are implemented
// on top of the raw 64-bit stream so that every draw is reproducible from
// the seed alone, independent of the standard library's distribution
// implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on the open interval (0,1).
    double uniform01() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1p-53;
    }

    // Standard normal via Box-Muller; the second variate of each pair is cached.
    double normal();

    double exponential();

    // Gamma(shape, 1) by Marsaglia-Tsang, with the boost U^(1/a) for shape < 1.
    double gamma(double shape);

    double chi_squared(double df) { return 2.0 * gamma(0.5 * df); }

    // One-sided alpha-stable with Laplace transform exp(-t^alpha), alpha in (0,1).
    // Kanter's representation.
    double positive_stable(double alpha);

  private:
    std::mt19937_64 gen_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

// Deterministic per-replicate seed derivation (splitmix64 of seed ^ f(index)).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

} // namespace taildep
