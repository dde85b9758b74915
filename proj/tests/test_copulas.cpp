#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "taildep/copula.hpp"
#include "taildep/rng.hpp"

using namespace taildep;

namespace {

struct NamedCopula {
    const char* label;
    Copula copula;
    double cdf_tol; // numeric CDFs carry integration error
};

std::vector<NamedCopula> family_sweep() {
    return {
        {"pi", Copula::independence(), 1e-12},
        {"m", Copula::comonotone(), 1e-12},
        {"w", Copula::countermonotone(), 1e-12},
        {"frechet", Copula::frechet(0.3, 0.2), 1e-12},
        {"mo", Copula::marshall_olkin(0.353, 0.75), 1e-12},
        {"clayton", Copula::clayton(2.0), 1e-12},
        {"gumbel", Copula::gumbel(2.0), 1e-12},
        {"singular", Copula::singular_nelsen(0.4), 1e-12},
        {"smo", Copula::rotated(Rotation::Sigma1Sigma2, Copula::marshall_olkin(0.353, 0.75)),
         1e-12},
        {"mix", Copula::mixture({0.5, 0.5}, {Copula::clayton(2.0), Copula::independence()}),
         1e-12},
        {"t", Copula::student_t(5.0, 0.5), 1e-9},
    };
}

// closed-form Archimedean oracle from the Clayton generator phi(x) = (1+x)^(-1/theta)
double clayton_oracle(double theta, double u, double v) {
    auto phi = [&](double x) { return std::pow(1.0 + x, -1.0 / theta); };
    auto phi_inv = [&](double y) { return std::pow(y, -theta) - 1.0; };
    return phi(phi_inv(u) + phi_inv(v));
}

} // namespace

TEST_CASE("parameter domains are enforced at construction") {
    CHECK_THROWS_AS(Copula::frechet(0.7, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(Copula::frechet(-0.1, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(Copula::marshall_olkin(0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(Copula::marshall_olkin(0.5, 1.2), std::invalid_argument);
    CHECK_THROWS_AS(Copula::clayton(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Copula::gumbel(0.9), std::invalid_argument);
    CHECK_THROWS_AS(Copula::singular_nelsen(1.1), std::invalid_argument);
    CHECK_THROWS_AS(Copula::student_t(0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(Copula::student_t(5.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Copula::mixture({0.6, 0.6}, {Copula::independence(), Copula::comonotone()}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Copula::independence().cdf(1.2, 0.5), std::domain_error);
    CHECK_THROWS_AS(Copula::independence().cdf(0.5, -0.1), std::domain_error);
}

TEST_CASE("cdf spot values") {
    CHECK(Copula::independence().cdf(0.3, 0.5) == doctest::Approx(0.15).epsilon(1e-15));

    const Copula mo = Copula::marshall_olkin(0.353, 0.75);
    const double expected = std::min(std::pow(0.5, 1.0 - 0.353) * 0.5,
                                     0.5 * std::pow(0.5, 1.0 - 0.75));
    CHECK(mo.cdf(0.5, 0.5) == doctest::Approx(expected).epsilon(1e-15));

    // theta v = 0.32 >= u = 0.2, so C = u
    CHECK(Copula::singular_nelsen(0.4).cdf(0.2, 0.8) == doctest::Approx(0.2).epsilon(1e-15));

    for (double u : {0.2, 0.5, 0.9}) {
        for (double v : {0.1, 0.6, 0.95}) {
            CHECK(Copula::clayton(2.0).cdf(u, v) ==
                  doctest::Approx(clayton_oracle(2.0, u, v)).epsilon(1e-14));
        }
    }
}

TEST_CASE("marshall-olkin cdf agrees with a monte carlo oracle") {
    const Copula mo = Copula::marshall_olkin(0.353, 0.75);
    const auto uv = mo.sample(1000000, 20240102);
    const double c = mo.cdf(0.5, 0.5);
    const double chat = oracle::empirical_cdf(uv, 0.5, 0.5);
    const double se = std::sqrt(c * (1.0 - c) / 1e6);
    CHECK(std::fabs(chat - c) <= 3.0 * se);
}

TEST_CASE("frechet-hoeffding bounds, groundedness and uniform margins") {
    Rng rng(99);
    for (const auto& fam : family_sweep()) {
        INFO("family: ", fam.label);
        const int points = std::string(fam.label) == "t" ? 2000 : 10000;
        for (int i = 0; i < points; ++i) {
            const double u = rng.uniform01();
            const double v = rng.uniform01();
            const double c = fam.copula.cdf(u, v);
            const double lo = std::max(u + v - 1.0, 0.0);
            const double hi = std::min(u, v);
            REQUIRE(c >= lo - fam.cdf_tol);
            REQUIRE(c <= hi + fam.cdf_tol);
        }
        for (double t : {0.0, 0.21, 0.5, 0.88, 1.0}) {
            REQUIRE(std::fabs(fam.copula.cdf(t, 0.0)) <= fam.cdf_tol);
            REQUIRE(std::fabs(fam.copula.cdf(0.0, t)) <= fam.cdf_tol);
            REQUIRE(std::fabs(fam.copula.cdf(t, 1.0) - t) <= fam.cdf_tol);
            REQUIRE(std::fabs(fam.copula.cdf(1.0, t) - t) <= fam.cdf_tol);
        }
    }
}

TEST_CASE("cdf is 2-increasing on random rectangles") {
    Rng rng(7);
    for (const auto& fam : family_sweep()) {
        INFO("family: ", fam.label);
        const bool numeric = std::string(fam.label) == "t";
        const double tol = numeric ? 1e-8 : 1e-10; // numeric CDF error enters four times
        const int rects = numeric ? 300 : 2000;
        for (int i = 0; i < rects; ++i) {
            double u1 = rng.uniform01(), u2 = rng.uniform01();
            double v1 = rng.uniform01(), v2 = rng.uniform01();
            if (u1 > u2) std::swap(u1, u2);
            if (v1 > v2) std::swap(v1, v2);
            const double vol = fam.copula.cdf(u2, v2) - fam.copula.cdf(u2, v1) -
                               fam.copula.cdf(u1, v2) + fam.copula.cdf(u1, v1);
            REQUIRE(vol >= -tol);
        }
    }
}

TEST_CASE("samplers reproduce their cdf at grid points") {
    const std::size_t n = 100000;
    for (const auto& fam : family_sweep()) {
        INFO("family: ", fam.label);
        const auto uv = fam.copula.sample(n, 31415);
        for (int i = 1; i <= 5; ++i) {
            for (int j = 1; j <= 5; ++j) {
                const double u = i / 6.0;
                const double v = j / 6.0;
                const double c = fam.copula.cdf(u, v);
                const double chat = oracle::empirical_cdf(uv, u, v);
                const double se = std::sqrt(std::max(c * (1.0 - c), 1e-12) / n);
                REQUIRE(std::fabs(chat - c) <= 3.0 * se + 1e-9);
            }
        }
    }
}

TEST_CASE("sampled margins are uniform (KS below the 1% critical value)") {
    const std::size_t n = 100000;
    const double crit = 1.63 / std::sqrt(static_cast<double>(n));
    for (const auto& fam : family_sweep()) {
        INFO("family: ", fam.label);
        const auto uv = fam.copula.sample(n, 5150);
        std::vector<double> us, vs;
        us.reserve(n);
        vs.reserve(n);
        for (const auto& [u, v] : uv) {
            us.push_back(u);
            vs.push_back(v);
        }
        REQUIRE(oracle::ks_uniform(us) < crit);
        REQUIRE(oracle::ks_uniform(vs) < crit);
    }
}

TEST_CASE("comonotone samples have identical coordinates") {
    const auto uv = Copula::comonotone().sample(3, 17);
    for (const auto& [u, v] : uv) CHECK(u == v);
}

TEST_CASE("singular copula places mass theta on the steep segment") {
    const double theta = 0.4;
    const std::size_t n = 100000;
    const auto uv = Copula::singular_nelsen(theta).sample(n, 8);
    std::size_t on_segment = 0;
    for (const auto& [u, v] : uv) on_segment += (std::fabs(u - theta * v) < 1e-12) ? 1 : 0;
    const double frac = static_cast<double>(on_segment) / static_cast<double>(n);
    CHECK(std::fabs(frac - theta) <= 3.0 * std::sqrt(theta * (1.0 - theta) / n));
}

TEST_CASE("clayton sampler matches the generator-form cdf") {
    const std::size_t n = 100000;
    const auto uv = Copula::clayton(2.0).sample(n, 99);
    const double c = clayton_oracle(2.0, 0.5, 0.5);
    const double chat = oracle::empirical_cdf(uv, 0.5, 0.5);
    CHECK(std::fabs(chat - c) <= 3.0 * std::sqrt(c * (1.0 - c) / n));
}

TEST_CASE("sampling is deterministic given the seed") {
    const Copula c = Copula::gumbel(1.7);
    CHECK(c.sample(500, 42) == c.sample(500, 42));
    CHECK(c.sample(500, 42) != c.sample(500, 43));
}

TEST_CASE("rotations") {
    // survival rotation of the radially symmetric independence copula is itself
    const Copula rot_pi = Copula::rotated(Rotation::Sigma1Sigma2, Copula::independence());
    for (int i = 0; i <= 10; ++i) {
        for (int j = 0; j <= 10; ++j) {
            const double u = i / 10.0, v = j / 10.0;
            CHECK(rot_pi.cdf(u, v) == doctest::Approx(u * v).epsilon(1e-14));
        }
    }

    // M is exchangeable
    const Copula rot_m = Copula::rotated(Rotation::Tau, Copula::comonotone());
    for (int i = 0; i <= 100; ++i) {
        for (int j = 0; j <= 100; ++j) {
            const double u = i / 100.0, v = j / 100.0;
            REQUIRE(rot_m.cdf(u, v) == doctest::Approx(std::min(u, v)).epsilon(1e-14));
        }
    }

    // survival copula by inclusion-exclusion
    const Copula mo = Copula::marshall_olkin(0.353, 0.75);
    const Copula smo = mo.rotate(Rotation::Sigma1Sigma2);
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            const double u = i / 20.0, v = j / 20.0;
            REQUIRE(smo.cdf(u, v) ==
                    doctest::Approx(u + v - 1.0 + mo.cdf(1.0 - u, 1.0 - v)).epsilon(1e-13));
        }
    }

    // sigma1 is an involution
    const Copula twice =
        Copula::rotated(Rotation::Sigma1, Copula::rotated(Rotation::Sigma1, mo));
    for (int i = 1; i < 20; ++i) {
        for (int j = 1; j < 20; ++j) {
            const double u = i / 20.0, v = j / 20.0;
            REQUIRE(twice.cdf(u, v) == doctest::Approx(mo.cdf(u, v)).epsilon(1e-13));
        }
    }
}
