#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace taildep {

class TailDependenceFunction;

// The four relevant symmetries of the unit square. Sigma1Sigma2 applied to a
// copula yields its survival copula.
enum class Rotation { Sigma1, Sigma2, Tau, Sigma1Sigma2 };

std::string to_string(Rotation r);

// Immutable parametric bivariate copula. cdf() is pure; sample() owns a local
// generator seeded by the caller, so concurrent use needs no synchronization.
class Copula {
  public:
    static Copula independence();
    static Copula comonotone();
    static Copula countermonotone();
    static Copula frechet(double alpha, double beta);
    static Copula marshall_olkin(double a, double b);
    static Copula clayton(double theta);
    static Copula gumbel(double theta);
    static Copula singular_nelsen(double theta);
    static Copula student_t(double nu, double rho);
    static Copula mixture(std::vector<double> weights, std::vector<Copula> components);
    static Copula rotated(Rotation rot, Copula base);
    // Copula with a prescribed tail dependence function, C(u,v) = max(L(u,v), u+v-1).
    // Sampling uses conditional inversion on a grid and is approximate.
    static Copula from_tdf(TailDependenceFunction tdf, int sampler_grid = 1024);

    double cdf(double u, double v) const;
    std::vector<std::pair<double, double>> sample(std::size_t n, std::uint64_t seed) const;
    Copula rotate(Rotation rot) const { return rotated(rot, *this); }
    std::string name() const;

    struct Node;
    const std::shared_ptr<const Node>& sample_node() const;

  private:
    explicit Copula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

} // namespace taildep
