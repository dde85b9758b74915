#include "taildep/copula.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "taildep/quadrature.hpp"
#include "taildep/rng.hpp"
#include "taildep/special.hpp"
#include "taildep/tdf.hpp"

namespace taildep {

std::string to_string(Rotation r) {
    switch (r) {
        case Rotation::Sigma1: return "sigma1";
        case Rotation::Sigma2: return "sigma2";
        case Rotation::Tau: return "tau";
        case Rotation::Sigma1Sigma2: return "sigma1sigma2";
    }
    return "?";
}

namespace {

struct Independence {};
struct Comonotone {};
struct Countermonotone {};
struct Frechet {
    double alpha, beta;
};
struct MarshallOlkin {
    double a, b;
};
struct Clayton {
    double theta;
};
struct Gumbel {
    double theta;
};
struct SingularNelsen {
    double theta;
};
struct StudentT {
    double nu, rho;
};
struct Mixture {
    std::vector<double> weights;
    std::vector<Copula> components;
};
struct Rotated {
    Rotation rot;
    std::shared_ptr<const Copula::Node> base;
};
struct FromTdf {
    std::shared_ptr<const TailDependenceFunction> tdf;
    int grid;
};

using Family = std::variant<Independence, Comonotone, Countermonotone, Frechet, MarshallOlkin,
                            Clayton, Gumbel, SingularNelsen, StudentT, Mixture, Rotated, FromTdf>;

} // namespace

struct Copula::Node {
    Family family;
};

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

const Family& fam(const std::shared_ptr<const Copula::Node>& n) { return n->family; }

double node_cdf(const Family& f, double u, double v);

double clayton_cdf(double theta, double u, double v) {
    if (u == 0.0 || v == 0.0) return 0.0;
    const double m = std::min(u, v);
    const double mx = std::max(u, v);
    // (u^-t + v^-t - 1)^(-1/t) = m * (1 + (m/mx)^t - m^t)^(-1/t), stable for large t
    const double inner = 1.0 + std::pow(m / mx, theta) - std::pow(m, theta);
    return m * std::pow(inner, -1.0 / theta);
}

double gumbel_cdf(double theta, double u, double v) {
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == 1.0) return v;
    if (v == 1.0) return u;
    const double x = -std::log(u);
    const double y = -std::log(v);
    const double mx = std::max(x, y);
    const double s = mx * std::pow(1.0 + std::pow(std::min(x, y) / mx, theta), 1.0 / theta);
    return std::exp(-s);
}

double student_t_cdf2(const StudentT& p, double u, double v) {
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == 1.0) return v;
    if (v == 1.0) return u;
    // Integrate the conditional distribution over the smaller of the two
    // probabilities: C(u,v) = int_0^u T_{nu+1}(h(x_p; y)) dp with x_p the
    // t quantile of p. Symmetric in (u,v).
    const double ua = std::min(u, v);
    const double vb = std::max(u, v);
    const double y = student_t_quantile(vb, p.nu);
    const double c = std::sqrt((p.nu + 1.0) / (1.0 - p.rho * p.rho));
    auto integrand = [&](double q) {
        if (q <= 0.0) return student_t_cdf(p.rho * c, p.nu + 1.0); // x -> -inf limit
        const double x = student_t_quantile(q, p.nu);
        const double scale = c / std::sqrt(p.nu + x * x);
        return student_t_cdf((y - p.rho * x) * scale, p.nu + 1.0);
    };
    return integrate(integrand, 0.0, ua, QuadratureOptions{0.5e-9, 40});
}

double node_cdf(const Family& f, double u, double v) {
    return std::visit(
        [&](const auto& c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Independence>) {
                return u * v;
            } else if constexpr (std::is_same_v<T, Comonotone>) {
                return std::min(u, v);
            } else if constexpr (std::is_same_v<T, Countermonotone>) {
                return std::max(u + v - 1.0, 0.0);
            } else if constexpr (std::is_same_v<T, Frechet>) {
                return c.alpha * std::min(u, v) + c.beta * std::max(u + v - 1.0, 0.0) +
                       (1.0 - c.alpha - c.beta) * u * v;
            } else if constexpr (std::is_same_v<T, MarshallOlkin>) {
                return std::min(std::pow(u, 1.0 - c.a) * v, u * std::pow(v, 1.0 - c.b));
            } else if constexpr (std::is_same_v<T, Clayton>) {
                return clayton_cdf(c.theta, u, v);
            } else if constexpr (std::is_same_v<T, Gumbel>) {
                return gumbel_cdf(c.theta, u, v);
            } else if constexpr (std::is_same_v<T, SingularNelsen>) {
                if (c.theta * v >= u) return u;
                if ((1.0 - c.theta) * v < 1.0 - u) return c.theta * v;
                return u + v - 1.0;
            } else if constexpr (std::is_same_v<T, StudentT>) {
                return student_t_cdf2(c, u, v);
            } else if constexpr (std::is_same_v<T, Mixture>) {
                double s = 0.0;
                for (std::size_t i = 0; i < c.weights.size(); ++i) {
                    s += c.weights[i] * c.components[i].cdf(u, v);
                }
                return s;
            } else if constexpr (std::is_same_v<T, Rotated>) {
                switch (c.rot) {
                    case Rotation::Sigma1: return v - node_cdf(c.base->family, 1.0 - u, v);
                    case Rotation::Sigma2: return u - node_cdf(c.base->family, u, 1.0 - v);
                    case Rotation::Tau: return node_cdf(c.base->family, v, u);
                    case Rotation::Sigma1Sigma2:
                        return u + v - 1.0 + node_cdf(c.base->family, 1.0 - u, 1.0 - v);
                }
                return 0.0;
            } else {
                static_assert(std::is_same_v<T, FromTdf>);
                return std::max((*c.tdf)(u, v), u + v - 1.0);
            }
        },
        f);
}

std::pair<double, double> sample_one(const Family& f, Rng& rng);

std::pair<double, double> sample_from_tdf(const FromTdf& c, Rng& rng,
                                          const std::vector<std::vector<double>>& cond) {
    const int m = c.grid;
    const double u = rng.uniform01();
    int col = static_cast<int>(u * m);
    if (col >= m) col = m - 1;
    const double w = rng.uniform01();
    const auto& row = cond[static_cast<std::size_t>(col)]; // F(v_j | column), j = 0..m
    // invert the piecewise-linear conditional cdf
    const auto it = std::lower_bound(row.begin(), row.end(), w);
    std::size_t j = static_cast<std::size_t>(it - row.begin());
    if (j == 0) j = 1;
    if (j > static_cast<std::size_t>(m)) j = static_cast<std::size_t>(m);
    const double f0 = row[j - 1];
    const double f1 = row[j];
    const double frac = (f1 > f0) ? (w - f0) / (f1 - f0) : 0.5;
    const double v = (static_cast<double>(j - 1) + frac) / m;
    return {u, v};
}

std::pair<double, double> sample_one(const Family& f, Rng& rng) {
    return std::visit(
        [&](const auto& c) -> std::pair<double, double> {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Independence>) {
                const double u = rng.uniform01();
                const double v = rng.uniform01();
                return {u, v};
            } else if constexpr (std::is_same_v<T, Comonotone>) {
                const double u = rng.uniform01();
                return {u, u};
            } else if constexpr (std::is_same_v<T, Countermonotone>) {
                const double u = rng.uniform01();
                return {u, 1.0 - u};
            } else if constexpr (std::is_same_v<T, Frechet>) {
                const double s = rng.uniform01();
                if (s < c.alpha) {
                    const double u = rng.uniform01();
                    return {u, u};
                }
                if (s < c.alpha + c.beta) {
                    const double u = rng.uniform01();
                    return {u, 1.0 - u};
                }
                const double u = rng.uniform01();
                const double v = rng.uniform01();
                return {u, v};
            } else if constexpr (std::is_same_v<T, MarshallOlkin>) {
                const double e1 = rng.exponential();
                const double e2 = rng.exponential();
                const double e12 = rng.exponential();
                const double lam1 = 1.0 / c.a - 1.0;
                const double lam2 = 1.0 / c.b - 1.0;
                const double x = (lam1 > 0.0) ? std::min(e1 / lam1, e12) : e12;
                const double y = (lam2 > 0.0) ? std::min(e2 / lam2, e12) : e12;
                return {std::exp(-x / c.a), std::exp(-y / c.b)};
            } else if constexpr (std::is_same_v<T, Clayton>) {
                const double w = rng.gamma(1.0 / c.theta);
                const double u = std::pow(1.0 + rng.exponential() / w, -1.0 / c.theta);
                const double v = std::pow(1.0 + rng.exponential() / w, -1.0 / c.theta);
                return {u, v};
            } else if constexpr (std::is_same_v<T, Gumbel>) {
                if (c.theta == 1.0) {
                    const double u = rng.uniform01();
                    const double v = rng.uniform01();
                    return {u, v};
                }
                const double s = rng.positive_stable(1.0 / c.theta);
                const double u = std::exp(-std::pow(rng.exponential() / s, 1.0 / c.theta));
                const double v = std::exp(-std::pow(rng.exponential() / s, 1.0 / c.theta));
                return {u, v};
            } else if constexpr (std::is_same_v<T, SingularNelsen>) {
                const double s = rng.uniform01();
                const double t = rng.uniform01();
                if (s < c.theta) return {c.theta * t, t};
                return {c.theta + (1.0 - c.theta) * t, 1.0 - t};
            } else if constexpr (std::is_same_v<T, StudentT>) {
                const double z1 = rng.normal();
                const double z2 = rng.normal();
                const double w = rng.chi_squared(c.nu) / c.nu;
                const double x = z1 / std::sqrt(w);
                const double y = (c.rho * z1 + std::sqrt(1.0 - c.rho * c.rho) * z2) / std::sqrt(w);
                return {student_t_cdf(x, c.nu), student_t_cdf(y, c.nu)};
            } else if constexpr (std::is_same_v<T, Mixture>) {
                const double s = rng.uniform01();
                double acc = 0.0;
                std::size_t pick = c.weights.size() - 1;
                for (std::size_t i = 0; i < c.weights.size(); ++i) {
                    acc += c.weights[i];
                    if (s < acc) {
                        pick = i;
                        break;
                    }
                }
                return sample_one(fam(c.components[pick].sample_node()), rng);
            } else if constexpr (std::is_same_v<T, Rotated>) {
                auto [x, y] = sample_one(c.base->family, rng);
                switch (c.rot) {
                    case Rotation::Sigma1: return {1.0 - x, y};
                    case Rotation::Sigma2: return {x, 1.0 - y};
                    case Rotation::Tau: return {y, x};
                    case Rotation::Sigma1Sigma2: return {1.0 - x, 1.0 - y};
                }
                return {x, y};
            } else {
                static_assert(std::is_same_v<T, FromTdf>);
                throw std::logic_error("FromTdf sampling handled separately");
            }
        },
        f);
}

std::string node_name(const Family& f) {
    std::ostringstream os;
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Independence>) {
                os << "pi";
            } else if constexpr (std::is_same_v<T, Comonotone>) {
                os << "m";
            } else if constexpr (std::is_same_v<T, Countermonotone>) {
                os << "w";
            } else if constexpr (std::is_same_v<T, Frechet>) {
                os << "frechet(" << c.alpha << "," << c.beta << ")";
            } else if constexpr (std::is_same_v<T, MarshallOlkin>) {
                os << "mo(" << c.a << "," << c.b << ")";
            } else if constexpr (std::is_same_v<T, Clayton>) {
                os << "clayton(" << c.theta << ")";
            } else if constexpr (std::is_same_v<T, Gumbel>) {
                os << "gumbel(" << c.theta << ")";
            } else if constexpr (std::is_same_v<T, SingularNelsen>) {
                os << "singular(" << c.theta << ")";
            } else if constexpr (std::is_same_v<T, StudentT>) {
                os << "t(" << c.nu << "," << c.rho << ")";
            } else if constexpr (std::is_same_v<T, Mixture>) {
                os << "mix(";
                for (std::size_t i = 0; i < c.weights.size(); ++i) {
                    if (i) os << ";";
                    os << c.weights[i] << "," << c.components[i].name();
                }
                os << ")";
            } else if constexpr (std::is_same_v<T, Rotated>) {
                os << "rot(" << to_string(c.rot) << "," << node_name(c.base->family) << ")";
            } else {
                static_assert(std::is_same_v<T, FromTdf>);
                os << "c_lambda(" << c.tdf->name() << ")";
            }
        },
        f);
    return os.str();
}

} // namespace

Copula Copula::independence() { return Copula(std::make_shared<Node>(Node{Independence{}})); }
Copula Copula::comonotone() { return Copula(std::make_shared<Node>(Node{Comonotone{}})); }
Copula Copula::countermonotone() { return Copula(std::make_shared<Node>(Node{Countermonotone{}})); }

Copula Copula::frechet(double alpha, double beta) {
    require(alpha >= 0.0 && beta >= 0.0 && alpha + beta <= 1.0 + 1e-12,
            "frechet: need alpha,beta >= 0 and alpha+beta <= 1");
    return Copula(std::make_shared<Node>(Node{Frechet{alpha, beta}}));
}

Copula Copula::marshall_olkin(double a, double b) {
    require(a > 0.0 && a <= 1.0 && b > 0.0 && b <= 1.0, "marshall_olkin: a,b must lie in (0,1]");
    return Copula(std::make_shared<Node>(Node{MarshallOlkin{a, b}}));
}

Copula Copula::clayton(double theta) {
    require(theta > 0.0, "clayton: theta must be positive");
    return Copula(std::make_shared<Node>(Node{Clayton{theta}}));
}

Copula Copula::gumbel(double theta) {
    require(theta >= 1.0, "gumbel: theta must be >= 1");
    return Copula(std::make_shared<Node>(Node{Gumbel{theta}}));
}

Copula Copula::singular_nelsen(double theta) {
    require(theta >= 0.0 && theta <= 1.0, "singular_nelsen: theta must lie in [0,1]");
    return Copula(std::make_shared<Node>(Node{SingularNelsen{theta}}));
}

Copula Copula::student_t(double nu, double rho) {
    require(nu > 0.0, "student_t: nu must be positive");
    require(rho > -1.0 && rho < 1.0, "student_t: rho must lie in (-1,1)");
    return Copula(std::make_shared<Node>(Node{StudentT{nu, rho}}));
}

Copula Copula::mixture(std::vector<double> weights, std::vector<Copula> components) {
    require(!weights.empty() && weights.size() == components.size(),
            "mixture: weights and components must be non-empty and of equal size");
    double s = 0.0;
    for (double w : weights) {
        require(w >= 0.0, "mixture: weights must be nonnegative");
        s += w;
    }
    require(std::fabs(s - 1.0) <= 1e-12,
            "mixture: weights must sum to 1 (got " + std::to_string(s) + ")");
    return Copula(std::make_shared<Node>(Node{Mixture{std::move(weights), std::move(components)}}));
}

Copula Copula::rotated(Rotation rot, Copula base) {
    return Copula(std::make_shared<Node>(Node{Rotated{rot, base.node_}}));
}

Copula Copula::from_tdf(TailDependenceFunction tdf, int sampler_grid) {
    require(sampler_grid >= 16, "from_tdf: sampler grid too small");
    auto report = validate_tdf([&](double u, double v) { return tdf(u, v); });
    if (!report.ok()) {
        throw std::invalid_argument("from_tdf: candidate violates the tail dependence function "
                                    "characterization: " + report.describe());
    }
    return Copula(std::make_shared<Node>(
        Node{FromTdf{std::make_shared<TailDependenceFunction>(std::move(tdf)), sampler_grid}}));
}

double Copula::cdf(double u, double v) const {
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
        throw std::domain_error("cdf: arguments must lie in [0,1]^2");
    }
    return node_cdf(node_->family, u, v);
}

std::vector<std::pair<double, double>> Copula::sample(std::size_t n, std::uint64_t seed) const {
    if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    Rng rng(seed);
    if (const auto* ft = std::get_if<FromTdf>(&node_->family)) {
        // precompute conditional cdf tables per u-column
        const int m = ft->grid;
        std::vector<std::vector<double>> cond(static_cast<std::size_t>(m));
        const double du = 1.0 / m;
        auto cdfv = [&](double uu, double vv) {
            return std::max((*ft->tdf)(uu, vv), uu + vv - 1.0);
        };
        for (int j = 0; j < m; ++j) {
            auto& row = cond[static_cast<std::size_t>(j)];
            row.resize(static_cast<std::size_t>(m) + 1);
            const double u0 = j * du, u1 = (j + 1) * du;
            for (int i = 0; i <= m; ++i) {
                const double v = static_cast<double>(i) / m;
                row[static_cast<std::size_t>(i)] = (cdfv(u1, v) - cdfv(u0, v)) / du;
            }
            // monotone clean-up against rounding
            for (int i = 1; i <= m; ++i) {
                auto& r = row[static_cast<std::size_t>(i)];
                r = std::min(1.0, std::max(r, row[static_cast<std::size_t>(i - 1)]));
            }
            row[static_cast<std::size_t>(m)] = 1.0;
        }
        for (std::size_t i = 0; i < n; ++i) out.push_back(sample_from_tdf(*ft, rng, cond));
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample_one(node_->family, rng));
    return out;
}

std::string Copula::name() const { return node_name(node_->family); }

// Mixture sampling needs access to child nodes.
const std::shared_ptr<const Copula::Node>& Copula::sample_node() const { return node_; }

} // namespace taildep
