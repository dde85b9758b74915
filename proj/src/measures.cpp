#include "taildep/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "taildep/quadrature.hpp"

namespace taildep {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

} // namespace

GeneratingMeasure GeneratingMeasure::atom(double u0, double v0) {
    require(u0 > 0.0 && u0 <= 1.0 && v0 > 0.0 && v0 <= 1.0,
            "atom: (u0,v0) must lie in (0,1]^2 (no mass on the zero boundary)");
    GeneratingMeasure m;
    m.components_.emplace_back(1.0, Atom{u0, v0});
    return m;
}

GeneratingMeasure GeneratingMeasure::diagonal_uniform() {
    GeneratingMeasure m;
    m.components_.emplace_back(1.0, DiagonalUniform{});
    return m;
}

GeneratingMeasure GeneratingMeasure::antidiagonal_uniform() {
    GeneratingMeasure m;
    m.components_.emplace_back(1.0, AntidiagonalUniform{});
    return m;
}

GeneratingMeasure GeneratingMeasure::line_segment(double slope, double monomial_m) {
    require(slope > 0.0 && std::isfinite(slope), "line_segment: slope must lie in (0,inf)");
    require(monomial_m > 0.0, "line_segment: monomial exponent must be positive");
    GeneratingMeasure m;
    m.components_.emplace_back(1.0, LineSegment{slope, monomial_m});
    return m;
}

GeneratingMeasure GeneratingMeasure::monomial_product(double m1, double m2) {
    require(m1 > 0.0 && m2 > 0.0, "monomial_product: exponents must be positive");
    GeneratingMeasure m;
    m.components_.emplace_back(1.0, MonomialProduct{m1, m2});
    return m;
}

GeneratingMeasure GeneratingMeasure::mixture(const std::vector<double>& weights,
                                             const std::vector<GeneratingMeasure>& parts) {
    require(!weights.empty() && weights.size() == parts.size(),
            "mixture: weights and parts must be non-empty and of equal size");
    double s = 0.0;
    for (double w : weights) {
        require(w >= 0.0, "mixture: weights must be nonnegative");
        s += w;
    }
    require(std::fabs(s - 1.0) <= 1e-12,
            "mixture: weights must sum to 1 (got " + std::to_string(s) + ")");
    GeneratingMeasure m;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (const auto& [w, part] : parts[i].components_) {
            if (weights[i] * w > 0.0) m.components_.emplace_back(weights[i] * w, part);
        }
    }
    require(!m.components_.empty(), "mixture: all weights vanish");
    return m;
}

bool GeneratingMeasure::touches_diagonal() const {
    for (const auto& [w, part] : components_) {
        (void)w;
        const bool hit = std::visit(
            [](const auto& p) -> bool {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, Atom>) {
                    return p.u == p.v;
                } else if constexpr (std::is_same_v<T, DiagonalUniform>) {
                    return true;
                } else if constexpr (std::is_same_v<T, AntidiagonalUniform>) {
                    return false;
                } else if constexpr (std::is_same_v<T, LineSegment>) {
                    return p.slope == 1.0;
                } else {
                    static_assert(std::is_same_v<T, MonomialProduct>);
                    return true; // absolutely continuous with full support
                }
            },
            part);
        if (hit) return true;
    }
    return false;
}

std::string GeneratingMeasure::name() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, part] : components_) {
        if (!first) os << "+";
        first = false;
        os << w << "*";
        std::visit(
            [&](const auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, Atom>) {
                    os << "atom(" << p.u << "," << p.v << ")";
                } else if constexpr (std::is_same_v<T, DiagonalUniform>) {
                    os << "diag";
                } else if constexpr (std::is_same_v<T, AntidiagonalUniform>) {
                    os << "antidiag";
                } else if constexpr (std::is_same_v<T, LineSegment>) {
                    os << "line(" << p.slope << ";m=" << p.monomial_m << ")";
                } else {
                    static_assert(std::is_same_v<T, MonomialProduct>);
                    os << "mono(" << p.m1 << "," << p.m2 << ")";
                }
            },
            part);
    }
    return os.str();
}

namespace {

double integrate_part(const GeneratingMeasure::Part& part,
                      const std::function<double(double, double)>& f, double tol) {
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            QuadratureOptions q{tol, 40};
            if constexpr (std::is_same_v<T, GeneratingMeasure::Atom>) {
                return f(p.u, p.v);
            } else if constexpr (std::is_same_v<T, GeneratingMeasure::DiagonalUniform>) {
                return integrate([&](double t) { return f(t, t); }, 0.0, 1.0, q);
            } else if constexpr (std::is_same_v<T, GeneratingMeasure::AntidiagonalUniform>) {
                return integrate([&](double t) { return f(t, 1.0 - t); }, 0.0, 1.0, q);
            } else if constexpr (std::is_same_v<T, GeneratingMeasure::LineSegment>) {
                const double tmax = std::min(1.0, 1.0 / p.slope);
                // substitute s = (t/tmax)^m so the density becomes uniform
                const double m = p.monomial_m;
                return integrate(
                    [&](double s) {
                        const double t = tmax * std::pow(s, 1.0 / m);
                        return f(t, p.slope * t);
                    },
                    0.0, 1.0, q);
            } else {
                static_assert(std::is_same_v<T, GeneratingMeasure::MonomialProduct>);
                // substitute s = u^m1, t = v^m2: the density becomes uniform on the square
                QuadratureOptions inner{0.2 * tol, 40};
                QuadratureOptions outer{0.8 * tol, 40};
                const double im1 = 1.0 / p.m1;
                const double im2 = 1.0 / p.m2;
                return integrate(
                    [&](double s) {
                        const double u = std::pow(s, im1);
                        return integrate(
                            [&](double t) { return f(u, std::pow(t, im2)); }, 0.0, 1.0, inner);
                    },
                    0.0, 1.0, outer);
            }
        },
        part);
}

} // namespace

double integrate(const GeneratingMeasure& mu, const std::function<double(double, double)>& f,
                 double abs_tol) {
    double total = 0.0;
    for (const auto& [w, part] : mu.components()) {
        total += w * integrate_part(part, f, abs_tol);
    }
    return total;
}

double mu_tdm(const TailDependenceFunction& tdf, const GeneratingMeasure& mu, double abs_tol) {
    const double num = integrate(mu, [&](double u, double v) { return tdf(u, v); }, abs_tol);
    const double den =
        integrate(mu, [](double u, double v) { return std::min(u, v); }, abs_tol);
    return num / den;
}

namespace {

// component contributions (int L dmu_i, int min dmu_i) through the closed
// L-infinity radial route: only margin slices of L are evaluated
std::pair<double, double> radial_part(const TailDependenceFunction& tdf,
                                      const GeneratingMeasure::Part& part, double tol) {
    return std::visit(
        [&](const auto& p) -> std::pair<double, double> {
            using T = std::decay_t<decltype(p)>;
            QuadratureOptions q{tol, 40};
            if constexpr (std::is_same_v<T, GeneratingMeasure::Atom>) {
                return {tdf(p.u, p.v), std::min(p.u, p.v)};
            } else if constexpr (std::is_same_v<T, GeneratingMeasure::DiagonalUniform>) {
                return {0.5 * tdf(1.0, 1.0), 0.5};
            } else if constexpr (std::is_same_v<T, GeneratingMeasure::AntidiagonalUniform>) {
                const double num = integrate([&](double t) { return tdf(t, 1.0 - t); }, 0.0, 1.0,
                                             tdf.subdiagonal_kinks(), q);
                return {num, 0.25};
            } else if constexpr (std::is_same_v<T, GeneratingMeasure::LineSegment>) {
                // L(t, at) = t L(1, a), so the integrals reduce to E[t]
                const double tmax = std::min(1.0, 1.0 / p.slope);
                const double mean_t = tmax * p.monomial_m / (p.monomial_m + 1.0);
                return {tdf(1.0, p.slope) * mean_t, std::min(1.0, p.slope) * mean_t};
            } else {
                static_assert(std::is_same_v<T, GeneratingMeasure::MonomialProduct>);
                const double c = p.m1 * p.m2 / (p.m1 + p.m2 + 1.0);
                const double i1 =
                    integrate([&](double s) { return tdf.margin1(std::pow(s, 1.0 / p.m1)); }, 0.0,
                              1.0, q) /
                    p.m1;
                const double i2 =
                    integrate([&](double s) { return tdf.margin2(std::pow(s, 1.0 / p.m2)); }, 0.0,
                              1.0, q) /
                    p.m2;
                const double num = c * (i1 + i2);
                const double den = c * (1.0 / (p.m1 + 1.0) + 1.0 / (p.m2 + 1.0));
                return {num, den};
            }
        },
        part);
}

} // namespace

double mu_tdm_radial(const TailDependenceFunction& tdf, const GeneratingMeasure& mu,
                     double abs_tol) {
    double num = 0.0, den = 0.0;
    for (const auto& [w, part] : mu.components()) {
        auto [n, d] = radial_part(tdf, part, abs_tol);
        num += w * n;
        den += w * d;
    }
    return num / den;
}

double mu_tdm_at_level_p(const Copula& c, const GeneratingMeasure& mu, double p, double abs_tol) {
    require(p > 0.0 && p < 1.0, "mu_tdm_at_level_p: p must lie in (0,1)");
    const double num = integrate(
        mu, [&](double u, double v) { return c.cdf(p * u, p * v) - p * p * u * v; }, abs_tol);
    const double den = integrate(
        mu, [&](double u, double v) { return p * std::min(u, v) - p * p * u * v; }, abs_tol);
    return num / den;
}

double tdc(const TailDependenceFunction& tdf) { return tdf(1.0, 1.0); }

double gtdc(const TailDependenceFunction& tdf, double u0, double v0) {
    if (!(u0 > 0.0 && u0 <= 1.0 && v0 > 0.0 && v0 <= 1.0)) {
        throw std::domain_error("gtdc: (u0,v0) must lie in (0,1]^2");
    }
    return tdf(u0, v0) / std::min(u0, v0);
}

double tail_spearman(const TailDependenceFunction& tdf, double abs_tol) {
    QuadratureOptions q{0.5 * abs_tol, 40};
    const double i1 =
        integrate([&](double t) { return tdf.margin1(t); }, 0.0, 1.0, tdf.margin1_kinks(), q);
    const double i2 =
        integrate([&](double t) { return tdf.margin2(t); }, 0.0, 1.0, tdf.margin2_kinks(), q);
    return i1 + i2;
}

double tail_gini(const TailDependenceFunction& tdf, double abs_tol) {
    QuadratureOptions q{0.5 * abs_tol, 40};
    const double sub = integrate([&](double u) { return tdf(u, 1.0 - u); }, 0.0, 1.0,
                                 tdf.subdiagonal_kinks(), q);
    return (2.0 / 3.0) * (tdf(1.0, 1.0) + 2.0 * sub);
}

double tail_gini_w(const TailDependenceFunction& tdf, double w, RadialMeasure1D mu1,
                   RadialMeasure1D mu2, double abs_tol) {
    require(w >= 0.0 && w <= 1.0, "tail_gini_w: w must lie in [0,1]");
    require(mu1.m > 0.0 && mu2.m > 0.0, "tail_gini_w: monomial exponents must be positive");
    QuadratureOptions q{abs_tol, 40};
    const double mean1 = mu1.m / (mu1.m + 1.0);
    // substitute s = u^m so the 1D density becomes uniform
    const double sub_num = integrate(
        [&](double s) {
            const double u = std::pow(s, 1.0 / mu2.m);
            return tdf(u, 1.0 - u);
        },
        0.0, 1.0, q);
    const double sub_den = integrate(
        [&](double s) {
            const double u = std::pow(s, 1.0 / mu2.m);
            return std::min(u, 1.0 - u);
        },
        0.0, 1.0, q);
    const double num = w * tdf(1.0, 1.0) * mean1 + (1.0 - w) * sub_num;
    const double den = w * mean1 + (1.0 - w) * sub_den;
    return num / den;
}

double polynomial_tdm(const TailDependenceFunction& tdf, double m1, double m2, double abs_tol) {
    require(m1 > 0.0 && m2 > 0.0, "polynomial_tdm: m1, m2 must be positive");
    QuadratureOptions q{0.5 * abs_tol, 40};
    const double i1 = integrate(
                          [&](double s) { return tdf.margin1(std::pow(s, 1.0 / m1)); }, 0.0, 1.0,
                          q) /
                      m1;
    const double i2 = integrate(
                          [&](double s) { return tdf.margin2(std::pow(s, 1.0 / m2)); }, 0.0, 1.0,
                          q) /
                      m2;
    return (m1 + 1.0) * (m2 + 1.0) / (m1 + m2 + 2.0) * (i1 + i2);
}

double coefficient_a(const GeneratingMeasure& mu, double abs_tol) {
    const double num =
        integrate(mu, [](double u, double v) { return std::max(u, v); }, abs_tol);
    const double den =
        integrate(mu, [](double u, double v) { return std::min(u, v); }, abs_tol);
    return num / den;
}

std::vector<double> default_b_grid(int L) {
    require(L >= 2, "default_b_grid: L must be >= 2");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(2 * L) - 1);
    for (int i = 1; i <= L; ++i) grid.push_back(static_cast<double>(i) / L);
    for (int i = L - 1; i >= 1; --i) grid.push_back(static_cast<double>(L) / i);
    return grid;
}

ChiBarResult chi_bar(const TailDependenceFunction& tdf, std::vector<double> b_grid,
                     double tie_tol) {
    if (b_grid.empty()) b_grid = default_b_grid();
    for (double k : tdf.chi_kink_ratios()) b_grid.push_back(k);
    std::sort(b_grid.begin(), b_grid.end());
    b_grid.erase(std::unique(b_grid.begin(), b_grid.end()), b_grid.end());
    require(!b_grid.empty() && b_grid.front() > 0.0, "chi_bar: grid must be positive");

    auto g = [&](double b) { return tdf(b, 1.0 / b); };
    std::vector<double> vals(b_grid.size());
    double best = -1.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < b_grid.size(); ++i) {
        vals[i] = g(b_grid[i]);
        if (vals[i] > best) {
            best = vals[i];
            best_i = i;
        }
    }

    double refined_b = b_grid[best_i];
    double refined_v = best;
    if (tdf.is_smooth() && b_grid.size() >= 3) {
        const double lo = b_grid[best_i > 0 ? best_i - 1 : 0];
        const double hi = b_grid[std::min(best_i + 1, b_grid.size() - 1)];
        if (hi > lo) {
            const double b = golden_section_max(g, lo, hi, 1e-12);
            const double v = g(b);
            if (v > refined_v) {
                refined_v = v;
                refined_b = b;
            }
        }
    }

    ChiBarResult res;
    res.value = refined_v;
    for (std::size_t i = 0; i < b_grid.size(); ++i) {
        if (res.value - vals[i] <= tie_tol) res.argmax.push_back(b_grid[i]);
    }
    if (std::none_of(res.argmax.begin(), res.argmax.end(),
                     [&](double b) { return b == refined_b; }) &&
        res.value - g(refined_b) <= tie_tol) {
        res.argmax.push_back(refined_b);
    }
    std::sort(res.argmax.begin(), res.argmax.end());
    return res;
}

double chi_star(const TailDependenceFunction& tdf, std::vector<double> b_grid, double tie_tol) {
    const ChiBarResult cb = chi_bar(tdf, std::move(b_grid), tie_tol);
    if (cb.value <= 0.0) return 0.0; // asymptotic independence
    double m_bar = 0.0;
    for (double b : cb.argmax) m_bar = std::max(m_bar, std::min(b, 1.0 / b));
    return cb.value / m_bar;
}

LambdaBarResult lambda_bar(const TailDependenceFunction& tdf, double t_min, int points) {
    require(t_min > 0.0 && t_min < 1.0, "lambda_bar: t_min must lie in (0,1)");
    require(points >= 2, "lambda_bar: need at least two grid points");
    LambdaBarResult res;
    res.t_min = t_min;
    const double ratio = std::log(1.0 / t_min);
    double best = 0.0;
    for (int i = 0; i < points; ++i) {
        const double t = std::exp(-ratio * static_cast<double>(i) / (points - 1));
        best = std::max(best, tdf.star(t));
    }
    res.value = best;
    return res;
}

PhiTdc phi_tdc(const TailDependenceFunction& tdf, double b_phi) {
    if (!(b_phi > 0.0) || !std::isfinite(b_phi)) {
        throw std::domain_error("phi_tdc: b_phi must lie in (0,inf)");
    }
    PhiTdc out;
    out.chi = tdf(b_phi, 1.0 / b_phi);
    out.kappa = out.chi / std::min(b_phi, 1.0 / b_phi);
    return out;
}

std::string MeasureSpec::str() const {
    std::ostringstream os;
    switch (kind) {
        case MeasureKind::Tdc: os << "tdc"; break;
        case MeasureKind::Gtdc: os << "gtdc:" << p1 << "," << p2; break;
        case MeasureKind::Spearman: os << "spearman"; break;
        case MeasureKind::Gini: os << "gini"; break;
        case MeasureKind::GiniW: os << "gini_w:" << p1; break;
        case MeasureKind::Poly: os << "poly:" << p1 << "," << p2; break;
        case MeasureKind::Line: os << "line:" << p1; break;
        case MeasureKind::ChiBar: os << "chi_bar"; break;
        case MeasureKind::ChiStar: os << "chi_star"; break;
        case MeasureKind::LambdaBar: os << "lambda_bar"; break;
    }
    return os.str();
}

std::optional<GeneratingMeasure> MeasureSpec::generating_measure() const {
    switch (kind) {
        case MeasureKind::Tdc: return GeneratingMeasure::atom(0.5, 0.5);
        case MeasureKind::Gtdc: return GeneratingMeasure::atom(p1, p2);
        case MeasureKind::Spearman: return GeneratingMeasure::uniform_square();
        case MeasureKind::Gini:
            return GeneratingMeasure::mixture({0.5, 0.5}, {GeneratingMeasure::diagonal_uniform(),
                                                           GeneratingMeasure::antidiagonal_uniform()});
        case MeasureKind::GiniW:
            if (p1 <= 0.0) return GeneratingMeasure::antidiagonal_uniform();
            if (p1 >= 1.0) return GeneratingMeasure::diagonal_uniform();
            return GeneratingMeasure::mixture({p1, 1.0 - p1},
                                              {GeneratingMeasure::diagonal_uniform(),
                                               GeneratingMeasure::antidiagonal_uniform()});
        case MeasureKind::Poly: return GeneratingMeasure::monomial_product(p1, p2);
        case MeasureKind::Line: return GeneratingMeasure::line_segment(p1);
        default: return std::nullopt;
    }
}

MeasureSpec parse_measure(const std::string& name) {
    const auto colon = name.find(':');
    const std::string head = name.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::string rest = name.substr(colon + 1);
        std::replace(rest.begin(), rest.end(), ',', ' ');
        std::istringstream is(rest);
        double x;
        while (is >> x) args.push_back(x);
        if (!is.eof()) throw std::invalid_argument("measure '" + name + "': malformed arguments");
    }
    auto need = [&](std::size_t k) {
        if (args.size() != k) {
            throw std::invalid_argument("measure '" + name + "': expected " + std::to_string(k) +
                                        " argument(s)");
        }
    };
    if (head == "tdc") {
        need(0);
        return {MeasureKind::Tdc};
    }
    if (head == "gtdc") {
        need(2);
        return {MeasureKind::Gtdc, args[0], args[1]};
    }
    if (head == "spearman") {
        need(0);
        return {MeasureKind::Spearman};
    }
    if (head == "gini") {
        need(0);
        return {MeasureKind::Gini};
    }
    if (head == "gini_w") {
        need(1);
        return {MeasureKind::GiniW, args[0]};
    }
    if (head == "poly") {
        need(2);
        return {MeasureKind::Poly, args[0], args[1]};
    }
    if (head == "line") {
        need(1);
        return {MeasureKind::Line, args[0]};
    }
    if (head == "chi_bar") {
        need(0);
        return {MeasureKind::ChiBar};
    }
    if (head == "chi_star") {
        need(0);
        return {MeasureKind::ChiStar};
    }
    if (head == "lambda_bar") {
        need(0);
        return {MeasureKind::LambdaBar};
    }
    throw std::invalid_argument("unknown measure name '" + name + "'");
}

double evaluate_measure(const TailDependenceFunction& tdf, const MeasureSpec& spec,
                        const AnalyticOptions& opts) {
    switch (spec.kind) {
        case MeasureKind::Tdc: return tdc(tdf);
        case MeasureKind::Gtdc: return gtdc(tdf, spec.p1, spec.p2);
        case MeasureKind::Spearman: return tail_spearman(tdf, opts.abs_tol);
        case MeasureKind::Gini: return tail_gini(tdf, opts.abs_tol);
        case MeasureKind::GiniW: return tail_gini_w(tdf, spec.p1, {}, {}, opts.abs_tol);
        case MeasureKind::Poly: return polynomial_tdm(tdf, spec.p1, spec.p2, opts.abs_tol);
        case MeasureKind::Line: {
            const double a = spec.p1;
            if (!(a > 0.0) || !std::isfinite(a)) {
                throw std::domain_error("line: slope must lie in (0,inf)");
            }
            return tdf(1.0, a) / std::min(1.0, a);
        }
        case MeasureKind::ChiBar: {
            auto grid = opts.b_grid.empty() ? default_b_grid(opts.L) : opts.b_grid;
            return chi_bar(tdf, grid).value;
        }
        case MeasureKind::ChiStar: {
            auto grid = opts.b_grid.empty() ? default_b_grid(opts.L) : opts.b_grid;
            return chi_star(tdf, grid);
        }
        case MeasureKind::LambdaBar: return lambda_bar(tdf, opts.t_min).value;
    }
    throw std::logic_error("evaluate_measure: unreachable");
}

} // namespace taildep
