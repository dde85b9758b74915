#include "taildep/tdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "taildep/special.hpp"

namespace taildep {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// (x^theta + y^theta)^(1/theta) for x,y >= 0, stable for large theta
double stable_pnorm(double x, double y, double theta) {
    const double mx = std::max(x, y);
    if (mx == 0.0) return 0.0;
    const double mn = std::min(x, y);
    return mx * std::pow(1.0 + std::pow(mn / mx, theta), 1.0 / theta);
}

// (x^-theta + y^-theta)^(-1/theta) for x,y >= 0, zero when either is zero
double stable_harmonic(double x, double y, double theta) {
    const double mn = std::min(x, y);
    if (mn == 0.0) return 0.0;
    const double mx = std::max(x, y);
    return mn * std::pow(1.0 + std::pow(mn / mx, theta), -1.0 / theta);
}

struct PkConstant1 {};
struct PkMaxLower {};
struct PkAsymGumbel {
    double alpha, beta, theta;
};
struct PkAsymGalambos {
    double alpha, beta, theta;
};
struct PkTabulated {
    std::vector<double> w, a;
};
using PkVariant = std::variant<PkConstant1, PkMaxLower, PkAsymGumbel, PkAsymGalambos, PkTabulated>;

double pk_eval(const PkVariant& pk, double w) {
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PkConstant1>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, PkMaxLower>) {
                return std::max(w, 1.0 - w);
            } else if constexpr (std::is_same_v<T, PkAsymGumbel>) {
                return (1.0 - p.alpha) * w + (1.0 - p.beta) * (1.0 - w) +
                       stable_pnorm(p.alpha * w, p.beta * (1.0 - w), p.theta);
            } else if constexpr (std::is_same_v<T, PkAsymGalambos>) {
                return 1.0 - stable_harmonic(p.alpha * w, p.beta * (1.0 - w), p.theta);
            } else {
                static_assert(std::is_same_v<T, PkTabulated>);
                const auto& ws = p.w;
                if (w <= ws.front()) return p.a.front();
                if (w >= ws.back()) return p.a.back();
                const auto it = std::upper_bound(ws.begin(), ws.end(), w);
                const std::size_t i = static_cast<std::size_t>(it - ws.begin());
                const double t = (w - ws[i - 1]) / (ws[i] - ws[i - 1]);
                return p.a[i - 1] + t * (p.a[i] - p.a[i - 1]);
            }
        },
        pk);
}

} // namespace

struct PickandsFunction::Impl {
    PkVariant v;
    std::vector<double> nodes; // tabulated grid, empty otherwise
};

PickandsFunction PickandsFunction::constant_one() {
    return PickandsFunction(std::make_shared<Impl>(Impl{PkConstant1{}, {}}));
}
PickandsFunction PickandsFunction::max_lower() {
    return PickandsFunction(std::make_shared<Impl>(Impl{PkMaxLower{}, {}}));
}
PickandsFunction PickandsFunction::asym_gumbel(double alpha, double beta, double theta) {
    require(alpha > 0.0 && alpha <= 1.0 && beta > 0.0 && beta <= 1.0,
            "asym_gumbel: alpha, beta must lie in (0,1]");
    require(theta >= 1.0, "asym_gumbel: theta must be >= 1");
    return PickandsFunction(std::make_shared<Impl>(Impl{PkAsymGumbel{alpha, beta, theta}, {}}));
}
PickandsFunction PickandsFunction::asym_galambos(double alpha, double beta, double theta) {
    require(alpha > 0.0 && alpha <= 1.0 && beta > 0.0 && beta <= 1.0,
            "asym_galambos: alpha, beta must lie in (0,1]");
    require(theta > 0.0, "asym_galambos: theta must be positive");
    return PickandsFunction(std::make_shared<Impl>(Impl{PkAsymGalambos{alpha, beta, theta}, {}}));
}

PickandsFunction PickandsFunction::tabulated(std::vector<double> w, std::vector<double> a) {
    require(w.size() == a.size() && w.size() >= 2, "tabulated: need matching grids of size >= 2");
    require(std::fabs(w.front()) <= 1e-12 && std::fabs(w.back() - 1.0) <= 1e-12,
            "tabulated: w grid must cover 0 and 1");
    w.front() = 0.0;
    w.back() = 1.0;
    for (std::size_t i = 1; i < w.size(); ++i) {
        require(w[i] > w[i - 1], "tabulated: w grid must be strictly increasing");
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double lo = std::max(w[i], 1.0 - w[i]);
        require(a[i] >= lo - 1e-12 && a[i] <= 1.0 + 1e-12,
                "tabulated: A must satisfy max(w,1-w) <= A <= 1");
        a[i] = std::min(1.0, std::max(a[i], lo));
    }
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
        const double slope_l = (a[i] - a[i - 1]) / (w[i] - w[i - 1]);
        const double slope_r = (a[i + 1] - a[i]) / (w[i + 1] - w[i]);
        require(slope_r - slope_l >= -1e-10, "tabulated: A must be convex");
    }
    auto nodes = w;
    return PickandsFunction(
        std::make_shared<Impl>(Impl{PkTabulated{std::move(w), std::move(a)}, std::move(nodes)}));
}

double PickandsFunction::operator()(double w) const {
    if (!(w >= 0.0 && w <= 1.0)) throw std::domain_error("pickands: w must lie in [0,1]");
    return pk_eval(impl_->v, w);
}

const std::vector<double>& PickandsFunction::nodes() const { return impl_->nodes; }

std::string PickandsFunction::name() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PkConstant1>) {
                os << "one";
            } else if constexpr (std::is_same_v<T, PkMaxLower>) {
                os << "max_lower";
            } else if constexpr (std::is_same_v<T, PkAsymGumbel>) {
                os << "asym_gumbel(" << p.alpha << "," << p.beta << "," << p.theta << ")";
            } else if constexpr (std::is_same_v<T, PkAsymGalambos>) {
                os << "asym_galambos(" << p.alpha << "," << p.beta << "," << p.theta << ")";
            } else {
                static_assert(std::is_same_v<T, PkTabulated>);
                os << "tabulated[" << p.w.size() << "]";
            }
        },
        impl_->v);
    return os.str();
}

namespace {

struct TdZero {};
struct TdComonotone {};
struct TdFrechet {
    double alpha;
};
struct TdMarshallOlkin {
    double a, b;
};
struct TdClayton {
    double theta;
};
struct TdSurvivalGumbel {
    double theta;
};
struct TdSingular {
    double theta;
};
struct TdStudentT {
    double nu, rho, c; // c = sqrt((nu+1)/(1-rho^2))
};
struct TdSurvivalEv {
    PickandsFunction a;
};
struct TdMixture {
    std::vector<double> weights;
    std::vector<TailDependenceFunction> components;
};
struct TdTransposed {
    std::shared_ptr<const TailDependenceFunction::Impl> base;
};

using TdVariant = std::variant<TdZero, TdComonotone, TdFrechet, TdMarshallOlkin, TdClayton,
                               TdSurvivalGumbel, TdSingular, TdStudentT, TdSurvivalEv, TdMixture,
                               TdTransposed>;

// (u/v)^(1/nu), +inf when it overflows
double ratio_power(double u, double v, double nu) {
    const double lr = (std::log(u) - std::log(v)) / nu;
    if (lr > 700.0) return std::numeric_limits<double>::infinity();
    return std::exp(lr);
}

} // namespace

struct TailDependenceFunction::Impl {
    TdVariant v;
};

namespace {

double td_eval(const TdVariant& td, double u, double v) {
    if (u <= 0.0 || v <= 0.0) return 0.0;
    return std::visit(
        [&](const auto& t) -> double {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, TdZero>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, TdComonotone>) {
                return std::min(u, v);
            } else if constexpr (std::is_same_v<T, TdFrechet>) {
                return t.alpha * std::min(u, v);
            } else if constexpr (std::is_same_v<T, TdMarshallOlkin>) {
                return std::min(t.a * u, t.b * v);
            } else if constexpr (std::is_same_v<T, TdClayton>) {
                return stable_harmonic(u, v, t.theta);
            } else if constexpr (std::is_same_v<T, TdSurvivalGumbel>) {
                return u + v - stable_pnorm(u, v, t.theta);
            } else if constexpr (std::is_same_v<T, TdSingular>) {
                return std::min(u, t.theta * v);
            } else if constexpr (std::is_same_v<T, TdStudentT>) {
                const double r1 = ratio_power(u, v, t.nu);
                const double r2 = ratio_power(v, u, t.nu);
                double s = 0.0;
                if (std::isfinite(r1)) s += u * student_t_cdf(t.c * (t.rho - r1), t.nu + 1.0);
                if (std::isfinite(r2)) s += v * student_t_cdf(t.c * (t.rho - r2), t.nu + 1.0);
                return s;
            } else if constexpr (std::is_same_v<T, TdSurvivalEv>) {
                const double s = u + v;
                return s * (1.0 - t.a(u / s));
            } else if constexpr (std::is_same_v<T, TdMixture>) {
                double s = 0.0;
                for (std::size_t i = 0; i < t.weights.size(); ++i) {
                    s += t.weights[i] * t.components[i](u, v);
                }
                return s;
            } else {
                static_assert(std::is_same_v<T, TdTransposed>);
                return td_eval(t.base->v, v, u);
            }
        },
        td);
}

std::shared_ptr<const TailDependenceFunction::Impl> make_impl(TdVariant v) {
    return std::make_shared<TailDependenceFunction::Impl>(
        TailDependenceFunction::Impl{std::move(v)});
}

} // namespace

TailDependenceFunction TailDependenceFunction::zero() {
    return TailDependenceFunction(make_impl(TdZero{}));
}
TailDependenceFunction TailDependenceFunction::comonotone() {
    return TailDependenceFunction(make_impl(TdComonotone{}));
}
TailDependenceFunction TailDependenceFunction::frechet_tail(double alpha) {
    require(alpha >= 0.0 && alpha <= 1.0, "frechet_tail: alpha must lie in [0,1]");
    return TailDependenceFunction(make_impl(TdFrechet{alpha}));
}
TailDependenceFunction TailDependenceFunction::marshall_olkin_tail(double a, double b) {
    require(a > 0.0 && a <= 1.0 && b > 0.0 && b <= 1.0,
            "marshall_olkin_tail: a,b must lie in (0,1]");
    return TailDependenceFunction(make_impl(TdMarshallOlkin{a, b}));
}
TailDependenceFunction TailDependenceFunction::clayton_tail(double theta) {
    require(theta > 0.0, "clayton_tail: theta must be positive");
    return TailDependenceFunction(make_impl(TdClayton{theta}));
}
TailDependenceFunction TailDependenceFunction::survival_gumbel_tail(double theta) {
    require(theta >= 1.0, "survival_gumbel_tail: theta must be >= 1");
    return TailDependenceFunction(make_impl(TdSurvivalGumbel{theta}));
}
TailDependenceFunction TailDependenceFunction::singular_tail(double theta) {
    require(theta >= 0.0 && theta <= 1.0, "singular_tail: theta must lie in [0,1]");
    return TailDependenceFunction(make_impl(TdSingular{theta}));
}
TailDependenceFunction TailDependenceFunction::student_t_tail(double nu, double rho) {
    require(nu > 0.0, "student_t_tail: nu must be positive");
    require(rho > -1.0 && rho < 1.0, "student_t_tail: rho must lie in (-1,1)");
    const double c = std::sqrt((nu + 1.0) / (1.0 - rho * rho));
    return TailDependenceFunction(make_impl(TdStudentT{nu, rho, c}));
}
TailDependenceFunction TailDependenceFunction::survival_ev_tail(PickandsFunction a) {
    return TailDependenceFunction(make_impl(TdSurvivalEv{std::move(a)}));
}
TailDependenceFunction TailDependenceFunction::asym_gumbel_tail(double alpha, double beta,
                                                                double theta) {
    return survival_ev_tail(PickandsFunction::asym_gumbel(alpha, beta, theta));
}
TailDependenceFunction TailDependenceFunction::asym_galambos_tail(double alpha, double beta,
                                                                  double theta) {
    return survival_ev_tail(PickandsFunction::asym_galambos(alpha, beta, theta));
}
TailDependenceFunction TailDependenceFunction::convex_mixture(
    std::vector<double> weights, std::vector<TailDependenceFunction> components) {
    require(!weights.empty() && weights.size() == components.size(),
            "convex_mixture: weights and components must be non-empty and of equal size");
    double s = 0.0;
    for (double w : weights) {
        require(w >= 0.0, "convex_mixture: weights must be nonnegative");
        s += w;
    }
    require(std::fabs(s - 1.0) <= 1e-12,
            "convex_mixture: weights must sum to 1 (got " + std::to_string(s) + ")");
    return TailDependenceFunction(make_impl(TdMixture{std::move(weights), std::move(components)}));
}
TailDependenceFunction TailDependenceFunction::transposed() const {
    return TailDependenceFunction(make_impl(TdTransposed{impl_}));
}

double TailDependenceFunction::operator()(double u, double v) const {
    if (!(u >= 0.0) || !(v >= 0.0)) {
        throw std::domain_error("tdf: arguments must be nonnegative");
    }
    return td_eval(impl_->v, u, v);
}

double TailDependenceFunction::margin1_star(double t) const {
    if (!(t > 0.0)) throw std::domain_error("margin1_star: t must be positive");
    return (*this)(t, 1.0) / t;
}
double TailDependenceFunction::margin2_star(double t) const {
    if (!(t > 0.0)) throw std::domain_error("margin2_star: t must be positive");
    return (*this)(1.0, t) / t;
}
double TailDependenceFunction::star(double t) const {
    return std::max(margin1_star(t), margin2_star(t));
}

bool TailDependenceFunction::is_smooth() const {
    return std::visit(
        [&](const auto& t) -> bool {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, TdZero> || std::is_same_v<T, TdClayton> ||
                          std::is_same_v<T, TdSurvivalGumbel> || std::is_same_v<T, TdStudentT>) {
                return true;
            } else if constexpr (std::is_same_v<T, TdSurvivalEv>) {
                return std::holds_alternative<PkAsymGumbel>(t.a.impl_->v) ||
                       std::holds_alternative<PkAsymGalambos>(t.a.impl_->v) ||
                       std::holds_alternative<PkConstant1>(t.a.impl_->v);
            } else if constexpr (std::is_same_v<T, TdMixture>) {
                for (const auto& c : t.components) {
                    if (!c.is_smooth()) return false;
                }
                return true;
            } else if constexpr (std::is_same_v<T, TdTransposed>) {
                return TailDependenceFunction(t.base).is_smooth();
            } else {
                return false;
            }
        },
        impl_->v);
}

namespace {

void append(std::vector<double>& out, double x) {
    if (std::isfinite(x) && x > 0.0) out.push_back(x);
}

void append_open_unit(std::vector<double>& out, double x) {
    if (std::isfinite(x) && x > 0.0 && x < 1.0) out.push_back(x);
}

} // namespace

std::vector<double> TailDependenceFunction::chi_kink_ratios() const {
    std::vector<double> out;
    std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, TdComonotone> || std::is_same_v<T, TdFrechet>) {
                append(out, 1.0);
            } else if constexpr (std::is_same_v<T, TdMarshallOlkin>) {
                append(out, std::sqrt(t.b / t.a));
            } else if constexpr (std::is_same_v<T, TdSingular>) {
                append(out, std::sqrt(t.theta));
            } else if constexpr (std::is_same_v<T, TdSurvivalEv>) {
                for (double w : t.a.nodes()) {
                    if (w > 0.0 && w < 1.0) append(out, std::sqrt(w / (1.0 - w)));
                }
                if (std::holds_alternative<PkMaxLower>(t.a.impl_->v)) append(out, 1.0);
            } else if constexpr (std::is_same_v<T, TdMixture>) {
                for (const auto& c : t.components) {
                    for (double b : c.chi_kink_ratios()) append(out, b);
                }
            } else if constexpr (std::is_same_v<T, TdTransposed>) {
                for (double b : TailDependenceFunction(t.base).chi_kink_ratios()) {
                    append(out, 1.0 / b);
                }
            }
        },
        impl_->v);
    return out;
}

std::vector<double> TailDependenceFunction::margin1_kinks() const {
    std::vector<double> out;
    std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, TdMarshallOlkin>) {
                append_open_unit(out, t.b / t.a);
            } else if constexpr (std::is_same_v<T, TdSingular>) {
                append_open_unit(out, t.theta);
            } else if constexpr (std::is_same_v<T, TdSurvivalEv>) {
                for (double w : t.a.nodes()) {
                    if (w > 0.0 && w < 0.5) append_open_unit(out, w / (1.0 - w));
                }
            } else if constexpr (std::is_same_v<T, TdMixture>) {
                for (const auto& c : t.components) {
                    for (double x : c.margin1_kinks()) append_open_unit(out, x);
                }
            } else if constexpr (std::is_same_v<T, TdTransposed>) {
                for (double x : TailDependenceFunction(t.base).margin2_kinks()) {
                    append_open_unit(out, x);
                }
            }
        },
        impl_->v);
    return out;
}

std::vector<double> TailDependenceFunction::margin2_kinks() const {
    std::vector<double> out;
    std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, TdMarshallOlkin>) {
                append_open_unit(out, t.a / t.b);
            } else if constexpr (std::is_same_v<T, TdSurvivalEv>) {
                for (double w : t.a.nodes()) {
                    if (w > 0.5 && w < 1.0) append_open_unit(out, (1.0 - w) / w);
                }
            } else if constexpr (std::is_same_v<T, TdMixture>) {
                for (const auto& c : t.components) {
                    for (double x : c.margin2_kinks()) append_open_unit(out, x);
                }
            } else if constexpr (std::is_same_v<T, TdTransposed>) {
                for (double x : TailDependenceFunction(t.base).margin1_kinks()) {
                    append_open_unit(out, x);
                }
            }
        },
        impl_->v);
    return out;
}

std::vector<double> TailDependenceFunction::subdiagonal_kinks() const {
    std::vector<double> out;
    std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, TdComonotone> || std::is_same_v<T, TdFrechet>) {
                append_open_unit(out, 0.5);
            } else if constexpr (std::is_same_v<T, TdMarshallOlkin>) {
                append_open_unit(out, t.b / (t.a + t.b));
            } else if constexpr (std::is_same_v<T, TdSingular>) {
                append_open_unit(out, t.theta / (1.0 + t.theta));
            } else if constexpr (std::is_same_v<T, TdSurvivalEv>) {
                for (double w : t.a.nodes()) append_open_unit(out, w);
                if (std::holds_alternative<PkMaxLower>(t.a.impl_->v)) append_open_unit(out, 0.5);
            } else if constexpr (std::is_same_v<T, TdMixture>) {
                for (const auto& c : t.components) {
                    for (double x : c.subdiagonal_kinks()) append_open_unit(out, x);
                }
            } else if constexpr (std::is_same_v<T, TdTransposed>) {
                for (double x : TailDependenceFunction(t.base).subdiagonal_kinks()) {
                    append_open_unit(out, 1.0 - x);
                }
            }
        },
        impl_->v);
    return out;
}

std::string TailDependenceFunction::name() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, TdZero>) {
                os << "zero";
            } else if constexpr (std::is_same_v<T, TdComonotone>) {
                os << "m";
            } else if constexpr (std::is_same_v<T, TdFrechet>) {
                os << "frechet_tail(" << t.alpha << ")";
            } else if constexpr (std::is_same_v<T, TdMarshallOlkin>) {
                os << "mo_tail(" << t.a << "," << t.b << ")";
            } else if constexpr (std::is_same_v<T, TdClayton>) {
                os << "clayton_tail(" << t.theta << ")";
            } else if constexpr (std::is_same_v<T, TdSurvivalGumbel>) {
                os << "sgumbel_tail(" << t.theta << ")";
            } else if constexpr (std::is_same_v<T, TdSingular>) {
                os << "singular_tail(" << t.theta << ")";
            } else if constexpr (std::is_same_v<T, TdStudentT>) {
                os << "t_tail(" << t.nu << "," << t.rho << ")";
            } else if constexpr (std::is_same_v<T, TdSurvivalEv>) {
                os << "sev_tail(" << t.a.name() << ")";
            } else if constexpr (std::is_same_v<T, TdMixture>) {
                os << "mix(";
                for (std::size_t i = 0; i < t.weights.size(); ++i) {
                    if (i) os << ";";
                    os << t.weights[i] << "," << t.components[i].name();
                }
                os << ")";
            } else {
                static_assert(std::is_same_v<T, TdTransposed>);
                os << "transposed(" << TailDependenceFunction(t.base).name() << ")";
            }
        },
        impl_->v);
    return os.str();
}

TailDependenceFunction tdf_from_pickands(const PickandsFunction& a) {
    return TailDependenceFunction::survival_ev_tail(a);
}

PickandsFunction pickands_from_tdf(const TailDependenceFunction& tdf, int grid_points) {
    if (const auto* ev = std::get_if<TdSurvivalEv>(&tdf.impl().v)) {
        return ev->a;
    }
    if (std::holds_alternative<TdComonotone>(tdf.impl().v)) {
        return PickandsFunction::max_lower();
    }
    if (std::holds_alternative<TdZero>(tdf.impl().v)) {
        return PickandsFunction::constant_one();
    }
    if (grid_points < 3) throw std::invalid_argument("pickands_from_tdf: grid too small");
    std::vector<double> ws;
    ws.reserve(static_cast<std::size_t>(grid_points) + 8);
    for (int i = 0; i < grid_points; ++i) {
        ws.push_back(static_cast<double>(i) / (grid_points - 1));
    }
    for (double k : tdf.subdiagonal_kinks()) ws.push_back(k);
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
    std::vector<double> as;
    as.reserve(ws.size());
    for (double w : ws) as.push_back(1.0 - tdf(w, 1.0 - w));
    return PickandsFunction::tabulated(std::move(ws), std::move(as));
}

Copula copula_from_tdf(const TailDependenceFunction& tdf, int sampler_grid) {
    return Copula::from_tdf(tdf, sampler_grid);
}

bool TdfValidityReport::ok(double tol_hom, double tol_incr, double tol_bounds) const {
    return homogeneity <= tol_hom && two_increasing <= tol_incr && lower_bound <= tol_bounds &&
           upper_bound <= tol_bounds && groundedness <= tol_bounds;
}

std::string TdfValidityReport::describe() const {
    std::ostringstream os;
    os << "homogeneity=" << homogeneity << " two_increasing=" << two_increasing
       << " lower_bound=" << lower_bound << " upper_bound=" << upper_bound
       << " groundedness=" << groundedness;
    return os.str();
}

TdfValidityReport validate_tdf(const std::function<double(double, double)>& candidate) {
    TdfValidityReport rep;
    constexpr int n = 41;
    constexpr double span = 2.0;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = span * i / (n - 1);

    std::vector<double> vals(static_cast<std::size_t>(n) * n);
    auto at = [&](int i, int j) -> double& { return vals[static_cast<std::size_t>(i) * n + j]; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) at(i, j) = candidate(grid[i], grid[j]);
    }

    for (int i = 0; i < n; ++i) {
        rep.groundedness = std::max(rep.groundedness, std::fabs(at(i, 0)));
        rep.groundedness = std::max(rep.groundedness, std::fabs(at(0, i)));
        for (int j = 0; j < n; ++j) {
            const double f = at(i, j);
            rep.lower_bound = std::max(rep.lower_bound, -f);
            rep.upper_bound = std::max(rep.upper_bound, f - std::min(grid[i], grid[j]));
        }
    }

    const double ts[] = {0.3, 0.7, 1.7, 2.6};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (double t : ts) {
                const double lhs = candidate(t * grid[i], t * grid[j]);
                rep.homogeneity = std::max(rep.homogeneity, std::fabs(lhs - t * at(i, j)));
            }
        }
    }

    for (int i = 0; i < n; ++i) {
        for (int i2 = i + 1; i2 < n; ++i2) {
            for (int j = 0; j < n; ++j) {
                for (int j2 = j + 1; j2 < n; ++j2) {
                    const double vol = at(i2, j2) - at(i2, j) - at(i, j2) + at(i, j);
                    rep.two_increasing = std::max(rep.two_increasing, -vol);
                }
            }
        }
    }
    return rep;
}

} // namespace taildep
