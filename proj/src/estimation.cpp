#include "taildep/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "taildep/rng.hpp"

namespace taildep {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// midranks scaled by 1/n for one coordinate
std::vector<double> midranks(const std::vector<double>& x, bool* ties) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        if (j > i) *ties = true;
        const double mid = 0.5 * static_cast<double>(i + 1 + j + 1); // ranks are 1-based
        for (std::size_t t = i; t <= j; ++t) r[order[t]] = mid / static_cast<double>(n);
        i = j + 1;
    }
    return r;
}

} // namespace

PseudoSample pseudo_observations(const std::vector<std::pair<double, double>>& raw) {
    require(raw.size() >= 2, "pseudo_observations: need at least two observations");
    std::vector<double> xs(raw.size()), ys(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        xs[i] = raw[i].first;
        ys[i] = raw[i].second;
    }
    PseudoSample out;
    bool ties = false;
    const auto ru = midranks(xs, &ties);
    const auto rv = midranks(ys, &ties);
    out.had_ties = ties;
    out.provenance = PseudoSample::Provenance::RawRanks;
    out.uv.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) out.uv[i] = {ru[i], rv[i]};
    return out;
}

PseudoSample pseudo_from_known_margins(std::vector<std::pair<double, double>> uv) {
    require(uv.size() >= 2, "pseudo_from_known_margins: need at least two observations");
    for (const auto& [u, v] : uv) {
        require(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0,
                "pseudo_from_known_margins: observations must lie in [0,1]^2");
    }
    PseudoSample out;
    out.uv = std::move(uv);
    out.provenance = PseudoSample::Provenance::KnownMargins;
    return out;
}

namespace detail {

RankedPoints::RankedPoints(const std::vector<std::pair<double, double>>& uv) : n(uv.size()) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return uv[a].first < uv[b].first; });
    u_sorted.resize(n);
    v_by_u.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        u_sorted[i] = uv[order[i]].first;
        v_by_u[i] = uv[order[i]].second;
    }

    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return uv[a].second < uv[b].second; });
    v_sorted.resize(n);
    u_by_v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        v_sorted[i] = uv[order[i]].second;
        u_by_v[i] = uv[order[i]].first;
    }
}

std::size_t RankedPoints::count_leq(double u, double v) const {
    if (u <= 0.0 || v <= 0.0) return 0;
    const auto pu = static_cast<std::size_t>(
        std::upper_bound(u_sorted.begin(), u_sorted.end(), u) - u_sorted.begin());
    const auto pv = static_cast<std::size_t>(
        std::upper_bound(v_sorted.begin(), v_sorted.end(), v) - v_sorted.begin());
    std::size_t count = 0;
    if (pu <= pv) {
        for (std::size_t i = 0; i < pu; ++i) count += (v_by_u[i] <= v) ? 1 : 0;
    } else {
        for (std::size_t i = 0; i < pv; ++i) count += (u_by_v[i] <= u) ? 1 : 0;
    }
    return count;
}

} // namespace detail

EmpiricalCopula::EmpiricalCopula(const PseudoSample& sample)
    : points_(std::make_shared<detail::RankedPoints>(sample.uv)) {
    require(sample.n() >= 1, "empirical copula: empty sample");
}

double EmpiricalCopula::operator()(double u, double v) const {
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
        throw std::domain_error("empirical copula: arguments must lie in [0,1]^2");
    }
    return static_cast<double>(points_->count_leq(u, v)) / static_cast<double>(points_->n + 1);
}

EmpiricalTDF::EmpiricalTDF(const PseudoSample& sample, std::size_t k)
    : points_(std::make_shared<detail::RankedPoints>(sample.uv)), k_(k) {
    require(k >= 1 && k <= sample.n(), "empirical tdf: k must lie in [1, n]");
}

double EmpiricalTDF::operator()(double u, double v) const {
    if (!(u >= 0.0) || !(v >= 0.0)) {
        throw std::domain_error("empirical tdf: arguments must be nonnegative");
    }
    if (u == 0.0 || v == 0.0) return 0.0;
    const double n = static_cast<double>(points_->n);
    const double kk = static_cast<double>(k_);
    const std::size_t c = points_->count_leq(std::min(1.0, kk * u / n), std::min(1.0, kk * v / n));
    return n / kk * static_cast<double>(c) / (n + 1.0);
}

PlateauResult plateau_find_k(const PseudoSample& sample, const PlateauOptions& opts) {
    const std::size_t n = sample.n();
    std::size_t k_min = opts.k_min;
    std::size_t k_max = opts.k_max;
    if (k_min == 0) {
        k_min = std::max<std::size_t>(
            20, static_cast<std::size_t>(std::ceil(0.5 * std::sqrt(static_cast<double>(n)))));
    }
    if (k_max == 0) k_max = n / 10;
    k_max = std::min(k_max, n);
    require(k_min >= 1 && k_min < k_max, "plateau_find_k: need 1 <= k_min < k_max <= n");

    // sorted max-coordinates: lambda_hat(k) needs only #{max(u_i,v_i) <= k/n}
    std::vector<double> maxes(n);
    for (std::size_t i = 0; i < n; ++i) maxes[i] = std::max(sample.uv[i].first, sample.uv[i].second);
    std::sort(maxes.begin(), maxes.end());

    const double dn = static_cast<double>(n);
    auto tdc_hat = [&](std::size_t k) {
        const double thr = static_cast<double>(k) / dn;
        const auto c = static_cast<std::size_t>(
            std::upper_bound(maxes.begin(), maxes.end(), thr) - maxes.begin());
        return dn / static_cast<double>(k) * static_cast<double>(c) / (dn + 1.0);
    };

    // geometric grid of distinct integers
    std::vector<std::size_t> ks;
    const int gp = std::max(2, opts.grid_points);
    const double lo = std::log(static_cast<double>(k_min));
    const double hi = std::log(static_cast<double>(k_max));
    for (int i = 0; i < gp; ++i) {
        const double x = std::exp(lo + (hi - lo) * static_cast<double>(i) / (gp - 1));
        const auto k = static_cast<std::size_t>(std::llround(x));
        if (ks.empty() || k > ks.back()) ks.push_back(std::max<std::size_t>(1, k));
    }

    PlateauResult res;
    std::vector<double> lam(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        lam[i] = tdc_hat(ks[i]);
        res.curve.emplace_back(ks[i], lam[i]);
    }

    // centered moving average
    const int h = std::max(0, opts.smooth_halfwidth);
    std::vector<double> sm(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const std::size_t a = (i >= static_cast<std::size_t>(h)) ? i - h : 0;
        const std::size_t b = std::min(ks.size() - 1, i + static_cast<std::size_t>(h));
        double s = 0.0;
        for (std::size_t j = a; j <= b; ++j) s += lam[j];
        sm[i] = s / static_cast<double>(b - a + 1);
    }

    const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(std::max(2, opts.window)),
                                                ks.size());
    for (std::size_t j = 0; j + m <= ks.size(); ++j) {
        double mn = sm[j], mx = sm[j];
        for (std::size_t i = j; i < j + m; ++i) {
            mn = std::min(mn, sm[i]);
            mx = std::max(mx, sm[i]);
        }
        const double se = std::sqrt(std::max(sm[j], 0.01) / static_cast<double>(ks[j]));
        if (mx - mn <= opts.range_factor * se) {
            res.k_star = ks[j + m / 2];
            res.plateau_found = true;
            return res;
        }
    }
    res.k_star = std::min(
        k_max, std::max(k_min, static_cast<std::size_t>(
                                   std::ceil(2.0 * std::sqrt(static_cast<double>(n))))));
    res.plateau_found = false;
    return res;
}

namespace {

// composite trapezoid of g over the nodes {0, 1/L, ..., 1}
double trapezoid_unit_grid(const std::function<double(double)>& g, int L) {
    double s = 0.0;
    double prev_t = 0.0;
    double prev_g = g(0.0);
    for (int i = 1; i <= L; ++i) {
        const double t = static_cast<double>(i) / L;
        const double gt = g(t);
        s += 0.5 * (prev_g + gt) * (t - prev_t);
        prev_t = t;
        prev_g = gt;
    }
    return s;
}

} // namespace

double estimate_measure(const PseudoSample& sample, std::size_t k, const MeasureSpec& spec,
                        const EstimationOptions& opts) {
    return estimate_measure(EmpiricalTDF(sample, k), spec, opts);
}

double estimate_measure(const EmpiricalTDF& tdf, const MeasureSpec& spec,
                        const EstimationOptions& opts) {
    const int L = opts.L;
    switch (spec.kind) {
        case MeasureKind::Tdc: return tdf(1.0, 1.0);
        case MeasureKind::Gtdc: {
            if (!(spec.p1 > 0.0 && spec.p2 > 0.0)) {
                throw std::domain_error("gtdc: (u0,v0) must be positive");
            }
            return tdf(spec.p1, spec.p2) / std::min(spec.p1, spec.p2);
        }
        case MeasureKind::Spearman:
            return trapezoid_unit_grid([&](double t) { return tdf(t, 1.0) + tdf(1.0, t); }, L);
        case MeasureKind::Gini: {
            const double sub =
                trapezoid_unit_grid([&](double u) { return tdf(u, 1.0 - u); }, L);
            return (2.0 / 3.0) * (tdf(1.0, 1.0) + 2.0 * sub);
        }
        case MeasureKind::GiniW: {
            const double w = spec.p1;
            const double sub_num =
                trapezoid_unit_grid([&](double u) { return tdf(u, 1.0 - u); }, L);
            const double num = w * tdf(1.0, 1.0) * 0.5 + (1.0 - w) * sub_num;
            const double den = w * 0.5 + (1.0 - w) * 0.25;
            return num / den;
        }
        case MeasureKind::Poly: {
            const double m1 = spec.p1, m2 = spec.p2;
            const double i1 = trapezoid_unit_grid(
                                  [&](double s) { return tdf(std::pow(s, 1.0 / m1), 1.0); }, L) /
                              m1;
            const double i2 = trapezoid_unit_grid(
                                  [&](double s) { return tdf(1.0, std::pow(s, 1.0 / m2)); }, L) /
                              m2;
            return (m1 + 1.0) * (m2 + 1.0) / (m1 + m2 + 2.0) * (i1 + i2);
        }
        case MeasureKind::Line: {
            const double a = spec.p1;
            if (!(a > 0.0) || !std::isfinite(a)) {
                throw std::domain_error("line: slope must lie in (0,inf)");
            }
            return tdf(1.0, a) / std::min(1.0, a);
        }
        case MeasureKind::ChiBar:
        case MeasureKind::ChiStar: {
            const auto grid = opts.b_grid.empty() ? default_b_grid(L) : opts.b_grid;
            double best = -1.0;
            std::vector<double> vals(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) {
                vals[i] = tdf(grid[i], 1.0 / grid[i]);
                best = std::max(best, vals[i]);
            }
            if (spec.kind == MeasureKind::ChiBar) return best;
            if (best <= 0.0) return 0.0;
            double m_bar = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                if (best - vals[i] <= 1e-9) {
                    m_bar = std::max(m_bar, std::min(grid[i], 1.0 / grid[i]));
                }
            }
            return best / m_bar;
        }
        case MeasureKind::LambdaBar: {
            // t in {ceil(t_min L)/L, ..., 1}, step 1/L
            double best = 0.0;
            const int i0 = std::max(1, static_cast<int>(std::ceil(opts.t_min * L - 1e-9)));
            for (int i = i0; i <= L; ++i) {
                const double t = static_cast<double>(i) / L;
                best = std::max(best, std::max(tdf(t, 1.0), tdf(1.0, t)) / t);
            }
            return best;
        }
    }
    throw std::logic_error("estimate_measure: unreachable");
}

std::vector<MeasureReport> bootstrap(const PseudoSample& sample, std::size_t k,
                                     const std::vector<MeasureSpec>& specs,
                                     const BootstrapOptions& opts) {
    require(opts.B >= 2, "bootstrap: B must be >= 2");
    require(opts.level > 0.0 && opts.level < 1.0, "bootstrap: level must lie in (0,1)");
    const std::size_t n = sample.n();

    const EmpiricalTDF point_tdf(sample, k);
    std::vector<MeasureReport> reports(specs.size());
    for (std::size_t s = 0; s < specs.size(); ++s) {
        reports[s].measure = specs[s].str();
        reports[s].estimate = estimate_measure(point_tdf, specs[s], opts.estimation);
        reports[s].level = opts.level;
        reports[s].n = n;
        reports[s].k = k;
        reports[s].B = opts.B;
        reports[s].seed = opts.seed;
        reports[s].t_min = opts.estimation.t_min;
        reports[s].L = opts.estimation.L;
        reports[s].low_b = opts.B < 10;
    }

    std::vector<std::vector<double>> reps(specs.size(), std::vector<double>(opts.B));
    std::vector<std::pair<double, double>> resampled(n);
    for (std::size_t b = 0; b < opts.B; ++b) {
        Rng rng(derive_seed(opts.seed, b));
        for (std::size_t i = 0; i < n; ++i) {
            const auto j = static_cast<std::size_t>(rng.next_u64() % n);
            resampled[i] = sample.uv[j];
        }
        const PseudoSample rs = pseudo_observations(resampled);
        std::size_t kb = k;
        if (opts.rechoose_k) kb = plateau_find_k(rs, opts.plateau).k_star;
        const EmpiricalTDF rep_tdf(rs, kb);
        for (std::size_t s = 0; s < specs.size(); ++s) {
            reps[s][b] = estimate_measure(rep_tdf, specs[s], opts.estimation);
        }
    }

    // percentile interval by order statistics: the ceil(q B)-th smallest value
    const double q_lo = 0.5 * (1.0 - opts.level);
    const double q_hi = 1.0 - q_lo;
    auto order_stat = [&](std::vector<double>& v, double q) {
        const auto B = static_cast<double>(v.size());
        auto idx = static_cast<std::size_t>(std::ceil(q * B));
        idx = std::min(std::max<std::size_t>(idx, 1), v.size()) - 1;
        std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(idx), v.end());
        return v[idx];
    };
    for (std::size_t s = 0; s < specs.size(); ++s) {
        auto v = reps[s];
        reports[s].ci_low = order_stat(v, q_lo);
        reports[s].ci_high = order_stat(v, q_hi);
    }
    return reports;
}

} // namespace taildep
