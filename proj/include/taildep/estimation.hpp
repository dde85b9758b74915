#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "taildep/measures.hpp"

namespace taildep {

struct PseudoSample {
    enum class Provenance { RawRanks, KnownMargins };

    std::vector<std::pair<double, double>> uv;
    Provenance provenance = Provenance::RawRanks;
    bool had_ties = false; // midranks were used somewhere

    std::size_t n() const { return uv.size(); }
};

// Coordinatewise ranks scaled by 1/n; ties get midranks (and set had_ties).
PseudoSample pseudo_observations(const std::vector<std::pair<double, double>>& raw);

// Uses the given pairs directly as uniform observations (known margins).
PseudoSample pseudo_from_known_margins(std::vector<std::pair<double, double>> uv);

namespace detail {
// Points indexed for dominance counting from both axes; count_leq costs
// O(log n) to locate the shorter prefix plus a scan of that prefix.
struct RankedPoints {
    explicit RankedPoints(const std::vector<std::pair<double, double>>& uv);
    std::size_t count_leq(double u, double v) const;
    std::size_t n = 0;
    std::vector<double> u_sorted, v_by_u;
    std::vector<double> v_sorted, u_by_v;
};
} // namespace detail

// C_n(u,v) = (1/(n+1)) #{i : u_i <= u, v_i <= v}
class EmpiricalCopula {
  public:
    explicit EmpiricalCopula(const PseudoSample& sample);
    double operator()(double u, double v) const;
    std::size_t n() const { return points_->n; }

  private:
    std::shared_ptr<const detail::RankedPoints> points_;
};

// Lambda_n(u,v) = (n/k) C_n(k u / n, k v / n)
class EmpiricalTDF {
  public:
    EmpiricalTDF(const PseudoSample& sample, std::size_t k);
    double operator()(double u, double v) const;
    std::size_t k() const { return k_; }
    std::size_t n() const { return points_->n; }

  private:
    std::shared_ptr<const detail::RankedPoints> points_;
    std::size_t k_;
};

struct PlateauOptions {
    std::size_t k_min = 0;  // 0 = default max(20, ceil(0.5 sqrt(n)))
    std::size_t k_max = 0;  // 0 = default floor(0.1 n)
    int grid_points = 200;  // geometric k-grid size
    int smooth_halfwidth = 5;
    int window = 15;
    double range_factor = 1.5; // accept when window range <= factor * se(k)
};

struct PlateauResult {
    std::size_t k_star = 0;
    bool plateau_found = false; // false = fallback value with a warning
    std::vector<std::pair<std::size_t, double>> curve; // (k, tdc_hat)
};

// Scans the tdc-vs-k curve for the first window that is flat relative to the
// local binomial standard error of the estimate; see README for the exact rule.
PlateauResult plateau_find_k(const PseudoSample& sample, const PlateauOptions& opts = {});

struct EstimationOptions {
    int L = 100;          // evaluation grid resolution
    double t_min = 0.1;   // grid floor for the lambda_bar estimator (>= 10/L per default)
    std::vector<double> b_grid = {}; // empty = default_b_grid(L)
};

// Plug-in estimate: the analytic functional applied to Lambda_n. Quadratures
// over Lambda_n use the composite trapezoid on the L-point grid.
double estimate_measure(const PseudoSample& sample, std::size_t k, const MeasureSpec& spec,
                        const EstimationOptions& opts = {});
double estimate_measure(const EmpiricalTDF& tdf, const MeasureSpec& spec,
                        const EstimationOptions& opts = {});

struct MeasureReport {
    std::string measure;
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double level = 0.0;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t B = 0;
    std::uint64_t seed = 0;
    double t_min = 0.0;
    int L = 0;
    bool low_b = false; // B too small for a meaningful percentile interval
};

struct BootstrapOptions {
    std::size_t B = 100;
    double level = 0.95;
    std::uint64_t seed = 1;
    bool rechoose_k = false; // re-run plateau selection per replicate
    PlateauOptions plateau = {};
    EstimationOptions estimation = {};
};

// Resamples pairs with replacement, re-ranks each replicate, and estimates
// every requested measure with the same k (unless rechoose_k). Percentile
// confidence intervals by order statistics; replicate seeds derive from
// (seed, replicate index).
std::vector<MeasureReport> bootstrap(const PseudoSample& sample, std::size_t k,
                                     const std::vector<MeasureSpec>& specs,
                                     const BootstrapOptions& opts);

} // namespace taildep
