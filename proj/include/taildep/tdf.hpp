#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "taildep/copula.hpp"

namespace taildep {

// Pickands dependence function A on [0,1]: convex, A(0)=A(1)=1 and
// max(w,1-w) <= A(w) <= 1. Tabulated variants interpolate piecewise-linearly,
// which preserves convexity and both bounds.
class PickandsFunction {
  public:
    static PickandsFunction constant_one();
    static PickandsFunction max_lower();
    static PickandsFunction asym_gumbel(double alpha, double beta, double theta);
    static PickandsFunction asym_galambos(double alpha, double beta, double theta);
    static PickandsFunction tabulated(std::vector<double> w, std::vector<double> a);

    double operator()(double w) const;
    std::string name() const;
    // grid nodes for tabulated variants (empty otherwise); used for kink hints
    const std::vector<double>& nodes() const;

    struct Impl;

  private:
    explicit PickandsFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
    friend class TailDependenceFunction;
    friend PickandsFunction pickands_from_tdf(const TailDependenceFunction&, int);
};

// Tail dependence function: 1-homogeneous, 2-increasing, 0 <= L <= min on the
// nonnegative quadrant. Values are immutable; evaluation is pure.
class TailDependenceFunction {
  public:
    static TailDependenceFunction zero();
    static TailDependenceFunction comonotone();
    static TailDependenceFunction frechet_tail(double alpha);
    static TailDependenceFunction marshall_olkin_tail(double a, double b);
    static TailDependenceFunction clayton_tail(double theta);
    static TailDependenceFunction survival_gumbel_tail(double theta);
    static TailDependenceFunction singular_tail(double theta);
    static TailDependenceFunction student_t_tail(double nu, double rho);
    static TailDependenceFunction survival_ev_tail(PickandsFunction a);
    static TailDependenceFunction asym_gumbel_tail(double alpha, double beta, double theta);
    static TailDependenceFunction asym_galambos_tail(double alpha, double beta, double theta);
    static TailDependenceFunction convex_mixture(std::vector<double> weights,
                                                 std::vector<TailDependenceFunction> components);
    TailDependenceFunction transposed() const;

    // eval on R+^2 (not restricted to the unit square)
    double operator()(double u, double v) const;

    // margin slices and their normalized forms
    double margin1(double t) const { return (*this)(t, 1.0); }
    double margin2(double t) const { return (*this)(1.0, t); }
    double margin1_star(double t) const;
    double margin2_star(double t) const;
    double star(double t) const; // max of the two normalized margins

    // true when b -> L(b, 1/b) is differentiable, enabling golden-section
    // refinement of the maximizer
    bool is_smooth() const;

    // known kink locations, used as quadrature panel boundaries / extra grid
    // points; empty when none are known
    std::vector<double> chi_kink_ratios() const;   // kinks of b -> L(b,1/b)
    std::vector<double> margin1_kinks() const;     // kinks of t -> L(t,1), t in (0,1)
    std::vector<double> margin2_kinks() const;     // kinks of t -> L(1,t), t in (0,1)
    std::vector<double> subdiagonal_kinks() const; // kinks of u -> L(u,1-u), u in (0,1)

    std::string name() const;

    struct Impl;
    const Impl& impl() const { return *impl_; }

  private:
    explicit TailDependenceFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

using Tdf = TailDependenceFunction;

// Bridge between tail dependence functions and Pickands functions,
// A(w) = 1 - L(w, 1-w). On survival-EV tail dependence functions the two maps
// are inverse to each other; a general L maps to A non-injectively (the
// returned A only retains the subdiagonal values of L).
TailDependenceFunction tdf_from_pickands(const PickandsFunction& a);
PickandsFunction pickands_from_tdf(const TailDependenceFunction& tdf, int grid_points = 201);

// Copula with prescribed tail dependence function, C(u,v) = max(L(u,v), u+v-1).
// Throws std::invalid_argument if the candidate fails validation.
Copula copula_from_tdf(const TailDependenceFunction& tdf, int sampler_grid = 1024);

struct TdfValidityReport {
    double homogeneity = 0.0;    // worst |L(tu,tv) - t L(u,v)|
    double two_increasing = 0.0; // worst negative rectangle mass (>= 0)
    double lower_bound = 0.0;    // worst negative value (>= 0)
    double upper_bound = 0.0;    // worst excess over min(u,v) (>= 0)
    double groundedness = 0.0;   // worst |L(u,0)| or |L(0,v)|

    bool ok(double tol_hom = 1e-9, double tol_incr = 1e-10, double tol_bounds = 1e-10) const;
    std::string describe() const;
};

// Diagnostic grid checks of the characterization (1-homogeneous, 2-increasing,
// 0 <= L <= min, grounded) for an arbitrary candidate.
TdfValidityReport validate_tdf(const std::function<double(double, double)>& candidate);

} // namespace taildep
