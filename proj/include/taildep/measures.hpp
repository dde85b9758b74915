#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "taildep/copula.hpp"
#include "taildep/tdf.hpp"

namespace taildep {

// Tail generating probability measure on the unit square: a finite mixture of
// atoms, line-segment densities, the diagonal/antidiagonal uniform measures
// and monomial product densities. No component places mass on {u=0} or {v=0}.
class GeneratingMeasure {
  public:
    struct Atom {
        double u, v; // in (0,1]^2
    };
    struct DiagonalUniform {};     // measure of the comonotone copula
    struct AntidiagonalUniform {}; // measure of the countermonotone copula
    struct LineSegment {
        double slope;      // a in (0,inf); support {(t, a t): 0 < t <= min(1, 1/a)}
        double monomial_m; // radial density m t^(m-1) on the parameter; 1 = uniform
    };
    struct MonomialProduct {
        double m1, m2; // independent Mo(m1) x Mo(m2) coordinates; (1,1) = uniform square
    };
    using Part = std::variant<Atom, DiagonalUniform, AntidiagonalUniform, LineSegment,
                              MonomialProduct>;

    static GeneratingMeasure atom(double u0, double v0);
    static GeneratingMeasure uniform_square() { return monomial_product(1.0, 1.0); }
    static GeneratingMeasure diagonal_uniform();
    static GeneratingMeasure antidiagonal_uniform();
    static GeneratingMeasure line_segment(double slope, double monomial_m = 1.0);
    static GeneratingMeasure monomial_product(double m1, double m2);
    static GeneratingMeasure mixture(const std::vector<double>& weights,
                                     const std::vector<GeneratingMeasure>& parts);

    const std::vector<std::pair<double, Part>>& components() const { return components_; }

    // Sufficient (not exact) check for positive mass around a diagonal point;
    // true for diagonal atoms, the diagonal uniform part, unit-slope segments
    // and the absolutely continuous product densities.
    bool touches_diagonal() const;

    std::string name() const;

  private:
    std::vector<std::pair<double, Part>> components_;
};

// integral of f over the unit square against mu; atoms exact, segments and
// diagonals by 1D adaptive quadrature, product densities by tensor-product
// adaptive quadrature. Throws QuadratureError when the tolerance is missed.
double integrate(const GeneratingMeasure& mu, const std::function<double(double, double)>& f,
                 double abs_tol = 1e-10);

// --- measures built from a tail dependence function ---------------------

// int L dmu / int min dmu
double mu_tdm(const TailDependenceFunction& tdf, const GeneratingMeasure& mu,
              double abs_tol = 1e-10);

// Same value through the closed 1D radial route (margin slices); used as an
// independent cross-check of the generic quadrature path.
double mu_tdm_radial(const TailDependenceFunction& tdf, const GeneratingMeasure& mu,
                     double abs_tol = 1e-10);

// Finite-level version evaluated on the copula itself:
// int (C - Pi)(pu,pv) dmu / int (M - Pi)(pu,pv) dmu
double mu_tdm_at_level_p(const Copula& c, const GeneratingMeasure& mu, double p,
                         double abs_tol = 1e-10);

double tdc(const TailDependenceFunction& tdf);
double gtdc(const TailDependenceFunction& tdf, double u0, double v0);
double tail_spearman(const TailDependenceFunction& tdf, double abs_tol = 1e-10);
double tail_gini(const TailDependenceFunction& tdf, double abs_tol = 1e-10);

// 1D radial measure with monomial density m t^(m-1) on [0,1]; m = 1 is uniform.
struct RadialMeasure1D {
    double m = 1.0;
};
double tail_gini_w(const TailDependenceFunction& tdf, double w, RadialMeasure1D mu1 = {},
                   RadialMeasure1D mu2 = {}, double abs_tol = 1e-10);

double polynomial_tdm(const TailDependenceFunction& tdf, double m1, double m2,
                      double abs_tol = 1e-10);

// int max dmu / int min dmu, the sharpness coefficient of the sandwich bound
// tdc <= mu_tdm <= min(1, a * tdc)
double coefficient_a(const GeneratingMeasure& mu, double abs_tol = 1e-10);

// --- maximal-type measures ----------------------------------------------

// Paper-style maximization grid {1/L,...,1, L/(L-1),...,L}.
std::vector<double> default_b_grid(int L = 100);

struct ChiBarResult {
    double value = 0.0;
    std::vector<double> argmax; // all b within tie_tol of the maximum
};

// max_b L(b, 1/b) over the grid, augmented with known kink ratios; smooth
// families get one golden-section refinement pass around the best grid point.
ChiBarResult chi_bar(const TailDependenceFunction& tdf, std::vector<double> b_grid = {},
                     double tie_tol = 1e-9);

// chi_bar / m_bar with m_bar = sup{min(b,1/b) : b in the argmax set}
double chi_star(const TailDependenceFunction& tdf, std::vector<double> b_grid = {},
                double tie_tol = 1e-9);

struct LambdaBarResult {
    double value = 0.0;
    double t_min = 0.0; // grid floor used; value is a lower bound for the limit
};

// max over a decreasing t-grid (geometric, down to t_min) of the normalized
// tail dependence function; by monotonicity the maximum sits at t_min.
LambdaBarResult lambda_bar(const TailDependenceFunction& tdf, double t_min = 1e-4,
                           int points = 200);

struct PhiTdc {
    double chi = 0.0;   // L(b, 1/b)
    double kappa = 0.0; // L(b, 1/b) / min(b, 1/b)
};

// Path-based coefficients; paths enter only through b = phi'(0+).
PhiTdc phi_tdc(const TailDependenceFunction& tdf, double b_phi);

// --- measure-name catalogue ----------------------------------------------

enum class MeasureKind {
    Tdc,
    Gtdc,      // gtdc:u0,v0
    Spearman,
    Gini,
    GiniW,     // gini_w:w
    Poly,      // poly:m1,m2
    Line,      // line:a
    ChiBar,
    ChiStar,
    LambdaBar,
};

struct MeasureSpec {
    MeasureKind kind;
    double p1 = 0.0, p2 = 0.0;
    std::string str() const;
    // generating measure behind the named measure; empty for the maximal-type kinds
    std::optional<GeneratingMeasure> generating_measure() const;
};

// Parses "tdc", "gtdc:u0,v0", "spearman", "gini", "gini_w:w", "poly:m1,m2",
// "line:a", "chi_bar", "chi_star", "lambda_bar".
MeasureSpec parse_measure(const std::string& name);

struct AnalyticOptions {
    int L = 100;
    double t_min = 1e-4;
    std::vector<double> b_grid = {}; // empty = default grid
    double abs_tol = 1e-10;
};

double evaluate_measure(const TailDependenceFunction& tdf, const MeasureSpec& spec,
                        const AnalyticOptions& opts = {});

} // namespace taildep
