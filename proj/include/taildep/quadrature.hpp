#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace taildep {

// Thrown when adaptive integration cannot reach the requested tolerance;
// carries the error bound that was achieved.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

  private:
    double achieved_;
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    int max_depth = 40;
};

// Adaptive Simpson on [a,b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

// Same, with the interval split at the given interior breakpoints (kink
// abscissae of piecewise integrands).
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::vector<double> breakpoints, const QuadratureOptions& opts = {});

// Maximizes a unimodal f on [lo,hi]; returns argmax.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double x_tol = 1e-10);

// Composite trapezoid over sample points (x strictly increasing).
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

} // namespace taildep
