#include "taildep/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace taildep {

namespace {

struct SimpsonState {
    const std::function<double(double)>* f;
    double tol;
    int max_depth;
    double worst_panel = 0.0; // largest unconverged panel error
};

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(SimpsonState& st, double a, double b, double fa, double fm, double fb,
             double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = (*st.f)(lm);
    const double frm = (*st.f)(rm);
    const double left = simpson(fa, flm, fm, a, m);
    const double right = simpson(fm, frm, fb, m, b);
    const double err = (left + right - whole) / 15.0;
    if (std::fabs(err) <= tol || (b - a) < 1e-14) {
        return left + right + err;
    }
    if (depth >= st.max_depth) {
        st.worst_panel = std::max(st.worst_panel, std::fabs(err));
        return left + right + err;
    }
    return adapt(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adapt(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

double integrate_panel(const std::function<double(double)>& f, double a, double b,
                       double tol, int max_depth) {
    if (a == b) return 0.0;
    SimpsonState st{&f, tol, max_depth};
    const double fa = f(a);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = simpson(fa, fm, fb, a, b);
    const double result = adapt(st, a, b, fa, fm, fb, whole, tol, 0);
    if (st.worst_panel > tol) {
        throw QuadratureError("adaptive quadrature did not reach the requested tolerance",
                              st.worst_panel);
    }
    return result;
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
    return integrate_panel(f, a, b, opts.abs_tol, opts.max_depth);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 std::vector<double> breakpoints, const QuadratureOptions& opts) {
    breakpoints.erase(std::remove_if(breakpoints.begin(), breakpoints.end(),
                                     [&](double x) { return !(x > a) || !(x < b); }),
                      breakpoints.end());
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

    std::vector<double> nodes;
    nodes.push_back(a);
    for (double x : breakpoints) nodes.push_back(x);
    nodes.push_back(b);

    const double panel_tol = opts.abs_tol / static_cast<double>(nodes.size() - 1);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        total += integrate_panel(f, nodes[i], nodes[i + 1], panel_tol, opts.max_depth);
    }
    return total;
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double x_tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > x_tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        s += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    }
    return s;
}

} // namespace taildep
