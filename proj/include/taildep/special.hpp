#pragma once

namespace taildep {

// Regularized incomplete beta function I_x(a,b), continued fraction (Lentz),
// relative accuracy ~1e-14.
double regularized_incomplete_beta(double a, double b, double x);

double student_t_cdf(double x, double nu);

// Inverse of student_t_cdf in x; Newton with bisection safeguard.
double student_t_quantile(double p, double nu);

double student_t_pdf(double x, double nu);

double normal_cdf(double x);

} // namespace taildep
