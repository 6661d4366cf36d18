#pragma once

namespace gsd {

// Regularized incomplete beta function I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

// Two-tailed p-value for a Student t statistic with df degrees of freedom.
double student_t_two_tailed_p(double t, double df);

// Standard normal survival function P(Z > z).
double normal_sf(double z);

}  // namespace gsd
