#pragma once

namespace netshift {

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation, accurate to ~1e-14 for moderate a, b.
double incomplete_beta(double a, double b, double x);

// Central F distribution function P(F_{d1,d2} <= x).
double f_cdf(double x, double d1, double d2);

// Noncentral F distribution function with noncentrality ncp, Poisson-mixture
// series; terminates when the untouched Poisson mass drops below 1e-12
// (hard cap 10000 terms). ncp = 0 reduces exactly to f_cdf.
double noncentral_f_cdf(double x, double d1, double d2, double ncp);

// Inverse of f_cdf in x, bracketed bisection.
double f_quantile(double prob, double d1, double d2);

}  // namespace netshift
