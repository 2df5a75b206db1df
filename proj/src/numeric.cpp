#include "netshift/numeric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace netshift {

namespace {

// Continued fraction for the regularized incomplete beta, evaluated with the
// modified Lentz scheme. Converges quickly for x < (a+1)/(a+b+2).
double beta_cf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 3e-16;
    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) return h;
    }
    throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("incomplete beta parameters must be positive");
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("incomplete beta argument must lie in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    double ln_front = a * std::log(x) + b * std::log1p(-x) -
                      (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double f_cdf(double x, double d1, double d2) {
    if (!(d1 > 0.0) || !(d2 > 0.0))
        throw std::invalid_argument("F degrees of freedom must be positive");
    if (!(x == x)) throw std::invalid_argument("F cdf argument is NaN");
    if (x <= 0.0) return 0.0;
    double y = d1 * x / (d1 * x + d2);
    if (y >= 1.0) return 1.0;
    return incomplete_beta(0.5 * d1, 0.5 * d2, y);
}

double noncentral_f_cdf(double x, double d1, double d2, double ncp) {
    if (!(d1 > 0.0) || !(d2 > 0.0))
        throw std::invalid_argument("F degrees of freedom must be positive");
    if (!(ncp >= 0.0))
        throw std::invalid_argument("noncentrality must be nonnegative");
    if (x <= 0.0) return 0.0;
    if (ncp == 0.0) return f_cdf(x, d1, d2);

    double y = d1 * x / (d1 * x + d2);
    if (y >= 1.0) y = std::nextafter(1.0, 0.0);
    // Poisson mixture of central beta terms, weights in log space; stop once
    // the unassigned weight can no longer move the result.
    double half = 0.5 * ncp;
    double log_half = std::log(half);
    double sum = 0.0;
    double weight_sum = 0.0;
    for (int j = 0; j < 10000; ++j) {
        double log_w = -half + j * log_half - std::lgamma(j + 1.0);
        double w = std::exp(log_w);
        if (w > 0.0) sum += w * incomplete_beta(0.5 * d1 + j, 0.5 * d2, y);
        weight_sum += w;
        if (j > half && 1.0 - weight_sum < 1e-12) break;
    }
    return std::min(sum, 1.0);
}

double f_quantile(double prob, double d1, double d2) {
    if (!(d1 > 0.0) || !(d2 > 0.0))
        throw std::invalid_argument("F degrees of freedom must be positive");
    if (!(prob > 0.0 && prob < 1.0))
        throw std::invalid_argument("quantile probability must lie in (0,1)");
    double hi = 1.0;
    while (f_cdf(hi, d1, d2) < prob) {
        hi *= 2.0;
        if (hi > 1e300) throw std::runtime_error("F quantile bracket overflow");
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (f_cdf(mid, d1, d2) < prob)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace netshift
