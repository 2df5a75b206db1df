#include "netshift/inference.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "netshift/numeric.hpp"

namespace netshift {

void validate(const TwoSampleData& data) {
    if (data.x1.rows() < 2 || data.x2.rows() < 2)
        throw std::invalid_argument("each sample needs at least two observations");
    if (data.x1.cols() != data.x2.cols())
        throw std::invalid_argument("samples must share the same coordinates");
    if (data.x1.cols() < 1)
        throw std::invalid_argument("samples need at least one coordinate");
    if (!data.x1.allFinite() || !data.x2.allFinite())
        throw std::invalid_argument("samples must be finite");
}

Eigen::MatrixXd pooled_covariance(const TwoSampleData& data) {
    validate(data);
    Eigen::MatrixXd c1 = data.x1.rowwise() - data.x1.colwise().mean();
    Eigen::MatrixXd c2 = data.x2.rowwise() - data.x2.colwise().mean();
    Eigen::MatrixXd s =
        (c1.transpose() * c1 + c2.transpose() * c2) / (data.n1() + data.n2() - 2);
    return 0.5 * (s + s.transpose());
}

namespace {

// Core statistic on already-filtered coordinates. delta and s live in the
// retained k-dimensional space; n1, n2 come from the original samples.
TestResult t2_from_parts(const Eigen::VectorXd& delta, const Eigen::MatrixXd& s,
                         int n1, int n2) {
    int k = static_cast<int>(delta.size());
    int n = n1 + n2;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
    if (eig.info() != Eigen::Success)
        throw SingularMatrixError("pooled covariance factorization failed");
    const Eigen::VectorXd& ev = eig.eigenvalues();
    double largest = ev[k - 1];
    if (!(largest > 0.0) || ev[0] <= 1e-12 * largest)
        throw SingularMatrixError("pooled covariance is numerically singular");
    if (n - k - 1 < 1)
        throw std::invalid_argument(
            "sample size too small for the requested component count");

    Eigen::VectorXd w = eig.eigenvectors().transpose() * delta;
    double quad = (w.array().square() / ev.array()).sum();
    double c = static_cast<double>(n1) * n2 / n;

    TestResult r;
    r.statistic = c * quad;
    r.k = k;
    r.df1 = k;
    r.df2 = n - k - 1;
    r.scale = static_cast<double>(n - k - 1) / (static_cast<double>(n - 2) * k);
    r.pvalue = 1.0 - f_cdf(r.scale * r.statistic, r.df1, r.df2);
    return r;
}

Eigen::VectorXd mean_shift(const TwoSampleData& data) {
    return data.x1.colwise().mean().transpose() -
           data.x2.colwise().mean().transpose();
}

}  // namespace

TestResult hotelling_t2(const TwoSampleData& data) {
    validate(data);
    return t2_from_parts(mean_shift(data), pooled_covariance(data), data.n1(),
                         data.n2());
}

TestResult graph_t2(const TwoSampleData& data, const SpectralBasis& basis, int k) {
    validate(data);
    int p = data.dim();
    if (basis.lambdas.size() != p)
        throw std::invalid_argument("basis dimension must match the data");
    if (k < 1 || k > p)
        throw std::invalid_argument("retained component count out of range");
    if (data.n1() + data.n2() - k - 1 < 1)
        throw std::invalid_argument(
            "sample size too small for the requested component count");
    Eigen::MatrixXd uk = basis.u.leftCols(k);
    TwoSampleData proj{data.x1 * uk, data.x2 * uk};
    return t2_from_parts(mean_shift(proj), pooled_covariance(proj), data.n1(),
                         data.n2());
}

TestResult pca_t2(const TwoSampleData& data, int k) {
    validate(data);
    int p = data.dim();
    if (k < 1 || k > p)
        throw std::invalid_argument("retained component count out of range");
    if (data.n1() + data.n2() - k - 1 < 1)
        throw std::invalid_argument(
            "sample size too small for the requested component count");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(pooled_covariance(data));
    if (eig.info() != Eigen::Success)
        throw SingularMatrixError("pooled covariance factorization failed");
    // descending variance order
    Eigen::MatrixXd uk(p, k);
    for (int j = 0; j < k; ++j) uk.col(j) = eig.eigenvectors().col(p - 1 - j);
    TwoSampleData proj{data.x1 * uk, data.x2 * uk};
    return t2_from_parts(mean_shift(proj), pooled_covariance(proj), data.n1(),
                         data.n2());
}

double power(double alpha, int k, int n1, int n2, double delta2) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0,1)");
    if (k < 1) throw std::invalid_argument("component count must be positive");
    if (n1 < 2 || n2 < 2)
        throw std::invalid_argument("each sample needs at least two observations");
    if (!(delta2 >= 0.0))
        throw std::invalid_argument("squared shift must be nonnegative");
    int n = n1 + n2;
    if (n - k - 1 < 1)
        throw std::invalid_argument(
            "sample size too small for the requested component count");
    double crit = f_quantile(1.0 - alpha, k, n - k - 1);
    double ncp = static_cast<double>(n1) * n2 / n * delta2;
    return 1.0 - noncentral_f_cdf(crit, k, n - k - 1, ncp);
}

double shift_increase(double alpha, int k, int l, double delta_k2, int n1, int n2) {
    if (l < 0) throw std::invalid_argument("extra component count must be nonnegative");
    if (!(delta_k2 >= 0.0))
        throw std::invalid_argument("squared shift must be nonnegative");
    double target = power(alpha, k, n1, n2, delta_k2);
    if (l == 0) return 0.0;
    double probe = power(alpha, k + l, n1, n2, delta_k2);  // validates k + l
    if (delta_k2 == 0.0) return 0.0;
    (void)probe;

    double hi = std::max(delta_k2, 1.0);
    while (power(alpha, k + l, n1, n2, hi) < target) {
        hi *= 2.0;
        if (hi > 1e12) throw std::runtime_error("shift increase bracket overflow");
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (power(alpha, k + l, n1, n2, mid) < target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
    }
    // The true increase is strictly positive, but once the target power
    // saturates at 1 in double precision the defining equation has a whole
    // interval of solutions and the bisection may land left of delta_k2;
    // report the smallest nonnegative solution.
    return std::max(0.0, 0.5 * (lo + hi) - delta_k2);
}

FdrResult bh_fdr(const std::vector<double>& pvalues, double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("fdr level must lie in (0,1)");
    for (double p : pvalues)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("p values must lie in [0,1]");
    size_t m = pvalues.size();
    FdrResult out;
    out.adjusted.assign(m, 0.0);
    out.rejected.assign(m, false);
    if (m == 0) return out;

    std::vector<size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return pvalues[a] < pvalues[b]; });
    double running = 1.0;
    for (size_t j = m; j-- > 0;) {
        double raw = pvalues[order[j]] * m / (j + 1);
        running = std::min(running, raw);
        out.adjusted[order[j]] = running;
    }
    for (size_t i = 0; i < m; ++i) out.rejected[i] = out.adjusted[i] <= q;
    return out;
}

}  // namespace netshift
