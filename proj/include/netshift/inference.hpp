#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "netshift/spectral.hpp"

namespace netshift {

// Pooled covariance is numerically singular (factorization failure or
// condition estimate beyond 1e12).
struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two independent samples, one row per observation, columns aligned with
// graph node order. Requires n1 >= 2, n2 >= 2, equal column counts, finite
// entries.
struct TwoSampleData {
    Eigen::MatrixXd x1;
    Eigen::MatrixXd x2;

    int n1() const { return static_cast<int>(x1.rows()); }
    int n2() const { return static_cast<int>(x2.rows()); }
    int dim() const { return static_cast<int>(x1.cols()); }
};

void validate(const TwoSampleData& data);

struct TestResult {
    double statistic;  // T2 scale (not F scale)
    int k;             // retained components (p for the full-space test)
    int df1;
    int df2;
    double scale;      // N: scale * statistic ~ F(df1, df2) under the null
    double pvalue;
};

// ((n1-1) S1 + (n2-1) S2) / (n1 + n2 - 2)
Eigen::MatrixXd pooled_covariance(const TwoSampleData& data);

// Classical two-sample Hotelling statistic on all coordinates.
TestResult hotelling_t2(const TwoSampleData& data);

// Hotelling statistic restricted to the first k basis vectors.
TestResult graph_t2(const TwoSampleData& data, const SpectralBasis& basis, int k);

// Same filtering through the top-k principal components of the pooled
// covariance (descending eigenvalue order).
TestResult pca_t2(const TwoSampleData& data, int k);

// Rejection probability of the level-alpha filtered test when the
// population shift satisfies delta' Sigma^{-1} delta = delta2 within the
// retained components.
double power(double alpha, int k, int n1, int n2, double delta2);

// Extra squared shift needed for the k+l component test to match the power
// the k component test attains at delta_k2.
double shift_increase(double alpha, int k, int l, double delta_k2, int n1, int n2);

struct FdrResult {
    std::vector<double> adjusted;
    std::vector<bool> rejected;
};

// Benjamini-Hochberg step-up at level q.
FdrResult bh_fdr(const std::vector<double>& pvalues, double q);

}  // namespace netshift
