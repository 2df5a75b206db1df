#include "netshift/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace netshift {

namespace {

// Lexicographic order on eigenvector columns, used only to fix the order
// inside groups of exactly equal eigenvalues.
bool column_less(const Eigen::MatrixXd& u, int a, int b) {
    for (int i = 0; i < u.rows(); ++i) {
        if (u(i, a) < u(i, b)) return true;
        if (u(i, a) > u(i, b)) return false;
    }
    return false;
}

}  // namespace

SpectralBasis eigenbasis(const StructureMatrix& sm) {
    const Eigen::MatrixXd& q = sm.q;
    if (q.rows() != q.cols() || q.rows() == 0)
        throw std::invalid_argument("structure matrix must be square and nonempty");
    double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
    if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("structure matrix must be symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(q);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed");

    Eigen::VectorXd lambdas = solver.eigenvalues();
    Eigen::MatrixXd u = solver.eigenvectors();
    int p = static_cast<int>(lambdas.size());

    double lmax = lambdas.maxCoeff();
    double tol = 1e-9 * std::max(1.0, lmax);
    for (int i = 0; i < p; ++i) {
        if (lambdas[i] < -tol)
            throw std::domain_error("structure matrix is not positive semidefinite");
        if (lambdas[i] < 0.0) lambdas[i] = 0.0;
    }

    // Deterministic sign: the largest-magnitude entry of each column is made
    // positive, first such index winning on ties.
    for (int j = 0; j < p; ++j) {
        int arg = 0;
        double best = -1.0;
        for (int i = 0; i < p; ++i) {
            double m = std::abs(u(i, j));
            if (m > best) {
                best = m;
                arg = i;
            }
        }
        if (u(arg, j) < 0.0) u.col(j) = -u.col(j);
    }

    // Ascending eigenvalues; columns with exactly equal eigenvalues are put in
    // lexicographic order so repeated runs give bitwise identical bases.
    std::vector<int> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (lambdas[a] != lambdas[b]) return lambdas[a] < lambdas[b];
        return column_less(u, a, b);
    });

    SpectralBasis basis;
    basis.lambdas.resize(p);
    basis.u.resize(p, p);
    for (int j = 0; j < p; ++j) {
        basis.lambdas[j] = lambdas[order[j]];
        basis.u.col(j) = u.col(order[j]);
    }
    return basis;
}

Eigen::VectorXd project(const SpectralBasis& basis, int k, const Eigen::VectorXd& x) {
    int p = static_cast<int>(basis.lambdas.size());
    if (k < 1 || k > p) throw std::invalid_argument("projection dimension out of range");
    if (x.size() != p) throw std::invalid_argument("vector length must match basis");
    return basis.u.leftCols(k).transpose() * x;
}

double eigengap(const SpectralBasis& basis, int k) {
    int p = static_cast<int>(basis.lambdas.size());
    if (k < 1 || k >= p) throw std::invalid_argument("eigengap index out of range");
    return basis.lambdas[k] - basis.lambdas[k - 1];
}

int eigenvalue_multiplicity(const SpectralBasis& basis, int i) {
    int p = static_cast<int>(basis.lambdas.size());
    if (i < 0 || i >= p) throw std::invalid_argument("eigenvalue index out of range");
    double tol = 1e-8 * std::max(1.0, basis.lambdas[p - 1]);
    int count = 0;
    for (int j = 0; j < p; ++j)
        if (std::abs(basis.lambdas[j] - basis.lambdas[i]) <= tol) ++count;
    return count;
}

}  // namespace netshift
