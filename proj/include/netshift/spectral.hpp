#pragma once

#include <Eigen/Dense>

#include "netshift/graph.hpp"

namespace netshift {

// Orthonormal eigenbasis of a structure matrix, eigenvalues ascending.
// Column signs and tie order are canonicalized so the output is a pure
// function of the matrix values.
struct SpectralBasis {
    Eigen::MatrixXd u;        // p x p, columns are basis vectors
    Eigen::VectorXd lambdas;  // ascending, tiny negatives clipped to zero
};

SpectralBasis eigenbasis(const StructureMatrix& m);

// First-k coefficients U_[k]' x.
Eigen::VectorXd project(const SpectralBasis& basis, int k, const Eigen::VectorXd& x);

// lambda_{k+1} - lambda_k (1-based k), diagnostic for basis stability.
double eigengap(const SpectralBasis& basis, int k);

// Multiplicity of the eigenvalue at (0-based) position i under the relative
// tie tolerance.
int eigenvalue_multiplicity(const SpectralBasis& basis, int i);

}  // namespace netshift
