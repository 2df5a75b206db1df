#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "netshift/graph.hpp"
#include "netshift/spectral.hpp"
#include "oracles.hpp"

using netshift::Graph;
using netshift::SpectralBasis;
using netshift::StructureVariant;

namespace {

std::vector<std::string> ids(int p) {
    std::vector<std::string> out;
    for (int i = 0; i < p; ++i) out.push_back("g" + std::to_string(i));
    return out;
}

SpectralBasis basis_of(const Graph& g, StructureVariant v) {
    return netshift::eigenbasis(netshift::laplacian(g, v));
}

void check_basis_invariants(const Graph& g, StructureVariant v) {
    auto sm = netshift::laplacian(g, v);
    auto b = netshift::eigenbasis(sm);
    int p = g.node_count();
    REQUIRE(b.u.rows() == p);
    REQUIRE(b.u.cols() == p);

    Eigen::MatrixXd gram = b.u.transpose() * b.u;
    CHECK((gram - Eigen::MatrixXd::Identity(p, p)).cwiseAbs().maxCoeff() < 1e-10);

    Eigen::MatrixXd resid = sm.q * b.u - b.u * b.lambdas.asDiagonal();
    CHECK(resid.cwiseAbs().maxCoeff() < 1e-8);

    for (int i = 0; i + 1 < p; ++i) CHECK(b.lambdas[i] <= b.lambdas[i + 1]);
    CHECK(b.lambdas[0] >= 0.0);

    // sign convention: the largest-magnitude entry of each column is positive
    for (int j = 0; j < p; ++j) {
        int arg = 0;
        for (int i = 1; i < p; ++i)
            if (std::abs(b.u(i, j)) > std::abs(b.u(arg, j))) arg = i;
        CHECK(b.u(arg, j) > 0.0);
    }
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("worked example spectra through the basis") {
    Graph fig_a(ids(4), {{0, 1, 1, false}, {1, 2, 1, false}, {1, 3, -1, false}});
    auto b = basis_of(fig_a, StructureVariant::signed_laplacian);
    std::vector<double> want{0.0, 1.0, 1.0, 4.0};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(b.lambdas[i] - want[i]) < 1e-9);

    auto bm = basis_of(fig_a, StructureVariant::directed_mg);
    std::vector<double> want_mg{0.0, 1.0, 1.0, 16.0 / 3.0};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(bm.lambdas[i] - want_mg[i]) < 1e-9);

    Graph fig_b(ids(4), {{0, 1, 1, true}, {2, 1, 1, true}, {3, 1, 1, true}});
    auto bb = basis_of(fig_b, StructureVariant::directed_mg);
    std::vector<double> want_b{0.0, 0.0, 0.0, 4.0 / 3.0};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(bb.lambdas[i] - want_b[i]) < 1e-9);
}

TEST_CASE("basis invariants on random graphs") {
    for (uint32_t seed = 1; seed <= 8; ++seed) {
        Graph g = oracle::random_test_graph(16, 0.25, seed + 900);
        check_basis_invariants(g, StructureVariant::combinatorial);
        Graph s = oracle::random_signed_graph(12, 0.3, true, seed + 900);
        check_basis_invariants(s, StructureVariant::signed_laplacian);
        check_basis_invariants(s, StructureVariant::directed_mg);
    }
}

TEST_CASE("deterministic output") {
    for (uint32_t seed : {5u, 6u}) {
        Graph g1 = oracle::random_test_graph(14, 0.3, seed);
        Graph g2 = oracle::random_test_graph(14, 0.3, seed);
        auto a = basis_of(g1, StructureVariant::combinatorial);
        auto b = basis_of(g2, StructureVariant::combinatorial);
        CHECK(a.u == b.u);              // bitwise
        CHECK(a.lambdas == b.lambdas);
    }
}

TEST_CASE("eigenspace projector is reproducible") {
    // C4 cycle: spectrum {0, 2, 2, 4}, middle eigenspace has multiplicity 2
    Graph c4(ids(4),
             {{0, 1, 1, false}, {1, 2, 1, false}, {2, 3, 1, false}, {3, 0, 1, false}});
    auto sm = netshift::laplacian(c4, StructureVariant::combinatorial);
    auto b = netshift::eigenbasis(sm);
    CHECK(netshift::eigenvalue_multiplicity(b, 1) == 2);
    CHECK(netshift::eigenvalue_multiplicity(b, 0) == 1);

    // rebuild Q from the decomposition; entries differ in the last bits
    Eigen::MatrixXd q2 = b.u * b.lambdas.asDiagonal() * b.u.transpose();
    q2 = 0.5 * (q2 + q2.transpose());
    auto b2 = netshift::eigenbasis(netshift::StructureMatrix{q2, sm.variant});

    Eigen::MatrixXd proj1 = b.u.middleCols(1, 2) * b.u.middleCols(1, 2).transpose();
    Eigen::MatrixXd proj2 = b2.u.middleCols(1, 2) * b2.u.middleCols(1, 2).transpose();
    CHECK((proj1 - proj2).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("projection") {
    Graph path(ids(3), {{0, 1, 1, false}, {1, 2, 1, false}});
    auto b = basis_of(path, StructureVariant::combinatorial);

    Eigen::VectorXd x(3);
    x << 1.0, 2.0, 3.0;
    Eigen::VectorXd c1 = netshift::project(b, 1, x);
    REQUIRE(c1.size() == 1);
    // the null eigenvector of a connected combinatorial Laplacian is 1/sqrt(p)
    CHECK(c1[0] == doctest::Approx(6.0 / std::sqrt(3.0)).epsilon(1e-12));

    Eigen::VectorXd cp = netshift::project(b, 3, x);
    CHECK((b.u * cp - x).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS(netshift::project(b, 0, x));
    CHECK_THROWS(netshift::project(b, 4, x));
    Eigen::VectorXd bad(2);
    bad << 1.0, 2.0;
    CHECK_THROWS(netshift::project(b, 1, bad));
}

TEST_CASE("edgeless graph") {
    Graph g(ids(4), {});
    auto b = basis_of(g, StructureVariant::signed_laplacian);
    CHECK(b.lambdas.cwiseAbs().maxCoeff() == 0.0);
    Eigen::MatrixXd gram = b.u.transpose() * b.u;
    CHECK((gram - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("eigengap") {
    Graph c4(ids(4),
             {{0, 1, 1, false}, {1, 2, 1, false}, {2, 3, 1, false}, {3, 0, 1, false}});
    auto b = basis_of(c4, StructureVariant::combinatorial);
    CHECK(netshift::eigengap(b, 1) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(netshift::eigengap(b, 2) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK_THROWS(netshift::eigengap(b, 4));
}

}  // TEST_SUITE spectral
