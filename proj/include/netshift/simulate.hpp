#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netshift/graph.hpp"
#include "netshift/inference.hpp"

namespace netshift {

// Uniform random spanning tree plus uniformly chosen extra edges; always
// connected, undirected, unsigned.
Graph random_connected_graph(int p, int n_edges, uint64_t seed);

// Chain of near-clique hubs: hub sizes Poisson(hub_size_mean) clamped >= 2,
// total node count in [min_nodes, max_nodes], intra-hub density ~0.8 on top
// of a spanning tree, consecutive hubs joined by a single bridge edge.
Graph hub_graph(uint64_t seed, double hub_size_mean = 10.0, int min_nodes = 90,
                int max_nodes = 110);

// Removes n_remove random existing edges and adds n_add random absent pairs
// (undirected, unsigned). Node set unchanged.
Graph corrupt_graph(const Graph& graph, int n_remove, int n_add, uint64_t seed);

enum class CovModel { diagonal, block };

struct SynthesisConfig {
    int k0 = 3;                // coefficients carrying the shift
    double delta2 = 1.0;       // Mahalanobis norm of the shift
    CovModel cov = CovModel::diagonal;
    int n1 = 20;
    int n2 = 20;
    bool with_shift = true;    // false -> both groups share the null mean
};

struct SynthResult {
    TwoSampleData data;
    Eigen::VectorXd delta_tilde;   // shift in basis coordinates
    Eigen::MatrixXd sigma_tilde;   // covariance in basis coordinates
};

// Draws two Gaussian samples in the basis coordinates (x = U x_tilde), group
// two shifted by delta_tilde: equal mass on the first k0 coefficients,
// scaled so delta' Sigma^{-1} delta = delta2 exactly.
SynthResult synth_two_sample(const SpectralBasis& basis, const SynthesisConfig& config,
                             uint64_t seed);

struct PlantedInstance {
    TwoSampleData data;
    std::vector<int> planted_nodes;   // sorted
};

// Identity-covariance planted-subgraph instance: a random connected
// q-subgraph carries a shift living in the first k0 coefficients of its own
// local basis, ||shift||^2 = delta2; zero mean shift elsewhere.
PlantedInstance planted_subgraph_instance(const Graph& graph, int q, int k0,
                                          double delta2, int n1, int n2, uint64_t seed);

struct RocPoint {
    double fpr;
    double tpr;
};

struct RocCurve {
    std::vector<RocPoint> points;  // from (0,0) to (1,1)
    double auc;                    // trapezoid = rank statistic with tie credit 1/2
};

RocCurve roc_curve(const std::vector<double>& null_scores,
                   const std::vector<double>& alt_scores);

enum class Scenario { diag, block, corrupt_remove, corrupt_add, power_vs_k };

Scenario scenario_from_string(const std::string& name);

struct ExperimentConfig {
    Scenario scenario = Scenario::diag;
    int p = 20;
    int n_edges = 20;        // 60 for the corruption scenarios
    int n1 = 20;
    int n2 = 20;
    int k0 = 3;              // 5 for power_vs_k
    double delta2 = 1.0;
    int replicates = 1000;   // per arm (null and alt)
    std::vector<int> k_grid; // filled per scenario when empty
    int n_corrupt = 20;
    double alpha = 0.05;     // power_vs_k rejection level
    uint64_t seed = 1;
};

struct MethodRoc {
    std::string method;
    RocCurve curve;
};

struct MethodPower {
    std::string method;
    int k;
    double value;
};

struct ExperimentResult {
    std::vector<MethodRoc> rocs;        // empty for power_vs_k
    std::vector<MethodPower> powers;    // power_vs_k only
    int n_null = 0;
    int n_alt = 0;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace netshift
