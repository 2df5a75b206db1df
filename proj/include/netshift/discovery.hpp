#pragma once

#include <cstdint>
#include <vector>

#include "netshift/graph.hpp"
#include "netshift/inference.hpp"

namespace netshift {

enum class BoundMode { exact, euclidean };

struct DiscoveryConfig {
    int q = 5;                 // subgraph size to test
    int k = 3;                 // retained components per subgraph
    double alpha = 1e-4;
    BoundMode mode = BoundMode::exact;
    double theta = 1.0;        // euclidean preselection threshold
    StructureVariant variant = StructureVariant::combinatorial;
};

struct SubgraphHit {
    std::vector<int> nodes;    // sorted node indices
    double statistic;
    double pvalue;
    Eigen::VectorXd basis_eigenvalues;          // first k local eigenvalues
    double min_projected_cov_eigenvalue;        // lambda_min of U_[k]' S U_[k]
};

struct DiscoveryStats {
    long long bound_evaluations = 0;
    long long pruned = 0;
    long long tested = 0;             // q-subgraphs scored with the real statistic
    long long skipped_singular = 0;
};

struct DiscoveryResult {
    std::vector<SubgraphHit> hits;    // sorted by node set
    DiscoveryStats stats;
    double critical_value = 0.0;      // on the T2 scale
};

// Branch-and-bound search for connected q-subgraphs whose filtered statistic
// exceeds the level-alpha critical value. Exact mode prunes with a provable
// statistic bound and returns precisely the significant set; euclidean mode
// prunes with a mean-shift-norm bound against theta and re-tests every
// surviving candidate, so its hits are a subset of the exact ones.
DiscoveryResult discover(const Graph& graph, const TwoSampleData& data,
                         const DiscoveryConfig& config);

// Upper bound on the filtered statistic of every connected q-supergraph of
// `nodes`: the full-space statistic on the (q - |nodes|)-neighborhood.
// +inf when that covariance is singular (no pruning).
double exact_upper_bound(const Graph& graph, const TwoSampleData& data,
                         const std::vector<int>& nodes, int q);

// Upper bound on the squared Euclidean norm of the filtered mean shift of any
// connected q-supergraph: ||d(nodes)||^2 plus the q - |nodes| largest
// per-node squared shifts in the neighborhood.
double euclidean_upper_bound(const Graph& graph, const TwoSampleData& data,
                             const std::vector<int>& nodes, int q);

// Every exact hit missed by the euclidean preselection has
// lambda_min(U_[k]' S U_[k]) below this threshold.
double preselection_threshold(double theta, double alpha, int k, int n1, int n2);

// lambda_min of the projected pooled covariance for one candidate subgraph.
double min_projected_eigenvalue(const Graph& graph, const TwoSampleData& data,
                         const std::vector<int>& nodes, const DiscoveryConfig& config);

struct PermutationSummary {
    std::vector<int> hit_counts;      // per permutation
    double fraction_with_hit;
};

// Label-permutation null: shuffles group assignments (sizes preserved) and
// reruns discovery on each permuted split.
PermutationSummary permutation_null(const Graph& graph, const TwoSampleData& data,
                                    const DiscoveryConfig& config, int n_permutations,
                                    uint64_t seed);

}  // namespace netshift
