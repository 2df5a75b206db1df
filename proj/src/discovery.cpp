#include "netshift/discovery.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "netshift/numeric.hpp"
#include "netshift/rng.hpp"
#include "netshift/spectral.hpp"

namespace netshift {

namespace {

Eigen::MatrixXd restrict_columns(const Eigen::MatrixXd& x, const std::vector<int>& cols) {
    Eigen::MatrixXd out(x.rows(), cols.size());
    for (size_t j = 0; j < cols.size(); ++j) out.col(j) = x.col(cols[j]);
    return out;
}

TwoSampleData restrict_data(const TwoSampleData& d, const std::vector<int>& cols) {
    return {restrict_columns(d.x1, cols), restrict_columns(d.x2, cols)};
}

Eigen::VectorXd mean_shift(const TwoSampleData& d) {
    return d.x1.colwise().mean().transpose() - d.x2.colwise().mean().transpose();
}

double min_projected_eig(const TwoSampleData& local, const SpectralBasis& basis,
                         int k) {
    Eigen::MatrixXd uk = basis.u.leftCols(k);
    Eigen::MatrixXd proj = uk.transpose() * pooled_covariance(local) * uk;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(proj);
    return eig.eigenvalues()[0];
}

void check_config(const Graph& graph, const TwoSampleData& data,
                  const DiscoveryConfig& cfg) {
    validate(data);
    int p = graph.node_count();
    if (data.x1.cols() != p)
        throw std::invalid_argument("data columns must match the node count");
    if (cfg.q < 1 || cfg.q > p)
        throw std::invalid_argument("subgraph size out of range");
    if (cfg.k < 1 || cfg.k > cfg.q)
        throw std::invalid_argument(
            "retained component count must lie between 1 and the subgraph size");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0,1)");
    if (cfg.mode == BoundMode::euclidean && !(cfg.theta >= 0.0))
        throw std::invalid_argument("preselection threshold must be nonnegative");
    int n = data.n1() + data.n2();
    if (n - cfg.k - 1 < 1)
        throw std::invalid_argument(
            "sample size too small for the requested component count");
    if (cfg.variant == StructureVariant::normalized && cfg.q == 1)
        throw std::invalid_argument(
            "normalized variant is undefined on single-node subgraphs");
    if (cfg.variant == StructureVariant::combinatorial && graph.has_negative_sign())
        throw std::invalid_argument(
            "combinatorial variant requires an unsigned graph; use signed");
}

double critical_t2(double alpha, int k, int n) {
    double scale = static_cast<double>(n - k - 1) / (static_cast<double>(n - 2) * k);
    return f_quantile(1.0 - alpha, k, n - k - 1) / scale;
}

}  // namespace

double exact_upper_bound(const Graph& graph, const TwoSampleData& data,
                         const std::vector<int>& nodes, int q) {
    int s = static_cast<int>(nodes.size());
    if (s < 1 || s > q) throw std::invalid_argument("seed size must lie in [1, q]");
    if (!is_connected(graph, nodes))
        throw std::invalid_argument("seed set must be connected");
    std::vector<int> nu = neighborhood(graph, nodes, q - s);
    int n = data.n1() + data.n2();
    if (static_cast<int>(nu.size()) > n - 2)
        return std::numeric_limits<double>::infinity();
    try {
        return hotelling_t2(restrict_data(data, nu)).statistic;
    } catch (const SingularMatrixError&) {
        return std::numeric_limits<double>::infinity();
    }
}

double euclidean_upper_bound(const Graph& graph, const TwoSampleData& data,
                             const std::vector<int>& nodes, int q) {
    int s = static_cast<int>(nodes.size());
    if (s < 1 || s > q) throw std::invalid_argument("seed size must lie in [1, q]");
    if (!is_connected(graph, nodes))
        throw std::invalid_argument("seed set must be connected");
    Eigen::VectorXd delta = mean_shift(data);
    std::vector<char> in(graph.node_count(), 0);
    double base = 0.0;
    for (int v : nodes) {
        base += delta[v] * delta[v];
        in[v] = 1;
    }
    std::vector<double> extras;
    for (int v : neighborhood(graph, nodes, q - s))
        if (!in[v]) extras.push_back(delta[v] * delta[v]);
    std::sort(extras.begin(), extras.end(), std::greater<double>());
    int take = std::min<int>(q - s, static_cast<int>(extras.size()));
    for (int i = 0; i < take; ++i) base += extras[i];
    return base;
}

double preselection_threshold(double theta, double alpha, int k, int n1, int n2) {
    if (!(theta >= 0.0))
        throw std::invalid_argument("preselection threshold must be nonnegative");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0,1)");
    if (k < 1) throw std::invalid_argument("component count must be positive");
    int n = n1 + n2;
    if (n - k - 1 < 1)
        throw std::invalid_argument(
            "sample size too small for the requested component count");
    double c = static_cast<double>(n1) * n2 / n;
    return c * theta / critical_t2(alpha, k, n);
}

double min_projected_eigenvalue(const Graph& graph, const TwoSampleData& data,
                         const std::vector<int>& nodes, const DiscoveryConfig& config) {
    if (static_cast<int>(nodes.size()) < config.k)
        throw std::invalid_argument("candidate smaller than the component count");
    if (!is_connected(graph, nodes))
        throw std::invalid_argument("candidate must be connected");
    Graph sub = induced_subgraph(graph, nodes);
    SpectralBasis basis = eigenbasis(laplacian(sub, config.variant));
    return min_projected_eig(restrict_data(data, nodes), basis, config.k);
}

DiscoveryResult discover(const Graph& graph, const TwoSampleData& data,
                         const DiscoveryConfig& config) {
    check_config(graph, data, config);
    int p = graph.node_count();
    int n = data.n1() + data.n2();

    DiscoveryResult result;
    result.critical_value = critical_t2(config.alpha, config.k, n);

    auto prune = [&](const std::vector<int>& cand) {
        ++result.stats.bound_evaluations;
        bool cut;
        if (config.mode == BoundMode::exact)
            cut = exact_upper_bound(graph, data, cand, config.q) <=
                  result.critical_value;
        else
            cut = euclidean_upper_bound(graph, data, cand, config.q) < config.theta;
        if (cut) ++result.stats.pruned;
        return cut;
    };

    // grow candidates level by level, pruning with the bound until size q
    std::set<std::vector<int>> frontier;
    std::set<std::vector<int>> finals;
    for (int v = 0; v < p; ++v) {
        std::vector<int> single{v};
        if (config.q == 1)
            finals.insert(std::move(single));
        else if (!prune(single))
            frontier.insert(std::move(single));
    }
    for (int s = 1; s < config.q; ++s) {
        std::set<std::vector<int>> examined;
        std::set<std::vector<int>> next;
        for (const auto& cand : frontier)
            for (auto& sup : subgraph_boundary(graph, cand)) {
                if (s + 1 == config.q) {
                    finals.insert(std::move(sup));
                    continue;
                }
                if (!examined.insert(sup).second) continue;
                if (!prune(sup)) next.insert(std::move(sup));
            }
        frontier = std::move(next);
        if (s + 1 == config.q) break;
    }

    for (const auto& cand : finals) {
        Graph sub = induced_subgraph(graph, cand);
        SpectralBasis basis = eigenbasis(laplacian(sub, config.variant));
        TwoSampleData local = restrict_data(data, cand);
        TestResult r;
        try {
            r = graph_t2(local, basis, config.k);
        } catch (const SingularMatrixError&) {
            ++result.stats.skipped_singular;
            continue;
        }
        ++result.stats.tested;
        if (r.statistic > result.critical_value) {
            SubgraphHit hit;
            hit.nodes = cand;
            hit.statistic = r.statistic;
            hit.pvalue = r.pvalue;
            hit.basis_eigenvalues = basis.lambdas.head(config.k);
            hit.min_projected_cov_eigenvalue = min_projected_eig(local, basis, config.k);
            result.hits.push_back(std::move(hit));
        }
    }
    return result;
}

PermutationSummary permutation_null(const Graph& graph, const TwoSampleData& data,
                                    const DiscoveryConfig& config, int n_permutations,
                                    uint64_t seed) {
    if (n_permutations < 1)
        throw std::invalid_argument("need at least one permutation");
    check_config(graph, data, config);
    int n1 = data.n1(), n = data.n1() + data.n2();
    Eigen::MatrixXd stacked(n, data.dim());
    stacked.topRows(n1) = data.x1;
    stacked.bottomRows(data.n2()) = data.x2;

    Rng root(seed);
    PermutationSummary summary;
    summary.hit_counts.reserve(n_permutations);
    int with_hit = 0;
    for (int t = 0; t < n_permutations; ++t) {
        Rng rng = root.split(static_cast<uint64_t>(t));
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.uniform_int(0, i)]);
        TwoSampleData shuffled;
        shuffled.x1.resize(n1, data.dim());
        shuffled.x2.resize(data.n2(), data.dim());
        for (int i = 0; i < n1; ++i) shuffled.x1.row(i) = stacked.row(perm[i]);
        for (int i = n1; i < n; ++i) shuffled.x2.row(i - n1) = stacked.row(perm[i]);
        int hits = static_cast<int>(discover(graph, shuffled, config).hits.size());
        summary.hit_counts.push_back(hits);
        if (hits > 0) ++with_hit;
    }
    summary.fraction_with_hit = static_cast<double>(with_hit) / n_permutations;
    return summary;
}

}  // namespace netshift
