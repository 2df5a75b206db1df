#include "netshift/simulate.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

#include "netshift/rng.hpp"
#include "netshift/spectral.hpp"

namespace netshift {

namespace {

std::vector<std::string> numbered_ids(int p) {
    std::vector<std::string> ids;
    ids.reserve(p);
    for (int i = 0; i < p; ++i) ids.push_back("n" + std::to_string(i));
    return ids;
}

// Uniform labeled tree via a random Prufer sequence.
std::vector<std::pair<int, int>> random_tree(int p, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    if (p < 2) return edges;
    if (p == 2) {
        edges.push_back({0, 1});
        return edges;
    }
    std::vector<int> prufer(p - 2);
    for (int& v : prufer) v = rng.uniform_int(0, p - 1);
    std::vector<int> degree(p, 1);
    for (int v : prufer) ++degree[v];
    std::set<int> leaves;
    for (int i = 0; i < p; ++i)
        if (degree[i] == 1) leaves.insert(i);
    for (int v : prufer) {
        int u = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.push_back({u, v});
        if (--degree[v] == 1) leaves.insert(v);
    }
    int a = *leaves.begin();
    int b = *std::next(leaves.begin());
    edges.push_back({a, b});
    return edges;
}

// First `take` elements of a uniformly shuffled copy.
template <typename T>
std::vector<T> sample_without_replacement(std::vector<T> pool, int take, Rng& rng) {
    int m = static_cast<int>(pool.size());
    for (int i = 0; i < take; ++i)
        std::swap(pool[i], pool[rng.uniform_int(i, m - 1)]);
    pool.resize(take);
    return pool;
}

}  // namespace

Graph random_connected_graph(int p, int n_edges, uint64_t seed) {
    if (p < 1) throw std::invalid_argument("graph needs at least one node");
    long long max_edges = static_cast<long long>(p) * (p - 1) / 2;
    if (n_edges < p - 1 || n_edges > max_edges)
        throw std::invalid_argument("edge budget incompatible with a connected graph");
    Rng rng(seed);
    std::set<std::pair<int, int>> present;
    std::vector<Edge> edges;
    for (auto [a, b] : random_tree(p, rng)) {
        present.insert({std::min(a, b), std::max(a, b)});
        edges.push_back({a, b, 1, false});
    }
    int extra = n_edges - (p - 1);
    if (extra > 0) {
        std::vector<std::pair<int, int>> absent;
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                if (!present.count({i, j})) absent.push_back({i, j});
        for (auto [a, b] : sample_without_replacement(std::move(absent), extra, rng))
            edges.push_back({a, b, 1, false});
    }
    return Graph(numbered_ids(p), std::move(edges));
}

Graph hub_graph(uint64_t seed, double hub_size_mean, int min_nodes, int max_nodes) {
    if (!(hub_size_mean > 0.0))
        throw std::invalid_argument("hub size mean must be positive");
    if (min_nodes < 2 || max_nodes < min_nodes)
        throw std::invalid_argument("invalid node count band");
    Rng rng(seed);

    // draw hub sizes until the running total lands inside the band; overshoot
    // rejects the whole list
    std::vector<int> sizes;
    int total = 0;
    for (int guard = 0;; ++guard) {
        if (guard > 1000000)
            throw std::runtime_error("hub size sampling failed to terminate");
        int s = std::max(2, rng.poisson(hub_size_mean));
        if (total + s > max_nodes) {
            sizes.clear();
            total = 0;
            continue;
        }
        sizes.push_back(s);
        total += s;
        if (total >= min_nodes) break;
    }

    std::vector<Edge> edges;
    std::vector<int> offsets;
    int offset = 0;
    for (int s : sizes) {
        offsets.push_back(offset);
        std::set<std::pair<int, int>> present;
        for (auto [a, b] : random_tree(s, rng)) {
            present.insert({std::min(a, b), std::max(a, b)});
            edges.push_back({offset + a, offset + b, 1, false});
        }
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j)
                if (!present.count({i, j}) && rng.uniform() < 0.8)
                    edges.push_back({offset + i, offset + j, 1, false});
        offset += s;
    }
    for (size_t h = 1; h < sizes.size(); ++h) {
        int a = offsets[h - 1] + rng.uniform_int(0, sizes[h - 1] - 1);
        int b = offsets[h] + rng.uniform_int(0, sizes[h] - 1);
        edges.push_back({a, b, 1, false});
    }
    return Graph(numbered_ids(total), std::move(edges));
}

Graph corrupt_graph(const Graph& graph, int n_remove, int n_add, uint64_t seed) {
    if (graph.has_directed_edge() || graph.has_negative_sign())
        throw std::invalid_argument("corruption expects an undirected unsigned graph");
    if (n_remove < 0 || n_add < 0)
        throw std::invalid_argument("corruption counts must be nonnegative");
    int p = graph.node_count();
    int m = static_cast<int>(graph.edges().size());
    if (n_remove > m)
        throw std::invalid_argument("cannot remove more edges than the graph has");
    long long absent_count = static_cast<long long>(p) * (p - 1) / 2 - m;
    if (n_add > absent_count)
        throw std::invalid_argument("not enough absent pairs to add");

    Rng rng(seed);
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    std::vector<int> removed = sample_without_replacement(std::move(idx), n_remove, rng);
    std::vector<char> drop(m, 0);
    for (int i : removed) drop[i] = 1;

    std::vector<Edge> edges;
    std::set<std::pair<int, int>> present;
    for (int i = 0; i < m; ++i) {
        const Edge& e = graph.edges()[i];
        present.insert({std::min(e.src, e.dst), std::max(e.src, e.dst)});
        if (!drop[i]) edges.push_back(e);
    }
    if (n_add > 0) {
        std::vector<std::pair<int, int>> absent;
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                if (!present.count({i, j})) absent.push_back({i, j});
        for (auto [a, b] : sample_without_replacement(std::move(absent), n_add, rng))
            edges.push_back({a, b, 1, false});
    }
    return Graph(graph.node_ids(), std::move(edges));
}

namespace {

Eigen::MatrixXd coefficient_covariance(int p, int k0, CovModel cov) {
    double base = 1.0 / std::sqrt(static_cast<double>(p));
    Eigen::MatrixXd sigma = base * Eigen::MatrixXd::Identity(p, p);
    if (cov == CovModel::block) {
        for (int i = 0; i < k0; ++i)
            for (int j = 0; j < k0; ++j) sigma(i, j) = (i == j ? 0.9 : 0.5) * base;
    }
    return sigma;
}

Eigen::MatrixXd gaussian_matrix(Rng& rng, int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
    return m;
}

}  // namespace

SynthResult synth_two_sample(const SpectralBasis& basis, const SynthesisConfig& config,
                             uint64_t seed) {
    int p = static_cast<int>(basis.lambdas.size());
    if (config.k0 < 1 || config.k0 > p)
        throw std::invalid_argument("shift component count out of range");
    if (!(config.delta2 >= 0.0))
        throw std::invalid_argument("squared shift must be nonnegative");
    if (config.n1 < 2 || config.n2 < 2)
        throw std::invalid_argument("each sample needs at least two observations");

    SynthResult out;
    out.sigma_tilde = coefficient_covariance(p, config.k0, config.cov);
    out.delta_tilde = Eigen::VectorXd::Zero(p);
    if (config.with_shift && config.delta2 > 0.0) {
        Eigen::MatrixXd block = out.sigma_tilde.topLeftCorner(config.k0, config.k0);
        Eigen::VectorXd ones = Eigen::VectorXd::Ones(config.k0);
        double quad = ones.dot(block.llt().solve(ones));
        out.delta_tilde.head(config.k0) =
            std::sqrt(config.delta2 / quad) * ones;
    }

    Eigen::MatrixXd chol = Eigen::LLT<Eigen::MatrixXd>(out.sigma_tilde).matrixL();
    Rng rng(seed);
    Eigen::MatrixXd z1 = gaussian_matrix(rng, config.n1, p) * chol.transpose();
    Eigen::MatrixXd z2 = gaussian_matrix(rng, config.n2, p) * chol.transpose();
    z2.rowwise() += out.delta_tilde.transpose();
    out.data.x1 = z1 * basis.u.transpose();
    out.data.x2 = z2 * basis.u.transpose();
    return out;
}

PlantedInstance planted_subgraph_instance(const Graph& graph, int q, int k0,
                                          double delta2, int n1, int n2,
                                          uint64_t seed) {
    int p = graph.node_count();
    if (q < 1 || q > p) throw std::invalid_argument("subgraph size out of range");
    if (k0 < 1 || k0 > q)
        throw std::invalid_argument("shift component count out of range");
    if (!(delta2 >= 0.0))
        throw std::invalid_argument("squared shift must be nonnegative");
    if (n1 < 2 || n2 < 2)
        throw std::invalid_argument("each sample needs at least two observations");

    Rng rng(seed);
    std::vector<int> eligible;
    for (const auto& comp : connected_component_nodes(graph))
        if (static_cast<int>(comp.size()) >= q)
            eligible.insert(eligible.end(), comp.begin(), comp.end());
    if (eligible.empty())
        throw std::invalid_argument("no component can host a subgraph of this size");
    std::sort(eligible.begin(), eligible.end());

    std::vector<int> cur{eligible[rng.uniform_int(0, int(eligible.size()) - 1)]};
    while (static_cast<int>(cur.size()) < q) {
        auto sups = subgraph_boundary(graph, cur);
        cur = sups[rng.uniform_int(0, int(sups.size()) - 1)];
    }

    Graph sub = induced_subgraph(graph, cur);
    SpectralBasis basis = eigenbasis(laplacian(sub, StructureVariant::combinatorial));
    Eigen::VectorXd coef = Eigen::VectorXd::Constant(k0, std::sqrt(delta2 / k0));
    Eigen::VectorXd shift = basis.u.leftCols(k0) * coef;

    PlantedInstance out;
    out.planted_nodes = cur;
    out.data.x1 = gaussian_matrix(rng, n1, p);
    out.data.x2 = gaussian_matrix(rng, n2, p);
    for (size_t j = 0; j < cur.size(); ++j)
        out.data.x2.col(cur[j]).array() += shift[j];
    return out;
}

RocCurve roc_curve(const std::vector<double>& null_scores,
                   const std::vector<double>& alt_scores) {
    if (null_scores.empty() || alt_scores.empty())
        throw std::invalid_argument("both score lists must be nonempty");
    std::vector<double> nulls = null_scores, alts = alt_scores;
    std::sort(nulls.begin(), nulls.end(), std::greater<double>());
    std::sort(alts.begin(), alts.end(), std::greater<double>());
    std::vector<double> thresholds;
    thresholds.reserve(nulls.size() + alts.size());
    std::merge(nulls.begin(), nulls.end(), alts.begin(), alts.end(),
               std::back_inserter(thresholds), std::greater<double>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                     thresholds.end());

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    size_t in = 0, ia = 0;
    double n0 = static_cast<double>(nulls.size());
    double n1 = static_cast<double>(alts.size());
    for (double t : thresholds) {
        while (in < nulls.size() && nulls[in] >= t) ++in;
        while (ia < alts.size() && alts[ia] >= t) ++ia;
        curve.points.push_back({in / n0, ia / n1});
    }
    double auc = 0.0;
    for (size_t i = 1; i < curve.points.size(); ++i) {
        const RocPoint& a = curve.points[i - 1];
        const RocPoint& b = curve.points[i];
        auc += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
    }
    curve.auc = auc;
    return curve;
}

Scenario scenario_from_string(const std::string& name) {
    if (name == "diag") return Scenario::diag;
    if (name == "block") return Scenario::block;
    if (name == "corrupt_remove") return Scenario::corrupt_remove;
    if (name == "corrupt_add") return Scenario::corrupt_add;
    if (name == "power_vs_k") return Scenario::power_vs_k;
    throw std::invalid_argument("unknown scenario: " + name);
}

namespace {

double statistic_or_zero(const TestResult& r) { return r.statistic; }

struct ScoreTracker {
    std::string method;
    std::vector<double> nulls;
    std::vector<double> alts;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.replicates < 1)
        throw std::invalid_argument("need at least one replicate");
    ExperimentResult result;
    Rng root(config.seed);

    if (config.scenario == Scenario::power_vs_k) {
        Graph graph = random_connected_graph(config.p, config.n_edges, config.seed);
        SpectralBasis basis =
            eigenbasis(laplacian(graph, StructureVariant::combinatorial));
        std::vector<int> grid = config.k_grid;
        if (grid.empty())
            for (int k = 1; k <= std::min(10, config.p); ++k) grid.push_back(k);

        std::vector<int> rejections(grid.size(), 0);
        for (int r = 0; r < config.replicates; ++r) {
            SynthesisConfig sc;
            sc.k0 = config.k0;
            sc.delta2 = config.delta2;
            sc.cov = CovModel::diagonal;
            sc.n1 = config.n1;
            sc.n2 = config.n2;
            sc.with_shift = true;
            uint64_t rs = root.split(r).next_u64();
            SynthResult sr = synth_two_sample(basis, sc, rs);
            for (size_t i = 0; i < grid.size(); ++i)
                if (graph_t2(sr.data, basis, grid[i]).pvalue < config.alpha)
                    ++rejections[i];
        }
        for (size_t i = 0; i < grid.size(); ++i) {
            int k = grid[i];
            result.powers.push_back(
                {"graph", k, double(rejections[i]) / config.replicates});
            double mass = config.delta2 * std::min(k, config.k0) / config.k0;
            result.powers.push_back(
                {"formula", k, power(config.alpha, k, config.n1, config.n2, mass)});
        }
        result.n_alt = config.replicates;
        return result;
    }

    bool corrupt = config.scenario == Scenario::corrupt_remove ||
                   config.scenario == Scenario::corrupt_add;
    Graph truth = random_connected_graph(config.p, config.n_edges, config.seed);
    SpectralBasis basis_true =
        eigenbasis(laplacian(truth, StructureVariant::combinatorial));
    SpectralBasis basis_test = basis_true;
    if (corrupt) {
        uint64_t cs = root.split(0x636f7272ULL).next_u64();
        Graph tampered = config.scenario == Scenario::corrupt_remove
                             ? corrupt_graph(truth, config.n_corrupt, 0, cs)
                             : corrupt_graph(truth, 0, config.n_corrupt, cs);
        basis_test = eigenbasis(laplacian(tampered, StructureVariant::combinatorial));
    }

    std::vector<int> grid = config.k_grid;
    if (grid.empty()) grid.push_back(config.k0);

    std::vector<ScoreTracker> trackers;
    for (int k : grid) trackers.push_back({"graph_k" + std::to_string(k), {}, {}});
    if (corrupt)
        for (int k : grid)
            trackers.push_back({"graph_true_k" + std::to_string(k), {}, {}});
    for (int k : grid) trackers.push_back({"pca_k" + std::to_string(k), {}, {}});
    trackers.push_back({"full", {}, {}});

    for (int r = 0; r < config.replicates; ++r) {
        for (int arm = 0; arm < 2; ++arm) {
            SynthesisConfig sc;
            sc.k0 = config.k0;
            sc.delta2 = config.delta2;
            sc.cov = config.scenario == Scenario::block ? CovModel::block
                                                        : CovModel::diagonal;
            sc.n1 = config.n1;
            sc.n2 = config.n2;
            sc.with_shift = arm == 1;
            uint64_t rs = root.split(2 * uint64_t(r) + arm).next_u64();
            SynthResult sr = synth_two_sample(basis_true, sc, rs);

            size_t t = 0;
            auto record = [&](double score) {
                (arm == 0 ? trackers[t].nulls : trackers[t].alts).push_back(score);
                ++t;
            };
            for (int k : grid)
                record(statistic_or_zero(graph_t2(sr.data, basis_test, k)));
            if (corrupt)
                for (int k : grid)
                    record(statistic_or_zero(graph_t2(sr.data, basis_true, k)));
            for (int k : grid) record(statistic_or_zero(pca_t2(sr.data, k)));
            record(statistic_or_zero(hotelling_t2(sr.data)));
        }
    }
    for (const auto& tr : trackers)
        result.rocs.push_back({tr.method, roc_curve(tr.nulls, tr.alts)});
    result.n_null = config.replicates;
    result.n_alt = config.replicates;
    return result;
}

}  // namespace netshift
