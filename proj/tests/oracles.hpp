#pragma once

// Independent reference implementations used only by tests. Everything here
// is deliberately naive: subset filters, direct formula sums, textbook BFS.

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "netshift/graph.hpp"

namespace oracle {

inline std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(),
                            es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(out.begin(), out.end());
    return out;
}

// Direct evaluation of the directed smoothness energy:
// sum over nodes with indegree > 0 of (d_i - mean incoming neighbor value)^2,
// where incoming arcs are weighted by sign and undirected edges act as two
// opposing arcs.
inline double directed_energy_direct(const netshift::Graph& g,
                                     const Eigen::VectorXd& delta) {
    int p = g.node_count();
    std::vector<double> indeg(p, 0.0), acc(p, 0.0);
    auto arc = [&](int from, int to, int sign) {
        indeg[to] += 1.0;
        acc[to] += sign * delta[from];
    };
    for (const auto& e : g.edges()) {
        arc(e.src, e.dst, e.sign);
        if (!e.directed) arc(e.dst, e.src, e.sign);
    }
    double total = 0.0;
    for (int i = 0; i < p; ++i) {
        if (indeg[i] > 0.0) {
            double r = delta[i] - acc[i] / indeg[i];
            total += r * r;
        }
    }
    return total;
}

inline std::vector<int> bfs_neighborhood(const netshift::Graph& g,
                                         const std::vector<int>& seeds, int radius) {
    int p = g.node_count();
    std::vector<int> dist(p, -1);
    std::queue<int> q;
    for (int s : seeds) {
        dist[s] = 0;
        q.push(s);
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (dist[v] == radius) continue;
        for (int w : g.skeleton()[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
        }
    }
    std::vector<int> out;
    for (int i = 0; i < p; ++i)
        if (dist[i] >= 0) out.push_back(i);
    return out;
}

inline bool subset_connected(const netshift::Graph& g, const std::vector<int>& nodes) {
    if (nodes.empty()) return false;
    std::set<int> in(nodes.begin(), nodes.end());
    std::set<int> seen;
    std::queue<int> q;
    q.push(nodes[0]);
    seen.insert(nodes[0]);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.skeleton()[v])
            if (in.count(w) && !seen.count(w)) {
                seen.insert(w);
                q.push(w);
            }
    }
    return seen.size() == in.size();
}

// All connected q-subsets by filtering every q-subset. Exponential; keep p small.
inline std::vector<std::vector<int>> all_connected_subsets(const netshift::Graph& g,
                                                           int q) {
    int p = g.node_count();
    std::vector<std::vector<int>> out;
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(pick.size()) == q) {
            if (subset_connected(g, pick)) out.push_back(pick);
            return;
        }
        for (int v = start; v < p; ++v) {
            pick.push_back(v);
            rec(v + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return out;
}

// Erdos-Renyi style test graph; unsigned undirected, may be disconnected.
inline netshift::Graph random_test_graph(int p, double edge_prob, uint32_t seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::string> ids;
    for (int i = 0; i < p; ++i) ids.push_back("n" + std::to_string(i));
    std::vector<netshift::Edge> edges;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (u(gen) < edge_prob) edges.push_back({i, j, 1, false});
    return netshift::Graph(ids, edges);
}

// Random signed and/or directed variant for operator tests.
inline netshift::Graph random_signed_graph(int p, double edge_prob, bool directed,
                                           uint32_t seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::string> ids;
    for (int i = 0; i < p; ++i) ids.push_back("n" + std::to_string(i));
    std::vector<netshift::Edge> edges;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (u(gen) < edge_prob) {
                int sign = u(gen) < 0.5 ? 1 : -1;
                bool dir = directed && u(gen) < 0.5;
                if (dir && u(gen) < 0.5)
                    edges.push_back({j, i, sign, true});
                else
                    edges.push_back({i, j, sign, dir});
            }
    return netshift::Graph(ids, edges);
}

}  // namespace oracle
