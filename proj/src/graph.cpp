#include "netshift/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace netshift {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

std::vector<int> sorted_unique(std::vector<int> nodes) {
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
}

}  // namespace

Graph::Graph(std::vector<std::string> node_ids, std::vector<Edge> edges)
    : node_ids_(std::move(node_ids)), edges_(std::move(edges)) {
    int p = node_count();
    require(p > 0, "graph needs at least one node");
    std::unordered_set<std::string> seen_ids;
    for (const auto& id : node_ids_) {
        require(!id.empty(), "empty node id");
        require(seen_ids.insert(id).second, "duplicate node id: " + id);
    }

    // Each ordered pair may be covered by one edge only; an undirected edge
    // covers both directions. Keeps the adjacency assignment unambiguous.
    std::unordered_set<int64_t> covered;
    auto cover = [&](int i, int j) {
        int64_t key = static_cast<int64_t>(i) * p + j;
        require(covered.insert(key).second, "duplicate edge between node " +
                                                node_ids_[i] + " and " + node_ids_[j]);
    };
    skeleton_.assign(p, {});
    for (const auto& e : edges_) {
        require(e.src >= 0 && e.src < p && e.dst >= 0 && e.dst < p,
                "edge endpoint out of range");
        require(e.src != e.dst, "self loop on node " + node_ids_[e.src]);
        require(e.sign == 1 || e.sign == -1, "edge sign must be +1 or -1");
        cover(e.src, e.dst);
        if (!e.directed) cover(e.dst, e.src);
        skeleton_[e.src].push_back(e.dst);
        skeleton_[e.dst].push_back(e.src);
        if (e.sign < 0) has_negative_sign_ = true;
        if (e.directed) has_directed_edge_ = true;
    }
    for (auto& nbrs : skeleton_) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
}

Eigen::MatrixXd Graph::adjacency() const {
    int p = node_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p, p);
    for (const auto& e : edges_) {
        a(e.src, e.dst) = e.sign;
        if (!e.directed) a(e.dst, e.src) = e.sign;
    }
    return a;
}

Eigen::MatrixXd Graph::symmetrized_adjacency() const {
    int p = node_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p, p);
    for (const auto& e : edges_) {
        double prev = a(e.src, e.dst);
        if (prev != 0.0 && prev != e.sign)
            throw std::invalid_argument("conflicting signs between node " +
                                        node_ids_[e.src] + " and " + node_ids_[e.dst]);
        double prev_rev = a(e.dst, e.src);
        if (prev_rev != 0.0 && prev_rev != e.sign)
            throw std::invalid_argument("conflicting signs between node " +
                                        node_ids_[e.src] + " and " + node_ids_[e.dst]);
        a(e.src, e.dst) = e.sign;
        a(e.dst, e.src) = e.sign;
    }
    return a;
}

int Graph::index_of(const std::string& id) const {
    for (int i = 0; i < node_count(); ++i)
        if (node_ids_[i] == id) return i;
    throw std::invalid_argument("unknown node id: " + id);
}

StructureVariant structure_variant_from_string(const std::string& name) {
    if (name == "laplacian") return StructureVariant::combinatorial;
    if (name == "normalized") return StructureVariant::normalized;
    if (name == "signed") return StructureVariant::signed_laplacian;
    if (name == "mg") return StructureVariant::directed_mg;
    throw std::invalid_argument("unknown structure variant: " + name);
}

std::string to_string(StructureVariant v) {
    switch (v) {
        case StructureVariant::combinatorial: return "laplacian";
        case StructureVariant::normalized: return "normalized";
        case StructureVariant::signed_laplacian: return "signed";
        case StructureVariant::directed_mg: return "mg";
    }
    throw std::logic_error("unreachable");
}

namespace {

Eigen::MatrixXd directed_operator(const Graph& graph) {
    int p = graph.node_count();
    // arc matrix: undirected edges act as two opposing arcs
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p, p);
    for (const auto& e : graph.edges()) {
        a(e.src, e.dst) = e.sign;
        if (!e.directed) a(e.dst, e.src) = e.sign;
    }
    Eigen::VectorXd indeg = a.cwiseAbs().colwise().sum();
    // B = I~ - Dminus^{-1} A', rows with zero indegree stay zero
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(p, p);
    for (int i = 0; i < p; ++i) {
        if (indeg[i] <= 0.0) continue;
        b(i, i) = 1.0;
        for (int j = 0; j < p; ++j) b(i, j) -= a(j, i) / indeg[i];
    }
    Eigen::MatrixXd q = b.transpose() * b;
    return 0.5 * (q + q.transpose());
}

}  // namespace

StructureMatrix laplacian(const Graph& graph, StructureVariant variant) {
    int p = graph.node_count();
    if (variant == StructureVariant::directed_mg)
        return {directed_operator(graph), variant};

    Eigen::MatrixXd a = graph.symmetrized_adjacency();
    Eigen::VectorXd deg = a.cwiseAbs().rowwise().sum();
    switch (variant) {
        case StructureVariant::combinatorial: {
            if (graph.has_negative_sign())
                throw std::invalid_argument(
                    "combinatorial variant requires an unsigned graph; use signed");
            Eigen::MatrixXd q = Eigen::MatrixXd(deg.asDiagonal()) - a;
            return {std::move(q), variant};
        }
        case StructureVariant::signed_laplacian: {
            Eigen::MatrixXd q = Eigen::MatrixXd(deg.asDiagonal()) - a;
            return {std::move(q), variant};
        }
        case StructureVariant::normalized: {
            for (int i = 0; i < p; ++i)
                if (deg[i] <= 0.0)
                    throw std::invalid_argument("normalized variant: node " +
                                                graph.node_ids()[i] +
                                                " has degree zero");
            Eigen::VectorXd inv_sqrt = deg.cwiseSqrt().cwiseInverse();
            Eigen::MatrixXd q = Eigen::MatrixXd::Identity(p, p) -
                                inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
            return {0.5 * (q + q.transpose()), variant};
        }
        default: throw std::logic_error("unreachable");
    }
}

double energy(const Graph& graph, const Eigen::VectorXd& delta, StructureVariant variant) {
    require(delta.size() == graph.node_count(), "delta length must match node count");
    StructureMatrix sm = laplacian(graph, variant);
    return delta.dot(sm.q * delta);
}

std::vector<int> neighborhood(const Graph& graph, const std::vector<int>& seeds,
                              int radius) {
    int p = graph.node_count();
    require(!seeds.empty(), "neighborhood needs at least one seed");
    require(radius >= 0, "radius must be nonnegative");
    std::vector<int> dist(p, -1);
    std::queue<int> q;
    for (int s : seeds) {
        require(s >= 0 && s < p, "seed out of range");
        if (dist[s] < 0) {
            dist[s] = 0;
            q.push(s);
        }
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (dist[v] == radius) continue;
        for (int w : graph.skeleton()[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    std::vector<int> out;
    for (int i = 0; i < p; ++i)
        if (dist[i] >= 0) out.push_back(i);
    return out;
}

bool is_connected(const Graph& graph, const std::vector<int>& nodes) {
    int p = graph.node_count();
    require(!nodes.empty(), "connectivity of an empty node set is undefined");
    std::vector<char> in(p, 0), seen(p, 0);
    for (int v : nodes) {
        require(v >= 0 && v < p, "node index out of range");
        in[v] = 1;
    }
    std::queue<int> q;
    q.push(nodes[0]);
    seen[nodes[0]] = 1;
    size_t reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : graph.skeleton()[v])
            if (in[w] && !seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push(w);
            }
    }
    return reached == sorted_unique(nodes).size();
}

std::vector<std::vector<int>> subgraph_boundary(const Graph& graph,
                                                const std::vector<int>& nodes) {
    require(is_connected(graph, nodes), "boundary seed set must be connected");
    std::vector<int> base = sorted_unique(nodes);
    std::vector<char> in(graph.node_count(), 0);
    for (int v : base) in[v] = 1;
    std::vector<int> additions;
    for (int v : base)
        for (int w : graph.skeleton()[v])
            if (!in[w]) {
                additions.push_back(w);
                in[w] = 1;  // reuse as dedup marker
            }
    std::sort(additions.begin(), additions.end());
    std::vector<std::vector<int>> out;
    out.reserve(additions.size());
    for (int w : additions) {
        std::vector<int> sup = base;
        sup.insert(std::lower_bound(sup.begin(), sup.end(), w), w);
        out.push_back(std::move(sup));
    }
    return out;
}

std::vector<std::vector<int>> connected_component_nodes(const Graph& graph) {
    int p = graph.node_count();
    std::vector<char> seen(p, 0);
    std::vector<std::vector<int>> comps;
    for (int start = 0; start < p; ++start) {
        if (seen[start]) continue;
        std::vector<int> comp;
        std::queue<int> q;
        q.push(start);
        seen[start] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            comp.push_back(v);
            for (int w : graph.skeleton()[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::vector<Graph> connected_components(const Graph& graph) {
    std::vector<Graph> out;
    for (const auto& comp : connected_component_nodes(graph))
        out.push_back(induced_subgraph(graph, comp));
    return out;
}

Graph induced_subgraph(const Graph& graph, const std::vector<int>& nodes) {
    int p = graph.node_count();
    require(!nodes.empty(), "induced subgraph needs at least one node");
    std::vector<int> keep = sorted_unique(nodes);
    require(keep.size() == nodes.size(), "induced subgraph nodes must be distinct");
    std::vector<int> remap(p, -1);
    std::vector<std::string> ids;
    for (size_t i = 0; i < keep.size(); ++i) {
        require(keep[i] >= 0 && keep[i] < p, "node index out of range");
        remap[keep[i]] = static_cast<int>(i);
        ids.push_back(graph.node_ids()[keep[i]]);
    }
    std::vector<Edge> edges;
    for (const auto& e : graph.edges())
        if (remap[e.src] >= 0 && remap[e.dst] >= 0)
            edges.push_back({remap[e.src], remap[e.dst], e.sign, e.directed});
    return Graph(std::move(ids), std::move(edges));
}

namespace {

// ESU enumeration: each connected induced q-subgraph is produced exactly once
// by growing from its smallest node through exclusive neighborhoods.
void esu_extend(const Graph& g, std::vector<int>& sub, std::vector<int> ext,
                std::vector<char> blocked, int root, int q,
                std::vector<std::vector<int>>& out) {
    if (static_cast<int>(sub.size()) == q) {
        std::vector<int> res = sub;
        std::sort(res.begin(), res.end());
        out.push_back(std::move(res));
        return;
    }
    while (!ext.empty()) {
        int w = ext.front();
        ext.erase(ext.begin());
        std::vector<int> ext2 = ext;
        std::vector<char> blocked2 = blocked;
        for (int u : g.skeleton()[w])
            if (u > root && !blocked2[u]) {
                blocked2[u] = 1;
                ext2.insert(std::lower_bound(ext2.begin(), ext2.end(), u), u);
            }
        sub.push_back(w);
        esu_extend(g, sub, std::move(ext2), std::move(blocked2), root, q, out);
        sub.pop_back();
        // w stays blocked for the remaining iterations of this level
    }
}

}  // namespace

std::vector<std::vector<int>> connected_subgraphs(const Graph& graph, int q) {
    int p = graph.node_count();
    require(q >= 1 && q <= p, "subgraph size out of range");
    std::vector<std::vector<int>> out;
    for (int v = 0; v < p; ++v) {
        std::vector<char> blocked(p, 0);
        blocked[v] = 1;
        std::vector<int> ext;
        for (int u : graph.skeleton()[v])
            if (u > v) {
                blocked[u] = 1;
                ext.push_back(u);
            }
        std::vector<int> sub{v};
        esu_extend(graph, sub, std::move(ext), std::move(blocked), v, q, out);
    }
    return out;
}

}  // namespace netshift
