#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace netshift {

// Signed, possibly directed edge between node indices. sign is +1 or -1.
struct Edge {
    int src;
    int dst;
    int sign;
    bool directed;
};

// Immutable node-labelled graph. Node order is fixed at construction and is
// the coordinate order of every matrix and data column derived from it.
class Graph {
public:
    Graph(std::vector<std::string> node_ids, std::vector<Edge> edges);

    int node_count() const { return static_cast<int>(node_ids_.size()); }
    const std::vector<std::string>& node_ids() const { return node_ids_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_negative_sign() const { return has_negative_sign_; }
    bool has_directed_edge() const { return has_directed_edge_; }

    // Neighbor lists of the undirected skeleton (edge direction ignored),
    // sorted ascending. Shared by BFS, boundaries and connectivity.
    const std::vector<std::vector<int>>& skeleton() const { return skeleton_; }

    // a_ij = sign of edge i->j; an undirected edge sets both a_ij and a_ji.
    Eigen::MatrixXd adjacency() const;

    // Undirected view: every edge contributes symmetrically. Throws if the
    // two directions of a pair carry conflicting signs.
    Eigen::MatrixXd symmetrized_adjacency() const;

    int index_of(const std::string& id) const;  // throws on unknown id

private:
    std::vector<std::string> node_ids_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> skeleton_;
    bool has_negative_sign_ = false;
    bool has_directed_edge_ = false;
};

enum class StructureVariant { combinatorial, normalized, signed_laplacian, directed_mg };

StructureVariant structure_variant_from_string(const std::string& name);
std::string to_string(StructureVariant v);

// Symmetric positive semidefinite operator encoding graph smoothness.
struct StructureMatrix {
    Eigen::MatrixXd q;
    StructureVariant variant;
};

StructureMatrix laplacian(const Graph& graph, StructureVariant variant);

// delta' Q delta for the given variant.
double energy(const Graph& graph, const Eigen::VectorXd& delta, StructureVariant variant);

// Nodes within shortest-path distance <= radius of any seed (skeleton
// metric), seeds included. Sorted ascending.
std::vector<int> neighborhood(const Graph& graph, const std::vector<int>& seeds, int radius);

// All supergraphs obtained by adding one adjacent node to a connected node
// set. Each result is sorted; results ordered by the added node.
std::vector<std::vector<int>> subgraph_boundary(const Graph& graph,
                                                const std::vector<int>& nodes);

bool is_connected(const Graph& graph, const std::vector<int>& nodes);

// Node index sets of the connected components, each sorted, ordered by
// smallest member.
std::vector<std::vector<int>> connected_component_nodes(const Graph& graph);

std::vector<Graph> connected_components(const Graph& graph);

// Subgraph induced by the given node indices (sorted internally); edges with
// both endpoints in the set survive with sign and direction intact.
Graph induced_subgraph(const Graph& graph, const std::vector<int>& nodes);

// Every connected induced subgraph on exactly q nodes, each reported once as
// a sorted index vector. Deterministic order.
std::vector<std::vector<int>> connected_subgraphs(const Graph& graph, int q);

}  // namespace netshift
