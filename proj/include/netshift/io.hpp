#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "netshift/discovery.hpp"
#include "netshift/graph.hpp"
#include "netshift/simulate.hpp"

namespace netshift {

// Floating-point values serialize with 17 significant digits so equal doubles
// produce byte-identical files.
std::string format_double(double v);

// Edge list TSV: src <TAB> dst <TAB> sign <TAB> directed, header required.
// sign in {+1, -1}; directed in {0, 1}. Duplicate identical edges collapse
// with a warning on stderr; conflicting signs on the same (src, dst) are an
// error; self-loops are an error.
Graph read_graph_tsv(const std::string& path);
void write_graph_tsv(const Graph& graph, const std::string& path);

struct ExpressionTable {
    std::vector<std::string> sample_ids;
    std::vector<std::string> node_ids;
    Eigen::MatrixXd values;  // rows samples, columns nodes
};

// Header: sample_id <TAB> node ids...; one row per sample.
ExpressionTable read_expression_tsv(const std::string& path);

struct LabelTable {
    std::vector<std::string> sample_ids;
    std::vector<int> groups;  // 1 or 2
};

// Header: sample_id <TAB> group; group in {1, 2}.
LabelTable read_labels_tsv(const std::string& path);

void write_hits_tsv(const std::vector<SubgraphHit>& hits, const Graph& graph,
                    const std::string& path);

void write_permutations_tsv(const PermutationSummary& summary, const std::string& path);

void write_roc_csv(const std::vector<MethodRoc>& rocs, const std::string& path);

void write_roc_summary_csv(const std::vector<MethodRoc>& rocs, int n_null, int n_alt,
                           uint64_t seed, const std::string& path);

}  // namespace netshift
