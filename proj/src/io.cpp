#include "netshift/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace netshift {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, '\t')) out.push_back(field);
    if (!line.empty() && line.back() == '\t') out.push_back("");
    return out;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

double parse_double(const std::string& s, const std::string& path, size_t lineno) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                    ": bad number '" + s + "'");
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    return out;
}

}  // namespace

Graph read_graph_tsv(const std::string& path) {
    auto lines = read_lines(path);
    if (lines.empty()) throw std::invalid_argument(path + ": empty file");
    auto header = split_tabs(lines[0]);
    if (header.size() != 4 || header[0] != "src" || header[1] != "dst" ||
        header[2] != "sign" || header[3] != "directed")
        throw std::invalid_argument(path + ": expected header src\tdst\tsign\tdirected");

    std::vector<std::string> ids;
    std::map<std::string, int> index;
    auto intern = [&](const std::string& id) {
        if (id.empty())
            throw std::invalid_argument(path + ": empty node id");
        auto it = index.find(id);
        if (it != index.end()) return it->second;
        int i = static_cast<int>(ids.size());
        ids.push_back(id);
        index.emplace(id, i);
        return i;
    };

    struct Row {
        int src, dst, sign, directed;
    };
    std::vector<Edge> edges;
    std::map<std::tuple<int, int, int>, int> seen;  // (a, b, directed) -> sign
    for (size_t ln = 1; ln < lines.size(); ++ln) {
        if (lines[ln].empty()) continue;
        auto f = split_tabs(lines[ln]);
        if (f.size() != 4)
            throw std::invalid_argument(path + ":" + std::to_string(ln + 1) +
                                        ": expected 4 fields");
        int src = intern(f[0]);
        int dst = intern(f[1]);
        int sign;
        if (f[2] == "1" || f[2] == "+1")
            sign = 1;
        else if (f[2] == "-1")
            sign = -1;
        else
            throw std::invalid_argument(path + ":" + std::to_string(ln + 1) +
                                        ": sign must be +1 or -1");
        int directed;
        if (f[3] == "0")
            directed = 0;
        else if (f[3] == "1")
            directed = 1;
        else
            throw std::invalid_argument(path + ":" + std::to_string(ln + 1) +
                                        ": directed must be 0 or 1");
        if (src == dst)
            throw std::invalid_argument(path + ":" + std::to_string(ln + 1) +
                                        ": self loop on " + f[0]);
        int a = src, b = dst;
        if (!directed && a > b) std::swap(a, b);
        auto key = std::make_tuple(a, b, directed);
        auto it = seen.find(key);
        if (it != seen.end()) {
            if (it->second != sign)
                throw std::invalid_argument(path + ":" + std::to_string(ln + 1) +
                                            ": conflicting signs between " + f[0] +
                                            " and " + f[1]);
            std::cerr << "warning: " << path << ":" << (ln + 1)
                      << ": duplicate edge " << f[0] << " - " << f[1]
                      << " collapsed\n";
            continue;
        }
        seen.emplace(key, sign);
        edges.push_back({src, dst, sign, directed == 1});
    }
    return Graph(std::move(ids), std::move(edges));
}

void write_graph_tsv(const Graph& graph, const std::string& path) {
    auto out = open_out(path);
    out << "src\tdst\tsign\tdirected\n";
    for (const auto& e : graph.edges())
        out << graph.node_ids()[e.src] << '\t' << graph.node_ids()[e.dst] << '\t'
            << e.sign << '\t' << (e.directed ? 1 : 0) << '\n';
}

ExpressionTable read_expression_tsv(const std::string& path) {
    auto lines = read_lines(path);
    if (lines.size() < 2)
        throw std::invalid_argument(path + ": need a header and at least one sample");
    auto header = split_tabs(lines[0]);
    if (header.size() < 2 || header[0] != "sample_id")
        throw std::invalid_argument(path + ": expected header sample_id\t<node ids>");
    ExpressionTable table;
    table.node_ids.assign(header.begin() + 1, header.end());
    std::set<std::string> unique_nodes(table.node_ids.begin(), table.node_ids.end());
    if (unique_nodes.size() != table.node_ids.size())
        throw std::invalid_argument(path + ": duplicate node id in header");

    size_t p = table.node_ids.size();
    std::set<std::string> unique_samples;
    std::vector<std::vector<double>> rows;
    for (size_t ln = 1; ln < lines.size(); ++ln) {
        if (lines[ln].empty()) continue;
        auto f = split_tabs(lines[ln]);
        if (f.size() != p + 1)
            throw std::invalid_argument(path + ":" + std::to_string(ln + 1) +
                                        ": expected " + std::to_string(p + 1) +
                                        " fields");
        if (!unique_samples.insert(f[0]).second)
            throw std::invalid_argument(path + ": duplicate sample id " + f[0]);
        table.sample_ids.push_back(f[0]);
        std::vector<double> row(p);
        for (size_t j = 0; j < p; ++j) row[j] = parse_double(f[j + 1], path, ln + 1);
        rows.push_back(std::move(row));
    }
    table.values.resize(rows.size(), p);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < p; ++j) table.values(i, j) = rows[i][j];
    return table;
}

LabelTable read_labels_tsv(const std::string& path) {
    auto lines = read_lines(path);
    if (lines.size() < 2)
        throw std::invalid_argument(path + ": need a header and at least one label");
    auto header = split_tabs(lines[0]);
    if (header.size() != 2 || header[0] != "sample_id" || header[1] != "group")
        throw std::invalid_argument(path + ": expected header sample_id\tgroup");
    LabelTable table;
    std::set<std::string> unique_samples;
    for (size_t ln = 1; ln < lines.size(); ++ln) {
        if (lines[ln].empty()) continue;
        auto f = split_tabs(lines[ln]);
        if (f.size() != 2)
            throw std::invalid_argument(path + ":" + std::to_string(ln + 1) +
                                        ": expected 2 fields");
        if (!unique_samples.insert(f[0]).second)
            throw std::invalid_argument(path + ": duplicate sample id " + f[0]);
        int group;
        if (f[1] == "1")
            group = 1;
        else if (f[1] == "2")
            group = 2;
        else
            throw std::invalid_argument(path + ":" + std::to_string(ln + 1) +
                                        ": group must be 1 or 2");
        table.sample_ids.push_back(f[0]);
        table.groups.push_back(group);
    }
    return table;
}

void write_hits_tsv(const std::vector<SubgraphHit>& hits, const Graph& graph,
                    const std::string& path) {
    auto out = open_out(path);
    out << "nodes\tstatistic\tpvalue\tbasis_eigenvalues\tmin_projected_cov_eigenvalue\n";
    for (const auto& h : hits) {
        for (size_t i = 0; i < h.nodes.size(); ++i)
            out << (i ? "," : "") << graph.node_ids()[h.nodes[i]];
        out << '\t' << format_double(h.statistic) << '\t' << format_double(h.pvalue)
            << '\t';
        for (int i = 0; i < h.basis_eigenvalues.size(); ++i)
            out << (i ? "," : "") << format_double(h.basis_eigenvalues[i]);
        out << '\t' << format_double(h.min_projected_cov_eigenvalue) << '\n';
    }
}

void write_permutations_tsv(const PermutationSummary& summary,
                            const std::string& path) {
    auto out = open_out(path);
    out << "perm_index\tn_hits\n";
    for (size_t i = 0; i < summary.hit_counts.size(); ++i)
        out << i << '\t' << summary.hit_counts[i] << '\n';
}

void write_roc_csv(const std::vector<MethodRoc>& rocs, const std::string& path) {
    auto out = open_out(path);
    out << "method,fpr,tpr\n";
    for (const auto& m : rocs)
        for (const auto& pt : m.curve.points)
            out << m.method << ',' << format_double(pt.fpr) << ','
                << format_double(pt.tpr) << '\n';
}

void write_roc_summary_csv(const std::vector<MethodRoc>& rocs, int n_null, int n_alt,
                           uint64_t seed, const std::string& path) {
    auto out = open_out(path);
    out << "method,auc,n_null,n_alt,seed\n";
    for (const auto& m : rocs)
        out << m.method << ',' << format_double(m.curve.auc) << ',' << n_null << ','
            << n_alt << ',' << seed << '\n';
}

}  // namespace netshift
