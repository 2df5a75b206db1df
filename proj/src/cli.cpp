#include "netshift/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "netshift/discovery.hpp"
#include "netshift/graph.hpp"
#include "netshift/inference.hpp"
#include "netshift/io.hpp"
#include "netshift/simulate.hpp"
#include "netshift/spectral.hpp"

namespace netshift {

namespace {

struct LoadedInputs {
    Graph graph;  // input graph restricted to measured nodes
    TwoSampleData data;
};

// Reads the three input files, drops graph nodes with no expression column,
// reorders the expression columns to the restricted graph's node order and
// splits the samples by label.
LoadedInputs load_inputs(const CliOptions& opts) {
    Graph graph = read_graph_tsv(opts.graph_path);
    ExpressionTable expr = read_expression_tsv(opts.expr_path);
    LabelTable labels = read_labels_tsv(opts.labels_path);

    std::map<std::string, int> expr_col;
    for (size_t j = 0; j < expr.node_ids.size(); ++j)
        expr_col.emplace(expr.node_ids[j], static_cast<int>(j));

    std::vector<int> measured;
    for (int v = 0; v < graph.node_count(); ++v)
        if (expr_col.count(graph.node_ids()[v])) measured.push_back(v);
    if (measured.empty())
        throw std::invalid_argument("no graph node has an expression column");
    if (static_cast<int>(measured.size()) < graph.node_count())
        std::cerr << "note: dropping "
                  << graph.node_count() - static_cast<int>(measured.size())
                  << " graph nodes without expression columns\n";

    Graph restricted = induced_subgraph(graph, measured);
    int p = restricted.node_count();

    std::map<std::string, int> group_of;
    for (size_t i = 0; i < labels.sample_ids.size(); ++i)
        group_of.emplace(labels.sample_ids[i], labels.groups[i]);

    std::vector<int> rows1, rows2;
    for (size_t i = 0; i < expr.sample_ids.size(); ++i) {
        auto it = group_of.find(expr.sample_ids[i]);
        if (it == group_of.end())
            throw std::invalid_argument("sample " + expr.sample_ids[i] +
                                        " has no label");
        (it->second == 1 ? rows1 : rows2).push_back(static_cast<int>(i));
    }
    if (rows1.size() < 2 || rows2.size() < 2)
        throw std::invalid_argument("each group needs at least two samples");

    TwoSampleData data;
    data.x1.resize(rows1.size(), p);
    data.x2.resize(rows2.size(), p);
    for (int j = 0; j < p; ++j) {
        int col = expr_col.at(restricted.node_ids()[j]);
        for (size_t i = 0; i < rows1.size(); ++i)
            data.x1(static_cast<int>(i), j) = expr.values(rows1[i], col);
        for (size_t i = 0; i < rows2.size(); ++i)
            data.x2(static_cast<int>(i), j) = expr.values(rows2[i], col);
    }
    return {std::move(restricted), std::move(data)};
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    return out;
}

std::string summary_path(const std::string& out) {
    const std::string ext = ".csv";
    if (out.size() > ext.size() &&
        out.compare(out.size() - ext.size(), ext.size(), ext) == 0)
        return out.substr(0, out.size() - ext.size()) + ".summary.csv";
    return out + ".summary.csv";
}

std::vector<double> parse_grid(const std::string& csv) {
    std::vector<double> grid;
    std::string item;
    std::istringstream ss(csv);
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != item.size())
            throw std::invalid_argument("bad grid entry '" + item + "'");
        grid.push_back(v);
    }
    if (grid.empty()) throw std::invalid_argument("empty delta2 grid");
    return grid;
}

}  // namespace

int run_test_command(const CliOptions& opts) {
    if (opts.k_frac <= 0.0 || opts.k_frac > 1.0)
        throw std::invalid_argument("k-frac must be in (0, 1]");
    auto [graph, data] = load_inputs(opts);
    StructureVariant variant = structure_variant_from_string(opts.variant);
    int n = data.n1() + data.n2();

    auto components = connected_component_nodes(graph);
    struct Row {
        int n_nodes = 0, k = 0;
        double stat_graph = 0, p_graph = 0, stat_full = 0, p_full = 0;
        bool graph_ok = false, full_ok = false;
        std::string status = "ok";
    };
    std::vector<Row> rows(components.size());
    int n_singular = 0, n_full_na = 0;

    for (size_t ci = 0; ci < components.size(); ++ci) {
        std::vector<int> comp = components[ci];
        std::sort(comp.begin(), comp.end());
        int pc = static_cast<int>(comp.size());
        Row& row = rows[ci];
        row.n_nodes = pc;

        TwoSampleData sub;
        sub.x1.resize(data.n1(), pc);
        sub.x2.resize(data.n2(), pc);
        for (int j = 0; j < pc; ++j) {
            sub.x1.col(j) = data.x1.col(comp[j]);
            sub.x2.col(j) = data.x2.col(comp[j]);
        }

        int k = opts.k > 0 ? std::min(opts.k, pc)
                           : std::max(1, static_cast<int>(std::lround(opts.k_frac * pc)));
        row.k = k;
        try {
            Graph cg = induced_subgraph(graph, comp);
            SpectralBasis basis = eigenbasis(laplacian(cg, variant));
            TestResult r = graph_t2(sub, basis, k);
            row.stat_graph = r.statistic;
            row.p_graph = r.pvalue;
            row.graph_ok = true;
        } catch (const SingularMatrixError&) {
            row.status = "graph_singular";
            ++n_singular;
        } catch (const std::invalid_argument&) {
            row.status = "graph_na";
            ++n_singular;
        }
        if (n - pc - 1 >= 1) {
            try {
                TestResult r = hotelling_t2(sub);
                row.stat_full = r.statistic;
                row.p_full = r.pvalue;
                row.full_ok = true;
            } catch (const SingularMatrixError&) {
            }
        }
        if (!row.full_ok) {
            ++n_full_na;
            if (row.status == "ok") row.status = "full_na";
        }
    }

    std::vector<double> pvals;
    std::vector<size_t> pval_rows;
    for (size_t ci = 0; ci < rows.size(); ++ci)
        if (rows[ci].graph_ok) {
            pvals.push_back(rows[ci].p_graph);
            pval_rows.push_back(ci);
        }
    FdrResult fdr;
    if (!pvals.empty()) fdr = bh_fdr(pvals, opts.fdr);

    auto out = open_out(opts.out_path);
    out << "component_id\tn_nodes\tk\tstat_graph\tp_graph\tstat_full\tp_full\t"
           "p_graph_bh\trejected\tstatus\n";
    std::vector<std::string> bh(rows.size(), "NA"), rej(rows.size(), "NA");
    for (size_t i = 0; i < pval_rows.size(); ++i) {
        bh[pval_rows[i]] = format_double(fdr.adjusted[i]);
        rej[pval_rows[i]] = fdr.rejected[i] ? "1" : "0";
    }
    for (size_t ci = 0; ci < rows.size(); ++ci) {
        const Row& row = rows[ci];
        out << 'c' << ci << '\t' << row.n_nodes << '\t' << row.k << '\t';
        if (row.graph_ok)
            out << format_double(row.stat_graph) << '\t' << format_double(row.p_graph);
        else
            out << "NA\tNA";
        out << '\t';
        if (row.full_ok)
            out << format_double(row.stat_full) << '\t' << format_double(row.p_full);
        else
            out << "NA\tNA";
        out << '\t' << bh[ci] << '\t' << rej[ci] << '\t' << row.status << '\n';
    }
    std::cerr << "tested " << components.size() << " components ("
              << n_singular << " without graph statistic, " << n_full_na
              << " without full-space statistic)\n";
    return 0;
}

int run_discover_command(const CliOptions& opts) {
    auto [graph, data] = load_inputs(opts);
    DiscoveryConfig cfg;
    cfg.q = opts.q;
    if (opts.k > 0) cfg.k = opts.k;
    cfg.alpha = opts.alpha;
    cfg.theta = opts.theta;
    cfg.variant = structure_variant_from_string(opts.variant);
    if (opts.bound == "exact")
        cfg.mode = BoundMode::exact;
    else if (opts.bound == "euclidean")
        cfg.mode = BoundMode::euclidean;
    else
        throw std::invalid_argument("bound must be exact or euclidean");

    DiscoveryResult result = discover(graph, data, cfg);
    write_hits_tsv(result.hits, graph, opts.out_path);
    std::cerr << "hits=" << result.hits.size() << " tested=" << result.stats.tested
              << " pruned=" << result.stats.pruned
              << " bound_evaluations=" << result.stats.bound_evaluations
              << " skipped_singular=" << result.stats.skipped_singular
              << " critical_value=" << format_double(result.critical_value) << '\n';

    if (opts.permutations > 0) {
        PermutationSummary perm =
            permutation_null(graph, data, cfg, opts.permutations, opts.seed);
        write_permutations_tsv(perm, opts.out_path + ".perms.tsv");
        std::cerr << "permutations=" << opts.permutations << " fraction_with_hit="
                  << format_double(perm.fraction_with_hit) << '\n';
    }
    return 0;
}

int run_power_command(const CliOptions& opts) {
    int k = opts.k > 0 ? opts.k : 5;
    int n = opts.n1 + opts.n2;
    if (opts.l_max < 0) throw std::invalid_argument("l-max must be nonnegative");
    if (n - k - opts.l_max - 1 < 1)
        throw std::invalid_argument("n1 + n2 too small for k + l-max components");
    std::vector<double> grid = parse_grid(opts.delta2_grid);

    auto out = open_out(opts.out_path);
    out << "kind,alpha,k,l,n1,n2,delta2_k,delta2_kl,shift_increase,power\n";
    auto tail = [&](int l, double d2_k, double d2_kl, double inc, double pw) {
        out << ',' << format_double(opts.alpha) << ',' << k << ',' << l << ','
            << opts.n1 << ',' << opts.n2 << ',' << format_double(d2_k) << ','
            << format_double(d2_kl) << ',' << format_double(inc) << ','
            << format_double(pw) << '\n';
    };
    for (double d2 : grid) {
        out << "power";
        tail(0, d2, d2, 0.0, power(opts.alpha, k, opts.n1, opts.n2, d2));
        for (int l = 1; l <= opts.l_max; ++l) {
            double inc = shift_increase(opts.alpha, k, l, d2, opts.n1, opts.n2);
            out << "shift";
            tail(l, d2, d2 + inc, inc,
                 power(opts.alpha, k + l, opts.n1, opts.n2, d2 + inc));
        }
    }
    return 0;
}

int run_simulate_command(const CliOptions& opts) {
    ExperimentConfig cfg;
    cfg.scenario = scenario_from_string(opts.scenario);
    cfg.replicates = opts.replicates;
    cfg.n_corrupt = opts.n_corrupt;
    cfg.n1 = opts.n1;
    cfg.n2 = opts.n2;
    cfg.alpha = opts.alpha;
    cfg.seed = opts.seed;
    if (cfg.scenario == Scenario::corrupt_remove || cfg.scenario == Scenario::corrupt_add) {
        cfg.n_edges = 60;
        cfg.k_grid = {2, 3, 4};
    } else if (cfg.scenario == Scenario::power_vs_k) {
        cfg.k0 = 5;
    }
    if (opts.k > 0) cfg.k_grid = {opts.k};

    ExperimentResult result = run_experiment(cfg);
    if (!result.rocs.empty()) {
        write_roc_csv(result.rocs, opts.out_path);
        write_roc_summary_csv(result.rocs, result.n_null, result.n_alt, cfg.seed,
                              summary_path(opts.out_path));
        std::cerr << "scenario=" << opts.scenario << " methods=" << result.rocs.size()
                  << " replicates=" << opts.replicates << '\n';
    } else {
        auto out = open_out(opts.out_path);
        out << "method,k,power\n";
        for (const auto& mp : result.powers)
            out << mp.method << ',' << mp.k << ',' << format_double(mp.value) << '\n';
        std::cerr << "scenario=" << opts.scenario << " rows=" << result.powers.size()
                  << " replicates=" << opts.replicates << '\n';
    }
    return 0;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"spectral two-sample tests on graph-structured data"};
    app.require_subcommand(1);

    CliOptions topts, dopts, popts, sopts;
    sopts.n1 = 20;
    sopts.n2 = 20;

    auto add_inputs = [](CLI::App* cmd, CliOptions& o) {
        cmd->add_option("--graph", o.graph_path, "edge list TSV")->required();
        cmd->add_option("--expr", o.expr_path, "expression TSV")->required();
        cmd->add_option("--labels", o.labels_path, "sample label TSV")->required();
        cmd->add_option("--variant", o.variant, "laplacian|normalized|signed|mg");
    };

    auto* t = app.add_subcommand(
        "test", "filtered test per connected component, BH across components");
    add_inputs(t, topts);
    t->add_option("--k-frac", topts.k_frac, "retained fraction of component size");
    t->add_option("--k", topts.k, "fixed component count (overrides --k-frac)");
    t->add_option("--fdr", topts.fdr, "BH level across components");
    t->add_option("--out", topts.out_path, "output TSV")->required();

    auto* d = app.add_subcommand("discover",
                                 "branch and bound search for shifted subgraphs");
    add_inputs(d, dopts);
    d->add_option("--q", dopts.q, "subgraph size");
    d->add_option("--k", dopts.k, "retained components per subgraph");
    d->add_option("--alpha", dopts.alpha, "test level");
    d->add_option("--bound", dopts.bound, "exact|euclidean");
    d->add_option("--theta", dopts.theta, "euclidean pruning threshold");
    d->add_option("--permutations", dopts.permutations, "label permutations");
    d->add_option("--seed", dopts.seed, "permutation seed");
    d->add_option("--out", dopts.out_path, "hits TSV")->required();

    auto* p = app.add_subcommand("power", "analytic power and shift increase table");
    p->add_option("--alpha", popts.alpha, "test level");
    p->add_option("--k", popts.k, "baseline component count (default 5)");
    p->add_option("--n1", popts.n1, "group one size");
    p->add_option("--n2", popts.n2, "group two size");
    p->add_option("--delta2-grid", popts.delta2_grid, "comma separated shift sizes");
    p->add_option("--l-max", popts.l_max, "largest extra component count");
    p->add_option("--out", popts.out_path, "output CSV")->required();

    auto* s = app.add_subcommand("simulate", "synthetic ROC and power experiments");
    s->add_option("--scenario", sopts.scenario,
                  "diag|block|corrupt_remove|corrupt_add|power_vs_k");
    s->add_option("--replicates", sopts.replicates, "replicates per arm");
    s->add_option("--n-corrupt", sopts.n_corrupt, "edges removed or added");
    s->add_option("--n1", sopts.n1, "group one size");
    s->add_option("--n2", sopts.n2, "group two size");
    s->add_option("--k", sopts.k, "single filter size (overrides scenario grid)");
    s->add_option("--alpha", sopts.alpha, "power_vs_k rejection level");
    s->add_option("--seed", sopts.seed, "experiment seed");
    s->add_option("--out", sopts.out_path, "output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    try {
        if (t->parsed()) return run_test_command(topts);
        if (d->parsed()) return run_discover_command(dopts);
        if (p->parsed()) return run_power_command(popts);
        return run_simulate_command(sopts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace netshift
