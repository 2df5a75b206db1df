#pragma once

#include <cstdint>
#include <string>

namespace netshift {

// Shared option bag for the four subcommands; the CLI front end fills the
// fields that apply and the command functions validate the rest.
struct CliOptions {
    std::string graph_path;
    std::string expr_path;
    std::string labels_path;
    std::string variant = "laplacian";
    double k_frac = 0.2;
    int k = 0;                  // 0 -> derive from k_frac
    double alpha = 0.05;
    double fdr = 0.05;
    int q = 5;
    double theta = 1.0;
    std::string bound = "exact";
    int permutations = 0;
    uint64_t seed = 1;
    std::string scenario = "diag";
    int replicates = 1000;
    int n_corrupt = 20;
    int n1 = 100;                      // power command grids
    int n2 = 100;
    std::string delta2_grid = "0.1,0.2,0.3,0.4";
    int l_max = 50;
    std::string out_path;
};

// Each returns 0 on success; failures raise and the front end reports them.
int run_test_command(const CliOptions& opts);
int run_discover_command(const CliOptions& opts);
int run_power_command(const CliOptions& opts);
int run_simulate_command(const CliOptions& opts);

int run_cli(int argc, const char* const* argv);

}  // namespace netshift
