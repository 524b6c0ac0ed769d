#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cfr/ma_config.hpp"

namespace cfr {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitPartialFailure = 3;

struct TrainOptions {
    std::string dataset_path;
    std::string target_column = "target";
    std::string out_prefix = "cfr";
    double train_fraction = 0.75;
    MAConfig ma;
};

struct BenchmarkOptions {
    std::vector<std::string> dataset_paths;
    std::string target_column = "target";
    std::string out_path = "cfr_benchmark.tsv";
    double train_fraction = 0.75;
    int runs = 10;
    int jobs = 1;
    MAConfig ma; // ma.seed is the base seed; run i uses base + i
};

struct GammaDemoOptions {
    std::vector<int> depths = {2, 4, 6};
    std::string out_prefix = "gamma";
    int runs = 10;
    int jobs = 1;
    MAConfig ma;
};

// One seeded run: writes <prefix>.model, <prefix>.formula.txt and
// <prefix>.row.tsv, and echoes the configuration and scores.
int cmd_train(const TrainOptions& opt, std::ostream& out, std::ostream& err);

// N runs per dataset with fresh splits; writes all rows plus one median row
// per dataset. Datasets that fail to load are reported and skipped
// (kExitPartialFailure).
int cmd_benchmark(const BenchmarkOptions& opt, std::ostream& out, std::ostream& err);

// Fits the gamma-function dataset at each requested depth; writes a summary
// of median training MSE per depth and a predicted-vs-true dump per depth.
int cmd_gamma_demo(const GammaDemoOptions& opt, std::ostream& out, std::ostream& err);

// One line of a results file. Median summary lines reuse the layout with
// placeholders in the per-run columns.
struct ResultRow {
    std::string dataset;
    int run_index = 0;
    std::uint64_t seed = 0;
    std::string config_hash;
    std::size_t depth = 0;
    std::size_t n_vars_used = 0;
    double train_mse = 0.0;
    double train_nmse = 0.0;
    double test_mse = 0.0;
    double test_nmse = 0.0;
    double wall_seconds = 0.0;
};

// Reads an algorithm x dataset error table, emits performance-profile
// points.
int cmd_profile(const std::string& table_path, const std::string& out_path, std::ostream& out,
                std::ostream& err);

// Prints a stored model as a plain or LaTeX formula.
int cmd_render(const std::string& model_path, bool latex,
               const std::vector<std::string>& names, std::ostream& out, std::ostream& err);

// FNV-1a over the canonical parameter string; stamped into every result row
// so rows from different configurations never mix silently.
std::string config_hash(const MAConfig& ma, double train_fraction,
                        const std::string& target_column);

} // namespace cfr
