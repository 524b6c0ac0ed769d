#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfr/commands.hpp"

namespace {

void add_ma_flags(CLI::App* cmd, cfr::MAConfig& ma) {
    cmd->add_option("--delta", ma.delta, "Complexity penalty scale");
    cmd->add_option("--depth", ma.depth, "Fraction depth");
    cmd->add_option("--generations", ma.generations, "Number of generations");
    cmd->add_option("--mutation-rate", ma.mutation_rate, "Per-agent mutation probability");
    cmd->add_option("--nm-instances", ma.nm_instances, "Independent local searches per model");
    cmd->add_option("--nm-iterations", ma.nm_iterations, "Simplex iteration cap");
    cmd->add_option("--nm-stagnation", ma.nm_stagnation, "Simplex stagnation limit");
    cmd->add_option("--subsample", ma.subsample_fraction, "Local-search subsample fraction");
    cmd->add_option("--reset-stagnation", ma.root_reset_stagnation,
                    "Generations without improvement before the root pocket resets");
    cmd->add_option("--seed", ma.seed, "Run seed")->envname("CFR_SEED");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continued fraction regression"};
    app.require_subcommand(1);

    cfr::TrainOptions train_opt;
    auto* train = app.add_subcommand("train", "Fit one model to a dataset");
    train->add_option("dataset", train_opt.dataset_path, "Dataset file")->required();
    train->add_option("--target-column", train_opt.target_column, "Target column name");
    train->add_option("--train-fraction", train_opt.train_fraction, "Training split fraction");
    train->add_option("--out", train_opt.out_prefix, "Output file prefix");
    add_ma_flags(train, train_opt.ma);

    cfr::BenchmarkOptions bench_opt;
    auto* bench = app.add_subcommand("benchmark", "Repeated runs over one or more datasets");
    bench->add_option("datasets", bench_opt.dataset_paths, "Dataset files")->required();
    bench->add_option("--target-column", bench_opt.target_column, "Target column name");
    bench->add_option("--train-fraction", bench_opt.train_fraction, "Training split fraction");
    bench->add_option("--runs", bench_opt.runs, "Runs per dataset");
    bench->add_option("--jobs", bench_opt.jobs, "Parallel workers");
    bench->add_option("--out", bench_opt.out_path, "Results file");
    add_ma_flags(bench, bench_opt.ma);

    cfr::GammaDemoOptions gamma_opt;
    auto* gamma = app.add_subcommand("gamma-demo", "Fit the gamma-function dataset per depth");
    gamma->add_option("--depths", gamma_opt.depths, "Depths to fit")->delimiter(',');
    gamma->add_option("--runs", gamma_opt.runs, "Runs per depth");
    gamma->add_option("--jobs", gamma_opt.jobs, "Parallel workers");
    gamma->add_option("--out", gamma_opt.out_prefix, "Output file prefix");
    add_ma_flags(gamma, gamma_opt.ma);

    std::string profile_in, profile_out = "cfr_profiles.tsv";
    auto* profile = app.add_subcommand("profile", "Performance profiles from an error table");
    profile->add_option("table", profile_in, "algorithm x dataset error table")->required();
    profile->add_option("--out", profile_out, "Profile points file");

    std::string render_in;
    bool render_latex = false;
    std::vector<std::string> render_names;
    auto* render = app.add_subcommand("render", "Print a stored model as a formula");
    render->add_option("model", render_in, "Model document")->required();
    render->add_flag("--latex", render_latex, "Emit LaTeX instead of plain text");
    render->add_option("--names", render_names, "Variable names")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cfr::kExitInputError;
    }

    try {
        if (train->parsed()) return cfr::cmd_train(train_opt, std::cout, std::cerr);
        if (bench->parsed()) return cfr::cmd_benchmark(bench_opt, std::cout, std::cerr);
        if (gamma->parsed()) return cfr::cmd_gamma_demo(gamma_opt, std::cout, std::cerr);
        if (profile->parsed())
            return cfr::cmd_profile(profile_in, profile_out, std::cout, std::cerr);
        if (render->parsed())
            return cfr::cmd_render(render_in, render_latex, render_names, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cfr::kExitInputError;
    }
    return cfr::kExitInputError;
}
