#include "cfr/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cfr/dataset.hpp"
#include "cfr/memetic.hpp"
#include "cfr/model_io.hpp"
#include "cfr/profile.hpp"
#include "cfr/reference_problems.hpp"

namespace cfr {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_wall(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

constexpr const char* kRowHeader =
    "dataset\trun_index\tseed\tconfig_hash\tdepth\tn_vars_used\t"
    "train_mse\ttrain_nmse\ttest_mse\ttest_nmse\twall_seconds";

ResultRow make_row(std::string dataset, int run_index, const std::string& hash,
                   const RunResult& r) {
    ResultRow row;
    row.dataset = std::move(dataset);
    row.run_index = run_index;
    row.seed = r.seed;
    row.config_hash = hash;
    row.depth = r.best.model.depth;
    row.n_vars_used = r.n_vars_used;
    row.train_mse = r.train_mse;
    row.train_nmse = r.train_nmse;
    row.test_mse = r.test_mse;
    row.test_nmse = r.test_nmse;
    row.wall_seconds = r.wall_seconds;
    return row;
}

void write_row(std::ostream& out, const ResultRow& row) {
    out << row.dataset << '\t' << row.run_index << '\t' << row.seed << '\t' << row.config_hash
        << '\t' << row.depth << '\t' << row.n_vars_used << '\t' << fmt(row.train_mse) << '\t'
        << fmt(row.train_nmse) << '\t' << fmt(row.test_mse) << '\t' << fmt(row.test_nmse) << '\t'
        << fmt_wall(row.wall_seconds) << '\n';
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string dataset_stem(const std::string& path) {
    const auto slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
    return name;
}

void echo_config(std::ostream& out, const MAConfig& ma, double train_fraction) {
    out << "delta=" << ma.delta << " depth=" << ma.depth << " generations=" << ma.generations
        << " mutation-rate=" << ma.mutation_rate << " nm-instances=" << ma.nm_instances
        << " nm-iterations=" << ma.nm_iterations << " nm-stagnation=" << ma.nm_stagnation
        << " subsample=" << ma.subsample_fraction
        << " reset-stagnation=" << ma.root_reset_stagnation
        << " train-fraction=" << train_fraction << " seed=" << ma.seed << '\n';
}

RunResult run_split(const Dataset& full, double train_fraction, const MAConfig& ma) {
    Rng split_rng(Rng::derive(ma.seed, 0x73706c69)); // split stream, decoupled from the run's
    auto [train, test] = train_test_split(full, train_fraction, split_rng);
    return run(train, test, ma);
}

// Runs jobs on a small pool of async workers and returns results in input
// order.
template <class Fn>
std::vector<RunResult> run_pool(int jobs, int count, Fn&& make_task) {
    std::vector<RunResult> results(static_cast<std::size_t>(count));
    if (jobs <= 1) {
        for (int i = 0; i < count; ++i)
            results[static_cast<std::size_t>(i)] = make_task(i);
        return results;
    }
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
            results[static_cast<std::size_t>(i)] = make_task(i);
    };
    std::vector<std::future<void>> futures;
    const int n_workers = std::min(jobs, count);
    futures.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w)
        futures.push_back(std::async(std::launch::async, worker));
    for (auto& f : futures) f.get();
    return results;
}

} // namespace

std::string config_hash(const MAConfig& ma, double train_fraction,
                        const std::string& target_column) {
    std::ostringstream canon;
    canon << ma.delta << '|' << ma.depth << '|' << ma.root_reset_stagnation << '|'
          << ma.generations << '|' << ma.mutation_rate << '|' << ma.nm_instances << '|'
          << ma.nm_iterations << '|' << ma.nm_stagnation << '|' << ma.subsample_fraction << '|'
          << ma.coeff_lo << '|' << ma.coeff_hi << '|' << ma.whitelist_p << '|' << train_fraction
          << '|' << target_column;
    const std::string s = canon.str();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int cmd_train(const TrainOptions& opt, std::ostream& out, std::ostream& err) {
    Dataset full;
    try {
        full = load_dataset(opt.dataset_path, opt.target_column);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    echo_config(out, opt.ma, opt.train_fraction);
    const RunResult result = run_split(full, opt.train_fraction, opt.ma);

    write_model_file(result.best.model, opt.ma.seed, opt.out_prefix + ".model");

    std::ofstream formula(opt.out_prefix + ".formula.txt");
    formula << render_formula(result.best.model, full.feature_names) << '\n';

    std::ofstream row(opt.out_prefix + ".row.tsv");
    row << kRowHeader << '\n';
    const std::string hash = config_hash(opt.ma, opt.train_fraction, opt.target_column);
    write_row(row, make_row(dataset_stem(opt.dataset_path), 0, hash, result));

    out << "train_mse=" << fmt(result.train_mse) << " train_nmse=" << fmt(result.train_nmse)
        << " test_mse=" << fmt(result.test_mse) << " test_nmse=" << fmt(result.test_nmse)
        << " vars_used=" << result.n_vars_used << '\n';
    out << "model: " << opt.out_prefix << ".model\n";
    return kExitOk;
}

int cmd_benchmark(const BenchmarkOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.runs < 1 || opt.dataset_paths.empty()) {
        err << "error: benchmark needs at least one dataset and one run\n";
        return kExitInputError;
    }

    std::ofstream file(opt.out_path);
    if (!file) {
        err << "error: cannot write " << opt.out_path << '\n';
        return kExitInputError;
    }
    file << kRowHeader << '\n';
    const std::string hash = config_hash(opt.ma, opt.train_fraction, opt.target_column);

    bool any_failed = false;
    for (const auto& path : opt.dataset_paths) {
        Dataset full;
        try {
            full = load_dataset(path, opt.target_column);
        } catch (const std::exception& e) {
            err << "skipping " << path << ": " << e.what() << '\n';
            any_failed = true;
            continue;
        }
        const std::string name = dataset_stem(path);

        auto results = run_pool(opt.jobs, opt.runs, [&](int i) {
            MAConfig ma = opt.ma;
            ma.seed = opt.ma.seed + static_cast<std::uint64_t>(i);
            return run_split(full, opt.train_fraction, ma);
        });

        std::vector<double> train_mse, test_mse, train_nmse, test_nmse;
        for (int i = 0; i < opt.runs; ++i) {
            const RunResult& r = results[static_cast<std::size_t>(i)];
            write_row(file, make_row(name, i, hash, r));
            train_mse.push_back(r.train_mse);
            test_mse.push_back(r.test_mse);
            train_nmse.push_back(r.train_nmse);
            test_nmse.push_back(r.test_nmse);
        }
        file << name << "\tmedian\t-\t" << hash << '\t' << opt.ma.depth << "\t-\t"
             << fmt(median(train_mse)) << '\t' << fmt(median(train_nmse)) << '\t'
             << fmt(median(test_mse)) << '\t' << fmt(median(test_nmse)) << "\t-\n";
        out << name << ": median test NMSE " << fmt(median(test_nmse)) << " over " << opt.runs
            << " runs\n";
    }
    if (!file) {
        err << "error: write failed for " << opt.out_path << '\n';
        return kExitInputError;
    }
    return any_failed ? kExitPartialFailure : kExitOk;
}

int cmd_gamma_demo(const GammaDemoOptions& opt, std::ostream& out, std::ostream& err) {
    for (int depth : opt.depths) {
        if (depth < 0 || depth > 12) {
            err << "error: gamma-demo depths must lie in 0..12\n";
            return kExitInputError;
        }
    }
    if (opt.runs < 1) {
        err << "error: gamma-demo needs at least one run\n";
        return kExitInputError;
    }

    const Dataset ds = make_gamma_dataset();

    std::ofstream summary(opt.out_prefix + "_summary.tsv");
    if (!summary) {
        err << "error: cannot write " << opt.out_prefix << "_summary.tsv\n";
        return kExitInputError;
    }
    summary << "depth\tmedian_train_mse\tbest_train_mse\truns\n";

    for (int depth : opt.depths) {
        // the demo fits the full sample, mirroring how the curve figures are
        // produced; no hold-out split here
        auto results = run_pool(opt.jobs, opt.runs, [&](int i) {
            MAConfig ma = opt.ma;
            ma.depth = static_cast<std::size_t>(depth);
            ma.seed = opt.ma.seed + static_cast<std::uint64_t>(i);
            return run(ds, ds, ma);
        });

        std::vector<double> train_mse;
        std::size_t best_idx = 0;
        for (std::size_t i = 0; i < results.size(); ++i) {
            train_mse.push_back(results[i].train_mse);
            if (results[i].train_mse < results[best_idx].train_mse) best_idx = i;
        }
        const double med = median(train_mse);
        summary << depth << '\t' << fmt(med) << '\t' << fmt(results[best_idx].train_mse) << '\t'
                << opt.runs << '\n';
        out << "depth " << depth << ": median train MSE " << fmt(med) << '\n';

        // predicted-vs-true dump from the best run, reported unclipped
        const std::string dump_path =
            opt.out_prefix + "_depth" + std::to_string(depth) + "_predictions.tsv";
        std::ofstream dump(dump_path);
        if (!dump) {
            err << "error: cannot write " << dump_path << '\n';
            return kExitInputError;
        }
        dump << "x\ttarget\tpredicted\n";
        const ContinuedFraction& model = results[best_idx].best.model;
        for (std::size_t i = 0; i < ds.n; ++i) {
            const auto outcome = model.evaluate(ds.row(i));
            dump << fmt(ds.features[i * ds.d + 1]) << '\t' << fmt(ds.targets[i]) << '\t'
                 << (outcome.finite ? fmt(outcome.value) : "nan") << '\n';
        }
    }
    return kExitOk;
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, delim))
        fields.push_back(field);
    if (!line.empty() && line.back() == delim)
        fields.emplace_back();
    return fields;
}

ErrorTable load_error_table(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(path + ": cannot open file");
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const char delim = line.find('\t') != std::string::npos ? '\t' : ',';

    ErrorTable table;
    const auto header = split_fields(line, delim);
    for (std::size_t c = 1; c < header.size(); ++c)
        table.datasets.push_back(header[c]);
    if (table.datasets.empty())
        throw std::runtime_error(path + ": header names no datasets");

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line, delim);
        if (fields.size() != table.datasets.size() + 1)
            throw std::runtime_error(path + " line " + std::to_string(line_no) + ": has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(table.datasets.size() + 1));
        table.algorithms.push_back(fields[0]);
        for (std::size_t c = 1; c < fields.size(); ++c) {
            const std::string& cell = fields[c];
            double v = std::numeric_limits<double>::quiet_NaN();
            if (!cell.empty() && cell != "NA" && cell != "nan") {
                auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
                if (ec != std::errc() || p != cell.data() + cell.size())
                    throw std::runtime_error(path + " line " + std::to_string(line_no) +
                                             ": not a number: '" + cell + "'");
            }
            table.errors.push_back(v);
        }
    }
    if (table.algorithms.empty())
        throw std::runtime_error(path + ": no algorithm rows");
    return table;
}

} // namespace

int cmd_profile(const std::string& table_path, const std::string& out_path, std::ostream& out,
                std::ostream& err) {
    try {
        const ErrorTable table = load_error_table(table_path);
        const auto curves = performance_profiles(table);

        std::ofstream file(out_path);
        if (!file) {
            err << "error: cannot write " << out_path << '\n';
            return kExitInputError;
        }
        file << "algorithm\tx\ty\n";
        for (const auto& curve : curves)
            for (const auto& [x, y] : curve.points)
                file << curve.algorithm << '\t' << fmt(x) << '\t' << fmt(y) << '\n';
        out << curves.size() << " profile curves written to " << out_path << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}

int cmd_render(const std::string& model_path, bool latex, const std::vector<std::string>& names,
               std::ostream& out, std::ostream& err) {
    try {
        const ModelDocument doc = read_model_file(model_path);
        out << (latex ? render_latex(doc.model, names) : render_formula(doc.model, names)) << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}

} // namespace cfr
