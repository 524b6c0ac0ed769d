#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cfr/commands.hpp"
#include "cfr/dataset.hpp"
#include "cfr/model_io.hpp"
#include "cfr/profile.hpp"
#include "cfr/rng.hpp"
#include "support/test_models.hpp"

using namespace cfr;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

// strips the wall_seconds column (always the last field)
std::string drop_last_field(const std::string& line) {
    const auto pos = line.find_last_of('\t');
    return line.substr(0, pos);
}

std::string write_linear_dataset(const std::string& path, std::size_t n = 60) {
    const auto ds = testsupport::make_curve_dataset(n, -3.0, 3.0, 202,
                                                    [](double x) { return 2.0 * x + 1.0; });
    save_dataset(ds, path);
    return path;
}

} // namespace

TEST_CASE("train echoes the configuration and writes its artifacts") {
    write_linear_dataset("cli_train.tsv");

    TrainOptions opt;
    opt.dataset_path = "cli_train.tsv";
    opt.out_prefix = "cli_train_out";
    opt.ma.seed = 7;
    opt.ma.generations = 3;

    std::ostringstream out, err;
    CHECK(cmd_train(opt, out, err) == kExitOk);
    const auto echoed = out.str();
    CHECK(echoed.find("delta=0.1 ") != std::string::npos);
    CHECK(echoed.find("depth=4") != std::string::npos);
    CHECK(echoed.find("generations=3") != std::string::npos);
    CHECK(echoed.find("mutation-rate=0.1 ") != std::string::npos);

    const auto doc = read_model_file("cli_train_out.model");
    CHECK(doc.seed == 7);
    CHECK(doc.model.depth == 4);

    const auto row_lines = lines_of(slurp("cli_train_out.row.tsv"));
    REQUIRE(row_lines.size() == 2);
    CHECK(row_lines[0].find("train_mse") != std::string::npos);
    CHECK(row_lines[1].find("cli_train") == 0);

    CHECK_FALSE(slurp("cli_train_out.formula.txt").empty());
}

TEST_CASE("train is deterministic for a fixed seed") {
    write_linear_dataset("cli_det.tsv");

    TrainOptions opt;
    opt.dataset_path = "cli_det.tsv";
    opt.ma.seed = 11;
    opt.ma.generations = 3;

    std::ostringstream sink;
    opt.out_prefix = "cli_det_a";
    CHECK(cmd_train(opt, sink, sink) == kExitOk);
    opt.out_prefix = "cli_det_b";
    CHECK(cmd_train(opt, sink, sink) == kExitOk);

    CHECK(slurp("cli_det_a.model") == slurp("cli_det_b.model"));
    CHECK(slurp("cli_det_a.formula.txt") == slurp("cli_det_b.formula.txt"));

    const auto rows_a = lines_of(slurp("cli_det_a.row.tsv"));
    const auto rows_b = lines_of(slurp("cli_det_b.row.tsv"));
    REQUIRE(rows_a.size() == rows_b.size());
    for (std::size_t i = 0; i < rows_a.size(); ++i)
        CHECK(drop_last_field(rows_a[i]) == drop_last_field(rows_b[i]));
}

TEST_CASE("train with zero generations exports the best initial pocket") {
    write_linear_dataset("cli_gen0.tsv");
    TrainOptions opt;
    opt.dataset_path = "cli_gen0.tsv";
    opt.out_prefix = "cli_gen0_out";
    opt.ma.generations = 0;
    std::ostringstream sink;
    CHECK(cmd_train(opt, sink, sink) == kExitOk);
    CHECK(read_model_file("cli_gen0_out.model").model.depth == 4);
}

TEST_CASE("train reports load failures") {
    TrainOptions opt;
    opt.dataset_path = "cli_no_such_file.tsv";
    std::ostringstream out, err;
    CHECK(cmd_train(opt, out, err) == kExitInputError);
    CHECK_FALSE(err.str().empty());
}

TEST_CASE("benchmark emits rows plus a median row per dataset") {
    write_linear_dataset("cli_bench.tsv");

    BenchmarkOptions opt;
    opt.dataset_paths = {"cli_bench.tsv"};
    opt.out_path = "cli_bench_out.tsv";
    opt.runs = 3;
    opt.ma.generations = 2;
    opt.ma.seed = 100;

    std::ostringstream out, err;
    CHECK(cmd_benchmark(opt, out, err) == kExitOk);

    const auto lines = lines_of(slurp("cli_bench_out.tsv"));
    REQUIRE(lines.size() == 5); // header + 3 rows + 1 median
    CHECK(lines[1].find("cli_bench\t0\t100\t") == 0);
    CHECK(lines[2].find("cli_bench\t1\t101\t") == 0);
    CHECK(lines[4].find("cli_bench\tmedian") == 0);

    // odd run count: median is the middle order statistic
    std::vector<double> test_nmse;
    for (int i = 1; i <= 3; ++i) {
        std::istringstream row(lines[static_cast<std::size_t>(i)]);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, '\t')) fields.push_back(field);
        test_nmse.push_back(std::stod(fields[9]));
    }
    std::sort(test_nmse.begin(), test_nmse.end());
    std::istringstream med(lines[4]);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(med, field, '\t')) fields.push_back(field);
    CHECK(std::stod(fields[9]) == test_nmse[1]);
}

TEST_CASE("benchmark median averages the middle pair for even runs") {
    write_linear_dataset("cli_bench2.tsv");
    BenchmarkOptions opt;
    opt.dataset_paths = {"cli_bench2.tsv"};
    opt.out_path = "cli_bench2_out.tsv";
    opt.runs = 2;
    opt.ma.generations = 1;

    std::ostringstream out, err;
    CHECK(cmd_benchmark(opt, out, err) == kExitOk);
    const auto lines = lines_of(slurp("cli_bench2_out.tsv"));
    REQUIRE(lines.size() == 4);

    auto field_at = [](const std::string& line, std::size_t idx) {
        std::istringstream in(line);
        std::string f;
        for (std::size_t i = 0; i <= idx; ++i) std::getline(in, f, '\t');
        return std::stod(f);
    };
    const double median = field_at(lines[3], 9);
    CHECK(median == doctest::Approx(0.5 * (field_at(lines[1], 9) + field_at(lines[2], 9))));
}

TEST_CASE("benchmark skips unloadable datasets and flags partial failure") {
    write_linear_dataset("cli_bench3.tsv");
    BenchmarkOptions opt;
    opt.dataset_paths = {"cli_bench3.tsv", "cli_absent.tsv"};
    opt.out_path = "cli_bench3_out.tsv";
    opt.runs = 1;
    opt.ma.generations = 1;

    std::ostringstream out, err;
    CHECK(cmd_benchmark(opt, out, err) == kExitPartialFailure);
    CHECK(err.str().find("cli_absent.tsv") != std::string::npos);
    CHECK(lines_of(slurp("cli_bench3_out.tsv")).size() == 3); // header + 1 row + median
}

TEST_CASE("gamma demo writes a summary entry and a dump per depth") {
    GammaDemoOptions opt;
    opt.depths = {0, 1};
    opt.runs = 1;
    opt.out_prefix = "cli_gamma";
    opt.ma.generations = 1;

    std::ostringstream out, err;
    CHECK(cmd_gamma_demo(opt, out, err) == kExitOk);

    const auto summary = lines_of(slurp("cli_gamma_summary.tsv"));
    REQUIRE(summary.size() == 3); // header + one entry per depth
    CHECK(summary[1][0] == '0');
    CHECK(summary[2][0] == '1');

    const auto dump = lines_of(slurp("cli_gamma_depth1_predictions.tsv"));
    CHECK(dump.size() == 874); // header + 873 value rows

    GammaDemoOptions bad;
    bad.depths = {14};
    CHECK(cmd_gamma_demo(bad, out, err) == kExitInputError);
}

TEST_CASE("profile command reproduces the closed-form curves") {
    {
        std::ofstream table("cli_profile_single.tsv");
        table << "algorithm\td1\td2\n";
        table << "solo\t1.0\t2.0\n";
    }
    std::ostringstream out, err;
    CHECK(cmd_profile("cli_profile_single.tsv", "cli_profile_single_out.tsv", out, err) ==
          kExitOk);
    const auto single = lines_of(slurp("cli_profile_single_out.tsv"));
    REQUIRE(single.size() == 2);
    CHECK(single[1] == "solo\t0\t1");

    {
        std::ofstream table("cli_profile_double.tsv");
        table << "algorithm\td1\td2\td3\n";
        table << "base\t1.0\t2.0\t0.5\n";
        table << "double\t2.0\t4.0\t1.0\n";
    }
    CHECK(cmd_profile("cli_profile_double.tsv", "cli_profile_double_out.tsv", out, err) ==
          kExitOk);
    const auto dbl = lines_of(slurp("cli_profile_double_out.tsv"));
    REQUIRE(dbl.size() == 3);
    CHECK(dbl[1] == "base\t0\t1");
    CHECK(dbl[2] == "double\t100\t1");

    {
        std::ofstream table("cli_profile_missing.tsv");
        table << "algorithm\td1\td2\n";
        table << "a\t1.0\t\n";
        table << "b\t1.0\t2.0\n";
    }
    CHECK(cmd_profile("cli_profile_missing.tsv", "cli_profile_missing_out.tsv", out, err) ==
          kExitInputError);
    CHECK(err.str().find("(a, d2)") != std::string::npos);

    {
        std::ofstream table("cli_profile_zero.tsv");
        table << "algorithm\td1\n";
        table << "a\t0.0\n";
    }
    CHECK(cmd_profile("cli_profile_zero.tsv", "cli_profile_zero_out.tsv", out, err) ==
          kExitInputError);
}

TEST_CASE("render prints plain and LaTeX formulas") {
    const auto cf = testsupport::make_example_model();
    write_model_file(cf, 5, "cli_render.model");

    std::ostringstream out, err;
    CHECK(cmd_render("cli_render.model", false, {"w", "x", "y", "z"}, out, err) == kExitOk);
    CHECK(out.str().find("2.1*w") != std::string::npos);

    std::ostringstream tex;
    CHECK(cmd_render("cli_render.model", true, {"w", "x", "y", "z"}, tex, err) == kExitOk);
    CHECK(tex.str().find("\\cfrac") != std::string::npos);

    CHECK(cmd_render("cli_render_missing.model", false, {}, out, err) == kExitInputError);
}

#ifdef CFR_BINARY
TEST_CASE("binary smoke test incl. CFR_SEED fallback") {
    write_linear_dataset("cli_bin.tsv");
    const std::string cmd = std::string("CFR_SEED=21 ") + CFR_BINARY +
                            " train cli_bin.tsv --generations 1 --out cli_bin_a > /dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(read_model_file("cli_bin_a.model").seed == 21);

    // explicit flag wins over the environment
    const std::string cmd2 = std::string("CFR_SEED=21 ") + CFR_BINARY +
                             " train cli_bin.tsv --generations 1 --seed 4 --out cli_bin_b "
                             "> /dev/null";
    REQUIRE(std::system(cmd2.c_str()) == 0);
    CHECK(read_model_file("cli_bin_b.model").seed == 4);

    const std::string bad = std::string(CFR_BINARY) + " train 2> /dev/null";
    CHECK(std::system(bad.c_str()) != 0);
}
#endif
