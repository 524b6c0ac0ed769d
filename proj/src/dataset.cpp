#include "cfr/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cfr {

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, delim))
        fields.push_back(field);
    if (!line.empty() && line.back() == delim)
        fields.emplace_back();
    return fields;
}

bool parse_cell(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    while (begin < end && (*begin == ' ')) ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

std::size_t count_from_fraction(double fraction, std::size_t n) {
    // the 1e-9 slack absorbs representation error in fraction * n
    auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
    return std::min(std::max<std::size_t>(k, 1), n);
}

} // namespace

Dataset Dataset::take_rows(std::span<const std::size_t> indices) const {
    Dataset out;
    out.d = d;
    out.n = indices.size();
    out.feature_names = feature_names;
    out.source_name = source_name;
    out.features.reserve(out.n * d);
    out.targets.reserve(out.n);
    for (std::size_t i : indices) {
        auto r = row(i);
        out.features.insert(out.features.end(), r.begin(), r.end());
        out.targets.push_back(targets[i]);
    }
    return out;
}

Dataset load_dataset(const std::string& path, const std::string& target_column, char delimiter) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(path + ": cannot open file");

    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(path + ": empty file, header row required");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    char delim = delimiter;
    if (delim == '\0')
        delim = line.find('\t') != std::string::npos ? '\t' : ',';

    const auto header = split_line(line, delim);
    std::size_t target_idx = header.size();
    for (std::size_t c = 0; c < header.size(); ++c)
        if (header[c] == target_column) target_idx = c;
    if (target_idx == header.size())
        throw std::runtime_error(path + ": target column '" + target_column + "' not found in header");
    if (header.size() < 2)
        throw std::runtime_error(path + ": no feature columns besides the target");

    Dataset ds;
    ds.source_name = path;
    for (std::size_t c = 0; c < header.size(); ++c)
        if (c != target_idx) ds.feature_names.push_back(header[c]);
    ds.d = ds.feature_names.size();

    std::set<std::string> unique_names(ds.feature_names.begin(), ds.feature_names.end());
    if (unique_names.size() != ds.feature_names.size())
        throw std::runtime_error(path + ": duplicate feature names in header");

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_line(line, delim);
        if (fields.size() != header.size())
            throw std::runtime_error(path + " line " + std::to_string(line_no) + ": has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(header.size()));
        for (std::size_t c = 0; c < fields.size(); ++c) {
            double v = 0.0;
            if (!parse_cell(fields[c], v))
                throw std::runtime_error(path + " line " + std::to_string(line_no) + ", column '" +
                                         header[c] + "': not a number: '" + fields[c] + "'");
            if (!std::isfinite(v))
                throw std::runtime_error(path + " line " + std::to_string(line_no) + ", column '" +
                                         header[c] + "': non-finite value");
            if (c == target_idx)
                ds.targets.push_back(v);
            else
                ds.features.push_back(v);
        }
    }
    ds.n = ds.targets.size();
    if (ds.n == 0)
        throw std::runtime_error(path + ": no data rows");
    return ds;
}

void save_dataset(const Dataset& ds, const std::string& path, char delimiter) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error(path + ": cannot open file for writing");
    for (std::size_t c = 0; c < ds.d; ++c)
        out << ds.feature_names[c] << delimiter;
    out << "target\n";
    char buf[40];
    for (std::size_t i = 0; i < ds.n; ++i) {
        for (std::size_t c = 0; c < ds.d; ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", ds.features[i * ds.d + c]);
            out << buf << delimiter;
        }
        std::snprintf(buf, sizeof buf, "%.17g", ds.targets[i]);
        out << buf << '\n';
    }
    if (!out)
        throw std::runtime_error(path + ": write failed");
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double train_fraction, Rng& rng) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("train_test_split: fraction must be in (0, 1)");
    if (ds.n < 2)
        throw std::invalid_argument("train_test_split: need at least 2 rows");

    std::vector<std::size_t> order(ds.n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = ds.n - 1; i > 0; --i)
        std::swap(order[i], order[rng.uniform_index(i + 1)]);

    const std::size_t train_n = count_from_fraction(train_fraction, ds.n);
    Dataset train = ds.take_rows({order.data(), train_n});
    Dataset test = ds.take_rows({order.data() + train_n, ds.n - train_n});
    return {std::move(train), std::move(test)};
}

Dataset subsample(const Dataset& ds, double fraction, Rng& rng) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw std::invalid_argument("subsample: fraction must be in (0, 1]");
    const std::size_t k = count_from_fraction(fraction, ds.n);
    // partial Fisher-Yates: only the first k slots are needed
    std::vector<std::size_t> order(ds.n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i)
        std::swap(order[i], order[i + rng.uniform_index(ds.n - i)]);
    return ds.take_rows({order.data(), k});
}

} // namespace cfr
