#include "cfr/model_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cfr {

namespace {

constexpr const char* kMagic = "cfr-model";
constexpr int kVersion = 1;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Tokenized line reader that reports positions in parse errors.
class Reader {
public:
    explicit Reader(const std::string& text) : in_(text) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("model document line " + std::to_string(line_no_) + ": " + what);
    }

    // reads the next non-empty line and checks its leading keyword
    std::vector<std::string> expect(const std::string& keyword) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::vector<std::string> tokens;
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens.push_back(tok);
            if (tokens.empty()) continue;
            if (tokens[0] != keyword)
                fail("expected '" + keyword + "', found '" + tokens[0] + "'");
            return tokens;
        }
        ++line_no_;
        fail("unexpected end of document, expected '" + keyword + "'");
    }

    double number(const std::string& tok) const {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            fail("not a number: '" + tok + "'");
        return v;
    }

    std::uint64_t integer(const std::string& tok) const {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            fail("not an integer: '" + tok + "'");
        return v;
    }

    bool flag(const std::string& tok) const {
        if (tok == "1") return true;
        if (tok == "0") return false;
        fail("not a 0/1 flag: '" + tok + "'");
    }

private:
    std::istringstream in_;
    std::size_t line_no_ = 0;
};

} // namespace

std::string serialize(const ContinuedFraction& cf, std::uint64_t seed) {
    std::ostringstream out;
    out << kMagic << ' ' << kVersion << '\n';
    out << "seed " << seed << '\n';
    out << "nvars " << cf.n_vars << '\n';
    out << "depth " << cf.depth << '\n';
    out << "whitelist";
    for (std::size_t j = 0; j < cf.n_vars; ++j)
        out << ' ' << (cf.whitelist[j] ? 1 : 0);
    out << '\n';
    for (std::size_t t = 0; t < cf.terms.size(); ++t) {
        const auto& term = cf.terms[t];
        out << "term " << t << '\n';
        out << "constant " << fmt_double(term.constant) << '\n';
        out << "active";
        for (std::size_t j = 0; j < cf.n_vars; ++j)
            out << ' ' << (term.active[j] ? 1 : 0);
        out << '\n';
        out << "coeffs";
        for (std::size_t j = 0; j < cf.n_vars; ++j)
            out << ' ' << fmt_double(term.coefficients[j]);
        out << '\n';
    }
    out << "end\n";
    return out.str();
}

ModelDocument deserialize(const std::string& text) {
    Reader reader(text);

    auto head = reader.expect(kMagic);
    if (head.size() != 2 || reader.integer(head[1]) != kVersion)
        reader.fail("unsupported document version");

    ModelDocument doc;
    auto seed_line = reader.expect("seed");
    if (seed_line.size() != 2) reader.fail("seed wants 1 value");
    doc.seed = reader.integer(seed_line[1]);

    auto nvars_line = reader.expect("nvars");
    if (nvars_line.size() != 2) reader.fail("nvars wants 1 value");
    const auto n_vars = static_cast<std::size_t>(reader.integer(nvars_line[1]));

    auto depth_line = reader.expect("depth");
    if (depth_line.size() != 2) reader.fail("depth wants 1 value");
    const auto depth = static_cast<std::size_t>(reader.integer(depth_line[1]));

    ContinuedFraction cf(n_vars, depth);

    auto wl_line = reader.expect("whitelist");
    if (wl_line.size() != n_vars + 1) reader.fail("whitelist wants one flag per variable");
    for (std::size_t j = 0; j < n_vars; ++j)
        cf.whitelist[j] = reader.flag(wl_line[j + 1]);

    for (std::size_t t = 0; t < cf.terms.size(); ++t) {
        auto term_line = reader.expect("term");
        if (term_line.size() != 2 || reader.integer(term_line[1]) != t)
            reader.fail("expected term " + std::to_string(t));
        auto& term = cf.terms[t];

        auto const_line = reader.expect("constant");
        if (const_line.size() != 2) reader.fail("constant wants 1 value");
        term.constant = reader.number(const_line[1]);

        auto active_line = reader.expect("active");
        if (active_line.size() != n_vars + 1) reader.fail("active wants one flag per variable");
        for (std::size_t j = 0; j < n_vars; ++j)
            term.active[j] = reader.flag(active_line[j + 1]);

        auto coeff_line = reader.expect("coeffs");
        if (coeff_line.size() != n_vars + 1) reader.fail("coeffs wants one value per variable");
        for (std::size_t j = 0; j < n_vars; ++j)
            term.coefficients[j] = reader.number(coeff_line[j + 1]);
    }
    reader.expect("end");

    for (std::size_t j = 0; j < n_vars; ++j) {
        if (cf.whitelist[j]) continue;
        for (const auto& term : cf.terms)
            if (term.active[j])
                reader.fail("variable " + std::to_string(j) +
                            " is active in a term but not whitelisted");
    }

    doc.model = std::move(cf);
    return doc;
}

ModelDocument read_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(path + ": cannot open model file");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return deserialize(buf.str());
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_model_file(const ContinuedFraction& cf, std::uint64_t seed, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error(path + ": cannot open file for writing");
    out << serialize(cf, seed);
    if (!out)
        throw std::runtime_error(path + ": write failed");
}

namespace {

std::string var_name(std::size_t j, const std::vector<std::string>& names) {
    if (j < names.size()) return names[j];
    return "x" + std::to_string(j);
}

// "2.1*w + 4.7*x + 1.01" with signs folded into the separators
std::string term_text(const LinearTerm& term, const std::vector<std::string>& names) {
    std::string out;
    auto append = [&](double v, const std::string& symbol) {
        const bool negative = std::signbit(v);
        const double mag = std::abs(v);
        std::string piece;
        if (symbol.empty())
            piece = fmt_short(mag);
        else if (mag == 1.0)
            piece = symbol;
        else
            piece = fmt_short(mag) + "*" + symbol;
        if (out.empty())
            out = negative ? "-" + piece : piece;
        else
            out += (negative ? " - " : " + ") + piece;
    };
    for (std::size_t j = 0; j < term.n_vars(); ++j)
        if (term.active[j] && term.coefficients[j] != 0.0)
            append(term.coefficients[j], var_name(j, names));
    if (term.constant != 0.0 || out.empty())
        append(term.constant, "");
    return out;
}

bool is_compound(const std::string& s) {
    return s.find(' ') != std::string::npos;
}

std::string wrap(const std::string& s) {
    return is_compound(s) ? "(" + s + ")" : s;
}

// plain text, inside-out: g_k + h_k/(...)
std::string render_plain(const ContinuedFraction& cf, const std::vector<std::string>& names) {
    std::string acc = term_text(cf.g(cf.depth), names);
    for (std::size_t i = cf.depth; i-- > 0;) {
        const std::string h = term_text(cf.h(i), names);
        const std::string g = term_text(cf.g(i), names);
        if (h == "0")
            acc = g;
        else
            acc = g + " + " + wrap(h) + "/(" + acc + ")";
    }
    return acc;
}

std::string render_tex(const ContinuedFraction& cf, const std::vector<std::string>& names) {
    std::string acc = term_text(cf.g(cf.depth), names);
    for (std::size_t i = cf.depth; i-- > 0;) {
        const std::string h = term_text(cf.h(i), names);
        const std::string g = term_text(cf.g(i), names);
        if (h == "0")
            acc = g;
        else
            acc = g + " + \\cfrac{" + h + "}{" + acc + "}";
    }
    return acc;
}

} // namespace

std::string render_formula(const ContinuedFraction& cf, const std::vector<std::string>& names) {
    return render_plain(cf, names);
}

std::string render_latex(const ContinuedFraction& cf, const std::vector<std::string>& names) {
    return render_tex(cf, names);
}

} // namespace cfr
