#include "cfr/reference_problems.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cfr {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool near_pole(double x, double tol) {
    return x < 0.5 && std::abs(x - std::round(x)) < tol && std::round(x) <= 0.0;
}

} // namespace

double gamma(double x) {
    if (near_pole(x, 1e-12))
        throw std::domain_error("gamma: pole at non-positive integer " + std::to_string(x));

    // Lanczos, g = 7, 9 coefficients
    static const double coeff[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };

    if (x < 0.5) {
        // reflection: gamma(x) = pi / (sin(pi x) * gamma(1 - x))
        return kPi / (std::sin(kPi * x) * gamma(1.0 - x));
    }

    const double z = x - 1.0;
    double a = coeff[0];
    for (int i = 1; i < 9; ++i)
        a += coeff[i] / (z + i);
    const double t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

Dataset make_gamma_dataset(const GammaDatasetSpec& spec) {
    if (spec.n_samples < 2 || !(spec.lo < spec.hi) || spec.max_power < 1)
        throw std::invalid_argument("make_gamma_dataset: bad spec");

    const std::size_t d = static_cast<std::size_t>(spec.max_power) + 1;
    Dataset ds;
    ds.n = spec.n_samples;
    ds.d = d;
    ds.source_name = "gamma";
    for (std::size_t p = 0; p < d; ++p)
        ds.feature_names.push_back("x" + std::to_string(p));
    ds.features.reserve(ds.n * d);
    ds.targets.reserve(ds.n);

    const double step = (spec.hi - spec.lo) / static_cast<double>(spec.n_samples - 1);
    for (std::size_t k = 0; k < spec.n_samples; ++k) {
        const double x = spec.lo + static_cast<double>(k) * step;
        if (near_pole(x, 1e-9))
            throw std::runtime_error("make_gamma_dataset: grid point " + std::to_string(x) +
                                     " hits a pole of gamma");
        double power = 1.0;
        for (std::size_t p = 0; p < d; ++p) {
            ds.features.push_back(power);
            power *= x;
        }
        ds.targets.push_back(gamma(x));
    }
    return ds;
}

double euler_sum(std::span<const double> a) {
    if (a.empty())
        throw std::invalid_argument("euler_sum: empty input");
    double sum = 0.0;
    double product = 1.0;
    for (double v : a) {
        product *= v;
        sum += product;
    }
    return sum;
}

double euler_cf(std::span<const double> a) {
    if (a.empty())
        throw std::invalid_argument("euler_cf: empty input");
    constexpr double kGuard = 1e-9;
    const std::size_t n = a.size() - 1;
    if (n == 0) return a[0];

    // SP = a0 / (1 - a1/(1+a1 - a2/(1+a2 - ... - an/(1+an))))
    double r = 1.0 + a[n];
    for (std::size_t k = n - 1; k >= 1; --k) {
        if (std::abs(r) < kGuard)
            throw std::domain_error("euler_cf: partial denominator too close to zero");
        r = 1.0 + a[k] - a[k + 1] / r;
    }
    if (std::abs(r) < kGuard)
        throw std::domain_error("euler_cf: partial denominator too close to zero");
    const double denom = 1.0 - a[1] / r;
    if (std::abs(denom) < kGuard)
        throw std::domain_error("euler_cf: partial denominator too close to zero");
    return a[0] / denom;
}

double pade_sin(double x) {
    // exact rational constants, written as integer ratios
    const double c5 = 12671.0 / 4363920.0;
    const double c3 = 2363.0 / 18183.0;
    const double d6 = 121.0 / 16662240.0;
    const double d4 = 601.0 / 872784.0;
    const double d2 = 445.0 / 12122.0;
    const double x2 = x * x;
    const double num = ((c5 * x2 - c3) * x2 + 1.0) * x;
    const double den = ((d6 * x2 + d4) * x2 + d2) * x2 + 1.0;
    return num / den;
}

double cf_sin(double x) {
    const double x2 = x * x;
    const double num[6] = {
        -x2 * x / 6.0,        x2 / 20.0,          -11.0 * x2 / 420.0,
        25.0 * x2 / 2772.0,   -11.0 * x2 / 900.0, 1331.0 * x2 / 82650.0,
    };
    double r = 1.0; // innermost denominator
    for (int k = 5; k >= 1; --k)
        r = 1.0 + num[k] / r;
    return x + num[0] / r;
}

double tanh_cf(double x1, double x2, int levels) {
    if (levels < 1)
        throw std::invalid_argument("tanh_cf: levels must be >= 1");
    constexpr double kGuard = 1e-12;
    const double z = x1 + 5.0 * x2;
    const double zz = z * z;
    double r = static_cast<double>(2 * levels - 1); // a_levels
    for (int k = levels - 1; k >= 1; --k) {
        if (std::abs(r) < kGuard)
            throw std::domain_error("tanh_cf: pole in truncated evaluation");
        r = static_cast<double>(2 * k - 1) + zz / r;
    }
    if (std::abs(r) < kGuard)
        throw std::domain_error("tanh_cf: pole in truncated evaluation");
    return 1.0 + z / r;
}

} // namespace cfr
