#pragma once

#include <cstddef>
#include <span>

#include "cfr/dataset.hpp"

namespace cfr {

// Gamma function via the Lanczos approximation (g = 7, 9 coefficients) with
// the reflection formula below 0.5. Relative error is under 1e-10 on the
// dataset interval away from the poles. Throws std::domain_error at the
// non-positive integers.
double gamma(double x);

struct GammaDatasetSpec {
    double lo = -2.683;
    double hi = 4.5;
    std::size_t n_samples = 873;
    int max_power = 6;
};

// Uniform grid on [lo, hi] (both endpoints included); each row's features
// are [1, x, x^2, ..., x^max_power] and the target is gamma(x). Throws if a
// grid point lands within 1e-9 of a pole.
Dataset make_gamma_dataset(const GammaDatasetSpec& spec = {});

// a0 + a0*a1 + ... + a0*a1*...*an, the brute-force side of Euler's identity.
double euler_sum(std::span<const double> a);

// The same quantity evaluated as Euler's finite continued fraction, bottom
// up. Throws std::domain_error when a partial denominator comes within 1e-9
// of zero.
double euler_cf(std::span<const double> a);

// The [5/6] Pade approximant of sin as an explicit ratio of polynomials with
// exact rational coefficients.
double pade_sin(double x);

// The same approximant written as a six-level continued fraction.
double cf_sin(double x);

// Truncation of the classic tanh(x1 + 5*x2) continued fraction, printed form
// with the leading constant 1: levels >= 1 gives
// 1 + f0/(a1 + f1/(a2 + ... f_{levels-1}/a_levels)) with f0 = z,
// f_i = z^2 and a_i the odd numbers. The tail (result minus the leading 1)
// converges to tanh(z).
double tanh_cf(double x1, double x2, int levels);

} // namespace cfr
