#include "fsochan/special.hpp"

#include <cmath>
#include <numbers>

namespace fsochan::special {
namespace {

constexpr double kSeriesLimit = 30.0;

// e^{-x} sum_k (x/2)^{2k+nu} / (k! (k+nu)!), x >= 0. All terms positive.
double scaled_series(int nu, double x) {
    const double half = 0.5 * x;
    const double q = half * half;
    double term = (nu == 0) ? 1.0 : half;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + nu));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum * std::exp(-x);
}

// Hankel expansion of e^{-x} I_nu(x) for large x.
double scaled_asymptotic(int nu, double x) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * (odd * odd - mu) / (8.0 * k * x);
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

double bessel_i0e(double x) {
    const double ax = std::abs(x);
    return ax < kSeriesLimit ? scaled_series(0, ax) : scaled_asymptotic(0, ax);
}

double bessel_i1e(double x) {
    const double ax = std::abs(x);
    const double v = ax < kSeriesLimit ? scaled_series(1, ax) : scaled_asymptotic(1, ax);
    return x < 0 ? -v : v;
}

}  // namespace fsochan::special
