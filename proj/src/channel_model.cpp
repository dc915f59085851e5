#include "fsochan/channel_model.hpp"

#include "fsochan/errors.hpp"
#include "fsochan/quadrature.hpp"
#include "fsochan/special.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fsochan {
namespace {

constexpr double kEtaTolerance = 1e-10;
// Outside |rho - r| < kWindow / sqrt(k) the Gaussian factor is below e^-64.
constexpr double kWindow = 8.0;

// 2 (a/W)^2 = 2 / w^2 with w the spot radius in aperture units.
double clip_rate(double a_over_W) { return 2.0 * a_over_W * a_over_W; }

struct Window {
    double lo;
    double hi;
    bool empty() const { return !(hi > lo); }
};

Window aperture_window(double r, double k) {
    const double half = kWindow / std::sqrt(k);
    return {std::max(0.0, r - half), std::min(1.0, r + half)};
}

}  // namespace

void BeamGeometry::validate() const {
    detail::require_positive(a_over_W, "a_over_W");
    detail::require_non_negative(sigma_b2, "sigma_b2");
}

double max_transmission_coefficient(double a_over_W) {
    detail::require_positive(a_over_W, "a_over_W");
    return std::sqrt(-std::expm1(-clip_rate(a_over_W)));
}

// eta(r) = 2k * int_0^1 rho exp(-k (r^2 + rho^2)) I0(2 k r rho) drho, k = 2 (a/W)^2.
// The Gaussian and Bessel factors are merged as exp(-k (r - rho)^2) I0e(2 k r rho)
// so neither overflows.
double exact_eta_at_offset(double r, double a_over_W) {
    detail::require_non_negative(r, "r");
    detail::require_positive(a_over_W, "a_over_W");
    const double k = clip_rate(a_over_W);
    if (r == 0.0) return -std::expm1(-k);

    auto integrand = [k, r](double rho) {
        const double d = r - rho;
        return rho * std::exp(-k * d * d) * special::bessel_i0e(2.0 * k * r * rho);
    };
    const Window w = aperture_window(r, k);
    if (w.empty()) return 0.0;
    const double scale = 2.0 * k;
    const double value = quad::adaptive(integrand, w.lo, w.hi, kEtaTolerance / scale).value;
    return std::clamp(scale * value, 0.0, 1.0);
}

double exact_eta_log_derivative(double r, double a_over_W) {
    detail::require_non_negative(r, "r");
    detail::require_positive(a_over_W, "a_over_W");
    const double k = clip_rate(a_over_W);
    if (r == 0.0) return 0.0;

    auto integrand = [k, r](double rho) {
        const double d = r - rho;
        const double z = 2.0 * k * r * rho;
        return rho * std::exp(-k * d * d) *
               (rho * special::bessel_i1e(z) - r * special::bessel_i0e(z));
    };
    const Window w = aperture_window(r, k);
    const double scale = 4.0 * k * k;
    const double slope =
        w.empty() ? 0.0 : scale * quad::adaptive(integrand, w.lo, w.hi, kEtaTolerance / scale).value;
    const double eta = exact_eta_at_offset(r, a_over_W);
    if (!(eta > 0.0)) {
        throw NumericalError("transmittance underflow at r = " + std::to_string(r));
    }
    return slope / eta;
}

WeibullParams weibull_params(double a_over_W) {
    const double t0 = max_transmission_coefficient(a_over_W);
    const double eta_edge = exact_eta_at_offset(1.0, a_over_W);
    const double g = std::log(-std::expm1(-clip_rate(a_over_W))) - std::log(eta_edge);
    const double d = -exact_eta_log_derivative(1.0, a_over_W);
    if (!(g > 0.0) || !(d > 0.0)) {
        throw NumericalError("Weibull matching failed: G = " + std::to_string(g) +
                             ", D = " + std::to_string(d));
    }
    const double lambda = d / g;
    return {t0, lambda, std::pow(g, -1.0 / lambda)};
}

double approx_eta_at_offset(double r, const WeibullParams& params) {
    detail::require_non_negative(r, "r");
    return params.T0 * params.T0 * std::exp(-std::pow(r / params.R, params.lambda));
}

// T = T0 exp(-(r/R)^lambda / 2) inverts to r = R (2 ln(T0/T))^{1/lambda}.
double pdt_density(double T, const WeibullParams& params, double sigma_b2) {
    detail::require_positive(sigma_b2, "sigma_b2");
    if (!(T > 0.0) || T >= params.T0 || T >= 1.0) return 0.0;
    const double x = 2.0 * std::log(params.T0 / T);
    const double r = params.R * std::pow(x, 1.0 / params.lambda);
    const double dr_dT = params.R / params.lambda * std::pow(x, 1.0 / params.lambda - 1.0) * 2.0 / T;
    const double rayleigh = r / sigma_b2 * std::exp(-r * r / (2.0 * sigma_b2));
    return rayleigh * dr_dT;
}

double transmission_cdf(double T, const WeibullParams& params, double sigma_b2) {
    detail::require_positive(sigma_b2, "sigma_b2");
    if (!(T > 0.0)) return 0.0;
    if (T >= params.T0) return 1.0;
    const double r = params.R * std::pow(2.0 * std::log(params.T0 / T), 1.0 / params.lambda);
    return std::exp(-r * r / (2.0 * sigma_b2));
}

std::vector<double> sample_transmittance(const BeamGeometry& geometry, std::uint64_t seed,
                                         std::size_t n, ChannelModel model) {
    geometry.validate();
    if (n == 0) throw DomainError("sample count must be at least 1");

    std::vector<double> out;
    out.reserve(n);
    if (geometry.sigma_b2 == 0.0) {
        const double eta0 = model == ChannelModel::approx
                                ? approx_eta_at_offset(0.0, weibull_params(geometry.a_over_W))
                                : exact_eta_at_offset(0.0, geometry.a_over_W);
        out.assign(n, eta0);
        return out;
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> offset(0.0, std::sqrt(geometry.sigma_b2));
    const WeibullParams params = weibull_params(geometry.a_over_W);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = offset(rng);
        const double y = offset(rng);
        const double r = std::hypot(x, y);
        out.push_back(model == ChannelModel::approx ? approx_eta_at_offset(r, params)
                                                    : exact_eta_at_offset(r, geometry.a_over_W));
    }
    return out;
}

}  // namespace fsochan
