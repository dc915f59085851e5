#include "fsochan/fading_stats.hpp"

#include "fsochan/errors.hpp"
#include "fsochan/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fsochan {
namespace {

constexpr double kMomentTolerance = 1e-9;
// Slack for rounding when checking the moment ordering.
constexpr double kOrderSlack = 1e-9;
// e^{-u} below 1e-26 past this point.
constexpr double kRayleighCutoff = 60.0;

}  // namespace

FadingStats FadingStats::from_moments(double eta_mean, double sqrt_eta_mean, double eta_max) {
    detail::require_finite(eta_mean, "eta_mean");
    detail::require_finite(sqrt_eta_mean, "sqrt_eta_mean");
    detail::require_finite(eta_max, "eta_max");
    const double sq = sqrt_eta_mean * sqrt_eta_mean;
    if (sqrt_eta_mean < -kOrderSlack || sq > eta_mean + kOrderSlack ||
        eta_mean > eta_max + kOrderSlack || eta_max > 1.0 + kOrderSlack) {
        throw DomainError("inconsistent fading moments: <eta> = " + std::to_string(eta_mean) +
                          ", <sqrt eta> = " + std::to_string(sqrt_eta_mean) +
                          ", eta_max = " + std::to_string(eta_max));
    }
    const double s = std::clamp(sqrt_eta_mean, 0.0, 1.0);
    const double m = std::clamp(eta_mean, s * s, 1.0);
    const double top = std::clamp(eta_max, m, 1.0);
    return FadingStats(m, s, std::max(0.0, m - s * s), top);
}

FadingStats FadingStats::fixed(double eta) {
    detail::require_non_negative(eta, "eta");
    if (eta > 1.0) throw DomainError("eta must not exceed 1");
    return FadingStats(eta, std::sqrt(eta), 0.0, eta);
}

// <T^n> = int_0^inf e^{-u} T(sqrt(2 sigma_b2 u))^n du, the Rayleigh offset
// written in u = r^2 / (2 sigma_b2).
FadingStats analytic_moments(const BeamGeometry& geometry, ChannelModel model) {
    geometry.validate();
    const WeibullParams params = weibull_params(geometry.a_over_W);
    auto coefficient = [&](double r) {
        return model == ChannelModel::approx
                   ? std::sqrt(approx_eta_at_offset(r, params))
                   : std::sqrt(exact_eta_at_offset(r, geometry.a_over_W));
    };
    const double t0 = coefficient(0.0);
    if (geometry.sigma_b2 == 0.0) {
        return FadingStats::from_moments(t0 * t0, t0, t0 * t0);
    }

    const double two_var = 2.0 * geometry.sigma_b2;
    auto moment = [&](int n) {
        auto integrand = [&](double u) {
            const double t = coefficient(std::sqrt(two_var * u));
            return std::exp(-u) * (n == 1 ? t : t * t);
        };
        return quad::adaptive(integrand, 0.0, kRayleighCutoff, kMomentTolerance).value;
    };
    return FadingStats::from_moments(moment(2), moment(1), t0 * t0);
}

FadingStats empirical_moments(std::span<const double> samples) {
    if (samples.empty()) throw ValidationError("no transmittance samples", 0);
    long double sum = 0.0L;
    long double sum_sqrt = 0.0L;
    double top = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double eta = samples[i];
        if (!(eta >= 0.0 && eta <= 1.0)) {
            throw ValidationError("sample " + std::to_string(i) + " = " + std::to_string(eta) +
                                      " is outside [0, 1]",
                                  i);
        }
        sum += eta;
        sum_sqrt += std::sqrt(eta);
        top = std::max(top, eta);
    }
    const auto n = static_cast<long double>(samples.size());
    return FadingStats::from_moments(static_cast<double>(sum / n),
                                     static_cast<double>(sum_sqrt / n), top);
}

double fading_excess_noise(const FadingStats& stats, double V) {
    detail::require_finite(V, "V");
    if (V < 1.0) throw DomainError("quadrature variance V must be >= 1");
    return stats.var_sqrt_eta() * (V - 1.0);
}

EffectiveChannel effective_channel(const FadingStats& stats, double V, double epsilon) {
    detail::require_non_negative(epsilon, "epsilon");
    const double t_eff = stats.sqrt_eta_mean() * stats.sqrt_eta_mean();
    return {t_eff, fading_excess_noise(stats, V) + t_eff * epsilon};
}

}  // namespace fsochan
