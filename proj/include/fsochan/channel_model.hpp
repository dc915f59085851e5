#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Beam wandering over a circular receiving aperture. All lengths (beam-center
// offset r, spot radius W, Weibull scale R, wandering deviation sigma_b) are
// measured in units of the aperture radius.

namespace fsochan {

struct BeamGeometry {
    double a_over_W = 1.0;  // aperture radius / beam-spot radius, > 0
    double sigma_b2 = 0.3;  // beam-center variance per axis, >= 0

    // Throws DomainError unless a_over_W > 0 and sigma_b2 >= 0, both finite.
    void validate() const;
};

// Log-negative Weibull law of the transmission coefficient
// T(r) = T0 * exp(-0.5 * (r / R)^lambda).
struct WeibullParams {
    double T0 = 0.0;
    double lambda = 0.0;
    double R = 0.0;
};

enum class ChannelModel { approx, exact };

/// sqrt(1 - exp(-2 (a/W)^2)): transmission coefficient of a centered beam.
double max_transmission_coefficient(double a_over_W);

/// Fraction of power of a Gaussian beam displaced by r that passes the
/// aperture, by adaptive quadrature of the radial Bessel integral.
double exact_eta_at_offset(double r, double a_over_W);

/// d ln(eta)/dr of exact_eta_at_offset, computed from the analytic
/// derivative of the integrand (I0' = I1).
double exact_eta_log_derivative(double r, double a_over_W);

/// Shape/scale chosen so that T0^2 exp(-(r/R)^lambda) reproduces the exact
/// transmittance and its logarithmic slope at the aperture edge r = 1.
WeibullParams weibull_params(double a_over_W);

/// Intensity transmittance of the Weibull approximation, T(r)^2.
double approx_eta_at_offset(double r, const WeibullParams& params);

/// Probability density of T for a Rayleigh-distributed beam-center offset.
/// Zero outside (0, T0).
double pdt_density(double T, const WeibullParams& params, double sigma_b2);

/// P(transmission coefficient <= T); the antiderivative of pdt_density.
double transmission_cdf(double T, const WeibullParams& params, double sigma_b2);

/// Draws n intensity transmittances. Deterministic in (geometry, seed, n, model).
std::vector<double> sample_transmittance(const BeamGeometry& geometry, std::uint64_t seed,
                                         std::size_t n,
                                         ChannelModel model = ChannelModel::approx);

}  // namespace fsochan
