#pragma once

#include "fsochan/channel_model.hpp"

#include <span>

namespace fsochan {

// First moments of a fading channel that fix its action on Gaussian states.
// var_sqrt_eta is always derived as eta_mean - sqrt_eta_mean^2.
class FadingStats {
public:
    // Checks 0 <= sqrt_eta_mean^2 <= eta_mean <= eta_max <= 1 up to rounding.
    static FadingStats from_moments(double eta_mean, double sqrt_eta_mean, double eta_max);

    // Non-fading channel with constant transmittance eta.
    static FadingStats fixed(double eta);

    double eta_mean() const noexcept { return eta_mean_; }
    double sqrt_eta_mean() const noexcept { return sqrt_eta_mean_; }
    double var_sqrt_eta() const noexcept { return var_sqrt_eta_; }
    double eta_max() const noexcept { return eta_max_; }

private:
    FadingStats(double eta_mean, double sqrt_eta_mean, double var, double eta_max)
        : eta_mean_(eta_mean), sqrt_eta_mean_(sqrt_eta_mean), var_sqrt_eta_(var), eta_max_(eta_max) {}

    double eta_mean_;
    double sqrt_eta_mean_;
    double var_sqrt_eta_;
    double eta_max_;
};

/// Moments of the beam-wandering law by quadrature over the Rayleigh offset.
FadingStats analytic_moments(const BeamGeometry& geometry,
                             ChannelModel model = ChannelModel::approx);

/// Plug-in estimates from measured transmittances; eta_max is the sample max.
/// Throws ValidationError (with the index) for empty input or samples outside [0,1].
FadingStats empirical_moments(std::span<const double> samples);

/// Var(sqrt(eta)) (V - 1), in shot-noise units.
double fading_excess_noise(const FadingStats& stats, double V);

struct EffectiveChannel {
    double transmittance;  // <sqrt(eta)>^2
    double excess_noise;   // output-referred noise above pure loss, SNU
};

/// Fixed lossy channel equivalent to the fading one for a phase-symmetric
/// input of variance V; epsilon is input-referred.
EffectiveChannel effective_channel(const FadingStats& stats, double V, double epsilon);

}  // namespace fsochan
