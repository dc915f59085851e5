#pragma once

#include "fsochan/fading_stats.hpp"

// Coherent-state protocol with homodyne detection and reverse reconciliation,
// collective attacks, asymptotic regime. Rates are in bits per channel use.

namespace fsochan {

struct ProtocolParams {
    double V = 7.0;         // entanglement-based TMSV variance, modulation is V - 1
    double epsilon = 0.01;  // input-referred excess noise, SNU
    double beta = 0.97;     // reconciliation efficiency

    void validate() const;
};

double mutual_information(const ProtocolParams& params, const FadingStats& stats);

/// Eve's information on Bob's x-homodyne outcome, from the purification.
double holevo_bound(const ProtocolParams& params, const FadingStats& stats);

/// beta * I_AB - chi_BE. Not clamped at zero.
double key_rate(const ProtocolParams& params, const FadingStats& stats);

struct KeyRateTerms {
    double mutual_information;
    double holevo_bound;
    double key_rate;
};

KeyRateTerms key_rate_terms(const ProtocolParams& params, const FadingStats& stats);

enum class OptimumStatus {
    interior,          // maximum inside the search domain
    domain_cap,        // best point at the upper end of the V domain
    no_positive_rate,  // KR < 0 everywhere; least-negative point returned
};

struct ModulationOptimum {
    double V;
    double key_rate;
    OptimumStatus status;
};

inline constexpr double kMinModulationVariance = 1.0 + 1e-6;
inline constexpr double kMaxModulationVariance = 1e3;

/// Maximizes key_rate over V in [1 + 1e-6, 1e3]: log-spaced scan, then
/// golden-section refinement to |dV|/V < 1e-4.
ModulationOptimum optimize_modulation(const FadingStats& stats, double epsilon, double beta);

}  // namespace fsochan
