#include "fsochan/qkd_rate.hpp"

#include "fsochan/errors.hpp"
#include "fsochan/gaussian_cv.hpp"
#include "fsochan/optimize.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace fsochan {
namespace {

constexpr int kScanPoints = 96;
// Well inside the 1e-4 requirement; keeps the refined value within ~1e-16 of
// the true maximum so it never falls below any scanned point.
constexpr double kRefineTolerance = 1e-8;

}  // namespace

void ProtocolParams::validate() const {
    detail::require_finite(V, "V");
    if (V < 1.0) throw DomainError("V must be >= 1, got " + std::to_string(V));
    detail::require_non_negative(epsilon, "epsilon");
    detail::require_finite(beta, "beta");
    if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("beta must lie in (0, 1]");
}

// Alice's heterodyne on the TMSV prepares coherent states, so Bob's
// conditional variance drops by T (V^2 - 1) / (V + 1) = T (V - 1).
double mutual_information(const ProtocolParams& params, const FadingStats& stats) {
    params.validate();
    const auto [t, noise] = effective_channel(stats, params.V, params.epsilon);
    const double v_b = 1.0 + t * (params.V - 1.0) + noise;
    const double v_b_given_a = v_b - t * (params.V * params.V - 1.0) / (params.V + 1.0);
    if (!(v_b_given_a > 0.0)) {
        throw NumericalError("non-positive conditional variance", v_b_given_a);
    }
    return 0.5 * std::log2(v_b / v_b_given_a);
}

double holevo_bound(const ProtocolParams& params, const FadingStats& stats) {
    params.validate();
    const CovMat2 shared = apply_fading_channel(tmsv(params.V), stats, params.epsilon);
    // S(E) = S(AB) and S(E|x_B) = S(A|x_B) because ABE is pure.
    const Mat2 conditional = condition_on_homodyne(shared, Mode::second, Quadrature::x);
    return von_neumann_entropy(shared) - von_neumann_entropy(conditional);
}

KeyRateTerms key_rate_terms(const ProtocolParams& params, const FadingStats& stats) {
    const double i_ab = mutual_information(params, stats);
    const double chi = holevo_bound(params, stats);
    return {i_ab, chi, params.beta * i_ab - chi};
}

double key_rate(const ProtocolParams& params, const FadingStats& stats) {
    return key_rate_terms(params, stats).key_rate;
}

ModulationOptimum optimize_modulation(const FadingStats& stats, double epsilon, double beta) {
    ProtocolParams params{kMinModulationVariance, epsilon, beta};
    params.validate();
    auto rate = [&](double V) {
        ProtocolParams p = params;
        p.V = V;
        return key_rate(p, stats);
    };

    // Scan log-spaced in the modulation variance V - 1.
    const double lo = std::log(kMinModulationVariance - 1.0);
    const double hi = std::log(kMaxModulationVariance - 1.0);
    std::vector<double> grid(kScanPoints);
    int best = 0;
    double best_rate = -INFINITY;
    for (int i = 0; i < kScanPoints; ++i) {
        const double u = lo + (hi - lo) * i / (kScanPoints - 1);
        grid[i] = i == kScanPoints - 1 ? kMaxModulationVariance : 1.0 + std::exp(u);
        const double kr = rate(grid[i]);
        if (kr > best_rate) {
            best_rate = kr;
            best = i;
        }
    }

    const double left = grid[std::max(best - 1, 0)];
    const double right = grid[std::min(best + 1, kScanPoints - 1)];
    const auto refined = opt::golden_section_maximize(rate, left, right, kRefineTolerance);
    double v_opt = grid[best];
    if (refined.value > best_rate) {
        v_opt = refined.x;
        best_rate = refined.value;
    }

    OptimumStatus status = OptimumStatus::interior;
    if (best_rate < 0.0) {
        status = OptimumStatus::no_positive_rate;
    } else if (best == kScanPoints - 1) {
        status = OptimumStatus::domain_cap;
    }
    return {v_opt, best_rate, status};
}

}  // namespace fsochan
