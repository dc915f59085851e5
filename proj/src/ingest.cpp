#include "fsochan/ingest.hpp"

#include "fsochan/errors.hpp"
#include "fsochan/optimize.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>

namespace fsochan {
namespace {

constexpr double kBandLow = -0.01;
constexpr double kBandHigh = 1.01;
constexpr int kCdfCells = 4096;

std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n\f\v";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

bool parse_number(std::string_view token, double& value) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    const char* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    return ec == std::errc{} && ptr == end && std::isfinite(value);
}

BeamGeometry clamp_to_box(const std::vector<double>& x) {
    return {std::clamp(x[1], kFitRatioMin, kFitRatioMax),
            std::clamp(std::exp(x[0]), kFitSigmaMin, kFitSigmaMax)};
}

bool near_edge(double v, double lo, double hi) {
    return v <= lo * (1.0 + 1e-3) || v >= hi * (1.0 - 1e-3);
}

}  // namespace

TransmittanceSeries parse_series(std::istream& in, const ParseOptions& options) {
    double reference = 1.0;
    if (options.reference) {
        detail::require_positive(*options.reference, "normalization reference");
        reference = *options.reference;
    }

    TransmittanceSeries series;
    series.source_label = options.source_label;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        view = trim(view);
        if (view.empty() || view.front() == '#') continue;

        double raw = 0.0;
        if (!parse_number(view, raw)) {
            throw ValidationError("line " + std::to_string(line_no) + ": cannot parse '" +
                                      std::string(view) + "' as a number",
                                  line_no);
        }
        const double eta = raw / reference;
        if (eta < kBandLow || eta > kBandHigh) {
            throw ValidationError("line " + std::to_string(line_no) + ": transmittance " +
                                      std::to_string(eta) + " outside [0, 1]",
                                  line_no);
        }
        series.samples.push_back(std::clamp(eta, 0.0, 1.0));
    }
    if (series.samples.empty()) throw ValidationError("input contains no samples", line_no);
    return series;
}

TransmittanceSeries read_series(const std::filesystem::path& path, ParseOptions options) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    if (options.source_label.empty()) options.source_label = path.string();
    return parse_series(in, options);
}

Histogram histogram(const TransmittanceSeries& series, int bins,
                    std::optional<std::pair<double, double>> range) {
    if (bins < 2) throw DomainError("histogram needs at least 2 bins");
    double lo = 0.0;
    double hi = 0.0;
    if (range) {
        std::tie(lo, hi) = *range;
        detail::require_finite(lo, "histogram lower bound");
        detail::require_finite(hi, "histogram upper bound");
        if (!(hi > lo)) throw DomainError("histogram range must be increasing");
    } else {
        hi = series.samples.empty()
                 ? 0.0
                 : *std::max_element(series.samples.begin(), series.samples.end());
        if (!(hi > lo)) hi = 1.0;
    }

    Histogram h;
    h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i) h.bin_edges[i] = lo + (hi - lo) * i / bins;
    h.bin_edges.back() = hi;
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    for (const double v : series.samples) {
        if (v < lo || v > hi) continue;
        auto idx = static_cast<int>((v - lo) / (hi - lo) * bins);
        idx = std::clamp(idx, 0, bins - 1);
        ++h.counts[static_cast<std::size_t>(idx)];
        ++h.total;
    }
    return h;
}

double cdf_distance(std::span<const double> sorted_T, const BeamGeometry& geometry) {
    geometry.validate();
    const WeibullParams params = weibull_params(geometry.a_over_W);
    const auto n = static_cast<double>(sorted_T.size());
    std::size_t below = 0;
    double sum = 0.0;
    for (int i = 0; i < kCdfCells; ++i) {
        const double t = (i + 0.5) / kCdfCells;
        while (below < sorted_T.size() && sorted_T[below] <= t) ++below;
        const double diff = static_cast<double>(below) / n -
                            transmission_cdf(t, params, geometry.sigma_b2);
        sum += diff * diff;
    }
    return sum / kCdfCells;
}

GeometryFit fit_geometry(const TransmittanceSeries& series) {
    if (series.samples.empty()) throw ValidationError("cannot fit an empty series", 0);
    GeometryFit fit;
    fit.few_samples = series.count() < kRecommendedFitSamples;

    std::vector<double> coeff(series.samples.size());
    std::transform(series.samples.begin(), series.samples.end(), coeff.begin(),
                   [](double eta) { return std::sqrt(eta); });
    std::sort(coeff.begin(), coeff.end());

    if (coeff.back() - coeff.front() <= 1e-12) {
        // No wandering: invert eta = 1 - exp(-2 (a/W)^2) for the constant level.
        const double eta = series.samples.front();
        const double ratio = eta > 0.0 && eta < 1.0 ? std::sqrt(-std::log1p(-eta) / 2.0)
                                                    : (eta <= 0.0 ? 0.0 : INFINITY);
        fit.geometry = {std::clamp(ratio, kFitRatioMin, kFitRatioMax), 0.0};
        fit.at_boundary = !(ratio >= kFitRatioMin && ratio <= kFitRatioMax);
        fit.gof = 0.0;
        return fit;
    }

    // Search in (ln sigma_b2, a/W); points outside the box are projected back
    // and penalized so the simplex does not drift along a flat extension.
    const double log_lo = std::log(kFitSigmaMin);
    const double log_hi = std::log(kFitSigmaMax);
    auto objective = [&](const std::vector<double>& x) {
        const double ls = std::clamp(x[0], log_lo, log_hi);
        const double aw = std::clamp(x[1], kFitRatioMin, kFitRatioMax);
        const double excess = (x[0] - ls) * (x[0] - ls) + (x[1] - aw) * (x[1] - aw);
        return cdf_distance(coeff, clamp_to_box({ls, aw})) + excess;
    };

    const std::array<std::array<double, 2>, 4> starts{{
        {0.05, 0.5}, {0.3, 1.0}, {1.0, 2.0}, {0.1, 3.0}}};
    opt::SimplexOptions options;
    options.initial_step = 0.2;
    options.x_tol = 1e-7;
    options.f_tol = 1e-16;

    opt::SimplexResult best{{}, INFINITY, 0};
    for (const auto& [sigma, ratio] : starts) {
        auto result = opt::nelder_mead_minimize(objective, {std::log(sigma), ratio}, options);
        if (result.value < best.value) best = std::move(result);
    }
    options.initial_step = 0.05;
    auto polished = opt::nelder_mead_minimize(objective, best.x, options);
    if (polished.value <= best.value) best = std::move(polished);

    fit.geometry = clamp_to_box(best.x);
    fit.gof = best.value;
    fit.at_boundary = near_edge(fit.geometry.sigma_b2, kFitSigmaMin, kFitSigmaMax) ||
                      near_edge(fit.geometry.a_over_W, kFitRatioMin, kFitRatioMax);
    return fit;
}

}  // namespace fsochan
