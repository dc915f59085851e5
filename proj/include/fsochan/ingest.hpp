#pragma once

#include "fsochan/channel_model.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fsochan {

struct TransmittanceSeries {
    std::vector<double> samples;  // intensity transmittance, each in [0, 1]
    std::string source_label;

    std::size_t count() const noexcept { return samples.size(); }
};

struct ParseOptions {
    std::optional<double> reference;  // raw value corresponding to eta = 1
    std::string source_label;
};

/// One decimal number per line; '#' comments and blank lines are skipped,
/// LF and CRLF both accepted. Values in [-0.01, 1.01] after normalization are
/// clamped into [0, 1]; anything else is a ValidationError with the line number.
TransmittanceSeries parse_series(std::istream& in, const ParseOptions& options = {});

/// parse_series on a file; IoError if it cannot be opened.
TransmittanceSeries read_series(const std::filesystem::path& path, ParseOptions options = {});

struct Histogram {
    std::vector<double> bin_edges;
    std::vector<std::size_t> counts;
    std::size_t total = 0;
};

/// Uniform bins over range (default [0, max sample]). The upper edge belongs
/// to the last bin; samples outside the range are not counted.
Histogram histogram(const TransmittanceSeries& series, int bins,
                    std::optional<std::pair<double, double>> range = std::nullopt);

struct GeometryFit {
    BeamGeometry geometry;
    double gof = 0.0;          // attained CDF distance
    bool at_boundary = false;  // optimum on the edge of the search box
    bool few_samples = false;  // fewer than kRecommendedFitSamples samples
};

inline constexpr std::size_t kRecommendedFitSamples = 1000;
inline constexpr double kFitSigmaMin = 1e-3, kFitSigmaMax = 2.0;
inline constexpr double kFitRatioMin = 0.2, kFitRatioMax = 4.0;

/// Integrated squared distance between the empirical CDF of T = sqrt(eta)
/// (sorted ascending) and the beam-wandering model CDF, over T in [0, 1].
double cdf_distance(std::span<const double> sorted_T, const BeamGeometry& geometry);

/// Least CDF-distance estimate of (sigma_b2, a/W) by Nelder-Mead from four
/// spread starting points. Deterministic.
GeometryFit fit_geometry(const TransmittanceSeries& series);

}  // namespace fsochan
