#pragma once

#include "fsochan/channel_model.hpp"
#include "fsochan/ingest.hpp"
#include "fsochan/qkd_rate.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

// CSV front end. Every table has one header row; numbers carry 12
// significant digits. Exit codes: 0 success, 1 computation error,
// 2 input or I/O error.

namespace fsochan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitInput = 2;

struct SweepSpec {
    double aw_min = 0.5;
    double aw_max = 2.0;
    int steps = 31;
    std::vector<double> sigma_b2{0.3};
    ProtocolParams protocol;
    bool optimize_modulation = false;

    void validate() const;
    std::vector<double> ratios() const;
};

void write_stats(const TransmittanceSeries& series, std::ostream& out);
void write_histogram(const Histogram& hist, std::ostream& out);
void write_curve(const SweepSpec& spec, ChannelModel model, std::ostream& out);
void write_ln_curve(const SweepSpec& spec, std::span<const double> variances, std::ostream& out);
/// Fixed-V rows for each variance, or optimized-V rows when optimize_modulation is set.
/// Optimizer warnings go to log.
void write_kr_curve(const SweepSpec& spec, std::span<const double> variances, bool clamp,
                    std::ostream& out, std::ostream& log);
void write_fit(const GeometryFit& fit, std::size_t n, std::ostream& out);
void write_samples(const BeamGeometry& geometry, std::uint64_t seed, std::size_t n,
                   ChannelModel model, std::ostream& out);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fsochan::cli
