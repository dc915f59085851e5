#include "fsochan/cli.hpp"

#include "fsochan/errors.hpp"
#include "fsochan/fading_stats.hpp"
#include "fsochan/gaussian_cv.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <string>

namespace fsochan::cli {
namespace {

std::string num(double v) { return fmt::format("{:.12g}", v); }

void row(std::ostream& out, std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
        if (!first) out << ',';
        out << c;
        first = false;
    }
    out << '\n';
}

}  // namespace

void SweepSpec::validate() const {
    detail::require_positive(aw_min, "aw-min");
    detail::require_finite(aw_max, "aw-max");
    if (!(aw_max > aw_min)) throw DomainError("aw-max must exceed aw-min");
    if (steps < 2) throw DomainError("steps must be at least 2");
    if (sigma_b2.empty()) throw DomainError("at least one sigma-b2 value is required");
    for (const double s : sigma_b2) detail::require_non_negative(s, "sigma-b2");
    protocol.validate();
}

std::vector<double> SweepSpec::ratios() const {
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) out[i] = aw_min + (aw_max - aw_min) * i / (steps - 1);
    out.back() = aw_max;
    return out;
}

void write_stats(const TransmittanceSeries& series, std::ostream& out) {
    const FadingStats s = empirical_moments(series.samples);
    row(out, {"eta_mean", "sqrt_eta_mean", "var_sqrt_eta", "eta_max", "n"});
    row(out, {num(s.eta_mean()), num(s.sqrt_eta_mean()), num(s.var_sqrt_eta()), num(s.eta_max()),
              std::to_string(series.count())});
}

void write_histogram(const Histogram& hist, std::ostream& out) {
    row(out, {"bin_lo", "bin_hi", "count", "density"});
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        const double width = hist.bin_edges[i + 1] - hist.bin_edges[i];
        const double density =
            hist.total ? static_cast<double>(hist.counts[i]) / (hist.total * width) : 0.0;
        row(out, {num(hist.bin_edges[i]), num(hist.bin_edges[i + 1]),
                  std::to_string(hist.counts[i]), num(density)});
    }
}

void write_curve(const SweepSpec& spec, ChannelModel model, std::ostream& out) {
    spec.validate();
    row(out, {"a_over_W", "sigma_b2", "eta_mean", "sqrt_eta_mean", "var_sqrt_eta"});
    for (const double sigma : spec.sigma_b2) {
        for (const double aw : spec.ratios()) {
            const FadingStats s = analytic_moments({aw, sigma}, model);
            row(out, {num(aw), num(sigma), num(s.eta_mean()), num(s.sqrt_eta_mean()),
                      num(s.var_sqrt_eta())});
        }
    }
}

void write_ln_curve(const SweepSpec& spec, std::span<const double> variances, std::ostream& out) {
    spec.validate();
    if (variances.empty()) throw DomainError("at least one state variance is required");
    row(out, {"a_over_W", "sigma_b2", "V", "LN"});
    for (const double sigma : spec.sigma_b2) {
        for (const double aw : spec.ratios()) {
            const FadingStats s = analytic_moments({aw, sigma});
            for (const double V : variances) {
                const CovMat2 shared = apply_fading_channel(tmsv(V), s, spec.protocol.epsilon);
                row(out, {num(aw), num(sigma), num(V), num(log_negativity(shared))});
            }
        }
    }
}

void write_kr_curve(const SweepSpec& spec, std::span<const double> variances, bool clamp,
                    std::ostream& out, std::ostream& log) {
    spec.validate();
    if (!spec.optimize_modulation && variances.empty()) {
        throw DomainError("at least one state variance is required");
    }
    if (clamp) {
        row(out, {"a_over_W", "sigma_b2", "V_used", "I_AB", "chi_BE", "KR"});
    } else {
        row(out, {"a_over_W", "sigma_b2", "V_used", "I_AB", "chi_BE", "KR", "KR_clamped"});
    }
    auto emit = [&](double aw, double sigma, const ProtocolParams& p, const FadingStats& s) {
        const KeyRateTerms t = key_rate_terms(p, s);
        const double clamped = std::max(0.0, t.key_rate);
        if (clamp) {
            row(out, {num(aw), num(sigma), num(p.V), num(t.mutual_information),
                      num(t.holevo_bound), num(clamped)});
        } else {
            row(out, {num(aw), num(sigma), num(p.V), num(t.mutual_information),
                      num(t.holevo_bound), num(t.key_rate), num(clamped)});
        }
    };

    for (const double sigma : spec.sigma_b2) {
        for (const double aw : spec.ratios()) {
            const FadingStats s = analytic_moments({aw, sigma});
            ProtocolParams p = spec.protocol;
            if (spec.optimize_modulation) {
                const ModulationOptimum best = optimize_modulation(s, p.epsilon, p.beta);
                if (best.status == OptimumStatus::domain_cap) {
                    log << "warning: a/W=" << num(aw) << " sigma_b2=" << num(sigma)
                        << ": optimum at the variance cap " << num(kMaxModulationVariance) << '\n';
                } else if (best.status == OptimumStatus::no_positive_rate) {
                    log << "warning: a/W=" << num(aw) << " sigma_b2=" << num(sigma)
                        << ": no positive key rate for any modulation\n";
                }
                p.V = best.V;
                emit(aw, sigma, p, s);
            } else {
                for (const double V : variances) {
                    p.V = V;
                    emit(aw, sigma, p, s);
                }
            }
        }
    }
}

void write_fit(const GeometryFit& fit, std::size_t n, std::ostream& out) {
    row(out, {"sigma_b2", "a_over_W", "gof", "n"});
    row(out, {num(fit.geometry.sigma_b2), num(fit.geometry.a_over_W), num(fit.gof),
              std::to_string(n)});
}

void write_samples(const BeamGeometry& geometry, std::uint64_t seed, std::size_t n,
                   ChannelModel model, std::ostream& out) {
    const auto samples = sample_transmittance(geometry, seed, n, model);
    out << "# fsochan sample a_over_W=" << num(geometry.a_over_W)
        << " sigma_b2=" << num(geometry.sigma_b2) << " seed=" << seed
        << " model=" << (model == ChannelModel::approx ? "approx" : "exact") << '\n';
    for (const double eta : samples) out << fmt::format("{:.17g}\n", eta);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Beam-wandering fading channels for CV entanglement and QKD", "fsochan"};
    app.require_subcommand(1);

    std::string out_path;
    std::string input;
    std::optional<double> reference;
    SweepSpec sweep;
    std::vector<double> variances{7.0};
    std::vector<double> ln0;
    std::string model_name = "approx";
    bool clamp = false;
    int bins = 50;
    std::vector<double> range;
    double ratio = 1.0;
    double sigma = 0.3;
    std::size_t n_samples = 100000;
    std::uint64_t seed = 1;

    const std::map<std::string, ChannelModel> models{{"approx", ChannelModel::approx},
                                                     {"exact", ChannelModel::exact}};

    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "Write CSV here instead of standard output");
    };
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("input", input, "Transmittance series, one value per line")->required();
        sub->add_option("--reference", reference, "Raw value corresponding to eta = 1");
    };
    auto add_sweep = [&](CLI::App* sub) {
        sub->add_option("--aw-min", sweep.aw_min, "Smallest a/W")->capture_default_str();
        sub->add_option("--aw-max", sweep.aw_max, "Largest a/W")->capture_default_str();
        sub->add_option("--steps", sweep.steps, "Grid points in a/W")->capture_default_str();
        sub->add_option("--sigma-b2", sweep.sigma_b2, "Beam-center variance (repeatable)")
            ->capture_default_str();
    };
    auto add_protocol = [&](CLI::App* sub) {
        sub->add_option("--excess-noise", sweep.protocol.epsilon, "Input-referred excess noise, SNU")
            ->capture_default_str();
    };

    auto* stats = app.add_subcommand("stats", "Moments of a measured transmittance series");
    add_input(stats);
    add_out(stats);

    auto* hist = app.add_subcommand("hist", "Histogram of a measured transmittance series");
    add_input(hist);
    add_out(hist);
    hist->add_option("--bins", bins, "Number of bins")->capture_default_str();
    hist->add_option("--range", range, "Lower and upper bin edge")->expected(2);

    auto* curve = app.add_subcommand("curve", "Analytic fading moments versus a/W");
    add_sweep(curve);
    add_out(curve);
    curve->add_option("--model", model_name, "approx or exact")
        ->check(CLI::IsMember({"approx", "exact"}));

    auto* ln_curve = app.add_subcommand("ln-curve", "Log-negativity of a TMSV versus a/W");
    add_sweep(ln_curve);
    add_protocol(ln_curve);
    add_out(ln_curve);
    auto* ln_var = ln_curve->add_option("--variance", variances, "TMSV variance (repeatable)");
    auto* ln_ln0 = ln_curve->add_option("--ln0", ln0, "Initial log-negativity in ebits (repeatable)");
    ln_var->excludes(ln_ln0);

    auto* kr_curve = app.add_subcommand("kr-curve", "Key-rate lower bound versus a/W");
    add_sweep(kr_curve);
    add_protocol(kr_curve);
    add_out(kr_curve);
    kr_curve->add_option("--variance", variances, "State variance V (repeatable)");
    kr_curve->add_option("--beta", sweep.protocol.beta, "Reconciliation efficiency")
        ->capture_default_str();
    kr_curve->add_flag("--optimize", sweep.optimize_modulation, "Optimize V at every grid point");
    kr_curve->add_flag("--clamp", clamp, "Report max(KR, 0) only");

    auto* fit = app.add_subcommand("fit", "Fit sigma_b2 and a/W to a measured series");
    add_input(fit);
    add_out(fit);

    auto* sample = app.add_subcommand("sample", "Synthetic transmittance samples");
    add_out(sample);
    sample->add_option("--aw", ratio, "Aperture-to-beam size ratio")->capture_default_str();
    sample->add_option("--sigma-b2", sigma, "Beam-center variance")->capture_default_str();
    sample->add_option("--samples", n_samples, "Number of samples")->capture_default_str();
    sample->add_option("--seed", seed, "RNG seed")->capture_default_str();
    sample->add_option("--model", model_name, "approx or exact")
        ->check(CLI::IsMember({"approx", "exact"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "fsochan: " << e.what() << '\n';
        return kExitInput;
    }

    try {
        std::ofstream file;
        std::ostream* sink = &out;
        if (!out_path.empty()) {
            file.open(out_path);
            if (!file) throw IoError("cannot write " + out_path);
            sink = &file;
        }
        const ParseOptions parse{reference, {}};
        const ChannelModel model = models.at(model_name);

        if (stats->parsed()) {
            write_stats(read_series(input, parse), *sink);
        } else if (hist->parsed()) {
            std::optional<std::pair<double, double>> r;
            if (range.size() == 2) r = std::pair{range[0], range[1]};
            write_histogram(histogram(read_series(input, parse), bins, r), *sink);
        } else if (curve->parsed()) {
            write_curve(sweep, model, *sink);
        } else if (ln_curve->parsed()) {
            if (!ln0.empty()) {
                variances.clear();
                for (const double l : ln0) variances.push_back(tmsv_variance_for_log_negativity(l));
            }
            write_ln_curve(sweep, variances, *sink);
        } else if (kr_curve->parsed()) {
            write_kr_curve(sweep, variances, clamp, *sink, err);
        } else if (fit->parsed()) {
            const TransmittanceSeries series = read_series(input, parse);
            const GeometryFit result = fit_geometry(series);
            if (result.few_samples) {
                err << "warning: only " << series.count() << " samples; at least "
                    << kRecommendedFitSamples << " recommended for fitting\n";
            }
            if (result.at_boundary) err << "warning: fit reached the boundary of the search box\n";
            write_fit(result, series.count(), *sink);
        } else if (sample->parsed()) {
            write_samples({ratio, sigma}, seed, n_samples, model, *sink);
        }
        sink->flush();
        if (!*sink) throw IoError("write failed");
    } catch (const IoError& e) {
        err << "fsochan: " << e.what() << '\n';
        return kExitInput;
    } catch (const ValidationError& e) {
        err << "fsochan: " << e.what() << '\n';
        return kExitInput;
    } catch (const DomainError& e) {
        err << "fsochan: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "fsochan: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitOk;
}

}  // namespace fsochan::cli
