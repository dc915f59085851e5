#include "fsochan/channel_model.hpp"
#include "fsochan/errors.hpp"
#include "fsochan/fading_stats.hpp"

#include "oracles.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <limits>
#include <random>

using namespace fsochan;

namespace {

// Richardson-extrapolated central difference of ln(eta_exact).
double log_slope_fd(double r, double aw) {
    auto d = [&](double h) {
        return (std::log(exact_eta_at_offset(r + h, aw)) - std::log(exact_eta_at_offset(r - h, aw))) /
               (2 * h);
    };
    const double h = 1e-2;
    return (4 * d(h / 2) - d(h)) / 3;
}

double density_integral(const WeibullParams& p, double sigma_b2, double lo, double hi) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate([&](double t) { return pdt_density(t, p, sigma_b2); }, lo, hi, 1e-12);
}

}  // namespace

TEST_CASE("max transmission coefficient") {
    CHECK(max_transmission_coefficient(1.0) == doctest::Approx(std::sqrt(1 - std::exp(-2.0))).epsilon(1e-14));
    CHECK(max_transmission_coefficient(1.0) == doctest::Approx(0.929873).epsilon(1e-6));
    CHECK(max_transmission_coefficient(20.0) == 1.0);
    CHECK(max_transmission_coefficient(1e-6) == doctest::Approx(std::sqrt(2.0) * 1e-6).epsilon(1e-6));
    CHECK_THROWS_AS(max_transmission_coefficient(0.0), DomainError);
    CHECK_THROWS_AS(max_transmission_coefficient(-1.0), DomainError);
    CHECK_THROWS_AS(max_transmission_coefficient(std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS(max_transmission_coefficient(INFINITY), DomainError);
}

TEST_CASE("exact transmittance: closed form at the centre and far tail") {
    CHECK(exact_eta_at_offset(0.0, 1.0) == doctest::Approx(1 - std::exp(-2.0)).epsilon(1e-14));
    CHECK(exact_eta_at_offset(0.0, 1.0) == doctest::Approx(0.8646647).epsilon(1e-7));
    CHECK(exact_eta_at_offset(10.0, 1.0) < 1e-30);
    CHECK(exact_eta_at_offset(1e3, 1.0) == 0.0);
    CHECK_THROWS_AS(exact_eta_at_offset(-0.1, 1.0), DomainError);
    CHECK_THROWS_AS(exact_eta_at_offset(0.5, 0.0), DomainError);
}

TEST_CASE("exact transmittance agrees with 2-D integration over the disc") {
    CHECK(exact_eta_at_offset(1.0, 1.0) == doctest::Approx(oracle::beam_fraction_2d(1.0, 1.0)).epsilon(1e-6));

    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> offset(0.0, 1.8);
    std::uniform_real_distribution<double> ratio(0.3, 2.5);
    for (int i = 0; i < 10; ++i) {
        const double r = offset(rng), aw = ratio(rng);
        CAPTURE(r);
        CAPTURE(aw);
        CHECK(exact_eta_at_offset(r, aw) == doctest::Approx(oracle::beam_fraction_2d(r, aw)).epsilon(1e-6));
    }
}

TEST_CASE("exact transmittance is monotone in offset and in a/W") {
    for (double aw : {0.3, 0.5, 1.0, 2.0, 4.0}) {
        double prev = exact_eta_at_offset(0.0, aw);
        CHECK(prev == doctest::Approx(std::pow(max_transmission_coefficient(aw), 2)).epsilon(1e-13));
        for (double r = 0.05; r <= 3.0; r += 0.05) {
            const double eta = exact_eta_at_offset(r, aw);
            CHECK((eta < prev || eta == 0.0));
            CHECK(eta >= 0.0);
            prev = eta;
        }
    }
    // Inside the aperture only; past the edge a narrower beam misses more.
    for (double r : {0.0, 0.5, 0.9}) {
        double prev = 0.0;
        for (double aw = 0.2; aw <= 3.0; aw += 0.2) {
            const double eta = exact_eta_at_offset(r, aw);
            CHECK(eta > prev);
            prev = eta;
        }
    }
}

TEST_CASE("analytic log-derivative matches finite differences") {
    for (double aw : {0.5, 1.0, 1.5, 2.0}) {
        for (double r : {0.3, 1.0, 1.4}) {
            CHECK(exact_eta_log_derivative(r, aw) == doctest::Approx(log_slope_fd(r, aw)).epsilon(1e-7));
        }
    }
    CHECK(exact_eta_log_derivative(0.0, 1.0) == 0.0);
}

TEST_CASE("Weibull parameters reproduce value and slope at the aperture edge") {
    for (double aw : {0.5, 1.0, 1.5, 2.0}) {
        const WeibullParams p = weibull_params(aw);
        CAPTURE(aw);
        CHECK(p.T0 == max_transmission_coefficient(aw));
        CHECK(p.lambda > 0.0);
        CHECK(p.R > 0.0);
        CHECK(std::abs(approx_eta_at_offset(1.0, p) - exact_eta_at_offset(1.0, aw)) < 1e-9);
        const double slope = -p.lambda * std::pow(1.0 / p.R, p.lambda);
        CHECK(slope == doctest::Approx(log_slope_fd(1.0, aw)).epsilon(1e-6));
    }
}

TEST_CASE("Weibull approximation error over r in [0, 2] at a/W = 1") {
    const WeibullParams p = weibull_params(1.0);
    double worst = 0.0;
    for (double r = 0.0; r <= 2.0 + 1e-12; r += 0.01) {
        const double exact = exact_eta_at_offset(r, 1.0);
        worst = std::max(worst, std::abs(approx_eta_at_offset(r, p) - exact) / exact);
    }
    MESSAGE("max relative error of the Weibull approximation: " << worst);
    CHECK(worst < 0.25);
}

TEST_CASE("approximate transmittance stays within [0, T0^2]") {
    const WeibullParams p = weibull_params(1.3);
    CHECK(approx_eta_at_offset(0.0, p) == doctest::Approx(p.T0 * p.T0).epsilon(1e-15));
    for (double r = 0.0; r < 6.0; r += 0.1) {
        const double eta = approx_eta_at_offset(r, p);
        CHECK(eta >= 0.0);
        CHECK(eta <= p.T0 * p.T0);
    }
}

TEST_CASE("density of the transmission coefficient: support and errors") {
    const WeibullParams p = weibull_params(1.0);
    CHECK(pdt_density(p.T0 * 1.01, p, 0.3) == 0.0);
    CHECK(pdt_density(p.T0, p, 0.3) == 0.0);
    CHECK(pdt_density(0.0, p, 0.3) == 0.0);
    CHECK(pdt_density(-0.2, p, 0.3) == 0.0);
    CHECK(pdt_density(1.2, p, 0.3) == 0.0);
    CHECK(pdt_density(0.5, p, 0.3) > 0.0);
    CHECK_THROWS_AS(pdt_density(0.5, p, 0.0), DomainError);
    CHECK_THROWS_AS(pdt_density(0.5, p, -1.0), DomainError);
}

TEST_CASE("density normalizes on the geometry grid") {
    for (double aw : {0.5, 1.0, 1.5, 2.0}) {
        const WeibullParams p = weibull_params(aw);
        for (double s2 : {0.1, 0.3, 0.5}) {
            CAPTURE(aw);
            CAPTURE(s2);
            CHECK(std::abs(density_integral(p, s2, 0.0, p.T0) - 1.0) < 1e-6);
        }
    }
}

TEST_CASE("cdf is the integral of the density") {
    const WeibullParams p = weibull_params(1.0);
    for (double t : {0.3, 0.6, 0.8, 0.9}) {
        CHECK(transmission_cdf(t, p, 0.3) == doctest::Approx(density_integral(p, 0.3, 0.0, t)).epsilon(1e-8));
    }
    CHECK(transmission_cdf(0.0, p, 0.3) == 0.0);
    CHECK(transmission_cdf(p.T0, p, 0.3) == 1.0);
}

TEST_CASE("density moments agree with Monte Carlo") {
    const WeibullParams p = weibull_params(1.0);
    const auto eta = sample_transmittance({1.0, 0.3}, 7, 1'000'000);
    std::vector<double> t(eta.size()), t2(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) {
        t[i] = std::sqrt(eta[i]);
        t2[i] = eta[i];
    }
    boost::math::quadrature::tanh_sinh<double> ts;
    const double m1 = ts.integrate([&](double x) { return x * pdt_density(x, p, 0.3); }, 0.0, p.T0, 1e-12);
    const double m2 = ts.integrate([&](double x) { return x * x * pdt_density(x, p, 0.3); }, 0.0, p.T0, 1e-12);
    const auto mc1 = oracle::sample_mean(t);
    const auto mc2 = oracle::sample_mean(t2);
    CHECK(std::abs(m1 - mc1.mean) < 3 * mc1.standard_error);
    CHECK(std::abs(m2 - mc2.mean) < 3 * mc2.standard_error);
}

TEST_CASE("sampler: no wandering, determinism, validation") {
    const double t0 = max_transmission_coefficient(1.0);
    for (auto model : {ChannelModel::approx, ChannelModel::exact}) {
        for (double eta : sample_transmittance({1.0, 0.0}, 3, 50, model)) {
            CHECK(eta == doctest::Approx(t0 * t0).epsilon(1e-14));
        }
    }
    CHECK(sample_transmittance({0.8, 0.3}, 42, 1000) == sample_transmittance({0.8, 0.3}, 42, 1000));
    CHECK(sample_transmittance({0.8, 0.3}, 42, 1000) != sample_transmittance({0.8, 0.3}, 43, 1000));
    CHECK(sample_transmittance({0.8, 0.3}, 42, 10, ChannelModel::exact) ==
          sample_transmittance({0.8, 0.3}, 42, 10, ChannelModel::exact));
    CHECK_THROWS_AS(sample_transmittance({0.8, 0.3}, 1, 0), DomainError);
    CHECK_THROWS_AS(sample_transmittance({-1.0, 0.3}, 1, 10), DomainError);
    CHECK_THROWS_AS(sample_transmittance({1.0, -0.3}, 1, 10), DomainError);
}

TEST_CASE("exact-model samples match exact-model moments") {
    const auto eta = sample_transmittance({1.0, 0.3}, 11, 1'000'000, ChannelModel::exact);
    std::vector<double> t(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) t[i] = std::sqrt(eta[i]);
    const auto mc = oracle::sample_mean(t);
    const FadingStats exact = analytic_moments({1.0, 0.3}, ChannelModel::exact);
    CHECK(std::abs(exact.sqrt_eta_mean() - mc.mean) < 3 * mc.standard_error);
}

TEST_CASE("narrow beams stay well conditioned") {
    for (double aw : {4.0, 6.0, 9.0, 12.0}) {
        CAPTURE(aw);
        const WeibullParams p = weibull_params(aw);
        CHECK(p.lambda > 0.0);
        // Half the beam falls inside when centred on the edge.
        CHECK(exact_eta_at_offset(1.0, aw) == doctest::Approx(0.5).epsilon(0.05));
        CHECK(exact_eta_at_offset(1.0, aw) < 0.5);
    }
}
