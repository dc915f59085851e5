#include "fsochan/quadrature.hpp"

#include "fsochan/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fsochan::quad {

Result adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                unsigned max_depth) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    // Boost's tolerance is relative to the running estimate, so translate
    // abs_tol using the magnitude from a single non-adaptive pass.
    double error = 0.0;
    double l1 = 0.0;
    GK::integrate(f, a, b, 0, 0.0, &error, &l1);
    if (!(l1 > 0.0)) return {0.0, 0.0};
    const double rel_tol = std::max(abs_tol / l1, 8.0 * eps);
    const double value = GK::integrate(f, a, b, max_depth, rel_tol, &error, &l1);
    // Below ~64 eps * int|f| the estimate is rounding noise.
    if (!std::isfinite(value) || error > std::max(abs_tol, 64.0 * eps * l1)) {
        throw NumericalError("adaptive quadrature did not converge on [" + std::to_string(a) +
                                 ", " + std::to_string(b) + "], error estimate " +
                                 fmt::format("{:.3g}", error),
                             error);
    }
    return {value, error};
}

Result tanh_sinh(const std::function<double(double, double)>& f, double a, double b,
                 double abs_tol) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    double error = 0.0;
    double l1 = 0.0;
    std::size_t levels = 0;
    const double value = integrator.integrate(f, a, b, abs_tol, &error, &l1, &levels);
    if (!std::isfinite(value) || error > abs_tol) {
        throw NumericalError("tanh-sinh quadrature did not converge, error estimate " +
                                 std::to_string(error),
                             error);
    }
    return {value, error};
}

}  // namespace fsochan::quad
