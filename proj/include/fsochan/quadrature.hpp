#pragma once

#include <functional>

namespace fsochan::quad {

struct Result {
    double value;
    double error;
};

// Adaptive Gauss-Kronrod (15/31) on a finite interval. Throws
// NumericalError carrying the achieved estimate if it stays above abs_tol.
Result adaptive(const std::function<double(double)>& f, double a, double b,
                double abs_tol, unsigned max_depth = 20);

// Double-exponential rule for integrands with integrable endpoint
// singularities. f receives (x, distance-to-nearest-endpoint).
Result tanh_sinh(const std::function<double(double, double)>& f, double a, double b,
                 double abs_tol);

}  // namespace fsochan::quad
