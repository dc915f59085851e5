#pragma once

#include <functional>
#include <vector>

namespace fsochan::opt {

struct ScalarOptimum {
    double x;
    double value;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi]; stops
/// when the bracket width falls below rel_tol * |x|.
ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                      double rel_tol);

struct SimplexOptions {
    double initial_step = 0.1;
    double f_tol = 1e-14;
    double x_tol = 1e-9;
    int max_evaluations = 2000;
};

struct SimplexResult {
    std::vector<double> x;
    double value;
    int evaluations;
};

/// Nelder-Mead downhill simplex (standard coefficients 1, 2, 0.5, 0.5).
SimplexResult nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& f,
                                   std::vector<double> start, const SimplexOptions& options = {});

}  // namespace fsochan::opt
