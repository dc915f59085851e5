#include "fsochan/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fsochan::opt {

ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo,
                                      double hi, double rel_tol) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = std::min(lo, hi);
    double b = std::max(lo, hi);
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (a + b);
        if (b - a <= rel_tol * std::max(std::abs(mid), 1e-300)) break;
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? ScalarOptimum{c, fc} : ScalarOptimum{d, fd};
}

SimplexResult nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& f,
                                   std::vector<double> start, const SimplexOptions& options) {
    const std::size_t n = start.size();
    std::vector<std::vector<double>> pts(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) {
        const double step = start[i] != 0.0 ? options.initial_step * std::abs(start[i])
                                            : options.initial_step;
        pts[i + 1][i] += step;
    }
    std::vector<double> vals(n + 1);
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };
    for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

    std::vector<std::size_t> order(n + 1);
    auto affine = [n](const std::vector<double>& from, const std::vector<double>& to, double t) {
        std::vector<double> out(n);
        for (std::size_t k = 0; k < n; ++k) out[k] = from[k] + t * (to[k] - from[k]);
        return out;
    };

    while (evals < options.max_evaluations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        // Ties broken by index so the path is deterministic.
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t l, std::size_t r) { return vals[l] < vals[r]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];

        double spread = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                spread = std::max(spread, std::abs(pts[i][k] - pts[best][k]));
            }
        }
        if (std::abs(vals[worst] - vals[best]) <= options.f_tol && spread <= options.x_tol) break;
        if (spread <= options.x_tol * 1e-3) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / static_cast<double>(n);
        }

        const auto reflected = affine(centroid, pts[worst], -1.0);
        const double f_reflected = eval(reflected);
        if (f_reflected < vals[best]) {
            const auto expanded = affine(centroid, pts[worst], -2.0);
            const double f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                pts[worst] = expanded;
                vals[worst] = f_expanded;
            } else {
                pts[worst] = reflected;
                vals[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < vals[second]) {
            pts[worst] = reflected;
            vals[worst] = f_reflected;
            continue;
        }
        const bool outside = f_reflected < vals[worst];
        const auto contracted =
            outside ? affine(centroid, reflected, 0.5) : affine(centroid, pts[worst], 0.5);
        const double f_contracted = eval(contracted);
        if (f_contracted < std::min(f_reflected, vals[worst])) {
            pts[worst] = contracted;
            vals[worst] = f_contracted;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            pts[i] = affine(pts[best], pts[i], 0.5);
            vals[i] = eval(pts[i]);
        }
    }

    const auto it = std::min_element(vals.begin(), vals.end());
    const auto idx = static_cast<std::size_t>(it - vals.begin());
    return {pts[idx], *it, evals};
}

}  // namespace fsochan::opt
