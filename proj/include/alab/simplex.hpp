#ifndef ALAB_SIMPLEX_HPP
#define ALAB_SIMPLEX_HPP

// Derivative-free Nelder-Mead minimizer used for every local polish in the
// library. Deterministic: vertex ordering is stable on ties.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace alab {

struct SimplexOptions {
    /// Edge length of the initial axis-aligned simplex.
    double initial_step = 0.1;
    /// Stop once the largest vertex distance from the best vertex is below this.
    double diameter_tol = 1e-10;
    int max_evaluations = 2000;
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Minimizes f starting from x0. f receives a span over the trial point.
template <class F>
SimplexResult nelder_mead(F&& f, std::vector<double> x0, const SimplexOptions& opt = {})
{
    const std::size_t n = x0.size();
    SimplexResult res;
    if (n == 0) {
        res.x = std::move(x0);
        res.value = f(std::span<const double>(res.x));
        res.evaluations = 1;
        res.converged = true;
        return res;
    }

    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opt.initial_step;
    std::vector<double> vals(n + 1);
    int evals = 0;
    auto eval = [&](const std::vector<double>& p) {
        ++evals;
        return f(std::span<const double>(p));
    };
    for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    auto diameter = [&](std::size_t best) {
        double dmax = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            double d = 0.0;
            for (std::size_t k = 0; k < n; ++k) d = std::max(d, std::abs(pts[i][k] - pts[best][k]));
            dmax = std::max(dmax, d);
        }
        return dmax;
    };
    auto along = [&](double coef, std::vector<double>& out, std::size_t worst) {
        for (std::size_t k = 0; k < n; ++k) out[k] = centroid[k] + coef * (pts[worst][k] - centroid[k]);
    };

    while (true) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];

        if (diameter(best) < opt.diameter_tol) {
            res.converged = true;
            break;
        }
        if (evals >= opt.max_evaluations) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        along(-1.0, trial, worst);
        const double fr = eval(trial);
        if (fr < vals[best]) {
            along(-2.0, trial2, worst);
            const double fe = eval(trial2);
            if (fe < fr) {
                pts[worst] = trial2;
                vals[worst] = fe;
            } else {
                pts[worst] = trial;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second]) {
            pts[worst] = trial;
            vals[worst] = fr;
            continue;
        }
        // contraction, outside or inside
        const bool outside = fr < vals[worst];
        along(outside ? -0.5 : 0.5, trial2, worst);
        const double fc = eval(trial2);
        if (fc < (outside ? fr : vals[worst])) {
            pts[worst] = trial2;
            vals[worst] = fc;
            continue;
        }
        // shrink toward the best vertex
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < n; ++k) pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
            vals[i] = eval(pts[i]);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (vals[i] < vals[best]) best = i;
    }
    res.x = pts[best];
    res.value = vals[best];
    res.evaluations = evals;
    return res;
}

} // namespace alab

#endif
