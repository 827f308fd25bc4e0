#ifndef ALAB_COMPLEXIFY_HPP
#define ALAB_COMPLEXIFY_HPP

// Complexification ratio ||P~|| / ||P|| on l1^2 and a multi-start lower-bound
// search for the k-th complexification constants c_k.
//
// The extension P~ is P with the same coefficients evaluated on C^2; complex
// l1^2 is the Bochnak complexification of real l1^2, so no further norm
// machinery is involved.

#include "alab/norms.hpp"
#include "alab/parallel.hpp"
#include "alab/poly.hpp"
#include "alab/simplex.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace alab {

struct RatioOptions {
    RealNormOptions real;
    ComplexNormOptions complex;
};

/// ||P~|| / ||P||. Always >= 1 up to solver residuals.
inline double ratio(const HomogeneousPoly& p, const RatioOptions& opt = {})
{
    if (p.is_zero()) throw DomainError("ratio of the zero polynomial");
    const double rn = real_l1_norm(p, opt.real).value;
    const double cn = complex_l1_norm(p, opt.complex).value;
    return cn / rn;
}

/// Finite maxima of c_k^(1/k) above this are flagged; the known window for the
/// limsup constant on l1^2 tops out at sqrt(2).
inline const double kth_root_warning_level = std::numbers::sqrt2 * 1.01;

struct CkRecord {
    int degree = 0;
    double best_ratio = 0.0;
    double kth_root = 0.0;
    std::vector<double> witness_coeffs;
    ComplexPoint2 witness_point;
    int starts = 0;
    std::uint64_t seed = 0;
    double wall_time = 0.0;
    long long evaluations = 0;
    bool warning = false;
};

struct SearchOptions {
    int workers = 1;
    /// Ratio evaluations allowed per start.
    int budget = 2000;
    double simplex_tol = 1e-10;
    /// Initial simplex edge in the tangent chart; wide enough to leave the
    /// ratio == 1 plateau that covers most of coefficient space.
    double initial_step = 0.5;
    RatioOptions ratio;
};

namespace detail {

inline double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

/// Box-Muller on the raw engine output, so draws are identical on every
/// standard library.
inline double standard_normal(std::mt19937_64& gen)
{
    double u1 = uniform01(gen);
    while (u1 == 0.0) u1 = uniform01(gen);
    const double u2 = uniform01(gen);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline double euclidean_norm(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline std::vector<double> unit_sphere_draw(std::mt19937_64& gen, int dim)
{
    std::vector<double> v(static_cast<std::size_t>(dim));
    double n = 0.0;
    while (n == 0.0) {
        for (double& x : v) x = standard_normal(gen);
        n = euclidean_norm(v);
    }
    for (double& x : v) x /= n;
    return v;
}

/// Orthonormal basis of the hyperplane orthogonal to the unit vector x0.
inline std::vector<std::vector<double>> tangent_basis(const std::vector<double>& x0)
{
    const std::size_t n = x0.size();
    std::size_t drop = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(x0[i]) > std::abs(x0[drop])) drop = i;
    }
    std::vector<std::vector<double>> basis;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == drop) continue;
        std::vector<double> v(n, 0.0);
        v[i] = 1.0;
        auto project_out = [&](const std::vector<double>& q) {
            double dot = 0.0;
            for (std::size_t k = 0; k < n; ++k) dot += v[k] * q[k];
            for (std::size_t k = 0; k < n; ++k) v[k] -= dot * q[k];
        };
        project_out(x0);
        for (const auto& q : basis) project_out(q);
        const double len = euclidean_norm(v);
        for (double& x : v) x /= len;
        basis.push_back(std::move(v));
    }
    return basis;
}

struct StartResult {
    std::vector<double> coeffs;
    double ratio = 0.0;
    long long evaluations = 0;
};

inline StartResult polish_start(const std::vector<double>& start, const SearchOptions& opt)
{
    // Nelder-Mead in a gnomonic chart x0 + B u (B spans the tangent space of
    // the unit sphere at x0), which removes the scale direction the ratio is
    // flat along. After each convergence the chart is re-centred at the best
    // point and the simplex re-inflated, until a restart stops paying off or
    // the budget is spent.
    StartResult out;
    out.coeffs = start;
    out.ratio = ratio(HomogeneousPoly(start), opt.ratio);
    out.evaluations = 1;
    const std::size_t n = start.size();
    std::vector<double> v(n);
    while (out.evaluations < opt.budget) {
        const std::vector<double> x0 = out.coeffs;
        const auto basis = tangent_basis(x0);
        auto point = [&](std::span<const double> u) {
            v = x0;
            for (std::size_t b = 0; b < basis.size(); ++b) {
                for (std::size_t k = 0; k < n; ++k) v[k] += u[b] * basis[b][k];
            }
            const double len = euclidean_norm(v);
            for (double& x : v) x /= len;
            return v;
        };
        auto objective = [&](std::span<const double> u) {
            return -ratio(HomogeneousPoly(point(u)), opt.ratio);
        };
        SimplexOptions sopt;
        sopt.initial_step = opt.initial_step;
        sopt.diameter_tol = opt.simplex_tol;
        sopt.max_evaluations = static_cast<int>(opt.budget - out.evaluations);
        const auto r = nelder_mead(objective, std::vector<double>(basis.size(), 0.0), sopt);
        out.evaluations += r.evaluations;
        const double gained = -r.value - out.ratio;
        if (gained > 0.0) {
            out.coeffs = point(r.x);
            out.ratio = -r.value;
        }
        if (gained <= 1e-12 * out.ratio) break;
    }
    return out;
}

} // namespace detail

/// Multi-start maximization of the ratio over k-homogeneous polynomials.
/// Starts are drawn up front from the seeded engine, polished independently,
/// and reduced by (max ratio, then lexicographically smallest coefficients),
/// so the record does not depend on the worker count.
inline CkRecord ck_lower_search(int k, int starts, std::uint64_t seed, const SearchOptions& opt = {})
{
    if (k < 1) throw DomainError("ck_lower_search needs degree >= 1");
    if (starts < 1) throw DomainError("ck_lower_search needs at least one start");
    HomogeneousPoly::check_cap(k);
    const auto t0 = std::chrono::steady_clock::now();

    std::mt19937_64 gen(seed);
    std::vector<std::vector<double>> initial;
    initial.reserve(static_cast<std::size_t>(starts));
    for (int s = 0; s < starts; ++s) initial.push_back(detail::unit_sphere_draw(gen, k + 1));

    std::vector<detail::StartResult> results(initial.size());
    parallel_for(initial.size(), opt.workers,
                 [&](std::size_t i) { results[i] = detail::polish_start(initial[i], opt); });

    std::size_t best = 0;
    long long evaluations = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        evaluations += results[i].evaluations;
        if (i == 0) continue;
        const auto& r = results[i];
        const auto& b = results[best];
        if (r.ratio > b.ratio || (r.ratio == b.ratio && r.coeffs < b.coeffs)) best = i;
    }

    CkRecord rec;
    rec.degree = k;
    rec.witness_coeffs = results[best].coeffs;
    const HomogeneousPoly p(rec.witness_coeffs);
    // re-evaluated from the stored coefficients so the record is self-consistent
    const auto rn = real_l1_norm(p, opt.ratio.real);
    const auto cn = complex_l1_norm(p, opt.ratio.complex);
    rec.best_ratio = cn.value / rn.value;
    rec.kth_root = std::pow(rec.best_ratio, 1.0 / k);
    rec.witness_point = std::get<ComplexPoint2>(cn.witness);
    rec.starts = starts;
    rec.seed = seed;
    rec.evaluations = evaluations;
    rec.warning = rec.kth_root > kth_root_warning_level;
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

struct CEstimate {
    std::vector<CkRecord> rows;
    /// running_max[i] = max of kth_root over degrees 1..i+1. A finite max
    /// under-estimates the limsup constant; it is a lower-bound proxy only.
    std::vector<double> running_max;
};

/// Tabulates lookup(k) for k = 1..max_degree; lookup may serve cached records.
template <class Lookup>
CEstimate c_estimate_with(int max_degree, Lookup&& lookup)
{
    if (max_degree < 1) throw DomainError("c_estimate needs max_degree >= 1");
    CEstimate out;
    double running = 0.0;
    for (int k = 1; k <= max_degree; ++k) {
        CkRecord rec = lookup(k);
        running = std::max(running, rec.kth_root);
        out.rows.push_back(std::move(rec));
        out.running_max.push_back(running);
    }
    return out;
}

/// Runs the degree-k search for k = 1..max_degree with the same starts and seed.
inline CEstimate c_estimate(int max_degree, int starts, std::uint64_t seed, const SearchOptions& opt = {})
{
    return c_estimate_with(max_degree, [&](int k) { return ck_lower_search(k, starts, seed, opt); });
}

} // namespace alab

#endif
