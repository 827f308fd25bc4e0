#ifndef ALAB_SERIES_HPP
#define ALAB_SERIES_HPP

// The power series f = sum_{n>=1} P^(mn), its recentring at a real point, and
// finite-window estimators for the radius of uniform convergence
// R(f, a) = liminf ||Q_j||^(-1/j) and the radius of analyticity
// R_A(f, 0) = inf { ||b|| + R(f, b) }.

#include "alab/error.hpp"
#include "alab/norms.hpp"
#include "alab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace alab {

class PowerSeries {
public:
    PowerSeries(HomogeneousPoly base, int multiplier) : base_(std::move(base)), multiplier_(multiplier)
    {
        if (base_.is_zero()) throw DomainError("power series base must be non-zero");
        if (multiplier_ < 1) throw DomainError("power series multiplier must be positive");
        if (base_.degree() * multiplier_ < 1) throw DomainError("power series needs k * m >= 1");
    }

    const HomogeneousPoly& base() const { return base_; }
    int multiplier() const { return multiplier_; }
    int degree() const { return base_.degree(); }
    /// Degree step between consecutive terms, k * m.
    int step() const { return base_.degree() * multiplier_; }
    /// Largest N with k * m * N within the degree cap.
    int max_terms() const { return degree_cap / step(); }

private:
    HomogeneousPoly base_;
    int multiplier_;
};

/// R(f, 0) = 1 / ||P||^(1/k), from ||P^(mn)|| = ||P||^(mn).
inline double radius_origin(const PowerSeries& s)
{
    const double norm = real_l1_norm(s.base()).value;
    return 1.0 / std::pow(norm, 1.0 / s.degree());
}

struct RecenteredSeries {
    RealPoint2 center;
    /// pieces[j] is Q_j, homogeneous of degree j in the shifted variables,
    /// for j = 0..J (Q_0 is the constant f(center)).
    std::vector<HomogeneousPoly> pieces;
    /// Coefficient sum of the last accumulated contribution to each Q_j.
    std::vector<double> tail_bounds;
    int terms_used = 0;
    /// True when the tail rule fired before the term limit.
    bool converged = false;
};

struct RecenterOptions {
    int max_j = 48;
    /// Term limit N; 0 means as many as the degree cap allows.
    int max_terms = 0;
    double tol = 1e-12;
    /// Consecutive negligible terms required to stop.
    int quiet_terms = 3;
};

/// Q_j = sum_{n=1..N} [degree-j piece of P^(mn)(center + .)], stopping once a
/// term is negligible (coefficient sum <= tol * running sum) in every bucket
/// j <= J for `quiet_terms` consecutive n.
inline RecenteredSeries recenter(const PowerSeries& s, const RealPoint2& center, const RecenterOptions& opt = {})
{
    const double r0 = radius_origin(s);
    if (!(l1_norm(center) < r0)) {
        throw DomainError("recentring point must lie strictly inside the ball of convergence");
    }
    if (opt.max_j < 0) throw DomainError("max_j must be non-negative");
    if (!(opt.tol > 0.0)) throw DomainError("tail tolerance must be positive");
    const int n_max = opt.max_terms > 0 ? opt.max_terms : s.max_terms();
    HomogeneousPoly::check_cap(s.step() * n_max);

    const int J = opt.max_j;
    RecenteredSeries out;
    out.center = center;
    std::vector<std::vector<double>> acc(static_cast<std::size_t>(J) + 1);
    for (int j = 0; j <= J; ++j) acc[j].assign(static_cast<std::size_t>(j) + 1, 0.0);
    out.tail_bounds.assign(static_cast<std::size_t>(J) + 1, 0.0);

    const HomogeneousPoly pm = power(s.base(), s.multiplier());
    HomogeneousPoly term = pm;
    int quiet = 0;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) term = multiply(term, pm);
        const auto shifted = taylor_shift_pieces(term, center, J);
        bool negligible = true;
        for (int j = 0; j <= J; ++j) {
            double contrib = 0.0;
            if (j < static_cast<int>(shifted.size())) {
                const auto& piece = shifted[j];
                for (int i = 0; i <= j; ++i) acc[j][i] += piece[i];
                contrib = piece.coeff_sum();
            }
            double running = 0.0;
            for (double c : acc[j]) running += std::abs(c);
            out.tail_bounds[j] = contrib;
            if (!(contrib <= opt.tol * running)) negligible = false;
        }
        out.terms_used = n;
        quiet = negligible ? quiet + 1 : 0;
        if (quiet >= opt.quiet_terms) {
            out.converged = true;
            break;
        }
    }
    out.pieces.reserve(acc.size());
    for (auto& c : acc) out.pieces.emplace_back(std::move(c));
    return out;
}

struct RadiusSample {
    int j = 0;
    double qnorm = 0.0;
    /// ||Q_j||^(-1/j); +inf for a zero piece.
    double per_j = 0.0;
};

struct RadiusEstimate {
    double value = 0.0;
    int j_lo = 0;
    int j_hi = 0;
    std::vector<RadiusSample> per_j;
    std::string method_note;
};

/// liminf proxy: min of ||Q_j||^(-1/j) over the tail window [ceil(J/2), J].
/// Zero pieces do not constrain a liminf and are skipped.
inline RadiusEstimate radius_at(const RecenteredSeries& r)
{
    const int J = static_cast<int>(r.pieces.size()) - 1;
    if (J < 8) throw DomainError("radius estimate needs J >= 8");
    RadiusEstimate est;
    est.j_lo = (J + 1) / 2;
    est.j_hi = J;
    est.value = std::numeric_limits<double>::infinity();
    bool any = false;
    for (int j = 1; j <= J; ++j) {
        const double q = real_l1_norm(r.pieces[j]).value;
        const double pj = q > 0.0 ? std::pow(q, -1.0 / j) : std::numeric_limits<double>::infinity();
        est.per_j.push_back({j, q, pj});
        if (j >= est.j_lo && q > 0.0) {
            est.value = std::min(est.value, pj);
            any = true;
        }
    }
    if (!any) throw DomainError("every Q_j in the radius window is zero");
    est.method_note = "min of ||Q_j||^(-1/j) over j in [" + std::to_string(est.j_lo) + ", " +
                      std::to_string(est.j_hi) + "], zero pieces skipped";
    return est;
}

struct AnalyticitySample {
    RealPoint2 center;
    double radius = 0.0;
};

struct AnalyticityEstimate {
    double value = 0.0;
    RealPoint2 best_center;
    std::vector<AnalyticitySample> samples;
};

/// D points evenly spaced along the l1 unit sphere starting at (1, 0), plus
/// the axis directions (1, 0) and (0, 1) when D does not already hit them.
inline std::vector<RealPoint2> l1_sphere_directions(int count)
{
    std::vector<RealPoint2> dirs;
    bool has_y = false;
    for (int l = 0; l < count; ++l) {
        const double u = 4.0 * l / count;
        const int q = std::min(static_cast<int>(u), 3);
        const double f = u - q;
        RealPoint2 p;
        switch (q) {
        case 0: p = {1.0 - f, f}; break;
        case 1: p = {-f, 1.0 - f}; break;
        case 2: p = {-(1.0 - f), -f}; break;
        default: p = {f, -(1.0 - f)}; break;
        }
        if (p.x1 == 0.0 && p.x2 == 1.0) has_y = true;
        dirs.push_back(p);
    }
    if (!has_y) dirs.push_back({0.0, 1.0});
    return dirs;
}

/// min over sampled centres b of ||b||_1 + R(f, b). Centres are
/// b = rho * dir with rho = i / (S + 1) * R(f, 0), i = 0..S; b = 0 is sampled
/// once, so the result never exceeds the origin estimate.
inline AnalyticityEstimate analyticity_radius_estimate(const PowerSeries& s, int directions, int steps,
                                                       const RecenterOptions& opt = {})
{
    if (directions < 4) throw DomainError("need at least 4 directions");
    if (steps < 4) throw DomainError("need at least 4 radial steps");
    const double r0 = radius_origin(s);
    AnalyticityEstimate out;
    out.value = std::numeric_limits<double>::infinity();
    auto sample = [&](const RealPoint2& b) {
        const double rb = radius_at(recenter(s, b, opt)).value;
        out.samples.push_back({b, rb});
        const double total = l1_norm(b) + rb;
        if (total < out.value) {
            out.value = total;
            out.best_center = b;
        }
    };
    sample({0.0, 0.0});
    for (const auto& dir : l1_sphere_directions(directions)) {
        for (int i = 1; i <= steps; ++i) {
            const double rho = static_cast<double>(i) / (steps + 1) * r0;
            sample({rho * dir.x1, rho * dir.x2});
        }
    }
    return out;
}

struct ProbeSample {
    double t = 0.0;
    std::complex<double> partial_sum;
    double closed_form = 0.0;
    int terms = 0;
};

/// Partial sums of sum_n t^(kmn) P~^(mn)(point) against 1/(1 - t^(km)) - 1,
/// the value they take when P~^m(point) = 1. `complex_norm` may pass a
/// precomputed ||P~||.
inline std::vector<ProbeSample> divergence_probe(const PowerSeries& s, const ComplexPoint2& point,
                                                 const std::vector<double>& ts,
                                                 std::optional<double> complex_norm = std::nullopt)
{
    const int k = s.degree();
    const int km = s.step();
    const double cn = complex_norm ? *complex_norm : complex_l1_norm(s.base()).value;
    const double limit = 1.0 / std::pow(cn, 1.0 / k);
    if (l1_norm(point) > limit * (1.0 + 1e-9)) {
        throw DomainError("probe point lies outside the complexified ball of convergence");
    }
    const std::complex<double> pval = eval_complex(s.base(), point);
    std::vector<ProbeSample> out;
    for (double t : ts) {
        if (!(t > 0.0 && t < 1.0)) throw DomainError("probe parameter t must lie in (0, 1)");
        const std::complex<double> q = std::pow(std::pow(t, k) * pval, s.multiplier());
        if (std::abs(q) >= 1.0) throw DomainError("probe terms do not decay; point is outside the ball");
        ProbeSample ps;
        ps.t = t;
        ps.closed_form = 1.0 / (1.0 - std::pow(t, km)) - 1.0;
        std::complex<double> term = q;
        std::complex<double> sum = 0.0;
        int n = 0;
        while (true) {
            sum += term;
            ++n;
            if (std::abs(term) == 0.0 || std::abs(term) < 1e-15 * std::abs(sum)) break;
            if (n > 100'000'000) throw DomainError("probe sum failed to converge");
            term *= q;
        }
        ps.partial_sum = sum;
        ps.terms = n;
        out.push_back(ps);
    }
    return out;
}

} // namespace alab

#endif
