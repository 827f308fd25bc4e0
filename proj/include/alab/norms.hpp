#ifndef ALAB_NORMS_HPP
#define ALAB_NORMS_HPP

// Sup-norms of homogeneous polynomials over the unit balls of real l1^2 and
// complex l1^2. For d >= 1 the sup over the ball is attained on the sphere.

#include "alab/poly.hpp"
#include "alab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <variant>
#include <vector>

namespace alab {

enum class NormMethod { edge_exact, grid_polish };

inline const char* to_string(NormMethod m)
{
    return m == NormMethod::edge_exact ? "edge-exact" : "grid-polish";
}

struct NormResult {
    double value = 0.0;
    std::variant<RealPoint2, ComplexPoint2> witness;
    NormMethod method = NormMethod::edge_exact;
    /// Estimated absolute accuracy of value.
    double residual = 0.0;

    bool operator==(const NormResult&) const = default;
};

struct RealNormOptions {
    /// Scan cells per unit t, per degree (bracketing resolution 1/(8d)).
    int scan_per_degree = 8;
    double bisect_tol = 1e-13;
};

struct ComplexNormOptions {
    int grid_t = 256;
    int grid_psi = 256;
    int polish_cells = 16;
    double step_tol = 1e-10;
    int polish_evaluations = 400;
};

/// d/dx of a homogeneous polynomial; degree drops by one (zero constant for d = 0).
inline HomogeneousPoly partial_x(const HomogeneousPoly& h)
{
    const int d = h.degree();
    if (d == 0) return HomogeneousPoly();
    std::vector<double> c(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) c[i] = (d - i) * h[i];
    return HomogeneousPoly(std::move(c));
}

inline HomogeneousPoly partial_y(const HomogeneousPoly& h)
{
    const int d = h.degree();
    if (d == 0) return HomogeneousPoly();
    std::vector<double> c(static_cast<std::size_t>(d));
    for (int i = 1; i <= d; ++i) c[i - 1] = i * h[i];
    return HomogeneousPoly(std::move(c));
}

namespace detail {

// Restriction of H to the sphere edge t -> (1 - t, s t), t in [0, 1], with
// its first two derivatives in t.
struct EdgeRestriction {
    HomogeneousPoly h, hx, hy, hxx, hxy, hyy;
    double s;

    EdgeRestriction(const HomogeneousPoly& poly, double sign)
        : h(poly), hx(partial_x(poly)), hy(partial_y(poly)), hxx(partial_x(hx)),
          hxy(partial_y(hx)), hyy(partial_y(hy)), s(sign)
    {
    }

    RealPoint2 point(double t) const { return {1.0 - t, s * t}; }
    double g(double t) const { return eval_real(h, point(t)); }
    double dg(double t) const
    {
        const auto p = point(t);
        return -eval_real(hx, p) + s * eval_real(hy, p);
    }
    double d2g(double t) const
    {
        const auto p = point(t);
        return eval_real(hxx, p) - 2.0 * s * eval_real(hxy, p) + eval_real(hyy, p);
    }
};

// |H(t, (1-t) e^{i psi})|, computed as a polynomial in e^{i psi} with real
// row coefficients c_i t^(d-i) (1-t)^i.
class PatchEvaluator {
public:
    explicit PatchEvaluator(const HomogeneousPoly& h) : h_(h), row_(h.coeffs().size()) {}

    void set_row(double t)
    {
        const int d = h_.degree();
        const double u = 1.0 - t;
        // t^(d-i) (1-t)^i, built from both ends to avoid pow()
        std::vector<double>& r = row_;
        double tp = 1.0;
        for (int i = d; i >= 0; --i) {
            r[i] = tp;
            tp *= t;
        }
        double up = 1.0;
        for (int i = 0; i <= d; ++i) {
            r[i] *= up * h_[i];
            up *= u;
        }
    }

    double abs_at(std::complex<double> omega) const
    {
        const int d = h_.degree();
        std::complex<double> acc(row_[d], 0.0);
        for (int i = d - 1; i >= 0; --i) acc = acc * omega + row_[i];
        return std::abs(acc);
    }

    double abs_at(double t, double psi)
    {
        set_row(t);
        return abs_at(std::polar(1.0, psi));
    }

private:
    const HomogeneousPoly& h_;
    std::vector<double> row_;
};

inline double clamp01(double t) { return std::clamp(t, 0.0, 1.0); }

} // namespace detail

/// sup |H| over {|x| + |y| <= 1}, from the critical points of H restricted to
/// the sphere edges. H(-p) = +-H(p), so the edges (1-t, t) and (1-t, -t)
/// cover the sphere.
inline NormResult real_l1_norm(const HomogeneousPoly& h, const RealNormOptions& opt = {})
{
    const int d = h.degree();
    if (d == 0 || h.is_zero()) {
        return {std::abs(h[0]) * (d == 0 ? 1.0 : 0.0), RealPoint2{1.0, 0.0},
                NormMethod::edge_exact, 0.0};
    }

    double best = -1.0;
    RealPoint2 best_pt{1.0, 0.0};
    const int cells = opt.scan_per_degree * d;
    std::vector<double> grid_t(static_cast<std::size_t>(cells) + 1);
    std::vector<double> grid_dg(grid_t.size());
    std::vector<double> cand;

    for (double sign : {1.0, -1.0}) {
        const detail::EdgeRestriction edge(h, sign);
        cand.clear();
        for (int l = 0; l <= cells; ++l) {
            grid_t[l] = static_cast<double>(l) / cells;
            grid_dg[l] = edge.dg(grid_t[l]);
            cand.push_back(grid_t[l]);
        }
        for (int l = 0; l < cells; ++l) {
            const double fa = grid_dg[l];
            const double fb = grid_dg[l + 1];
            if (!(fa * fb < 0.0)) continue;
            double lo = grid_t[l], hi = grid_t[l + 1];
            double flo = fa;
            while (hi - lo > opt.bisect_tol) {
                const double mid = 0.5 * (lo + hi);
                const double fm = edge.dg(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            double root = 0.5 * (lo + hi);
            // one Newton polish, kept only if it stays bracketed and helps
            const double curv = edge.d2g(root);
            if (curv != 0.0) {
                const double f0 = edge.dg(root);
                const double nt = root - f0 / curv;
                if (nt >= grid_t[l] && nt <= grid_t[l + 1] && std::abs(edge.dg(nt)) <= std::abs(f0)) {
                    root = nt;
                }
            }
            cand.push_back(root);
        }
        std::sort(cand.begin(), cand.end());
        for (double t : cand) {
            const double v = std::abs(edge.g(t));
            if (v > best) {
                best = v;
                best_pt = edge.point(t);
            }
        }
    }
    const double residual =
        4.0 * std::numeric_limits<double>::epsilon() * (d + 1) * h.coeff_sum();
    return {best, best_pt, NormMethod::edge_exact, residual};
}

/// sup |H~| over {|z| + |w| <= 1} in C^2. By phase invariance z = t >= 0 and
/// w = (1 - t) e^{i psi}; a coarse (t, psi) grid is polished locally from its
/// best local maxima.
inline NormResult complex_l1_norm(const HomogeneousPoly& h, const ComplexNormOptions& opt = {})
{
    const int d = h.degree();
    if (d == 0 || h.is_zero()) {
        return {std::abs(h[0]) * (d == 0 ? 1.0 : 0.0), ComplexPoint2{1.0, 0.0},
                NormMethod::grid_polish, 0.0};
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const int nt = opt.grid_t;
    const int np = opt.grid_psi;
    const int half = np / 2;
    detail::PatchEvaluator patch(h);

    // Real coefficients give |H(t, -psi)| = |H(t, psi)|: only psi in [0, pi]
    // is evaluated, the rest is mirrored.
    std::vector<std::complex<double>> omegas(static_cast<std::size_t>(half) + 1);
    for (int b = 0; b <= half; ++b) omegas[b] = std::polar(1.0, two_pi * b / np);
    std::vector<double> vals(static_cast<std::size_t>(nt) * (half + 1));
    auto at = [&](int a, int b) -> double& { return vals[static_cast<std::size_t>(a) * (half + 1) + b]; };
    for (int a = 0; a < nt; ++a) {
        patch.set_row(static_cast<double>(a) / (nt - 1));
        for (int b = 0; b <= half; ++b) at(a, b) = patch.abs_at(omegas[b]);
    }
    auto value = [&](int a, int b) {
        b = ((b % np) + np) % np;
        if (b > half) b = np - b;
        return at(a, b);
    };

    struct Cell {
        double v;
        int a, b;
    };
    std::vector<Cell> peaks;
    Cell grid_best{-1.0, 0, 0};
    for (int a = 0; a < nt; ++a) {
        for (int b = 0; b <= half; ++b) {
            const double v = at(a, b);
            if (v > grid_best.v) grid_best = {v, a, b};
            bool peak = true;
            for (int da = -1; da <= 1 && peak; ++da) {
                const int aa = a + da;
                if (aa < 0 || aa >= nt) continue;
                for (int db = -1; db <= 1; ++db) {
                    if ((da != 0 || db != 0) && value(aa, b + db) > v) {
                        peak = false;
                        break;
                    }
                }
            }
            if (peak) peaks.push_back({v, a, b});
        }
    }
    std::stable_sort(peaks.begin(), peaks.end(), [](const Cell& x, const Cell& y) { return x.v > y.v; });
    if (peaks.size() > static_cast<std::size_t>(opt.polish_cells)) peaks.resize(opt.polish_cells);

    // Polish in grid units so one initial step is one cell in both directions.
    const double t_unit = 1.0 / (nt - 1);
    const double psi_unit = two_pi / np;
    auto to_params = [&](std::span<const double> u, double& t, double& psi) {
        t = detail::clamp01(u[0] * t_unit);
        psi = std::fmod(u[1] * psi_unit, two_pi);
        if (psi < 0.0) psi += two_pi;
        if (psi > std::numbers::pi) psi = two_pi - psi;
    };
    auto objective = [&](std::span<const double> u) {
        double t, psi;
        to_params(u, t, psi);
        return -patch.abs_at(t, psi);
    };
    SimplexOptions sopt;
    sopt.initial_step = 1.0;
    sopt.diameter_tol = opt.step_tol / t_unit;
    sopt.max_evaluations = opt.polish_evaluations;

    double best = grid_best.v;
    double best_t = grid_best.a * t_unit;
    double best_psi = grid_best.b * psi_unit;
    double improvement = 0.0;
    for (const Cell& c : peaks) {
        auto r = nelder_mead(objective, {static_cast<double>(c.a), static_cast<double>(c.b)}, sopt);
        double t, psi;
        to_params(r.x, t, psi);
        const double v = patch.abs_at(t, psi);
        improvement = std::max(improvement, v - c.v);
        if (v > best || (v == best && (t < best_t || (t == best_t && psi < best_psi)))) {
            best = v;
            best_t = t;
            best_psi = psi;
        }
    }
    const double residual =
        improvement + 4.0 * std::numeric_limits<double>::epsilon() * (d + 1) * h.coeff_sum();
    return {best, ComplexPoint2{best_t, (1.0 - best_t) * std::polar(1.0, best_psi)},
            NormMethod::grid_polish, residual};
}

} // namespace alab

#endif
