#ifndef ALAB_TESTS_ORACLES_HPP
#define ALAB_TESTS_ORACLES_HPP

// Independent reference computations for the test suites. Nothing here calls
// into the library's evaluation, norm or shift code paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// sum c_i x^(d-i) y^i term by term with pow().
template <class T>
T naive_eval(const std::vector<double>& c, T x, T y)
{
    const int d = static_cast<int>(c.size()) - 1;
    T s = T(0.0);
    for (int i = 0; i <= d; ++i) s += c[i] * std::pow(x, d - i) * std::pow(y, i);
    return s;
}

/// sum |c_i| |x|^(d-i) |y|^i: the scale against which evaluation error is relative.
inline double abs_scale(const std::vector<double>& c, double x, double y)
{
    const int d = static_cast<int>(c.size()) - 1;
    double s = 0.0;
    for (int i = 0; i <= d; ++i) s += std::abs(c[i]) * std::pow(std::abs(x), d - i) * std::pow(std::abs(y), i);
    return s;
}

/// max |H| over `points` evenly spaced parameters on the whole l1 sphere
/// (both edges (1-t, t) and (1-t, -t), which cover it up to sign).
inline double real_grid_norm(const std::vector<double>& c, long points = 1'000'000)
{
    const int d = static_cast<int>(c.size()) - 1;
    const long per_edge = points / 2;
    std::vector<double> px(c.size()), py(c.size());
    double best = 0.0;
    for (double s : {1.0, -1.0}) {
        for (long l = 0; l <= per_edge; ++l) {
            const double t = static_cast<double>(l) / per_edge;
            px[0] = py[0] = 1.0;
            for (int e = 1; e <= d; ++e) {
                px[e] = px[e - 1] * (1.0 - t);
                py[e] = py[e - 1] * (s * t);
            }
            double v = 0.0;
            for (int i = 0; i <= d; ++i) v += c[i] * px[d - i] * py[i];
            best = std::max(best, std::abs(v));
        }
    }
    return best;
}

/// |H(t, (1-t) e^{i psi})| maximized on an n x n grid over t in [0, 1],
/// psi in [0, 2 pi). The best `zoom_cells` grid local maxima are then refined
/// by zoomed sub-grids (each round: 21 x 21 around the incumbent, window
/// shrunk 10x), so the result is not limited by the grid spacing.
inline double complex_grid_norm(const std::vector<double>& c, int n = 2048, int zoom_cells = 8, int rounds = 6)
{
    auto f = [&](double t, double psi) {
        t = std::clamp(t, 0.0, 1.0);
        return std::abs(naive_eval<cplx>(c, cplx(t, 0.0), (1.0 - t) * std::polar(1.0, psi)));
    };
    const double two_pi = 2.0 * std::numbers::pi;
    const int d = static_cast<int>(c.size()) - 1;
    // row-wise Horner on e^{i psi}: the row polynomial has real coefficients
    // c_i t^(d-i) (1-t)^i. Kept separate from the library's evaluator.
    std::vector<double> grid(static_cast<std::size_t>(n) * n);
    std::vector<cplx> omega(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b) omega[b] = std::polar(1.0, two_pi * b / n);
    std::vector<double> row(c.size());
    for (int a = 0; a < n; ++a) {
        const double t = static_cast<double>(a) / (n - 1);
        for (int i = 0; i <= d; ++i) row[i] = c[i] * std::pow(t, d - i) * std::pow(1.0 - t, i);
        for (int b = 0; b < n; ++b) {
            cplx acc(0.0, 0.0);
            for (int i = d; i >= 0; --i) acc = acc * omega[b] + row[i];
            grid[static_cast<std::size_t>(a) * n + b] = std::abs(acc);
        }
    }
    struct Cell {
        double v, t, psi;
    };
    std::vector<Cell> peaks;
    double best = 0.0;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const double v = grid[static_cast<std::size_t>(a) * n + b];
            best = std::max(best, v);
            bool peak = true;
            for (int da = -1; da <= 1 && peak; ++da) {
                const int aa = a + da;
                if (aa < 0 || aa >= n) continue;
                for (int db = -1; db <= 1; ++db) {
                    const int bb = (b + db + n) % n;
                    if ((da != 0 || db != 0) && grid[static_cast<std::size_t>(aa) * n + bb] > v) {
                        peak = false;
                        break;
                    }
                }
            }
            if (peak) peaks.push_back({v, static_cast<double>(a) / (n - 1), two_pi * b / n});
        }
    }
    const int keep = std::min<int>(zoom_cells, static_cast<int>(peaks.size()));
    std::partial_sort(peaks.begin(), peaks.begin() + keep, peaks.end(),
                      [](const Cell& x, const Cell& y) { return x.v > y.v; });
    for (int z = 0; z < keep; ++z) {
        Cell cur = peaks[z];
        double ht = 1.0 / (n - 1), hp = two_pi / n;
        for (int r = 0; r < rounds; ++r) {
            Cell inc = cur;
            for (int i = -10; i <= 10; ++i) {
                for (int j = -10; j <= 10; ++j) {
                    const double t = std::clamp(cur.t + ht * i / 10.0, 0.0, 1.0);
                    const double psi = cur.psi + hp * j / 10.0;
                    const double v = f(t, psi);
                    if (v > inc.v) inc = {v, t, psi};
                }
            }
            cur = inc;
            ht /= 10.0;
            hp /= 10.0;
        }
        best = std::max(best, cur.v);
    }
    return best;
}

/// Coefficients of u -> H(a1 + u y1, a2 + u y2) in powers of u (index = power),
/// by expanding each monomial with explicit binomial sums.
inline std::vector<double> line_restriction(const std::vector<double>& c, double a1, double a2, double y1, double y2)
{
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<double> out(c.size(), 0.0);
    auto binom = [](int n, int r) {
        double b = 1.0;
        for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
        return b;
    };
    for (int i = 0; i <= d; ++i) {
        const int px = d - i, py = i;
        for (int r = 0; r <= px; ++r) {
            for (int s = 0; s <= py; ++s) {
                out[r + s] += c[i] * binom(px, r) * std::pow(a1, px - r) * std::pow(y1, r) * binom(py, s) *
                              std::pow(a2, py - s) * std::pow(y2, s);
            }
        }
    }
    return out;
}

/// All complex roots of sum p[i] u^i (Durand-Kerner).
inline std::vector<cplx> poly_roots(std::vector<cplx> p)
{
    while (p.size() > 1 && std::abs(p.back()) == 0.0) p.pop_back();
    const int n = static_cast<int>(p.size()) - 1;
    std::vector<cplx> z(static_cast<std::size_t>(std::max(n, 0)));
    if (n < 1) return z;
    const cplx lead = p.back();
    for (auto& v : p) v /= lead;
    for (int i = 0; i < n; ++i) z[i] = std::pow(cplx(0.4, 0.9), i);
    auto eval = [&](cplx x) {
        cplx acc = 0.0;
        for (int i = n; i >= 0; --i) acc = acc * x + p[i];
        return acc;
    };
    for (int it = 0; it < 2000; ++it) {
        double delta = 0.0;
        for (int i = 0; i < n; ++i) {
            cplx den = 1.0;
            for (int j = 0; j < n; ++j) {
                if (j != i) den *= z[i] - z[j];
            }
            const cplx step = eval(z[i]) / den;
            z[i] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-15) break;
    }
    return z;
}

/// Radius of uniform convergence of f = P^m / (1 - P^m) at the real centre a,
/// as the smallest |u| with P(a + u y)^m = 1 over real unit directions y
/// (sampled along the l1 sphere). Complex singularities on real lines through
/// a are what the real Taylor coefficients see.
inline double singular_radius(const std::vector<double>& c, int m, double a1, double a2, int directions = 4000)
{
    double best = std::numeric_limits<double>::infinity();
    for (int l = 0; l < directions; ++l) {
        // half the sphere suffices: y and -y give the same set of |u|
        const double u = 2.0 * l / directions;
        const double y1 = u <= 1.0 ? 1.0 - u : -(u - 1.0);
        const double y2 = u <= 1.0 ? u : 2.0 - u;
        const auto line = line_restriction(c, a1, a2, y1, y2);
        for (int r = 0; r < m; ++r) {
            std::vector<cplx> p(line.begin(), line.end());
            p[0] -= std::polar(1.0, 2.0 * std::numbers::pi * r / m);
            for (const auto& root : poly_roots(p)) best = std::min(best, std::abs(root));
        }
    }
    return best;
}

inline std::vector<double> random_coeffs(std::mt19937_64& gen, int degree)
{
    std::normal_distribution<double> nd;
    std::vector<double> c(static_cast<std::size_t>(degree) + 1);
    double s = 0.0;
    for (auto& x : c) {
        x = nd(gen);
        s += x * x;
    }
    for (auto& x : c) x /= std::sqrt(s);
    return c;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(gen);
}

} // namespace oracle

#endif
