#ifndef ALAB_POLY_HPP
#define ALAB_POLY_HPP

// Bivariate homogeneous polynomials with dense real coefficients.
//
// Monomial convention (used by every module and file format):
//     coeffs[i]  <->  x^(d-i) * y^i,   i = 0..d
// so {1, 0, -1} is x^2 - y^2 and {0, 1, 0} is xy.

#include "alab/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace alab {

/// Largest degree any operation may produce. binom(512, 256) ~ 5e152 still
/// fits a double with room for the coefficient factors.
inline constexpr int degree_cap = 512;

struct RealPoint2 {
    double x1 = 0.0;
    double x2 = 0.0;

    bool operator==(const RealPoint2&) const = default;
};

struct ComplexPoint2 {
    std::complex<double> z;
    std::complex<double> w;

    bool operator==(const ComplexPoint2&) const = default;
};

inline double l1_norm(const RealPoint2& p) { return std::abs(p.x1) + std::abs(p.x2); }
inline double l1_norm(const ComplexPoint2& p) { return std::abs(p.z) + std::abs(p.w); }

class HomogeneousPoly {
public:
    /// The zero constant.
    HomogeneousPoly() : coeffs_{0.0} {}

    /// Degree is coeffs.size() - 1.
    explicit HomogeneousPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty()) {
            throw DomainError("homogeneous polynomial needs at least one coefficient");
        }
        if (degree() > degree_cap) {
            throw DegreeCapError("degree " + std::to_string(degree()) + " exceeds cap " +
                                 std::to_string(degree_cap));
        }
        for (double c : coeffs_) {
            if (!std::isfinite(c)) {
                throw DomainError("non-finite polynomial coefficient");
            }
        }
    }

    /// Checked construction from a declared degree (file formats carry both).
    static HomogeneousPoly from_parts(int degree, std::vector<double> coeffs)
    {
        if (degree < 0 || coeffs.size() != static_cast<std::size_t>(degree) + 1) {
            throw DomainError("degree " + std::to_string(degree) + " needs " +
                              std::to_string(degree + 1) + " coefficients, got " +
                              std::to_string(coeffs.size()));
        }
        return HomogeneousPoly(std::move(coeffs));
    }

    static HomogeneousPoly zero(int degree)
    {
        check_cap(degree);
        return HomogeneousPoly(std::vector<double>(static_cast<std::size_t>(degree) + 1, 0.0));
    }

    /// c * x^(degree - y_power) * y^y_power
    static HomogeneousPoly monomial(int degree, int y_power, double c = 1.0)
    {
        auto p = zero(degree);
        p.coeffs_.at(static_cast<std::size_t>(y_power)) = c;
        return p;
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const double> coeffs() const { return coeffs_; }
    double operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
    }

    /// Sum of |c_i|; cheap magnitude proxy used for tail tests.
    double coeff_sum() const
    {
        double s = 0.0;
        for (double c : coeffs_) s += std::abs(c);
        return s;
    }

    /// P(y, x): the coordinate-swap isometry of l1^2 acting on P.
    HomogeneousPoly reversed() const
    {
        std::vector<double> r(coeffs_.rbegin(), coeffs_.rend());
        return HomogeneousPoly(std::move(r));
    }

    HomogeneousPoly scaled(double lambda) const
    {
        std::vector<double> r = coeffs_;
        for (double& c : r) c *= lambda;
        return HomogeneousPoly(std::move(r));
    }

    bool operator==(const HomogeneousPoly&) const = default;

    static void check_cap(int degree)
    {
        if (degree > degree_cap) {
            throw DegreeCapError("degree " + std::to_string(degree) + " exceeds cap " +
                                 std::to_string(degree_cap));
        }
        if (degree < 0) {
            throw DomainError("negative degree");
        }
    }

private:
    std::vector<double> coeffs_;
};

namespace detail {

template <class T>
T eval_nested(const HomogeneousPoly& h, T x, T y)
{
    // Horner in x; y^i accumulated alongside, one pass.
    const int d = h.degree();
    T acc = T(h[0]);
    T ypow = T(1.0);
    for (int i = 1; i <= d; ++i) {
        ypow *= y;
        acc = acc * x + T(h[i]) * ypow;
    }
    return acc;
}

/// Pascal triangle up to degree_cap in doubles; rows past ~56 are rounded,
/// which is within the relative accuracy every caller needs.
inline const std::vector<std::vector<double>>& binomial_table()
{
    static const std::vector<std::vector<double>> table = [] {
        std::vector<std::vector<double>> t(degree_cap + 1);
        for (int n = 0; n <= degree_cap; ++n) {
            t[n].assign(static_cast<std::size_t>(n) + 1, 1.0);
            for (int r = 1; r < n; ++r) t[n][r] = t[n - 1][r - 1] + t[n - 1][r];
        }
        return t;
    }();
    return table;
}

/// Two-pass summation: add terms in ascending magnitude.
inline double sum_ascending(std::vector<double>& terms)
{
    std::sort(terms.begin(), terms.end(),
              [](double a, double b) { return std::abs(a) < std::abs(b); });
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
}

} // namespace detail

inline double binomial(int n, int r)
{
    if (r < 0 || r > n || n < 0) return 0.0;
    HomogeneousPoly::check_cap(n);
    return detail::binomial_table()[n][r];
}

inline double eval_real(const HomogeneousPoly& h, const RealPoint2& p)
{
    const double v = detail::eval_nested<double>(h, p.x1, p.x2);
    if (!std::isfinite(v)) throw OverflowError("real evaluation overflowed");
    return v;
}

/// The extension to l1^2(C): same coefficients over complex scalars.
inline std::complex<double> eval_complex(const HomogeneousPoly& h, const ComplexPoint2& p)
{
    const auto v = detail::eval_nested<std::complex<double>>(h, p.z, p.w);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw OverflowError("complex evaluation overflowed");
    }
    return v;
}

inline HomogeneousPoly multiply(const HomogeneousPoly& a, const HomogeneousPoly& b)
{
    const int d = a.degree() + b.degree();
    HomogeneousPoly::check_cap(d);
    std::vector<double> out(static_cast<std::size_t>(d) + 1, 0.0);
    for (int i = 0; i <= a.degree(); ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        for (int j = 0; j <= b.degree(); ++j) out[i + j] += ai * b[j];
    }
    for (double c : out) {
        if (!std::isfinite(c)) throw OverflowError("coefficient overflow in multiply");
    }
    return HomogeneousPoly(std::move(out));
}

/// h^m by repeated squaring; power(h, 1) returns h unchanged.
inline HomogeneousPoly power(const HomogeneousPoly& h, int m)
{
    if (m < 1) throw DomainError("power exponent must be positive");
    HomogeneousPoly::check_cap(h.degree() * m);
    HomogeneousPoly result = h;
    HomogeneousPoly base = h;
    bool first = true;
    int e = m;
    while (e > 0) {
        if (e & 1) {
            result = first ? base : multiply(result, base);
            first = false;
        }
        e >>= 1;
        if (e > 0) base = multiply(base, base);
    }
    return result;
}

/// Degree-j pieces of H(a + (u, v)) for j = 0..min(max_j, d).
///
/// Each monomial x^(d-i) y^i is expanded binomially around a; the term
/// u^r v^s lands in piece j = r + s at index s. Every output coefficient is
/// the ascending-magnitude sum of its contributions.
inline std::vector<HomogeneousPoly> taylor_shift_pieces(const HomogeneousPoly& h,
                                                        const RealPoint2& a, int max_j)
{
    const int d = h.degree();
    const int top = std::min(max_j, d);
    const auto& binom = detail::binomial_table();

    std::vector<double> pow1(static_cast<std::size_t>(d) + 1, 1.0);
    std::vector<double> pow2(static_cast<std::size_t>(d) + 1, 1.0);
    for (int e = 1; e <= d; ++e) {
        pow1[e] = pow1[e - 1] * a.x1;
        pow2[e] = pow2[e - 1] * a.x2;
    }

    std::vector<HomogeneousPoly> pieces;
    pieces.reserve(static_cast<std::size_t>(std::max(top, 0)) + 1);
    std::vector<double> terms;
    for (int j = 0; j <= top; ++j) {
        std::vector<double> out(static_cast<std::size_t>(j) + 1, 0.0);
        for (int s = 0; s <= j; ++s) {
            const int r = j - s;
            terms.clear();
            // contributions come from monomials with i >= s and d - i >= r
            for (int i = s; i <= d - r; ++i) {
                const double c = h[i];
                if (c == 0.0) continue;
                const double f1 = binom[d - i][r] * pow1[d - i - r];
                const double f2 = binom[i][s] * pow2[i - s];
                if (f1 == 0.0 || f2 == 0.0) continue;
                terms.push_back((c * f1) * f2);
            }
            double v = 0.0;
            if (terms.size() == 1) {
                v = terms.front();
            } else if (!terms.empty()) {
                v = detail::sum_ascending(terms);
            }
            if (!std::isfinite(v)) throw OverflowError("coefficient overflow in taylor_shift");
            out[s] = v;
        }
        pieces.emplace_back(std::move(out));
    }
    return pieces;
}

/// All pieces T_0..T_d with H(a + p) = sum_j T_j(p).
inline std::vector<HomogeneousPoly> taylor_shift(const HomogeneousPoly& h, const RealPoint2& a)
{
    return taylor_shift_pieces(h, a, h.degree());
}

} // namespace alab

#endif
