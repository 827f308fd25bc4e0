#include "oracles.hpp"

#include <alab/poly.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

using namespace alab;
using Catch::Approx;
using cplx = std::complex<double>;

namespace {

std::vector<double> to_vec(const HomogeneousPoly& h) { return {h.coeffs().begin(), h.coeffs().end()}; }

HomogeneousPoly random_poly(std::mt19937_64& gen, int d) { return HomogeneousPoly(oracle::random_coeffs(gen, d)); }

} // namespace

TEST_CASE("evaluation on small examples")
{
    const HomogeneousPoly x2my2({1.0, 0.0, -1.0});
    CHECK(eval_real(x2my2, {0.5, 0.5}) == 0.0);
    CHECK(eval_real(x2my2, {1.0, 0.0}) == 1.0);
    CHECK(eval_real(HomogeneousPoly({0.0, 1.0, 0.0}), {0.25, 0.75}) == Approx(0.1875));

    const cplx v = eval_complex(x2my2, {cplx(0.5, 0.5), cplx(0.5, -0.5)});
    CHECK(std::abs(v - cplx(0.0, 1.0)) < 1e-15);

    // constants
    CHECK(eval_real(HomogeneousPoly({3.5}), {0.2, -0.7}) == 3.5);
    CHECK(eval_complex(HomogeneousPoly({-2.0}), {cplx(0, 1), cplx(1, 1)}) == cplx(-2.0, 0.0));
}

TEST_CASE("evaluation agrees with term-by-term summation")
{
    std::mt19937_64 gen(11);
    for (int d : {1, 2, 5, 9, 20, 40}) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto c = oracle::random_coeffs(gen, d);
            const HomogeneousPoly h(c);
            const double x = oracle::uniform(gen, -1.5, 1.5), y = oracle::uniform(gen, -1.5, 1.5);
            const double scale = oracle::abs_scale(c, x, y);
            CHECK(std::abs(eval_real(h, {x, y}) - oracle::naive_eval<double>(c, x, y)) <= 1e-13 * (1 + scale));
            const cplx z(x, oracle::uniform(gen, -1, 1)), w(y, oracle::uniform(gen, -1, 1));
            const double cscale = oracle::abs_scale(c, std::abs(z), std::abs(w));
            CHECK(std::abs(eval_complex(h, {z, w}) - oracle::naive_eval<cplx>(c, z, w)) <= 1e-13 * (1 + cscale));
        }
    }
}

TEST_CASE("multiply and power examples")
{
    const HomogeneousPoly xpy({1.0, 1.0});
    CHECK(to_vec(multiply(xpy, xpy)) == std::vector<double>{1.0, 2.0, 1.0});
    CHECK(to_vec(power(xpy, 3)) == std::vector<double>{1.0, 3.0, 3.0, 1.0});
    const HomogeneousPoly xy({0.0, 1.0, 0.0});
    CHECK(to_vec(power(xy, 2)) == std::vector<double>{0.0, 0.0, 1.0, 0.0, 0.0});

    std::mt19937_64 gen(3);
    const auto h = random_poly(gen, 7);
    CHECK(power(h, 1) == h);
    const auto hz = multiply(h, HomogeneousPoly::zero(3));
    CHECK(hz.degree() == 10);
    CHECK(hz.is_zero());
}

TEST_CASE("multiply is commutative and associative to rounding")
{
    std::mt19937_64 gen(5);
    for (int rep = 0; rep < 30; ++rep) {
        const int da = static_cast<int>(gen() % 64) + 1;
        const int db = static_cast<int>(gen() % 64) + 1;
        const int dc = static_cast<int>(gen() % 64) + 1;
        const auto a = random_poly(gen, da), b = random_poly(gen, db), c = random_poly(gen, dc);
        const auto ab = multiply(a, b), ba = multiply(b, a);
        REQUIRE(ab.degree() == da + db);
        for (int i = 0; i <= ab.degree(); ++i) CHECK(std::abs(ab[i] - ba[i]) <= 1e-14 * (1 + std::abs(ab[i])) * 4);

        const auto l = multiply(multiply(a, b), c), r = multiply(a, multiply(b, c));
        // error relative to the coefficient sum, which bounds every entry of |a| |b| |c|
        const double scale = a.coeff_sum() * b.coeff_sum() * c.coeff_sum();
        for (int i = 0; i <= l.degree(); ++i) CHECK(std::abs(l[i] - r[i]) <= 1e-14 * scale);
    }
}

TEST_CASE("power agrees with repeated multiplication")
{
    std::mt19937_64 gen(8);
    for (int m : {2, 3, 5, 8}) {
        const auto h = random_poly(gen, 6);
        HomogeneousPoly naive = h;
        for (int i = 1; i < m; ++i) naive = multiply(naive, h);
        const auto p = power(h, m);
        const double scale = std::pow(h.coeff_sum(), m);
        for (int i = 0; i <= p.degree(); ++i) CHECK(std::abs(p[i] - naive[i]) <= 1e-13 * scale);
    }
}

TEST_CASE("taylor shift examples")
{
    // x^2 at (1, 0): 1 + 2u + u^2
    const auto s = taylor_shift(HomogeneousPoly({1.0, 0.0, 0.0}), {1.0, 0.0});
    REQUIRE(s.size() == 3);
    CHECK(to_vec(s[0]) == std::vector<double>{1.0});
    CHECK(to_vec(s[1]) == std::vector<double>{2.0, 0.0});
    CHECK(to_vec(s[2]) == std::vector<double>{1.0, 0.0, 0.0});

    // xy at (a1, a2): a1 a2 + (a2 u + a1 v) + uv
    const auto t = taylor_shift(HomogeneousPoly({0.0, 1.0, 0.0}), {0.3, -0.7});
    CHECK(t[0][0] == Approx(-0.21));
    CHECK(t[1][0] == Approx(-0.7));
    CHECK(t[1][1] == Approx(0.3));
    CHECK(to_vec(t[2]) == std::vector<double>{0.0, 1.0, 0.0});

    // truncation keeps the first pieces exactly
    std::mt19937_64 gen(2);
    const auto h = random_poly(gen, 10);
    const auto full = taylor_shift(h, {0.4, 0.2});
    const auto part = taylor_shift_pieces(h, {0.4, 0.2}, 4);
    REQUIRE(part.size() == 5);
    for (int j = 0; j <= 4; ++j) CHECK(part[j] == full[j]);
}

TEST_CASE("taylor shift resums to the shifted value")
{
    std::mt19937_64 gen(13);
    for (int rep = 0; rep < 200; ++rep) {
        const int d = static_cast<int>(gen() % 32) + 1;
        const auto c = oracle::random_coeffs(gen, d);
        const HomogeneousPoly h(c);
        // ||a||_1 <= 2
        const double a1 = oracle::uniform(gen, -1.0, 1.0), a2 = oracle::uniform(gen, -1.0, 1.0);
        const double p1 = oracle::uniform(gen, -1.0, 1.0), p2 = oracle::uniform(gen, -1.0, 1.0);
        const auto pieces = taylor_shift(h, {a1, a2});
        double sum = 0.0;
        for (const auto& q : pieces) sum += oracle::naive_eval<double>(to_vec(q), p1, p2);
        const double expect = oracle::naive_eval<double>(c, a1 + p1, a2 + p2);
        CHECK(std::abs(sum - expect) <= 1e-10 * (1 + std::abs(expect)));
    }
}

TEST_CASE("homogeneity, phase invariance and real restriction")
{
    std::mt19937_64 gen(21);
    for (int rep = 0; rep < 100; ++rep) {
        const int d = static_cast<int>(gen() % 16) + 1;
        const auto c = oracle::random_coeffs(gen, d);
        const HomogeneousPoly h(c);
        const double x = oracle::uniform(gen, -1, 1), y = oracle::uniform(gen, -1, 1);
        const double lambda = oracle::uniform(gen, 0.1, 10.0);
        const double scale = oracle::abs_scale(c, lambda * x, lambda * y);
        CHECK(std::abs(eval_real(h, {lambda * x, lambda * y}) - std::pow(lambda, d) * eval_real(h, {x, y})) <=
              1e-12 * (1 + scale));

        const cplx z(x, oracle::uniform(gen, -1, 1)), w(y, oracle::uniform(gen, -1, 1));
        const double phi = oracle::uniform(gen, 0.0, 2 * std::numbers::pi);
        const cplx rot = std::polar(1.0, phi);
        const double mag = oracle::abs_scale(c, std::abs(z), std::abs(w));
        CHECK(std::abs(std::abs(eval_complex(h, {rot * z, rot * w})) - std::abs(eval_complex(h, {z, w}))) <=
              1e-12 * (1 + mag));

        const cplx rv = eval_complex(h, {cplx(x, 0), cplx(y, 0)});
        CHECK(rv.imag() == 0.0);
        CHECK(rv.real() == eval_real(h, {x, y}));
    }
}

TEST_CASE("error paths")
{
    CHECK_THROWS_AS(HomogeneousPoly(std::vector<double>{}), DomainError);
    CHECK_THROWS_AS(HomogeneousPoly(std::vector<double>(514, 1.0)), DegreeCapError);
    CHECK_NOTHROW(HomogeneousPoly(std::vector<double>(513, 1.0)));
    CHECK_THROWS_AS(HomogeneousPoly({1.0, std::nan("")}), DomainError);
    CHECK_THROWS_AS(HomogeneousPoly::from_parts(2, {1.0, 0.0}), DomainError);
    CHECK_NOTHROW(HomogeneousPoly::from_parts(1, {1.0, 0.0}));

    const HomogeneousPoly big(std::vector<double>(300, 1.0));
    CHECK_THROWS_AS(multiply(big, big), DegreeCapError);
    CHECK_THROWS_AS(power(HomogeneousPoly({1.0, 1.0, 1.0}), 257), DegreeCapError);
    CHECK_THROWS_AS(power(HomogeneousPoly({1.0, 1.0}), 0), DomainError);

    const HomogeneousPoly huge({1e300, 0.0, 0.0});
    CHECK_THROWS_AS(eval_real(huge, {1e10, 0.0}), OverflowError);
    CHECK_THROWS_AS(eval_complex(huge, {cplx(1e10, 0), cplx(0, 0)}), OverflowError);
    CHECK_THROWS_AS(multiply(HomogeneousPoly({1e200, 1.0}), HomogeneousPoly({1e200, 1.0})), OverflowError);
}
