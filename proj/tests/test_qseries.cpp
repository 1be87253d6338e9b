#include <doctest.h>

#include <random>

#include <vvmf/qseries.hpp>

using namespace vvmf;

namespace
{

RatSeries random_series(std::mt19937 &rng, std::size_t n, BigRat lead = BigRat(0), bool unit = false)
{
    std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
    std::vector<BigRat> c(n);
    for (auto &x : c) {
        x = frac(num(rng), den(rng));
    }
    c[0] = unit ? BigRat(1) : BigRat(num(rng) == 0 ? 3 : 2);
    return RatSeries(std::move(lead), std::move(c));
}

// Coefficient n of a*b with both series starting at exponent 0.
BigRat naive_product(const RatSeries &a, const RatSeries &b, std::size_t n)
{
    BigRat s(0);
    for (std::size_t i = 0; i <= n; ++i) {
        s += a.coeffs()[i] * b.coeffs()[n - i];
    }
    return s;
}

} // namespace

TEST_CASE("products agree with the schoolbook convolution")
{
    std::mt19937 rng(1);
    for (int k = 0; k < 10; ++k) {
        const RatSeries a = random_series(rng, 15), b = random_series(rng, 15);
        const RatSeries p = a * b;
        CHECK(p.lead() == 0);
        CHECK(p.size() == 15);
        for (std::size_t n = 0; n < 15; ++n) {
            CHECK(p.coeff(n) == naive_product(a, b, n));
        }
        CHECK(a * b == b * a);
    }
}

TEST_CASE("leads add under multiplication and precision is tracked")
{
    std::mt19937 rng(2);
    const RatSeries a = random_series(rng, 10, frac(-1, 1)), b = random_series(rng, 6, frac(1, 8));
    const RatSeries p = a * b;
    CHECK(p.lead() == frac(-7, 8));
    CHECK(p.precision() == frac(-7, 8) + 6);
    CHECK_THROWS_AS(p.at(p.precision()), PrecisionError);
    CHECK_THROWS_AS(p.coeff(6), PrecisionError);
    CHECK_THROWS_AS(p.at(frac(1, 3)), LatticeError);
    CHECK(p.at(frac(-15, 8)) == 0);
}

TEST_CASE("off-lattice leads and mismatched ramification are rejected")
{
    CHECK_THROWS_AS(RatSeries(frac(1, 5), {BigRat(1)}), LatticeError);
    CHECK_THROWS_AS(RatSeries(BigRat(0), {BigRat(1)}, 5), LatticeError);
    const RatSeries a(BigRat(0), {BigRat(1), BigRat(1)}, 2);
    const RatSeries b(BigRat(0), {BigRat(1), BigRat(1)}, 1);
    CHECK_THROWS_AS(a + b, LatticeError);
    CHECK_THROWS_AS(a * b, LatticeError);
    const RatSeries c(frac(1, 24), {BigRat(1)});
    CHECK_THROWS_AS(b + c, LatticeError);
}

TEST_CASE("sums truncate to the lower precision and normalise leading zeros")
{
    const RatSeries a(BigRat(0), {BigRat(1), BigRat(2), BigRat(3)});
    const RatSeries b(BigRat(0), {BigRat(-1), BigRat(5)});
    const RatSeries s = a + b;
    CHECK(s.lead() == 1);
    CHECK(s.size() == 1);
    CHECK(s.coeff(0) == 7);
    const RatSeries z = a - a;
    CHECK(z.is_zero());
    CHECK(z.precision() == 3);
}

TEST_CASE("inverse times series is one")
{
    std::mt19937 rng(3);
    for (int k = 0; k < 10; ++k) {
        const RatSeries a = random_series(rng, 12, frac(k - 5, 4));
        const RatSeries p = a * series_inv(a);
        CHECK(p == RatSeries::one(12));
    }
    CHECK_THROWS(series_inv(RatSeries::zero(BigRat(3))));
}

TEST_CASE("theta satisfies the Leibniz rule")
{
    std::mt19937 rng(4);
    for (int k = 0; k < 10; ++k) {
        const RatSeries a = random_series(rng, 12, frac(k, 3)), b = random_series(rng, 12, frac(-1, 2));
        CHECK(theta(a * b) == theta(a) * b + a * theta(b));
    }
    // theta(q^e) = e q^e
    const RatSeries m(frac(3, 2), {BigRat(1), BigRat(0)});
    CHECK(theta(m).coeff(0) == frac(3, 2));
}

TEST_CASE("binomial powers agree with the generalised binomial sum")
{
    std::mt19937 rng(5);
    for (int k = 0; k < 8; ++k) {
        const RatSeries u = random_series(rng, 10, BigRat(0), true);
        const RatSeries X = u - RatSeries::one(10);
        const BigRat gamma = frac(static_cast<long>(k) - 4, 3);
        // sum_t binom(gamma, t) X^t; X = O(q), so t < 10 suffices.
        RatSeries oracle = RatSeries::one(10);
        RatSeries Xt = RatSeries::one(10);
        for (unsigned t = 1; t < 10; ++t) {
            Xt = Xt * X;
            oracle = oracle + gen_binomial(gamma, t) * Xt;
        }
        CHECK(series_pow_binomial(u, gamma) == oracle.truncated_at(BigRat(10)));
    }
    const RatSeries u(BigRat(0), {BigRat(1), BigRat(1), BigRat(0), BigRat(0)});
    const RatSeries half = series_pow_binomial(u, frac(1, 2));
    CHECK(half * half == u);
    CHECK_THROWS(series_pow_binomial(RatSeries(BigRat(0), {BigRat(2), BigRat(1)}), frac(1, 2)));
}

TEST_CASE("integer powers including negative exponents")
{
    std::mt19937 rng(6);
    const RatSeries a = random_series(rng, 10, frac(1, 4));
    CHECK(series_pow(a, 3) == a * a * a);
    CHECK(series_pow(a, -2) * a * a == RatSeries::one(10));
    CHECK(series_pow(a, 0) == RatSeries::one(10));
    CHECK(series_pow(a, -1).lead() == frac(-1, 4));
}

TEST_CASE("substitution rescales exponents")
{
    const RatSeries a(BigRat(1), {BigRat(1), BigRat(2), BigRat(3)});
    const RatSeries a2 = substitute(a, BigRat(2));
    CHECK(a2.lead() == 2);
    CHECK(a2.at(BigRat(4)) == 2);
    CHECK(a2.at(BigRat(5)) == 0);
    CHECK(a2.precision() == 8);
    const RatSeries a4 = substitute(a, frac(1, 4));
    CHECK(a4.ramification() == 4);
    CHECK(a4.lead() == frac(1, 4));
    CHECK(a4.at(frac(3, 4)) == 3);
    const RatSeries back = substitute(a4, BigRat(4));
    CHECK(back.precision() == a.precision());
    for (long e = 1; e < 4; ++e) {
        CHECK(back.at(BigRat(e)) == a.at(BigRat(e)));
        CHECK(back.at(BigRat(e) + frac(1, 4)) == 0);
    }
}

TEST_CASE("shifted, coeffs_from and quadratic promotion")
{
    const RatSeries a(BigRat(0), {BigRat(1), BigRat(2), BigRat(3)});
    const RatSeries s = a.shifted(frac(-1, 3));
    CHECK(s.lead() == frac(-1, 3));
    CHECK(s.coeffs_from(frac(-4, 3), 3) == std::vector<BigRat>{BigRat(0), BigRat(1), BigRat(2)});
    CHECK(s.size_from(frac(-4, 3)) == 4);
    const QuadSeries qs = promote(a) * QuadSeries(BigRat(0), {QuadNum::sqrt_of(2), QuadNum(0), QuadNum(0)});
    CHECK(qs.coeff(1) == QuadNum(BigRat(0), BigRat(2), 2));
}
