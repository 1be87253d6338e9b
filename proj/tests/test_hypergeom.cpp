#include <doctest.h>

#include <random>

#include <vvmf/hypergeom.hpp>

using namespace vvmf;

namespace
{

InstanceParams seed(long M)
{
    const QuadNum r = QuadNum::sqrt_of(M);
    return params_from_exponents(ExponentData{0, BigRat(0), frac(1, 2), r, r.conjugate()});
}

InstanceParams random_instance(std::mt19937 &rng)
{
    std::uniform_int_distribution<long> num(-6, 6), den(1, 4), k(0, 5), pick(0, 3);
    const long fields[] = {2, 3, 5, 7};
    BigRat l1, l2;
    do {
        l1 = frac(num(rng), den(rng));
        l2 = frac(num(rng), den(rng));
    } while (is_integer(l1 - l2));
    const QuadNum r((frac(1, 2) - l1 - l2) / 2, frac(1 + pick(rng), 1 + pick(rng)), fields[pick(rng)]);
    return params_from_exponents(ExponentData{static_cast<int>(k(rng)), l1, l2, r, r.conjugate()});
}

QuadNum factorial(unsigned n)
{
    BigInt f = 1;
    for (unsigned i = 2; i <= n; ++i) {
        f *= i;
    }
    return QuadNum(BigRat(f));
}

// The defining double sum for f(k).
QuadNum f_oracle(const QuadNum &A, const QuadNum &B, const QuadNum &r, unsigned k)
{
    QuadNum s(0);
    for (unsigned m = 0; m <= k; ++m) {
        const unsigned n = k - m;
        BigInt pw = 1;
        pw <<= 4 * m + 6 * n;
        s += QuadNum(BigRat(pw)) * pochhammer(-r, n) * pochhammer(QuadNum(2) * A, 2 * m)
             / (pochhammer(QuadNum(1) + A - B, m) * factorial(m) * factorial(n));
    }
    return s;
}

MonomialMap random_coords(std::mt19937 &rng, int k, long M)
{
    std::uniform_int_distribution<long> d(-5, 5);
    MonomialMap out;
    for (const auto &ab : monomial_basis(k)) {
        out[ab] = QuadNum(frac(d(rng), 2), BigRat(d(rng)), M);
    }
    return out;
}

void check_same(const MonomialMap &got, const MonomialMap &want)
{
    for (const auto &[ab, c] : want) {
        const auto it = got.find(ab);
        const QuadNum g = it == got.end() ? QuadNum(0) : it->second;
        CHECK(g == c);
    }
}

} // namespace

TEST_CASE("Gauss hypergeometric coefficients")
{
    // 2F1(1, 1; 2; z) = -log(1 - z) / z
    for (unsigned n = 0; n < 10; ++n) {
        CHECK(gauss_2f1(QuadNum(1), QuadNum(1), QuadNum(2), n) == QuadNum(frac(1, n + 1)));
    }
    // 2F1(a, b; b; z) = (1 - z)^-a
    const QuadNum a(frac(1, 3), BigRat(1), 2);
    for (unsigned n = 0; n < 8; ++n) {
        CHECK(gauss_2f1(a, QuadNum(frac(5, 7)), QuadNum(frac(5, 7)), n) == pochhammer(a, n) / factorial(n));
    }
    // Terminating series when alpha is a nonpositive integer.
    CHECK(gauss_2f1(QuadNum(-2), QuadNum(1), QuadNum(1), 3) == QuadNum(0));
    CHECK_THROWS_AS(gauss_2f1(QuadNum(1), QuadNum(1), QuadNum(-1), 3), std::domain_error);
}

TEST_CASE("D and C tables against Hauptmodul powers")
{
    const std::size_t Kmax = 12;
    const DCTables t = tables_DC(Kmax);
    CHECK(t.C[1][1] == -40);
    CHECK(t.C[1][2] == 1324);
    CHECK(t.C[0][0] == 1);
    const RatSeries K = hauptmodul(Kmax + 3).K;
    const RatSeries Kinv = series_inv(K);
    const RatSeries X = Kinv.shifted(BigRat(-1)) - RatSeries::one(Kinv.size());
    for (std::size_t k = 0; k <= Kmax; ++k) {
        const RatSeries p = series_pow(Kinv, static_cast<long>(k));
        for (std::size_t s = 0; s < t.D.size() && s <= Kmax; ++s) {
            if (BigRat(static_cast<long>(s)) < p.precision()) {
                CHECK(BigRat(t.D[s][k]) == p.at(BigRat(static_cast<long>(s))));
            }
        }
    }
    RatSeries Xt = RatSeries::one(X.size() + 1);
    for (std::size_t tt = 1; tt < t.C.size() && tt <= 6; ++tt) {
        Xt = Xt * X;
        for (std::size_t d = 0; d < t.C[tt].size() && d <= 8; ++d) {
            CHECK(BigRat(t.C[tt][d]) == Xt.at(BigRat(static_cast<long>(d))));
        }
    }
    // X = O(q), so C[t][d] = 0 for d < t.
    for (std::size_t tt = 1; tt < t.C.size(); ++tt) {
        for (std::size_t d = 0; d < tt && d < t.C[tt].size(); ++d) {
            CHECK(t.C[tt][d] == 0);
        }
    }
}

TEST_CASE("f sequence matches its defining double sum")
{
    const InstanceParams p = seed(2);
    const FLists f = seq_f(p, 10);
    CHECK(f.f[0] == QuadNum(1));
    CHECK(f.f[1] == QuadNum(256).in_field(2));
    CHECK(f.f_tilde[1] == QuadNum(frac(320, 3)).in_field(2));
    for (unsigned k = 0; k <= 10; ++k) {
        CHECK(f.f[k] == f_oracle(p.A, p.B, p.r, k));
        CHECK(f.f_tilde[k] == f_oracle(p.B, p.A, p.r, k));
    }
    const std::vector<QuadNum> r0 = seq_f(p.A, p.B, QuadNum(0).in_field(2), 3);
    CHECK(r0[1] == QuadNum(BigRat(256), BigRat(64), 2));
    CHECK(seq_f(seed(5), 1).f[1] == QuadNum(640).in_field(5));
}

TEST_CASE("closed form equals the Frobenius recursion")
{
    for (long M : {2L, 5L}) {
        const InstanceParams p = seed(M);
        const HLists c = h_closed(p, 40), fr = h_frobenius(p, 40);
        CHECK(c.h == fr.h);
        CHECK(c.h_tilde == fr.h_tilde);
    }
    std::mt19937 rng(37);
    for (int i = 0; i < 12; ++i) {
        const InstanceParams p = random_instance(rng);
        INFO("l1 = " << to_string(p.l1) << ", l2 = " << to_string(p.l2) << ", r = " << p.r.str() << ", k0 = " << p.k0);
        const HLists c = h_closed(p, 20), fr = h_frobenius(p, 20);
        CHECK(c.h == fr.h);
        CHECK(c.h_tilde == fr.h_tilde);
    }
}

TEST_CASE("Frobenius coefficients solve the indicial recursion")
{
    const InstanceParams p = seed(2);
    CHECK(indicial_infinity(p, p.l1) == 0);
    CHECK(indicial_infinity(p, p.l2) == 0);
    const std::vector<BigRat> c = frobenius_coeffs(p, p.l1, 10);
    CHECK(c[0] == 1);
    CHECK(c.size() == 11);
    CHECK(parse_method("closed") == Method::Closed);
    CHECK(parse_method("frobenius") == Method::Frobenius);
    CHECK(parse_method("both") == Method::Both);
    CHECK_THROWS(parse_method("other"));
}

TEST_CASE("minimal form of the sqrt 2 instance")
{
    const MinimalForm mf = minimal_form(seed(2), 30);
    CHECK(mf.d[0] == QuadNum(1));
    CHECK(mf.d[1] == QuadNum(256).in_field(2));
    CHECK(mf.d[2] == QuadNum(frac(34816, 3)).in_field(2));
    CHECK(mf.d_tilde[1] == QuadNum(frac(260, 3)).in_field(2));
    CHECK(mf.comp1.base == 0);
    CHECK(mf.comp2.base == frac(1, 2));
    for (const auto &c : mlde_residual_checks(mf)) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
    }
    const DerivComponents dc = deriv_components(mf);
    CHECK(dc.t1[0] == QuadNum(0).in_field(2));
    CHECK(dc.t1[1] == QuadNum(256).in_field(2));
    CHECK(dc.t2[0] == QuadNum(frac(1, 2)).in_field(2));
}

TEST_CASE("minimal forms with k0 > 0 convolve the eta tail")
{
    std::mt19937 rng(41);
    for (int i = 0; i < 8; ++i) {
        const InstanceParams p = random_instance(rng);
        const MinimalForm mf = minimal_form(p, 15);
        INFO("k0 = " << p.k0 << ", r = " << p.r.str());
        CHECK(mf.comp1.base == frac(p.k0, 12) + p.l1);
        CHECK(mf.comp2.base == frac(p.k0, 12) + p.l2);
        CHECK(mf.e == eta_tail(2 * p.k0, 15));
        CHECK(mf.d == convolve_eta(mf.e, mf.h));
        for (std::size_t K = 0; K <= 15; ++K) {
            QuadNum s(0);
            for (std::size_t j = 0; j <= K; ++j) {
                s += QuadNum(BigRat(mf.e[j])) * mf.h[K - j];
            }
            CHECK(mf.d[K] == s);
            CHECK(mf.comp1.coeff(K) == mf.d[K]);
        }
        for (const auto &c : mlde_residual_checks(mf)) {
            INFO(c.name << ": " << c.detail);
            CHECK(c.passed);
        }
        CHECK_NOTHROW(deriv_components(mf));
    }
}

TEST_CASE("the derivative sum runs through n = K")
{
    std::mt19937 rng(43);
    InstanceParams p = random_instance(rng);
    while (p.k0 == 0) {
        p = random_instance(rng);
    }
    const MinimalForm mf = minimal_form(p, 10);
    const DerivComponents dc = deriv_components(mf);
    const OffsetSeries direct = modular_D(BigRat(p.k0), mf.comp1);
    bool shortened_matches = true;
    for (std::size_t K = 0; K <= 10; ++K) {
        CHECK(dc.t1[K] == direct.coeff(K));
        QuadNum s(0);
        for (std::size_t n = 1; n + 1 <= K; ++n) {
            s += QuadNum(BigRat(divisor_sigma(1, n))) * mf.d[K - n];
        }
        const QuadNum shortened = mf.d[K] * QuadNum(BigRat(static_cast<long>(K)) + p.l1)
                                  + QuadNum(BigRat(2 * p.k0)) * s;
        shortened_matches = shortened_matches && shortened == direct.coeff(K);
    }
    CHECK_FALSE(shortened_matches);
}

TEST_CASE("weight bases have the expected sizes")
{
    const MinimalForm mf = minimal_form(seed(2), 20);
    const DerivComponents dc = deriv_components(mf);
    CHECK(weight_basis(mf, dc, 0).size() == 1);
    CHECK(weight_basis(mf, dc, 2).size() == 2);
    CHECK(weight_basis(mf, dc, 3).empty());
    CHECK(weight_basis(mf, dc, -2).empty());
    CHECK(weight_basis(mf, dc, 4).size() == 3);
    CHECK(weight_basis(mf, dc, 8).size() == 5);
}

TEST_CASE("decomposition recovers the coefficient forms")
{
    const InstanceParams p = seed(2);
    const MinimalForm mf = minimal_form(p, 30);
    const DerivComponents dc = deriv_components(mf);
    {
        // Z = E4 F' + G D F' at weight 4.
        const MonomialMap m1{{{0, 1}, QuadNum(1).in_field(2)}};
        const MonomialMap m2{{{1, 0}, QuadNum(1).in_field(2)}};
        const VectorSeries z = combine(mf, dc, m1, m2, 4);
        CHECK_THROWS_AS(combine(mf, dc, m1, m2, 6), std::invalid_argument);
        const Decomposition d = decompose(mf, dc, z.c1, z.c2, 4);
        check_same(d.m1_coords, m1);
        check_same(d.m2_coords, m2);
        CHECK(d.m1_coords.at({2, 0}).is_zero());
    }
    std::mt19937 rng(47);
    for (int k = 2; k <= 10; k += 2) {
        const MonomialMap m1 = random_coords(rng, k, 2), m2 = random_coords(rng, k - 2, 2);
        const VectorSeries z = combine(mf, dc, m1, m2, k);
        const Decomposition d = decompose(mf, dc, z.c1, z.c2, k);
        check_same(d.m1_coords, m1);
        check_same(d.m2_coords, m2);
    }
    const MonomialMap m1 = random_coords(rng, 6, 2), m2 = random_coords(rng, 4, 2);
    const VectorSeries z = combine(mf, dc, m1, m2, 6);
    std::vector<QuadNum> c = z.c1.coeffs();
    c[20] += QuadNum(1);
    const OffsetSeries bad{z.c1.base, QuadSeries(BigRat(0), c)};
    CHECK_THROWS_AS(decompose(mf, dc, bad, z.c2, 6), NotAFormError);
    CHECK_NOTHROW(decompose(mf, dc, bad, z.c2, 6, false));
}

TEST_CASE("decomposition on a random instance with k0 > 0")
{
    std::mt19937 rng(53);
    InstanceParams p = random_instance(rng);
    while (p.k0 == 0) {
        p = random_instance(rng);
    }
    const MinimalForm mf = minimal_form(p, 25);
    const DerivComponents dc = deriv_components(mf);
    const int k = p.k0 + 6;
    const MonomialMap m1 = random_coords(rng, 6, p.M), m2 = random_coords(rng, 4, p.M);
    const VectorSeries z = combine(mf, dc, m1, m2, k);
    const Decomposition d = decompose(mf, dc, z.c1, z.c2, k);
    check_same(d.m1_coords, m1);
    check_same(d.m2_coords, m2);
}
