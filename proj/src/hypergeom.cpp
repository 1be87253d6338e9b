#include <vvmf/hypergeom.hpp>

#include <algorithm>
#include <stdexcept>

namespace vvmf
{

namespace
{

QuadSeries tail_from(const std::vector<QuadNum> &c)
{
    return QuadSeries(BigRat(0), c);
}

BigInt as_integer(const BigRat &q, const char *what)
{
    if (!is_integer(q)) {
        throw std::logic_error(std::string("non-integer entry in ") + what + ": " + to_string(q));
    }
    return q.get_num();
}

void require_same_base(const OffsetSeries &x, const OffsetSeries &y)
{
    if (x.base != y.base) {
        throw LatticeError("component bases differ: " + to_string(x.base) + " vs " + to_string(y.base));
    }
}

QuadSeries promoted_form(const RatSeries &s)
{
    return promote(s);
}

} // namespace

OffsetSeries operator+(const OffsetSeries &x, const OffsetSeries &y)
{
    require_same_base(x, y);
    return {x.base, x.tail + y.tail};
}

OffsetSeries operator-(const OffsetSeries &x, const OffsetSeries &y)
{
    require_same_base(x, y);
    return {x.base, x.tail - y.tail};
}

OffsetSeries operator*(const QuadSeries &m, const OffsetSeries &x)
{
    return {x.base, m * x.tail};
}

OffsetSeries modular_D(const BigRat &k, const OffsetSeries &x)
{
    if (x.tail.is_zero()) {
        return x;
    }
    const std::size_t n = x.size();
    const QuadSeries e2 = promoted_form(eisenstein_E2(n - 1).series);
    const BigRat w = k / 12;
    QuadSeries t = theta(x.tail) + QuadNum(x.base) * x.tail - QuadNum(w) * (e2 * x.tail);
    return {x.base, std::move(t)};
}

QuadNum gauss_2f1(const QuadNum &alpha, const QuadNum &beta, const QuadNum &gamma, unsigned n)
{
    const QuadNum den = pochhammer(gamma, n);
    if (den.is_zero()) {
        throw std::domain_error("(gamma)_n vanishes for gamma = " + gamma.str());
    }
    BigInt fact = 1;
    for (unsigned i = 2; i <= n; ++i) {
        fact *= i;
    }
    return pochhammer(alpha, n) * pochhammer(beta, n) / (den * QuadNum(fact));
}

DCTables tables_DC(std::size_t Kmax)
{
    const std::size_t n = Kmax + 1;
    const Hauptmodul H = hauptmodul(std::max<std::size_t>(Kmax, 2));
    const RatSeries qK = H.K.shifted(BigRat(1)).truncated(n);
    const RatSeries P = series_inv(qK); // (q K)^-1 = 1 + X
    const RatSeries X = P - RatSeries::one(n);

    DCTables t;
    t.D.assign(n, std::vector<BigInt>(n, 0));
    t.C.assign(n, std::vector<BigInt>(n, 0));

    RatSeries pw = RatSeries::one(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t s = k; s < n; ++s) {
            t.D[s][k] = as_integer(pw.at(BigRat(static_cast<long>(s - k))), "D table");
        }
        pw = pw * P;
    }

    RatSeries xt = RatSeries::one(n);
    for (std::size_t tt = 0; tt < n; ++tt) {
        for (std::size_t d = 0; d < n; ++d) {
            t.C[tt][d] = as_integer(xt.at(BigRat(static_cast<long>(d))), "C table");
        }
        xt = xt * X;
    }
    return t;
}

std::vector<QuadNum> seq_f(const QuadNum &A, const QuadNum &B, const QuadNum &r, std::size_t Kmax)
{
    const QuadNum shift = QuadNum(1) + A - B;
    std::vector<QuadNum> am(Kmax + 1), bn(Kmax + 1);
    am[0] = QuadNum(1);
    bn[0] = QuadNum(1);
    for (std::size_t m = 0; m < Kmax; ++m) {
        const QuadNum two_m(static_cast<long>(2 * m));
        const QuadNum den = (shift + QuadNum(static_cast<long>(m))) * QuadNum(static_cast<long>(m + 1));
        if (den.is_zero()) {
            throw std::domain_error("(1 + A - B)_m vanishes");
        }
        am[m + 1] = am[m] * QuadNum(16) * (QuadNum(2) * A + two_m) * (QuadNum(2) * A + two_m + QuadNum(1)) / den;
        bn[m + 1] = bn[m] * QuadNum(64) * (-r + QuadNum(static_cast<long>(m))) / QuadNum(static_cast<long>(m + 1));
    }
    std::vector<QuadNum> f(Kmax + 1);
    for (std::size_t k = 0; k <= Kmax; ++k) {
        QuadNum acc(0);
        for (std::size_t m = 0; m <= k; ++m) {
            acc += am[m] * bn[k - m];
        }
        f[k] = acc;
    }
    return f;
}

FLists seq_f(const InstanceParams &p, std::size_t Kmax)
{
    return {seq_f(p.A, p.B, p.r, Kmax), seq_f(p.B, p.A, p.r, Kmax)};
}

namespace
{

std::vector<QuadNum> closed_one(const BigRat &l, const DCTables &t, const std::vector<QuadNum> &f, std::size_t Kmax)
{
    std::vector<QuadNum> left(Kmax + 1), right(Kmax + 1);
    std::vector<BigRat> binom(Kmax + 1);
    for (std::size_t i = 0; i <= Kmax; ++i) {
        binom[i] = gen_binomial(l, static_cast<unsigned>(i));
    }
    for (std::size_t d = 0; d <= Kmax; ++d) {
        BigRat acc(0);
        for (std::size_t tt = 0; tt <= d; ++tt) {
            acc += BigRat(t.C[tt][d]) * binom[tt];
        }
        left[d] = QuadNum(acc);
    }
    for (std::size_t s = 0; s <= Kmax; ++s) {
        QuadNum acc(0);
        for (std::size_t k = 0; k <= s; ++k) {
            if (sgn(t.D[s][k]) != 0) {
                acc += f[k] * QuadNum(t.D[s][k]);
            }
        }
        right[s] = acc;
    }
    std::vector<QuadNum> h(Kmax + 1);
    for (std::size_t K = 0; K <= Kmax; ++K) {
        QuadNum acc(0);
        for (std::size_t d = 0; d <= K; ++d) {
            acc += left[d] * right[K - d];
        }
        h[K] = acc;
    }
    return h;
}

} // namespace

HLists h_closed(const InstanceParams &p, const DCTables &t, const FLists &f, std::size_t Kmax)
{
    return {closed_one(p.l1, t, f.f, Kmax), closed_one(p.l2, t, f.f_tilde, Kmax)};
}

HLists h_closed(const InstanceParams &p, std::size_t Kmax)
{
    return h_closed(p, tables_DC(Kmax), seq_f(p, Kmax), Kmax);
}

BigRat indicial_infinity(const InstanceParams &p, const BigRat &x)
{
    return x * x + (p.a - frac(1, 6)) * x + p.b + p.c;
}

std::vector<BigRat> frobenius_coeffs(const InstanceParams &p, const BigRat &l, std::size_t Kmax)
{
    const std::size_t n = Kmax + 1;
    const RatSeries G = weight2_G(Kmax).series;
    const RatSeries E2 = eisenstein_E2(Kmax).series;
    const RatSeries E4 = eisenstein_E4(Kmax).series;
    const RatSeries P = p.a * G - frac(1, 6) * E2;
    const RatSeries Q = p.b * (G * G) + p.c * E4;
    const std::vector<BigRat> pc = P.coeffs_from(BigRat(0), n);
    const std::vector<BigRat> qc = Q.coeffs_from(BigRat(0), n);

    std::vector<BigRat> c(n, BigRat(0));
    c[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        const BigRat ik = indicial_infinity(p, l + static_cast<long>(k));
        if (sgn(ik) == 0) {
            throw std::domain_error("indicial polynomial vanishes at l + " + std::to_string(k));
        }
        BigRat acc(0);
        for (std::size_t j = 1; j <= k; ++j) {
            acc += (pc[j] * (l + static_cast<long>(k - j)) + qc[j]) * c[k - j];
        }
        c[k] = -acc / ik;
    }
    return c;
}

HLists h_frobenius(const InstanceParams &p, std::size_t Kmax)
{
    HLists out;
    for (const auto &x : frobenius_coeffs(p, p.l1, Kmax)) {
        out.h.emplace_back(x);
    }
    for (const auto &x : frobenius_coeffs(p, p.l2, Kmax)) {
        out.h_tilde.emplace_back(x);
    }
    return out;
}

Method parse_method(const std::string &name)
{
    if (name == "closed") {
        return Method::Closed;
    }
    if (name == "frobenius") {
        return Method::Frobenius;
    }
    if (name == "both") {
        return Method::Both;
    }
    throw std::invalid_argument("unknown method '" + name + "'");
}

std::vector<QuadNum> convolve_eta(const std::vector<BigInt> &e, const std::vector<QuadNum> &h)
{
    std::vector<QuadNum> d(h.size(), QuadNum(0));
    for (std::size_t K = 0; K < h.size(); ++K) {
        for (std::size_t i = 0; i <= K && i < e.size(); ++i) {
            if (sgn(e[i]) != 0) {
                d[K] += QuadNum(e[i]) * h[K - i];
            }
        }
    }
    return d;
}

MinimalForm minimal_form(const InstanceParams &p, std::size_t Kmax, Method method)
{
    MinimalForm mf;
    mf.params = p;
    mf.Kmax = Kmax;

    HLists h;
    if (method == Method::Closed) {
        h = h_closed(p, Kmax);
    } else if (method == Method::Frobenius) {
        h = h_frobenius(p, Kmax);
    } else {
        h = h_closed(p, Kmax);
        const HLists g = h_frobenius(p, Kmax);
        for (std::size_t K = 0; K <= Kmax; ++K) {
            if (h.h[K] != g.h[K]) {
                throw PipelineDisagreement("h(" + std::to_string(K) + "): closed form " + h.h[K].str()
                                           + ", recursion " + g.h[K].str());
            }
            if (h.h_tilde[K] != g.h_tilde[K]) {
                throw PipelineDisagreement("h~(" + std::to_string(K) + "): closed form " + h.h_tilde[K].str()
                                           + ", recursion " + g.h_tilde[K].str());
            }
        }
    }
    mf.h = std::move(h.h);
    mf.h_tilde = std::move(h.h_tilde);
    if (p.M > 1) {
        // The recursion produces untagged rationals; keep every value in Q(sqrt M).
        for (auto *v : {&mf.h, &mf.h_tilde}) {
            for (auto &x : *v) {
                x = x.in_field(p.M);
            }
        }
    }
    mf.e = eta_tail(2L * p.k0, Kmax);
    mf.d = convolve_eta(mf.e, mf.h);
    mf.d_tilde = convolve_eta(mf.e, mf.h_tilde);

    const BigRat k12 = frac(p.k0, 12);
    mf.comp1 = {k12 + p.l1, tail_from(mf.d)};
    mf.comp2 = {k12 + p.l2, tail_from(mf.d_tilde)};
    return mf;
}

namespace
{

std::vector<QuadNum> t_list(const std::vector<QuadNum> &d, const BigRat &l, int k0)
{
    std::vector<QuadNum> t(d.size());
    for (std::size_t K = 0; K < d.size(); ++K) {
        QuadNum acc = d[K] * QuadNum(l + static_cast<long>(K));
        if (k0 != 0) {
            QuadNum conv(0);
            for (std::size_t n = 1; n <= K; ++n) {
                conv += QuadNum(divisor_sigma(1, n)) * d[K - n];
            }
            acc += QuadNum(2L * k0) * conv;
        }
        t[K] = acc;
    }
    return t;
}

void compare_lists(const std::vector<QuadNum> &formula, const OffsetSeries &direct, const char *name)
{
    const std::size_t n = std::min(formula.size(), direct.size());
    for (std::size_t K = 0; K < n; ++K) {
        const QuadNum x = direct.coeff(K);
        if (x != formula[K]) {
            throw PipelineDisagreement(std::string(name) + "(" + std::to_string(K) + "): formula "
                                       + formula[K].str() + ", direct " + x.str());
        }
    }
}

} // namespace

DerivComponents deriv_components(const MinimalForm &mf)
{
    const InstanceParams &p = mf.params;
    DerivComponents dc;
    dc.t1 = t_list(mf.d, p.l1, p.k0);
    dc.t2 = t_list(mf.d_tilde, p.l2, p.k0);
    dc.comp1 = {mf.comp1.base, tail_from(dc.t1)};
    dc.comp2 = {mf.comp2.base, tail_from(dc.t2)};

    compare_lists(dc.t1, modular_D(BigRat(p.k0), mf.comp1), "t1");
    compare_lists(dc.t2, modular_D(BigRat(p.k0), mf.comp2), "t2");
    return dc;
}

OffsetSeries mlde_apply(const InstanceParams &p, const OffsetSeries &x)
{
    const std::size_t N = x.size() - 1;
    const RatSeries g = weight2_G(N).series;
    const RatSeries e4 = eisenstein_E4(N).series;
    const QuadSeries aG = promote(p.a * g);
    const QuadSeries Q = promote(p.b * (g * g) + p.c * e4);

    const OffsetSeries dx = modular_D(BigRat(p.k0), x);
    const OffsetSeries ddx = modular_D(BigRat(p.k0 + 2), dx);
    return ddx + aG * dx + Q * x;
}

std::vector<CheckResult> mlde_residual_checks(const MinimalForm &mf)
{
    std::vector<CheckResult> out;
    const auto check = [&](const char *name, const OffsetSeries &x) {
        const OffsetSeries res = mlde_apply(mf.params, x);
        CheckResult r;
        r.name = name;
        if (!res.tail.is_zero()) {
            r.detail = "nonzero residual " + res.tail.coeff(0).str() + " at offset " + to_string(res.tail.lead());
        } else if (res.tail.precision() < BigRat(static_cast<long>(mf.Kmax + 1))) {
            r.detail = "residual only known below offset " + to_string(res.tail.precision());
        } else {
            r.passed = true;
            r.detail = "zero through offset " + std::to_string(mf.Kmax);
        }
        out.push_back(r);
    };
    check("MLDE annihilates component 1", mf.comp1);
    check("MLDE annihilates component 2", mf.comp2);
    return out;
}

namespace
{

void check_weight(const MonomialMap &m, int k, const char *what)
{
    for (const auto &[ab, c] : m) {
        if (static_cast<int>(2 * ab.first + 4 * ab.second) != k) {
            throw std::invalid_argument(std::string(what) + " has a monomial G^" + std::to_string(ab.first) + " E4^"
                                        + std::to_string(ab.second) + " outside weight " + std::to_string(k));
        }
    }
}

std::string monomial_label(unsigned a, unsigned b)
{
    std::string s;
    if (a > 0) {
        s += a == 1 ? "G" : "G^" + std::to_string(a);
    }
    if (b > 0) {
        s += (s.empty() ? "" : " ") + std::string(b == 1 ? "E4" : "E4^" + std::to_string(b));
    }
    return s.empty() ? "1" : s;
}

} // namespace

std::vector<VectorSeries> weight_basis(const MinimalForm &mf, const DerivComponents &dc, int k)
{
    std::vector<VectorSeries> out;
    const int k0 = mf.params.k0;
    for (const auto &[a, b] : monomial_basis(k - k0)) {
        const QuadSeries m = monomial_combination<QuadNum>({{{a, b}, QuadNum(1)}}, mf.Kmax);
        out.push_back({monomial_label(a, b) + " F'", m * mf.comp1, m * mf.comp2});
    }
    for (const auto &[a, b] : monomial_basis(k - k0 - 2)) {
        const QuadSeries m = monomial_combination<QuadNum>({{{a, b}, QuadNum(1)}}, mf.Kmax);
        out.push_back({monomial_label(a, b) + " D F'", m * dc.comp1, m * dc.comp2});
    }
    return out;
}

VectorSeries combine(const MinimalForm &mf, const DerivComponents &dc, const MonomialMap &m1, const MonomialMap &m2,
                     int k)
{
    const int k0 = mf.params.k0;
    check_weight(m1, k - k0, "m1");
    check_weight(m2, k - k0 - 2, "m2");
    const QuadSeries s1 = monomial_combination<QuadNum>(m1, mf.Kmax);
    const QuadSeries s2 = monomial_combination<QuadNum>(m2, mf.Kmax);
    return {"Z", s1 * mf.comp1 + s2 * dc.comp1, s1 * mf.comp2 + s2 * dc.comp2};
}

namespace
{

// Coefficients of Z relative to the base of F', zero-padded when Z starts later.
std::vector<QuadNum> aligned(const OffsetSeries &Z, const BigRat &base, std::size_t n)
{
    const BigRat off = Z.base - base;
    if (!is_integer(off) || sgn(off) < 0) {
        throw LatticeError("component exponent " + to_string(Z.base) + " is not " + to_string(base)
                           + " plus a nonnegative integer");
    }
    const std::size_t o = off.get_num().get_ui();
    std::vector<QuadNum> c(n, QuadNum(0));
    for (std::size_t i = o; i < n; ++i) {
        c[i] = Z.coeff(i - o);
    }
    return c;
}

} // namespace

Decomposition decompose(const MinimalForm &mf, const DerivComponents &dc, const OffsetSeries &Z1,
                        const OffsetSeries &Z2, int k, bool validate)
{
    const InstanceParams &p = mf.params;
    const auto avail = [](const OffsetSeries &Z, const BigRat &base) {
        const BigRat top = Z.base + Z.tail.precision() - base;
        return sgn(top) <= 0 ? std::size_t{0} : static_cast<std::size_t>(BigRat(top).get_num().get_ui());
    };
    const std::size_t n = std::min({avail(Z1, mf.comp1.base), avail(Z2, mf.comp2.base), mf.Kmax + 1});
    const std::vector<QuadNum> z1 = aligned(Z1, mf.comp1.base, n);
    const std::vector<QuadNum> z2 = aligned(Z2, mf.comp2.base, n);

    const QuadNum l1(p.l1), l2(p.l2);
    const QuadNum det = l2 - l1;
    std::vector<QuadNum> m1(n), m2(n);
    for (std::size_t N = 0; N < n; ++N) {
        QuadNum r1 = z1[N], r2 = z2[N];
        for (std::size_t j = 0; j < N; ++j) {
            r1 -= m1[j] * mf.d[N - j] + m2[j] * dc.t1[N - j];
            r2 -= m1[j] * mf.d_tilde[N - j] + m2[j] * dc.t2[N - j];
        }
        m2[N] = (r2 - r1) / det;
        m1[N] = r1 - l1 * m2[N];
    }

    Decomposition out;
    out.m1 = QuadSeries(BigRat(0), m1);
    out.m2 = QuadSeries(BigRat(0), m2);
    if (validate) {
        out.m1_coords = monomial_coordinates<QuadNum>(out.m1, k - p.k0);
        out.m2_coords = monomial_coordinates<QuadNum>(out.m2, k - p.k0 - 2);
    }
    return out;
}

} // namespace vvmf
