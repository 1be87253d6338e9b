#include <vvmf/denom_analysis.hpp>

#include <algorithm>
#include <array>
#include <stdexcept>

namespace vvmf
{

namespace
{

BigInt residue_mod(const BigInt &a, const BigInt &m)
{
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool divides(const BigInt &p, const BigInt &n)
{
    return sgn(n) == 0 || mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) != 0;
}

bool divides_y(const BigInt &p, const QuadNum &z)
{
    if (z.is_zero()) {
        return true;
    }
    return divides(p, half_form(z).y);
}

} // namespace

bool in_prime_set(const InstanceParams &p, long prime, bool tilde)
{
    if (prime <= 2 || !is_prime(prime)) {
        return false;
    }
    if (legendre(BigInt(p.M), BigInt(prime)) != -1) {
        return false;
    }
    const BigInt u = tilde ? BigInt(-p.u) : p.u;
    return residue_mod(BigInt(prime) - u, p.v) == 0;
}

PrimeSets prime_sets(const InstanceParams &p, long bound)
{
    if (p.M <= 1) {
        throw std::invalid_argument("prime sets need an irrational r");
    }
    PrimeSets out;
    out.bound = bound;
    for (long q : primes_up_to(bound)) {
        if (in_prime_set(p, q, false)) {
            out.S.push_back(q);
        }
        if (in_prime_set(p, q, true)) {
            out.S_tilde.push_back(q);
        }
    }
    return out;
}

std::vector<ScanEntry> denom_scan(const std::vector<QuadNum> &seq, const std::vector<long> &primes,
                                  std::uint64_t factor_bound)
{
    std::vector<ScanEntry> out;
    out.reserve(seq.size());
    for (std::size_t K = 0; K < seq.size(); ++K) {
        ScanEntry e;
        e.K = K;
        e.denominator = denominator_of(seq[K]);
        e.factors = factor_trial(e.denominator, factor_bound);
        for (long q : primes) {
            if (divides(BigInt(q), e.denominator)) {
                e.dividing.push_back(q);
            }
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::string audit_prime(const InstanceParams &p, const BigInt &prime, std::size_t K, bool tilde)
{
    if (divides(prime, BigInt(12))) {
        return "p | 12";
    }
    if (prime <= static_cast<unsigned long>(K)) {
        return "p <= K";
    }
    if (divides(prime, p.v)) {
        return "p | v";
    }
    const QuadNum twoA = QuadNum(2) * (tilde ? p.B : p.A);
    const QuadNum minus_r = -p.r;
    if (divides_y(prime, twoA)) {
        return tilde ? "p | y-part of 2B" : "p | y-part of 2A";
    }
    if (divides_y(prime, minus_r)) {
        return "p | y-part of -r";
    }
    if (divides(prime, denominator_of(twoA))) {
        return tilde ? "p | den(2B)" : "p | den(2A)";
    }
    if (divides(prime, denominator_of(minus_r))) {
        return "p | den(r)";
    }
    const BigRat &l = tilde ? p.l2 : p.l1;
    if (divides(prime, denominator_of(l))) {
        return tilde ? "p | den(l2)" : "p | den(l1)";
    }
    const BigInt u = tilde ? BigInt(-p.u) : p.u;
    for (std::size_t j = 0; j < K; ++j) {
        const BigInt m = u + BigInt(static_cast<unsigned long>(j)) * p.v;
        if (m < 0 && divides(prime, m)) {
            return "p | negative u + j v";
        }
    }
    return "";
}

bool DenomReport::ok() const
{
    for (const auto &s : sections) {
        for (const auto &r : s.rows) {
            if (r.failed()) {
                return false;
            }
        }
    }
    return true;
}

UbdSection scan_sequence(const InstanceParams &p, const std::vector<QuadNum> &seq, const std::string &label,
                         bool tilde, std::uint64_t factor_bound)
{
    UbdSection sec;
    sec.label = label;
    sec.tilde = tilde;
    const BigInt u = tilde ? BigInt(-p.u) : p.u;
    for (std::size_t K = 1; K < seq.size(); ++K) {
        DenomRow row;
        row.K = K;
        row.p = u + BigInt(static_cast<unsigned long>(K)) * p.v;
        row.p_prime = row.p > 2 && is_prime(row.p);
        row.denominator = denominator_of(seq[K]);
        if (row.p_prime) {
            row.in_set = row.p.fits_slong_p() && in_prime_set(p, row.p.get_si(), tilde);
        }
        if (row.checked()) {
            row.factors = factor_trial(row.denominator, factor_bound);
            row.exempt = audit_prime(p, row.p, K, tilde);
            row.divides = divides(row.p, row.denominator);
            row.earlier_integral = true;
            for (std::size_t i = 0; i < K; ++i) {
                if (!is_p_integral(seq[i], row.p)) {
                    row.earlier_integral = false;
                    break;
                }
            }
            if (row.exempt.empty() && row.holds()) {
                sec.passing.push_back(row.p);
            }
        }
        sec.rows.push_back(std::move(row));
    }

    // Threshold: first checked row after which nothing fails.
    std::optional<BigInt> threshold;
    for (auto it = sec.rows.rbegin(); it != sec.rows.rend(); ++it) {
        if (!it->checked()) {
            continue;
        }
        if (!it->holds()) {
            break;
        }
        threshold = it->p;
    }
    sec.threshold = threshold;
    for (const auto &r : sec.rows) {
        if (r.checked() && !r.holds() && (!threshold || r.p < *threshold)) {
            sec.exceptional.push_back(r.p);
        }
    }
    return sec;
}

DenomReport verify_ubd(const MinimalForm &mf, std::uint64_t factor_bound)
{
    DenomReport rep;
    rep.Kmax = mf.Kmax;
    rep.sections.push_back(scan_sequence(mf.params, mf.d, "d", false, factor_bound));
    rep.sections.push_back(scan_sequence(mf.params, mf.h, "h", false, factor_bound));
    rep.sections.push_back(scan_sequence(mf.params, mf.d_tilde, "d~", true, factor_bound));
    rep.sections.push_back(scan_sequence(mf.params, mf.h_tilde, "h~", true, factor_bound));
    return rep;
}

std::string to_string(ProbeVerdict::Status s)
{
    switch (s) {
    case ProbeVerdict::Status::Coprime:
        return "coprime";
    case ProbeVerdict::Status::Divisible:
        return "divisible";
    case ProbeVerdict::Status::Inconclusive:
        return "inconclusive";
    }
    return "?";
}

ProbeVerdict lemma_quadratic_probe(const QuadNum &X, const BigRat &R, long p, unsigned tmax)
{
    if (p <= 2 || !is_prime(p)) {
        throw std::invalid_argument("probe needs an odd prime, got " + std::to_string(p));
    }
    if (X.is_rational()) {
        throw std::invalid_argument("probe needs an irrational X");
    }
    const BigInt bp(p);
    if (legendre(BigInt(X.field()), bp) != -1) {
        throw std::invalid_argument(std::to_string(X.field()) + " is a square mod " + std::to_string(p));
    }
    ProbeVerdict v;
    const HalfForm hf = half_form(X);
    if (divides(bp, hf.y)) {
        v.detail = "p divides the y-part of X";
        return v;
    }

    // Norm route: p | (Y + (R+j) Z) iff p | (x + 2(R+j)Z)^2 - M y^2 for inert p.
    long norm_bad = -1;
    for (unsigned j = 0; j < tmax; ++j) {
        const BigRat s = BigRat(hf.x) + 2 * (R + static_cast<long>(j)) * BigRat(hf.Z);
        const BigRat n = s * s - BigRat(hf.M) * BigRat(hf.y) * BigRat(hf.y);
        if (is_p_integral(n, bp) && divides(bp, n.get_num())) {
            norm_bad = static_cast<long>(j) + 1;
            break;
        }
    }

    // Direct route: multiply (X + R)_t by its denominator and test divisibility by p.
    long direct_bad = -1;
    QuadNum acc(1);
    const QuadNum XR = X + QuadNum(R);
    for (unsigned t = 1; t <= tmax; ++t) {
        acc *= XR + QuadNum(static_cast<long>(t - 1));
        const QuadNum num = acc * QuadNum(BigRat(denominator_of(acc)));
        if (is_p_integral(num / QuadNum(p), bp)) {
            direct_bad = static_cast<long>(t);
            break;
        }
    }

    v.routes_agree = norm_bad == direct_bad;
    v.first_bad_t = direct_bad;
    v.status = direct_bad < 0 ? ProbeVerdict::Status::Coprime : ProbeVerdict::Status::Divisible;
    v.detail = v.routes_agree ? "norm and direct routes agree" : "norm route and direct route disagree";
    return v;
}

bool GeneralReport::ok() const
{
    for (const auto *rows : {&rows1, &rows2}) {
        for (const auto &r : *rows) {
            if (r.exempt.empty() && !r.divides) {
                return false;
            }
        }
    }
    return true;
}

namespace
{

BigInt lcm_denominators(const MonomialMap &m, BigInt acc)
{
    for (const auto &[ab, c] : m) {
        const BigInt d = denominator_of(c);
        mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), d.get_mpz_t());
    }
    return acc;
}

std::vector<GeneralRow> scan_general(const InstanceParams &p, const GeneralReport &rep, const OffsetSeries &Z,
                                     const std::vector<QuadNum> &fseq, long prime_bound, bool tilde,
                                     std::size_t Kmax)
{
    std::vector<GeneralRow> rows;
    const std::vector<QuadNum> zc = Z.coeffs();
    for (long q : primes_up_to(prime_bound)) {
        if (!in_prime_set(p, q, tilde)) {
            continue;
        }
        GeneralRow row;
        row.p = q;
        const BigInt bq(q);
        for (std::size_t K = 0; K < fseq.size(); ++K) {
            if (!is_p_integral(fseq[K], bq)) {
                row.seen_in_F = static_cast<long>(K);
                break;
            }
        }
        for (std::size_t i = 0; i < zc.size(); ++i) {
            if (!is_p_integral(zc[i], bq)) {
                row.divides = true;
                row.first_index = static_cast<long>(i);
                break;
            }
        }
        if (divides(bq, BigInt(12))) {
            row.exempt = "p | 12";
        } else if (bq <= rep.N) {
            row.exempt = "p <= N";
        } else if (is_p_integral(rep.kappa / QuadNum(q), bq)) {
            row.exempt = "p | kappa";
        } else if (row.seen_in_F < 0) {
            row.exempt = "p not seen in F' denominators within range";
        } else if (static_cast<std::size_t>(row.seen_in_F + rep.t) > Kmax) {
            row.exempt = "predicted index beyond scan range";
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

GeneralReport ubd_general(const MinimalForm &mf, const DerivComponents &dc, const MonomialMap &m1,
                          const MonomialMap &m2, int k, long prime_bound)
{
    const InstanceParams &p = mf.params;
    if (p.M <= 1) {
        throw std::invalid_argument("general scan needs an irrational r");
    }
    GeneralReport rep;
    rep.k = k;
    const VectorSeries Z = combine(mf, dc, m1, m2, k);
    const OffsetSeries DZ1 = modular_D(BigRat(k), Z.c1);
    const OffsetSeries DZ2 = modular_D(BigRat(k), Z.c2);
    const Decomposition dec = decompose(mf, dc, DZ1, DZ2, k + 2, true);
    rep.m3 = dec.m1_coords;
    rep.m4 = dec.m2_coords;

    BigInt N = 1;
    for (const MonomialMap *m : std::array<const MonomialMap *, 4>{&m1, &m2, &rep.m3, &rep.m4}) {
        N = lcm_denominators(*m, N);
    }
    rep.N = N;

    const std::size_t n = mf.Kmax;
    const auto series = [n](const MonomialMap &m) { return monomial_combination<QuadNum>(m, n); };
    const QuadSeries det = QuadNum(BigRat(N * N)) * (series(m1) * series(rep.m4) - series(m2) * series(rep.m3));
    if (det.is_zero()) {
        throw std::domain_error("m1 m4 - m2 m3 vanishes to the computed order");
    }
    rep.t = det.lead().get_num().get_si();
    rep.kappa = det.coeff(0);

    rep.rows1 = scan_general(p, rep, Z.c1, mf.d, prime_bound, false, mf.Kmax);
    rep.rows2 = scan_general(p, rep, Z.c2, mf.d_tilde, prime_bound, true, mf.Kmax);
    return rep;
}

} // namespace vvmf
