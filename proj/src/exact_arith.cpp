#include <vvmf/exact_arith.hpp>

#include <cstdlib>
#include <sstream>

namespace vvmf
{

BigRat make_rat(const BigInt &num, const BigInt &den)
{
    if (sgn(den) == 0) {
        throw std::domain_error("zero denominator");
    }
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

BigRat parse_rat(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && s.front() == ' ') {
        s.erase(s.begin());
    }
    while (!s.empty() && s.back() == ' ') {
        s.pop_back();
    }
    if (s.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return BigRat(BigInt(s));
        }
        return make_rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::invalid_argument &) {
        throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
}

std::string to_string(const BigRat &q)
{
    return q.get_str();
}

std::string to_string(const BigInt &z)
{
    return z.get_str();
}

bool is_integer(const BigRat &q)
{
    return q.get_den() == 1;
}

bool is_square_free(long m)
{
    unsigned long n = static_cast<unsigned long>(std::labs(m));
    if (n == 0) {
        return false;
    }
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) {
            return false;
        }
        if (n % p == 0) {
            n /= p;
        }
    }
    return true;
}

bool is_prime(const BigInt &n)
{
    if (n < 2) {
        return false;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

bool is_prime(long n)
{
    return is_prime(BigInt(n));
}

bool rational_sqrt(const BigRat &q, BigRat &root)
{
    if (sgn(q) < 0) {
        return false;
    }
    const BigInt &num = q.get_num();
    const BigInt &den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
        return false;
    }
    root = make_rat(sqrt(num), sqrt(den));
    return true;
}

QuadNum::QuadNum(const BigRat &rat, const BigRat &surd, long M) : rat_(rat), surd_(surd), field_(M)
{
    if (M != 0 && (M == 1 || !is_square_free(M))) {
        throw std::invalid_argument("quadratic field parameter must be square-free and not 0 or 1, got "
                                    + std::to_string(M));
    }
    if (M == 0 && sgn(surd) != 0) {
        throw std::invalid_argument("nonzero surd requires a quadratic field");
    }
}

QuadNum QuadNum::sqrt_of(long M)
{
    return QuadNum(BigRat(0), BigRat(1), M);
}

long QuadNum::join_field(const QuadNum &o) const
{
    if (field_ == 0) {
        return o.field_;
    }
    if (o.field_ == 0 || o.field_ == field_) {
        return field_;
    }
    throw FieldMismatch("cannot combine Q(sqrt " + std::to_string(field_) + ") with Q(sqrt "
                        + std::to_string(o.field_) + ")");
}

QuadNum QuadNum::conjugate() const
{
    QuadNum c(*this);
    c.surd_ = -surd_;
    return c;
}

BigRat QuadNum::norm() const
{
    return rat_ * rat_ - BigRat(field_) * surd_ * surd_;
}

BigRat QuadNum::trace() const
{
    return 2 * rat_;
}

QuadNum QuadNum::in_field(long M) const
{
    if (field_ != 0 && field_ != M && !is_rational()) {
        throw FieldMismatch("value already lives in Q(sqrt " + std::to_string(field_) + ")");
    }
    return QuadNum(rat_, surd_, M);
}

QuadNum &QuadNum::operator+=(const QuadNum &o)
{
    field_ = join_field(o);
    rat_ += o.rat_;
    surd_ += o.surd_;
    return *this;
}

QuadNum &QuadNum::operator-=(const QuadNum &o)
{
    field_ = join_field(o);
    rat_ -= o.rat_;
    surd_ -= o.surd_;
    return *this;
}

QuadNum &QuadNum::operator*=(const QuadNum &o)
{
    const long m = join_field(o);
    if (sgn(surd_) == 0 && sgn(o.surd_) == 0) {
        rat_ *= o.rat_;
    } else if (sgn(o.surd_) == 0) {
        rat_ *= o.rat_;
        surd_ *= o.rat_;
    } else if (sgn(surd_) == 0) {
        surd_ = rat_ * o.surd_;
        rat_ *= o.rat_;
    } else {
        BigRat r = rat_ * o.rat_ + BigRat(m) * surd_ * o.surd_;
        BigRat s = rat_ * o.surd_ + surd_ * o.rat_;
        rat_ = std::move(r);
        surd_ = std::move(s);
    }
    field_ = m;
    return *this;
}

QuadNum &QuadNum::operator/=(const QuadNum &o)
{
    if (o.is_zero()) {
        throw std::domain_error("division by zero in Q(sqrt M)");
    }
    if (sgn(o.surd_) == 0) {
        field_ = join_field(o);
        rat_ /= o.rat_;
        surd_ /= o.rat_;
        return *this;
    }
    const BigRat n = o.norm();
    *this *= o.conjugate();
    rat_ /= n;
    surd_ /= n;
    return *this;
}

QuadNum QuadNum::operator-() const
{
    QuadNum c(*this);
    c.rat_ = -rat_;
    c.surd_ = -surd_;
    return c;
}

bool operator==(const QuadNum &a, const QuadNum &b)
{
    if (a.rat_ != b.rat_ || a.surd_ != b.surd_) {
        return false;
    }
    return a.is_rational() || a.field_ == b.field_;
}

std::string QuadNum::str() const
{
    if (is_rational()) {
        return rat_.get_str();
    }
    std::ostringstream os;
    if (sgn(rat_) != 0) {
        os << rat_.get_str() << (sgn(surd_) > 0 ? " + " : " - ");
    } else if (sgn(surd_) < 0) {
        os << "-";
    }
    const BigRat s = abs(surd_);
    if (s != 1) {
        os << s.get_str() << "*";
    }
    os << "sqrt(" << field_ << ")";
    return os.str();
}

std::pair<BigRat, BigRat> norm_trace(const QuadNum &z)
{
    return {z.norm(), z.trace()};
}

int legendre(const BigInt &M, const BigInt &p)
{
    if (p < 3 || p % 2 == 0 || !is_prime(p)) {
        throw std::invalid_argument("legendre symbol needs an odd prime, got " + p.get_str());
    }
    BigInt a = M % p;
    if (a < 0) {
        a += p;
    }
    if (a == 0) {
        return 0;
    }
    // Euler's criterion.
    BigInt e = (p - 1) / 2;
    BigInt r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r == 1 ? 1 : -1;
}

bool is_algebraic_integer(const QuadNum &z)
{
    return is_integer(z.trace()) && is_integer(z.norm());
}

BigInt denominator_of(const BigRat &q)
{
    return q.get_den();
}

BigInt denominator_of(const QuadNum &z)
{
    if (z.is_rational()) {
        return z.rat().get_den();
    }
    // Every denominator D' satisfies D | 2D' where D = lcm of the component
    // denominators, and D itself always works, so the answer is D or D/2.
    BigInt d;
    mpz_lcm(d.get_mpz_t(), z.rat().get_den_mpz_t(), z.surd().get_den_mpz_t());
    if (d % 2 == 0) {
        const BigInt half = d / 2;
        if (is_algebraic_integer(z * QuadNum(BigRat(half)))) {
            return half;
        }
    }
    return d;
}

bool is_p_integral(const BigRat &q, const BigInt &p)
{
    return q.get_den() % p != 0;
}

bool is_p_integral(const QuadNum &z, const BigInt &p)
{
    return denominator_of(z) % p != 0;
}

HalfForm half_form(const QuadNum &z)
{
    if (z.is_zero()) {
        throw std::domain_error("half_form of zero");
    }
    HalfForm h;
    h.Z = denominator_of(z);
    h.M = z.field();
    const BigRat twice_rat = 2 * h.Z * z.rat();
    const BigRat twice_surd = 2 * h.Z * z.surd();
    h.x = twice_rat.get_num();
    h.y = twice_surd.get_num();
    return h;
}

TrialFactorization factor_trial(BigInt n, std::uint64_t bound)
{
    TrialFactorization out;
    if (n < 0) {
        n = -n;
    }
    if (n == 0) {
        out.cofactor = 0;
        return out;
    }
    for (std::uint64_t p = 2; p <= bound; p += (p == 2 ? 1 : 2)) {
        const BigInt bp(static_cast<unsigned long>(p));
        if (bp * bp > n) {
            break;
        }
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++e;
        }
        if (e > 0) {
            out.factors.emplace_back(bp, e);
        }
    }
    // A leftover below bound^2 is prime once every p <= bound was removed.
    if (n > 1) {
        const BigInt b(static_cast<unsigned long>(bound));
        if (n <= b * b) {
            out.factors.emplace_back(n, 1);
            n = 1;
        }
    }
    out.cofactor = n;
    return out;
}

std::vector<long> primes_up_to(long bound)
{
    std::vector<long> out;
    if (bound < 2) {
        return out;
    }
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    for (long i = 2; i <= bound; ++i) {
        if (composite[static_cast<std::size_t>(i)]) {
            continue;
        }
        out.push_back(i);
        for (long j = i * i; j <= bound; j += i) {
            composite[static_cast<std::size_t>(j)] = true;
        }
    }
    return out;
}

} // namespace vvmf
