#ifndef VVMF_EXACT_ARITH_HPP
#define VVMF_EXACT_ARITH_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace vvmf
{

using BigInt = mpz_class;
using BigRat = mpq_class;

// Raised when two quadratic values from different fields meet.
class FieldMismatch : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

BigRat make_rat(const BigInt &num, const BigInt &den);

/// Canonical n/d.
inline BigRat frac(long n, long d)
{
    BigRat q(n, d);
    q.canonicalize();
    return q;
}

BigRat parse_rat(std::string_view text);
std::string to_string(const BigRat &q);
std::string to_string(const BigInt &z);

bool is_integer(const BigRat &q);
bool is_square_free(long m);
bool is_prime(const BigInt &n);
bool is_prime(long n);

/// Rational square root if q is the square of a rational, otherwise false.
bool rational_sqrt(const BigRat &q, BigRat &root);

/// Element rat + surd * sqrt(M) of Q(sqrt M).
///
/// A value whose field tag is 0 is a plain rational that has not been bound to
/// any quadratic field yet; it combines freely with values of any field. Once a
/// nonzero surd appears the field tag is fixed, and mixing two different
/// fields throws FieldMismatch.
class QuadNum
{
public:
    QuadNum() = default;
    QuadNum(long v) : rat_(v) {}
    QuadNum(const BigInt &v) : rat_(v) {}
    QuadNum(const BigRat &v) : rat_(v) {}
    QuadNum(const BigRat &rat, const BigRat &surd, long M);

    /// sqrt(M) itself.
    static QuadNum sqrt_of(long M);

    const BigRat &rat() const { return rat_; }
    const BigRat &surd() const { return surd_; }
    long field() const { return field_; }

    bool is_rational() const { return sgn(surd_) == 0; }
    bool is_zero() const { return sgn(rat_) == 0 && sgn(surd_) == 0; }

    QuadNum conjugate() const;
    BigRat norm() const;
    BigRat trace() const;

    /// Same value with the field tag forced to M (value must be rational or already in M).
    QuadNum in_field(long M) const;

    QuadNum &operator+=(const QuadNum &o);
    QuadNum &operator-=(const QuadNum &o);
    QuadNum &operator*=(const QuadNum &o);
    QuadNum &operator/=(const QuadNum &o);

    friend QuadNum operator+(QuadNum a, const QuadNum &b) { return a += b; }
    friend QuadNum operator-(QuadNum a, const QuadNum &b) { return a -= b; }
    friend QuadNum operator*(QuadNum a, const QuadNum &b) { return a *= b; }
    friend QuadNum operator/(QuadNum a, const QuadNum &b) { return a /= b; }
    QuadNum operator-() const;

    friend bool operator==(const QuadNum &a, const QuadNum &b);
    friend bool operator!=(const QuadNum &a, const QuadNum &b) { return !(a == b); }

    std::string str() const;

private:
    long join_field(const QuadNum &o) const;

    BigRat rat_{0};
    BigRat surd_{0};
    long field_ = 0;
};

// Scalar traits used by the generic series and linear-algebra code.
inline bool is_zero(const BigRat &q) { return sgn(q) == 0; }
inline bool is_zero(const QuadNum &z) { return z.is_zero(); }
inline std::string to_string(const QuadNum &z) { return z.str(); }

/// (z)_n = z (z+1) ... (z+n-1).
template <typename T>
T pochhammer(const T &z, unsigned n)
{
    T acc(1);
    for (unsigned i = 0; i < n; ++i) {
        acc *= z + T(static_cast<long>(i));
    }
    return acc;
}

/// binom(z, t) = z (z-1) ... (z-t+1) / t!  (equivalently (-1)^t (-z)_t / t!).
template <typename T>
T gen_binomial(const T &z, unsigned t)
{
    T num(1);
    BigInt fact = 1;
    for (unsigned i = 0; i < t; ++i) {
        num *= z - T(static_cast<long>(i));
        fact *= i + 1;
    }
    return num / T(BigRat(fact));
}

std::pair<BigRat, BigRat> norm_trace(const QuadNum &z);

/// Legendre symbol (M / p) for an odd prime p.
int legendre(const BigInt &M, const BigInt &p);

/// Trace and norm are integers.
bool is_algebraic_integer(const QuadNum &z);

/// Smallest positive integer Z with Z*z an algebraic integer (1 for z = 0).
BigInt denominator_of(const BigRat &q);
BigInt denominator_of(const QuadNum &z);

bool is_p_integral(const BigRat &q, const BigInt &p);
bool is_p_integral(const QuadNum &z, const BigInt &p);

/// Z*z = (x + y sqrt M) / 2 with Z the denominator of z.
struct HalfForm {
    BigInt Z;
    BigInt x;
    BigInt y;
    long M = 0;
};

HalfForm half_form(const QuadNum &z);

/// Prime factorisation by trial division up to `bound`; whatever is left over
/// (1 when fully factored) is returned in `cofactor`.
struct TrialFactorization {
    std::vector<std::pair<BigInt, unsigned>> factors;
    BigInt cofactor;
};

TrialFactorization factor_trial(BigInt n, std::uint64_t bound);

std::vector<long> primes_up_to(long bound);

} // namespace vvmf

#endif
