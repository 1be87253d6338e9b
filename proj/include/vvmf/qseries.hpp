#ifndef VVMF_QSERIES_HPP
#define VVMF_QSERIES_HPP

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <vvmf/exact_arith.hpp>

namespace vvmf
{

// Every leading exponent is a multiple of 1/kLattice.
inline constexpr long kLattice = 24;

class LatticeError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Reading a coefficient that the truncation does not determine.
class PrecisionError : public std::out_of_range
{
public:
    using std::out_of_range::out_of_range;
};

/// Truncated pure q-expansion q^lead * sum_n c_n q^(n/ram).
///
/// Only coefficients c_0 .. c_{size()-1} are known; the series is determined
/// modulo q^precision() with precision() = lead + size()/ram. A nonzero series
/// always has c_0 != 0. A series with no known nonzero coefficient is stored
/// with an empty coefficient list and lead equal to its precision (O(q^lead)).
template <typename R>
class Series
{
public:
    Series() : lead_(0) {}

    Series(BigRat lead, std::vector<R> coeffs, long ram = 1) : lead_(std::move(lead)), ram_(ram), c_(std::move(coeffs))
    {
        check_lattice();
        normalize();
    }

    /// O(q^precision) with no known terms.
    static Series zero(BigRat precision, long ram = 1)
    {
        return Series(std::move(precision), {}, ram);
    }

    static Series constant(const R &c, std::size_t size)
    {
        std::vector<R> v(size, R(0));
        if (size > 0) {
            v[0] = c;
        }
        return Series(BigRat(0), std::move(v));
    }

    static Series one(std::size_t size) { return constant(R(1), size); }

    const BigRat &lead() const { return lead_; }
    long ramification() const { return ram_; }
    std::size_t size() const { return c_.size(); }
    const std::vector<R> &coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    BigRat precision() const { return lead_ + frac(static_cast<long>(c_.size()), ram_); }

    const R &coeff(std::size_t i) const
    {
        if (i >= c_.size()) {
            throw PrecisionError("coefficient index " + std::to_string(i) + " beyond truncation order "
                                 + std::to_string(c_.size()));
        }
        return c_[i];
    }

    /// Coefficient of q^e; zero below the lead, an error at or beyond precision().
    R at(const BigRat &e) const
    {
        const BigRat steps = (e - lead_) * ram_;
        if (!is_integer(steps)) {
            throw LatticeError("exponent " + e.get_str() + " is not on this series' lattice");
        }
        if (e >= precision()) {
            throw PrecisionError("exponent " + e.get_str() + " not determined (precision " + precision().get_str()
                                 + ")");
        }
        if (sgn(steps) < 0) {
            return R(0);
        }
        return c_[steps.get_num().get_ui()];
    }

    /// Coefficients of q^(base + n/ram) for n = 0 .. count-1.
    std::vector<R> coeffs_from(const BigRat &base, std::size_t count) const
    {
        std::vector<R> out;
        out.reserve(count);
        for (std::size_t n = 0; n < count; ++n) {
            out.push_back(at(base + frac(static_cast<long>(n), ram_)));
        }
        return out;
    }

    /// Number of determined coefficients counted from exponent `base` (<= lead).
    std::size_t size_from(const BigRat &base) const
    {
        const BigRat steps = (precision() - base) * ram_;
        if (!is_integer(steps)) {
            throw LatticeError("base exponent off lattice");
        }
        return sgn(steps) <= 0 ? 0 : steps.get_num().get_ui();
    }

    /// Keep at most n known coefficients.
    Series truncated(std::size_t n) const
    {
        if (n >= c_.size()) {
            return *this;
        }
        return Series(lead_, std::vector<R>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)), ram_);
    }

    /// Truncate so that the result is determined exactly below q^p.
    Series truncated_at(const BigRat &p) const
    {
        if (p >= precision()) {
            return *this;
        }
        if (p <= lead_) {
            return zero(p, ram_);
        }
        const BigRat steps = (p - lead_) * ram_;
        if (!is_integer(steps)) {
            throw LatticeError("truncation point off lattice");
        }
        return truncated(steps.get_num().get_ui());
    }

    Series operator-() const
    {
        Series s(*this);
        for (auto &x : s.c_) {
            x = -x;
        }
        return s;
    }

    Series &operator+=(const Series &o) { return *this = add(*this, o, false); }
    Series &operator-=(const Series &o) { return *this = add(*this, o, true); }
    friend Series operator+(const Series &a, const Series &b) { return add(a, b, false); }
    friend Series operator-(const Series &a, const Series &b) { return add(a, b, true); }

    friend Series operator*(const Series &a, const Series &b)
    {
        if (a.ram_ != b.ram_) {
            throw LatticeError("series with different ramification");
        }
        const BigRat lead = a.lead_ + b.lead_;
        const std::size_t n = std::min(a.c_.size(), b.c_.size());
        if (a.is_zero() || b.is_zero()) {
            // A zero series stores its precision as its lead, so this is O(q^(pa + lb)) etc.
            return zero(lead, a.ram_);
        }
        std::vector<R> out(n, R(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (::vvmf::is_zero(a.c_[i])) {
                continue;
            }
            for (std::size_t j = 0; i + j < n; ++j) {
                out[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return Series(lead, std::move(out), a.ram_);
    }

    friend Series operator*(const R &s, const Series &a)
    {
        if (::vvmf::is_zero(s)) {
            return zero(a.precision(), a.ram_);
        }
        Series out(a);
        for (auto &x : out.c_) {
            x = s * x;
        }
        return out;
    }

    friend Series operator*(const Series &a, const R &s) { return s * a; }

    friend bool operator==(const Series &a, const Series &b)
    {
        return a.lead_ == b.lead_ && a.ram_ == b.ram_ && a.c_ == b.c_;
    }

    /// Multiply by q^e.
    Series shifted(const BigRat &e) const
    {
        Series s(*this);
        s.lead_ += e;
        s.check_lattice();
        return s;
    }

    std::string str(std::size_t max_terms = 8) const
    {
        std::ostringstream os;
        os << "q^{" << lead_.get_str() << "}*(";
        const std::size_t n = std::min(max_terms, c_.size());
        bool first = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (::vvmf::is_zero(c_[i])) {
                continue;
            }
            if (!first) {
                os << " + ";
            }
            first = false;
            os << "(" << to_string(c_[i]) << ")";
            if (i > 0) {
                os << " q^" << frac(static_cast<long>(i), ram_).get_str();
            }
        }
        if (first) {
            os << "0";
        }
        os << " + O(q^" << frac(static_cast<long>(c_.size()), ram_).get_str() << "))";
        return os.str();
    }

private:
    void check_lattice() const
    {
        if (ram_ <= 0 || kLattice % ram_ != 0) {
            throw LatticeError("ramification must divide " + std::to_string(kLattice));
        }
        if (!is_integer(lead_ * kLattice)) {
            throw LatticeError("leading exponent " + lead_.get_str() + " is not on the 1/"
                               + std::to_string(kLattice) + " lattice");
        }
    }

    void normalize()
    {
        std::size_t k = 0;
        while (k < c_.size() && ::vvmf::is_zero(c_[k])) {
            ++k;
        }
        if (k == 0) {
            return;
        }
        lead_ += frac(static_cast<long>(k), ram_);
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(k));
    }

    static Series add(const Series &a, const Series &b, bool subtract)
    {
        if (a.ram_ != b.ram_) {
            throw LatticeError("series with different ramification");
        }
        const BigRat off = (a.lead_ - b.lead_) * a.ram_;
        if (!is_integer(off)) {
            throw LatticeError("leading exponents differ by a non-lattice amount");
        }
        const BigRat prec = std::min(a.precision(), b.precision());
        const BigRat lead = std::min(a.lead_, b.lead_);
        if (prec <= lead) {
            return zero(prec, a.ram_);
        }
        const std::size_t n = BigRat((prec - lead) * a.ram_).get_num().get_ui();
        std::vector<R> out(n, R(0));
        auto accumulate = [&](const Series &s, bool neg) {
            const std::size_t o = BigRat((s.lead_ - lead) * a.ram_).get_num().get_ui();
            for (std::size_t i = 0; i < s.c_.size() && o + i < n; ++i) {
                if (neg) {
                    out[o + i] -= s.c_[i];
                } else {
                    out[o + i] += s.c_[i];
                }
            }
        };
        accumulate(a, false);
        accumulate(b, subtract);
        return Series(lead, std::move(out), a.ram_);
    }

    BigRat lead_;
    long ram_ = 1;
    std::vector<R> c_;
};

using RatSeries = Series<BigRat>;
using QuadSeries = Series<QuadNum>;

inline QuadSeries promote(const RatSeries &s)
{
    std::vector<QuadNum> c;
    c.reserve(s.size());
    for (const auto &x : s.coeffs()) {
        c.emplace_back(x);
    }
    if (c.empty()) {
        return QuadSeries::zero(s.lead(), s.ramification());
    }
    return QuadSeries(s.lead(), std::move(c), s.ramification());
}

inline QuadSeries promote(const QuadSeries &s)
{
    return s;
}

/// Multiplicative inverse; the known size is preserved.
template <typename R>
Series<R> series_inv(const Series<R> &u)
{
    if (u.is_zero()) {
        throw std::domain_error("inverse of a series with no known nonzero term");
    }
    const auto &c = u.coeffs();
    const std::size_t n = c.size();
    const R inv0 = R(1) / c[0];
    std::vector<R> w(n, R(0));
    w[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
        R acc(0);
        for (std::size_t j = 1; j <= k; ++j) {
            if (!is_zero(c[j])) {
                acc += c[j] * w[k - j];
            }
        }
        w[k] = -(acc * inv0);
    }
    return Series<R>(-u.lead(), std::move(w), u.ramification());
}

/// q d/dq.
template <typename R>
Series<R> theta(const Series<R> &u)
{
    if (u.is_zero()) {
        return u;
    }
    std::vector<R> out;
    out.reserve(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const BigRat e = u.lead() + frac(static_cast<long>(i), u.ramification());
        out.push_back(R(e) * u.coeffs()[i]);
    }
    return Series<R>(u.lead(), std::move(out), u.ramification());
}

/// u^k for integer k (negative exponents go through series_inv).
template <typename R>
Series<R> series_pow(const Series<R> &u, long k)
{
    if (k < 0) {
        return series_pow(series_inv(u), -k);
    }
    Series<R> result = Series<R>::one(u.size());
    if (u.ramification() != 1) {
        result = Series<R>(BigRat(0), result.coeffs(), u.ramification());
    }
    Series<R> base = u;
    while (k > 0) {
        if (k & 1) {
            result = result * base;
        }
        k >>= 1;
        if (k > 0) {
            base = base * base;
        }
    }
    return result;
}

/// (1 + X)^gamma for a series starting exactly with 1 at exponent 0.
///
/// Uses the first-order recurrence obtained from u * w' = gamma * u' * w, which
/// agrees with the binomial sum of gen_binomial(gamma, t) X^t term by term.
template <typename R>
Series<R> series_pow_binomial(const Series<R> &u, const R &gamma)
{
    if (u.is_zero() || sgn(u.lead()) != 0 || u.coeffs()[0] != R(1)) {
        throw std::domain_error("binomial power needs a series of the form 1 + O(q)");
    }
    const auto &c = u.coeffs();
    const std::size_t n = c.size();
    std::vector<R> w(n, R(0));
    w[0] = R(1);
    for (std::size_t m = 1; m < n; ++m) {
        R acc(0);
        for (std::size_t k = 1; k <= m; ++k) {
            if (is_zero(c[k])) {
                continue;
            }
            const R weight = gamma * R(static_cast<long>(k)) - R(static_cast<long>(m - k));
            acc += weight * c[k] * w[m - k];
        }
        w[m] = acc / R(static_cast<long>(m));
    }
    return Series<R>(BigRat(0), std::move(w), u.ramification());
}

/// The substitution q -> q^factor (factor > 0), e.g. factor 2 for f(2 tau)
/// and 1/4 for f(tau/4).
template <typename R>
Series<R> substitute(const Series<R> &u, const BigRat &factor)
{
    if (sgn(factor) <= 0) {
        throw std::domain_error("substitution factor must be positive");
    }
    const BigRat lead = u.lead() * factor;
    // new step = factor / ram = num / (den * ram)
    const long num = factor.get_num().get_si();
    const long ram = factor.get_den().get_si() * u.ramification();
    if (u.is_zero()) {
        return Series<R>::zero(lead, ram);
    }
    std::vector<R> out(u.size() * static_cast<std::size_t>(num), R(0));
    for (std::size_t i = 0; i < u.size(); ++i) {
        out[i * static_cast<std::size_t>(num)] = u.coeffs()[i];
    }
    return Series<R>(lead, std::move(out), ram);
}

} // namespace vvmf

#endif
