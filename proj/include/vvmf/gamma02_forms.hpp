#ifndef VVMF_GAMMA02_FORMS_HPP
#define VVMF_GAMMA02_FORMS_HPP

#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <vvmf/check.hpp>
#include <vvmf/exact_arith.hpp>
#include <vvmf/qseries.hpp>

namespace vvmf
{

// Conventions: a routine "to order N" returns a series whose coefficients are
// known through q^N relative to its leading exponent, i.e. N + 1 known terms.

struct FormSeries {
    int weight = 0;
    RatSeries series;
};

/// Sum of the k-th powers of the divisors of n (memoized).
BigInt divisor_sigma(unsigned k, unsigned long n);

FormSeries eisenstein_E2(std::size_t N);
FormSeries eisenstein_E4(std::size_t N);

/// G = -E2(tau) + 2 E2(2 tau).
FormSeries weight2_G(std::size_t N);

/// G from the divisor-parity expansion 1 + 24 sum sigma(odd) q^odd + sum (24 sigma(2n) - 48 sigma(n)) q^2n.
FormSeries weight2_G_parity(std::size_t N);

/// eta^twok = q^(twok/24) prod (1 - q^n)^twok; twok must be even.
FormSeries eta_pow(long twok, std::size_t N);

/// Integer tail e(0..N) with eta^twok = q^(twok/24) (1 + sum_{K>=1} e(K) q^K).
std::vector<BigInt> eta_tail(long twok, std::size_t N);

struct Hauptmodul {
    RatSeries K; ///< 192 G^2 / (E4 - G^2) = q^-1 (1 + 40 q + ...)
    RatSeries J; ///< K / 64
};

/// Hauptmodul known through q^(N-1) (N + 1 terms from q^-1); N >= 2.
Hauptmodul hauptmodul(std::size_t N);

/// Memoized generation of the standard forms, keyed by (name, order).
/// Returned references stay valid for the lifetime of the cache.
class FormCache
{
public:
    const RatSeries &E2(std::size_t N);
    const RatSeries &E4(std::size_t N);
    const RatSeries &G(std::size_t N);
    /// G^a E4^b to order N.
    const RatSeries &monomial(unsigned a, unsigned b, std::size_t N);
    const Hauptmodul &hauptmodul(std::size_t N);

private:
    template <typename F>
    const RatSeries &memo(const std::string &name, std::size_t N, F &&make);

    std::mutex mu_;
    std::map<std::pair<std::string, std::size_t>, RatSeries> series_;
    std::map<std::size_t, Hauptmodul> haupt_;
};

/// Reinterpret a rational series over the coefficient ring R.
template <typename R>
Series<R> to_ring(const RatSeries &s);

template <>
inline RatSeries to_ring<BigRat>(const RatSeries &s)
{
    return s;
}

template <>
inline QuadSeries to_ring<QuadNum>(const RatSeries &s)
{
    return promote(s);
}

/// D_k u = theta(u) - (k/12) E2 u.
template <typename R>
Series<R> modular_D(const BigRat &k, const Series<R> &u)
{
    if (u.ramification() != 1) {
        throw LatticeError("modular derivative needs an integral-step q-expansion");
    }
    if (u.is_zero()) {
        return u;
    }
    const RatSeries e2 = eisenstein_E2(u.size() - 1).series;
    const BigRat w = k / 12;
    return theta(u) - R(w) * (to_ring<R>(e2) * u);
}

template <typename R>
Series<R> modular_D(long k, const Series<R> &u)
{
    return modular_D(BigRat(k), u);
}

/// Identities for G, E2, E4, the Hauptmodul and eta, verified as exact
/// series equalities through q^N.
std::vector<CheckResult> identity_suite(std::size_t N);

struct Theta4AndE {
    RatSeries theta4; ///< (1 + 2 sum q^(n^2))^4
    RatSeries E;      ///< eta(4 tau)^8 / eta(2 tau)^4
};

Theta4AndE theta4_and_E(std::size_t N);

/// Checks G = theta^4 + 16 E and the r4 divisor formulas through q^N.
std::vector<CheckResult> theta_identity_checks(std::size_t N);

/// G|_2 S as an exact series in q^(1/4), N + 1 terms.
RatSeries g_slash_S(std::size_t N);

/// All (a, b) >= 0 with 2a + 4b = k, largest a first.
std::vector<std::pair<unsigned, unsigned>> monomial_basis(int k);

class NotAFormError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

using MonomialMap = std::map<std::pair<unsigned, unsigned>, QuadNum>;

/// Coordinates of f in the basis {G^a E4^b : 2a + 4b = k}.
///
/// Solves the square system on the first r(k) coefficients and checks every
/// other known coefficient; throws NotAFormError when f is not in the span.
template <typename R>
std::map<std::pair<unsigned, unsigned>, R> monomial_coordinates(const Series<R> &f, int k);

/// sum c_{a,b} G^a E4^b to order N.
template <typename R>
Series<R> monomial_combination(const std::map<std::pair<unsigned, unsigned>, R> &coords, std::size_t N);

} // namespace vvmf

#endif
