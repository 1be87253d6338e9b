#ifndef VVMF_DENOM_ANALYSIS_HPP
#define VVMF_DENOM_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <vvmf/exact_arith.hpp>
#include <vvmf/hypergeom.hpp>
#include <vvmf/mlde_params.hpp>

namespace vvmf
{

inline constexpr std::uint64_t kDefaultFactorBound = 1'000'000;

/// S: odd p with (M/p) = -1 and p = u (mod v); S~ uses -u.
struct PrimeSets {
    std::vector<long> S;
    std::vector<long> S_tilde;
    long bound = 0;
};

bool in_prime_set(const InstanceParams &p, long prime, bool tilde);
PrimeSets prime_sets(const InstanceParams &p, long bound);

/// Denominator of one coefficient together with the primes from a list that divide it.
struct ScanEntry {
    std::size_t K = 0;
    BigInt denominator;
    TrialFactorization factors;
    std::vector<long> dividing;
};

std::vector<ScanEntry> denom_scan(const std::vector<QuadNum> &seq, const std::vector<long> &primes,
                                  std::uint64_t factor_bound = kDefaultFactorBound);

/// Side conditions of the unbounded-denominator argument for p = p_K.
/// Returns the first failed condition, or an empty string when p is audited.
std::string audit_prime(const InstanceParams &p, const BigInt &prime, std::size_t K, bool tilde);

struct DenomRow {
    std::size_t K = 0;
    BigInt p;                 ///< u + K v (or -u + K v)
    bool p_prime = false;
    bool in_set = false;
    std::string exempt;       ///< nonempty when an audited condition fails
    bool divides = false;     ///< p | den(seq(K))
    bool earlier_integral = false; ///< seq(i) p-integral for all i < K
    BigInt denominator;
    TrialFactorization factors;

    bool checked() const { return p_prime && in_set; }
    bool holds() const { return divides && earlier_integral; }
    bool failed() const { return checked() && exempt.empty() && !holds(); }
};

struct UbdSection {
    std::string label; ///< "d", "h", "d~", "h~"
    bool tilde = false;
    std::vector<DenomRow> rows;
    std::optional<BigInt> threshold;   ///< smallest p_K from which every checked row holds
    std::vector<BigInt> exceptional;   ///< checked primes below the threshold that fail
    std::vector<BigInt> passing;       ///< audited primes where the claim holds
};

struct DenomReport {
    std::size_t Kmax = 0;
    std::vector<UbdSection> sections;

    /// No audited row fails.
    bool ok() const;
};

UbdSection scan_sequence(const InstanceParams &p, const std::vector<QuadNum> &seq, const std::string &label,
                         bool tilde, std::uint64_t factor_bound = kDefaultFactorBound);

DenomReport verify_ubd(const MinimalForm &mf, std::uint64_t factor_bound = kDefaultFactorBound);

struct ProbeVerdict {
    enum class Status { Coprime, Divisible, Inconclusive };
    Status status = Status::Inconclusive;
    long first_bad_t = -1;      ///< first t with p | numerator((X+R)_t), -1 when none
    bool routes_agree = true;   ///< norm test and direct Pochhammer products give the same verdict
    std::string detail;
};

std::string to_string(ProbeVerdict::Status s);

/// For p not dividing the y-part of X: p divides no numerator of (X + R)_t, t <= tmax.
/// Throws std::invalid_argument when p is not an odd prime, M is a residue mod p, or X is rational.
ProbeVerdict lemma_quadratic_probe(const QuadNum &X, const BigRat &R, long p, unsigned tmax);

struct GeneralRow {
    long p = 0;
    std::string exempt;
    bool divides = false;     ///< p divides the denominator of some Z coefficient
    long first_index = -1;    ///< first such coefficient offset
    long seen_in_F = -1;      ///< first K with p | den of the matching F' component
};

struct GeneralReport {
    int k = 0;
    BigInt N;           ///< common denominator of m1..m4
    long t = -1;        ///< order of N^2 (m1 m4 - m2 m3)
    QuadNum kappa;      ///< its leading coefficient
    MonomialMap m3, m4; ///< D_k Z = m3 F' + m4 D F'
    std::vector<GeneralRow> rows1; ///< Z1 against S
    std::vector<GeneralRow> rows2; ///< Z2 against S~

    bool ok() const;
};

/// Builds Z = m1 F' + m2 D F' of weight k and scans primes of S, S~ up to `prime_bound`.
GeneralReport ubd_general(const MinimalForm &mf, const DerivComponents &dc, const MonomialMap &m1,
                          const MonomialMap &m2, int k, long prime_bound);

} // namespace vvmf

#endif
