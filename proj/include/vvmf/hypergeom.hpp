#ifndef VVMF_HYPERGEOM_HPP
#define VVMF_HYPERGEOM_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <vvmf/check.hpp>
#include <vvmf/gamma02_forms.hpp>
#include <vvmf/mlde_params.hpp>
#include <vvmf/qseries.hpp>

namespace vvmf
{

/// The two computations of the minimal form (or its derivative) disagree.
class PipelineDisagreement : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// q^base * tail, where tail has integral steps and a nonnegative integral lead.
///
/// Component leading exponents k0/12 + l are arbitrary rationals, so they are
/// kept outside the lattice-bound series.
struct OffsetSeries {
    BigRat base;
    QuadSeries tail;

    /// Coefficient of q^(base + n).
    QuadNum coeff(std::size_t n) const { return tail.at(BigRat(static_cast<long>(n))); }
    /// Known coefficients q^base .. (empty tail still has a precision).
    std::size_t size() const { return tail.size_from(BigRat(0)); }
    std::vector<QuadNum> coeffs() const { return tail.coeffs_from(BigRat(0), size()); }
};

OffsetSeries operator+(const OffsetSeries &x, const OffsetSeries &y);
OffsetSeries operator-(const OffsetSeries &x, const OffsetSeries &y);
/// Product with a holomorphic scalar form (integral exponents).
OffsetSeries operator*(const QuadSeries &m, const OffsetSeries &x);

/// D_k on q^base * tail.
OffsetSeries modular_D(const BigRat &k, const OffsetSeries &x);

/// n-th Taylor coefficient (alpha)_n (beta)_n / ((gamma)_n n!).
QuadNum gauss_2f1(const QuadNum &alpha, const QuadNum &beta, const QuadNum &gamma, unsigned n);

/// D[s][k]: coefficient of q^s in K^-k; C[t][d]: coefficient of q^d in (q^-1 K^-1 - 1)^t.
struct DCTables {
    std::vector<std::vector<BigInt>> D;
    std::vector<std::vector<BigInt>> C;
};

DCTables tables_DC(std::size_t Kmax);

/// f(k) = sum_{m+n=k} 2^(4m+6n) (-r)_n (2A)_2m / ((1+A-B)_m m! n!), k = 0..Kmax.
std::vector<QuadNum> seq_f(const QuadNum &A, const QuadNum &B, const QuadNum &r, std::size_t Kmax);

struct FLists {
    std::vector<QuadNum> f;
    std::vector<QuadNum> f_tilde; ///< A and B exchanged
};

FLists seq_f(const InstanceParams &p, std::size_t Kmax);

/// Normalized weight-0 solutions q^l (1 + sum h(K) q^K), index 0..Kmax with h[0] = 1.
struct HLists {
    std::vector<QuadNum> h;
    std::vector<QuadNum> h_tilde;
};

HLists h_closed(const InstanceParams &p, std::size_t Kmax);
HLists h_closed(const InstanceParams &p, const DCTables &t, const FLists &f, std::size_t Kmax);
HLists h_frobenius(const InstanceParams &p, std::size_t Kmax);

/// Frobenius coefficients c_0..c_Kmax of the weight-0 equation at exponent l.
std::vector<BigRat> frobenius_coeffs(const InstanceParams &p, const BigRat &l, std::size_t Kmax);

/// I(x) = x^2 + (a - 1/6) x + b + c.
BigRat indicial_infinity(const InstanceParams &p, const BigRat &x);

enum class Method { Closed, Frobenius, Both };

Method parse_method(const std::string &name);

struct MinimalForm {
    InstanceParams params;
    std::size_t Kmax = 0;
    std::vector<BigInt> e;        ///< eta^(2 k0) tail, e[0] = 1
    std::vector<QuadNum> h, h_tilde;
    std::vector<QuadNum> d, d_tilde; ///< d[0] = 1
    OffsetSeries comp1;           ///< q^(k0/12 + l1) (1 + sum d(K) q^K)
    OffsetSeries comp2;           ///< q^(k0/12 + l2) (1 + sum d~(K) q^K)
};

/// Full convolution d(K) = sum_{i=0..K} e(i) h(K - i).
std::vector<QuadNum> convolve_eta(const std::vector<BigInt> &e, const std::vector<QuadNum> &h);

MinimalForm minimal_form(const InstanceParams &p, std::size_t Kmax, Method method = Method::Both);

struct DerivComponents {
    std::vector<QuadNum> t1, t2; ///< t[0] = l
    OffsetSeries comp1;
    OffsetSeries comp2;
};

/// t(K) = d(K)(K + l) + 2 k0 sum_{n=1..K} sigma(n) d(K - n), cross-checked against
/// D_k0 applied to the components; throws PipelineDisagreement on mismatch.
DerivComponents deriv_components(const MinimalForm &mf);

/// D_{k0+2} D_{k0} F + a G D_{k0} F + (b G^2 + c E4) F applied to one component.
OffsetSeries mlde_apply(const InstanceParams &p, const OffsetSeries &x);

/// The operator annihilates both components through q^(base + Kmax).
std::vector<CheckResult> mlde_residual_checks(const MinimalForm &mf);

struct VectorSeries {
    std::string label;
    OffsetSeries c1;
    OffsetSeries c2;
};

/// G^a E4^b F' (2a + 4b = k - k0) followed by G^a E4^b D F' (2a + 4b = k - k0 - 2).
std::vector<VectorSeries> weight_basis(const MinimalForm &mf, const DerivComponents &dc, int k);

/// m1 F' + m2 D_k0 F' for monomial coordinate maps m1 (weight k - k0), m2 (weight k - k0 - 2).
VectorSeries combine(const MinimalForm &mf, const DerivComponents &dc, const MonomialMap &m1, const MonomialMap &m2,
                     int k);

struct Decomposition {
    QuadSeries m1;
    QuadSeries m2;
    MonomialMap m1_coords;
    MonomialMap m2_coords;
};

/// Solves Z = m1 F' + m2 D_k0 F' coefficient by coefficient; with `validate`
/// both m's must be forms of weights k - k0 and k - k0 - 2 (NotAFormError otherwise).
Decomposition decompose(const MinimalForm &mf, const DerivComponents &dc, const OffsetSeries &Z1,
                        const OffsetSeries &Z2, int k, bool validate = true);

} // namespace vvmf

#endif
