#ifndef VVMF_MLDE_PARAMS_HPP
#define VVMF_MLDE_PARAMS_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <vvmf/check.hpp>
#include <vvmf/exact_arith.hpp>

namespace vvmf
{

/// A violated defining relation; `relation()` names it.
class ValidationError : public std::domain_error
{
public:
    ValidationError(std::string relation, const std::string &detail)
        : std::domain_error(relation + ": " + detail), relation_(std::move(relation))
    {
    }
    const std::string &relation() const { return relation_; }

private:
    std::string relation_;
};

/// Leading exponents of the weight-0 system at the two cusps.
///
/// l1, l2 are the exponents at infinity, r1, r2 the indicial roots at the cusp 0.
struct ExponentData {
    int k0 = 0;
    BigRat l1;
    BigRat l2;
    QuadNum r1;
    QuadNum r2;
};

/// Coefficients and derived constants of the weight-k0 equation
/// D^2 F + a G D F + (b G^2 + c E4) F = 0.
struct InstanceParams {
    int k0 = 0;
    BigRat a, b, c;
    BigRat l1, l2;
    QuadNum r;  ///< = r1
    QuadNum r2; ///< conjugate root
    QuadNum A;  ///< r + l1
    QuadNum B;  ///< r + l2
    long M = 0; ///< Q(r) = Q(sqrt M); 0 when r is rational
    BigInt u;   ///< A - B = u / v in lowest terms
    BigInt v;
};

InstanceParams params_from_exponents(const ExponentData &e);

/// Solves l^2 + (a - 1/6) l + b + c = 0 and z^2 - (a + 1/3) z + b + 4c = 0.
///
/// l1 is the root with the smaller denominator (ties: smaller absolute value,
/// then the larger root); r1 carries the +sqrt.
ExponentData roots_from_abc(const BigRat &a, const BigRat &b, const BigRat &c, long M, int k0 = 0);

struct AssumptionVerdict {
    bool a_minus_b_not_integral = false;
    bool l_rational = false;
    bool c_rational = false;
    bool r_quadratic_irrational = false;
    bool v_greater_than_one = false;

    bool all() const
    {
        return a_minus_b_not_integral && l_rational && c_rational && r_quadratic_irrational && v_greater_than_one;
    }
};

AssumptionVerdict check_assumptions(const InstanceParams &p);

/// Exact checks of the relations tying (a, b, c) to (l1, l2, r, A, B).
std::vector<CheckResult> param_algebra_checks(const InstanceParams &p);

// --- Induced representations of Gamma0(2) from characters of Gamma(2) -------

/// Formal e^{2 pi i (t0 + t1 xi2)} with xi2 a fixed quadratic irrational.
class CircleExp
{
public:
    CircleExp() = default;
    CircleExp(BigRat t0, BigRat t1);

    const BigRat &t0() const { return t0_; }
    const BigRat &t1() const { return t1_; }
    bool is_root_of_unity() const { return sgn(t1_) == 0; }

    CircleExp inverse() const;
    friend CircleExp operator*(const CircleExp &x, const CircleExp &y);
    friend bool operator==(const CircleExp &x, const CircleExp &y) = default;

    std::string str() const;

private:
    BigRat t0_{0}; // in [0, 1)
    BigRat t1_{0};
};

/// 2x2 matrix with one nonzero entry per row and column:
/// diag(e0, e1) when !swap, [[0, e0], [e1, 0]] when swap.
struct MonomialMatrix2 {
    bool swap = false;
    CircleExp e0;
    CircleExp e1;

    static MonomialMatrix2 identity() { return {}; }
    bool is_scalar() const { return !swap && e0 == e1; }
    bool trace_is_zero() const { return swap; }
    MonomialMatrix2 inverse() const;
    friend MonomialMatrix2 operator*(const MonomialMatrix2 &x, const MonomialMatrix2 &y);
    friend bool operator==(const MonomialMatrix2 &x, const MonomialMatrix2 &y) = default;
};

enum class Generator { T, TInv, U2, U2Inv, MinusI };

/// Tokens: T, T^-1, U^2, U^-2, -I (also Ti, U2, U-2), separated by spaces or commas.
std::vector<Generator> parse_word(std::string_view text);

/// rho(T) = [[0, 1], [alpha, 0]], rho(U^2) = diag(beta, alpha/beta), rho(-I) = 1
/// with alpha = e(xi1), beta = e(xi2).
MonomialMatrix2 rep_word_eval(const std::vector<Generator> &word, const BigRat &xi1);

/// Sign used to pass from T-eigenvalue exponents m to the exponents l.
enum class LevelShift {
    Plus,  ///< l = m + k0/6 (mod Z)
    Minus, ///< l = m - k0/6 (mod Z)
};

/// Residues mod Z; rationals reduced into [0, 1), quadratic values by their rational part.
struct ExponentClasses {
    BigRat m1, m2;
    BigRat l1, l2;
    QuadNum r1, r2;
};

ExponentClasses induced_exponent_classes(const BigRat &xi1, const QuadNum &xi2, int k0,
                                         LevelShift shift = LevelShift::Minus);

/// Adds integer shifts (l1, l2, r1, r2) to the class representatives.
ExponentData realize_exponents(const ExponentClasses &cls, const std::array<long, 4> &shifts, int k0);

BigRat frac_part(const BigRat &q);

} // namespace vvmf

#endif
