#include <vvmf/mlde_params.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace vvmf
{

BigRat frac_part(const BigRat &q)
{
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return q - BigRat(fl);
}

namespace
{

QuadNum frac_part(const QuadNum &z)
{
    return QuadNum(vvmf::frac_part(z.rat()), z.surd(), z.field());
}

long common_field(const QuadNum &x, const QuadNum &y)
{
    if (x.field() != 0 && y.field() != 0 && x.field() != y.field()) {
        throw ValidationError("r1, r2 in one quadratic field", x.str() + " vs " + y.str());
    }
    return x.field() != 0 ? x.field() : y.field();
}

} // namespace

InstanceParams params_from_exponents(const ExponentData &e)
{
    const BigRat diff = e.l1 - e.l2;
    if (is_integer(diff)) {
        throw ValidationError("l1 - l2 not in Z", "l1 - l2 = " + to_string(diff));
    }
    const long M = common_field(e.r1, e.r2);
    const QuadNum sum = QuadNum(e.l1 + e.l2) + e.r1 + e.r2;
    if (sum != QuadNum(frac(1, 2))) {
        throw ValidationError("l1 + l2 + r1 + r2 = 1/2", "sum is " + sum.str());
    }
    if (!e.r1.is_rational() && e.r2 != e.r1.conjugate()) {
        throw ValidationError("r2 = conjugate of r1", e.r1.str() + ", " + e.r2.str());
    }
    const QuadNum prod = e.r1 * e.r2;
    if (!prod.is_rational()) {
        throw ValidationError("r1 r2 rational", prod.str());
    }

    InstanceParams p;
    p.k0 = e.k0;
    p.l1 = e.l1;
    p.l2 = e.l2;
    p.a = frac(1, 6) - e.l1 - e.l2;
    p.c = (prod.rat() - e.l1 * e.l2) / 3;
    p.b = e.l1 * e.l2 - p.c;
    p.r = e.r1;
    p.r2 = e.r2;
    p.A = e.r1 + QuadNum(e.l1);
    p.B = e.r1 + QuadNum(e.l2);
    p.M = M;
    p.u = diff.get_num();
    p.v = diff.get_den();
    return p;
}

ExponentData roots_from_abc(const BigRat &a, const BigRat &b, const BigRat &c, long M, int k0)
{
    const BigRat s = a - frac(1, 6);
    const BigRat ldisc = s * s - 4 * (b + c);
    BigRat root;
    if (!rational_sqrt(ldisc, root)) {
        throw ValidationError("l-discriminant is a rational square", to_string(ldisc));
    }
    if (sgn(root) == 0) {
        throw ValidationError("l1 - l2 not in Z", "double root " + to_string(BigRat(-s / 2)));
    }
    BigRat x = (-s + root) / 2;
    BigRat y = (-s - root) / 2;
    const auto key = [](const BigRat &q) { return std::make_pair(BigInt(q.get_den()), BigRat(abs(q))); };
    if (key(y) < key(x) || (key(y) == key(x) && y > x)) {
        std::swap(x, y);
    }

    ExponentData e;
    e.k0 = k0;
    e.l1 = x;
    e.l2 = y;

    const BigRat t = a + frac(1, 3);
    const BigRat rdisc = t * t - 4 * (b + 4 * c);
    if (rational_sqrt(rdisc, root)) {
        e.r1 = QuadNum((t + root) / 2);
        e.r2 = QuadNum((t - root) / 2);
        return e;
    }
    if (M <= 1 || !is_square_free(M)) {
        throw ValidationError("r-discriminant is M times a rational square",
                              "need a square-free M > 1, got " + std::to_string(M));
    }
    if (!rational_sqrt(rdisc / M, root)) {
        throw ValidationError("r-discriminant is M times a rational square",
                              to_string(rdisc) + " / " + std::to_string(M));
    }
    e.r1 = QuadNum(t / 2, root / 2, M);
    e.r2 = QuadNum(t / 2, -root / 2, M);
    return e;
}

AssumptionVerdict check_assumptions(const InstanceParams &p)
{
    AssumptionVerdict v;
    v.a_minus_b_not_integral = !is_integer(p.l1 - p.l2);
    v.l_rational = true; // l1, l2 are stored as rationals
    v.c_rational = true;
    v.r_quadratic_irrational = !p.r.is_rational() && p.M > 1 && is_square_free(p.M);
    v.v_greater_than_one = p.v > 1;
    return v;
}

std::vector<CheckResult> param_algebra_checks(const InstanceParams &p)
{
    std::vector<CheckResult> out;
    const auto add = [&out](std::string name, const QuadNum &lhs, const QuadNum &rhs) {
        out.push_back({std::move(name), lhs == rhs, lhs.str() + " vs " + rhs.str()});
    };
    const QuadNum a(p.a), b(p.b), c(p.c), l1(p.l1), l2(p.l2);
    const QuadNum &r = p.r;

    add("A + B + 1 = 2r + (7 - 6a)/6", p.A + p.B + QuadNum(1),
        QuadNum(2) * r + QuadNum((7 - 6 * p.a) / 6));
    add("AB = (r - 6c)/2", p.A * p.B, (r - QuadNum(6) * c) / QuadNum(2));

    const QuadNum s = QuadNum(2) * r + QuadNum((1 - 6 * p.a) / 6);
    const QuadNum disc = s * s - QuadNum(2) * (r - QuadNum(6) * c);
    add("discriminant = (l1 - l2)^2", disc, (l1 - l2) * (l1 - l2));
    add("A is a root", p.A * p.A - s * p.A + (r - QuadNum(6) * c) / QuadNum(2), QuadNum(0));
    add("B is a root", p.B * p.B - s * p.B + (r - QuadNum(6) * c) / QuadNum(2), QuadNum(0));

    add("l1 + l2 + r1 + r2 = 1/2", l1 + l2 + r + p.r2, QuadNum(frac(1, 2)));
    add("r indicial root at 0", r * r - (a + QuadNum(frac(1, 3))) * r + b + QuadNum(4) * c, QuadNum(0));
    add("r2 indicial root at 0", p.r2 * p.r2 - (a + QuadNum(frac(1, 3))) * p.r2 + b + QuadNum(4) * c,
        QuadNum(0));
    const QuadNum sl = a - QuadNum(frac(1, 6));
    add("l1 indicial root at infinity", l1 * l1 + sl * l1 + b + c, QuadNum(0));
    add("l2 indicial root at infinity", l2 * l2 + sl * l2 + b + c, QuadNum(0));
    add("A - B = u/v", p.A - p.B, QuadNum(make_rat(p.u, p.v)));
    return out;
}

// --- CircleExp / MonomialMatrix2 ---------------------------------------------

CircleExp::CircleExp(BigRat t0, BigRat t1) : t0_(vvmf::frac_part(t0)), t1_(std::move(t1)) {}

CircleExp CircleExp::inverse() const
{
    return CircleExp(-t0_, -t1_);
}

CircleExp operator*(const CircleExp &x, const CircleExp &y)
{
    return CircleExp(x.t0_ + y.t0_, x.t1_ + y.t1_);
}

std::string CircleExp::str() const
{
    return "e(" + to_string(t0_) + " + " + to_string(t1_) + " xi2)";
}

MonomialMatrix2 MonomialMatrix2::inverse() const
{
    if (!swap) {
        return {false, e0.inverse(), e1.inverse()};
    }
    return {true, e1.inverse(), e0.inverse()};
}

MonomialMatrix2 operator*(const MonomialMatrix2 &x, const MonomialMatrix2 &y)
{
    if (!x.swap && !y.swap) {
        return {false, x.e0 * y.e0, x.e1 * y.e1};
    }
    if (!x.swap) {
        return {true, x.e0 * y.e0, x.e1 * y.e1};
    }
    if (!y.swap) {
        return {true, x.e0 * y.e1, x.e1 * y.e0};
    }
    return {false, x.e0 * y.e1, x.e1 * y.e0};
}

std::vector<Generator> parse_word(std::string_view text)
{
    std::vector<Generator> word;
    std::string tok;
    const auto flush = [&]() {
        if (tok.empty()) {
            return;
        }
        if (tok == "T") {
            word.push_back(Generator::T);
        } else if (tok == "T^-1" || tok == "Ti" || tok == "T-1") {
            word.push_back(Generator::TInv);
        } else if (tok == "U^2" || tok == "U2") {
            word.push_back(Generator::U2);
        } else if (tok == "U^-2" || tok == "U-2") {
            word.push_back(Generator::U2Inv);
        } else if (tok == "-I") {
            word.push_back(Generator::MinusI);
        } else {
            throw std::invalid_argument("unknown generator '" + tok + "'");
        }
        tok.clear();
    };
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == '*') {
            flush();
        } else {
            tok.push_back(ch);
        }
    }
    flush();
    return word;
}

MonomialMatrix2 rep_word_eval(const std::vector<Generator> &word, const BigRat &xi1)
{
    const CircleExp one;
    const CircleExp alpha(xi1, 0);
    const CircleExp beta(0, 1);
    const MonomialMatrix2 t{true, one, alpha};
    const MonomialMatrix2 u2{false, beta, alpha * beta.inverse()};

    MonomialMatrix2 acc = MonomialMatrix2::identity();
    for (Generator g : word) {
        switch (g) {
        case Generator::T:
            acc = acc * t;
            break;
        case Generator::TInv:
            acc = acc * t.inverse();
            break;
        case Generator::U2:
            acc = acc * u2;
            break;
        case Generator::U2Inv:
            acc = acc * u2.inverse();
            break;
        case Generator::MinusI:
            break;
        }
    }
    return acc;
}

ExponentClasses induced_exponent_classes(const BigRat &xi1, const QuadNum &xi2, int k0, LevelShift shift)
{
    ExponentClasses cls;
    cls.m1 = vvmf::frac_part(xi1 / 2);
    cls.m2 = vvmf::frac_part(xi1 / 2 + frac(1, 2));
    const BigRat k6 = frac(k0, 6);
    const BigRat sh = shift == LevelShift::Plus ? k6 : -k6;
    cls.l1 = vvmf::frac_part(cls.m1 + sh);
    cls.l2 = vvmf::frac_part(cls.m2 + sh);
    const QuadNum k3(frac(k0, 3));
    cls.r1 = frac_part(-xi2 - k3);
    cls.r2 = frac_part(xi2 - QuadNum(xi1) - k3);
    return cls;
}

ExponentData realize_exponents(const ExponentClasses &cls, const std::array<long, 4> &shifts, int k0)
{
    ExponentData e;
    e.k0 = k0;
    e.l1 = cls.l1 + shifts[0];
    e.l2 = cls.l2 + shifts[1];
    e.r1 = cls.r1 + QuadNum(shifts[2]);
    e.r2 = cls.r2 + QuadNum(shifts[3]);
    return e;
}

} // namespace vvmf
