#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tvarsl2/divisor.hpp"

namespace tvarsl2 {

// Dense univariate polynomial over Q, canonical (no trailing zeros).
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rat> coeffs);
    static Polynomial constant(const Rat& c);
    static Polynomial t();

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rat(0); }
    Rat leading() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial scaled(const Rat& k) const;
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;
    Polynomial monic() const;
    Polynomial derivative() const;
    Polynomial pow(long k) const;
    Rat eval(const Rat& x) const;
    bool operator==(const Polynomial& o) const { return c_ == o.c_; }

    friend Polynomial gcd(const Polynomial& a, const Polynomial& b);

    // Rational-root factorization. complete == true iff the polynomial splits
    // into linear factors over Q (residual is then constant 1).
    struct Split;
    Split split_rational_roots() const;

private:
    std::vector<Rat> c_;
    void trim();
};

struct Polynomial::Split {
    Rat lead;
    std::map<Rat, int> roots;
    bool complete;
    Polynomial residual;
};

// Element of Q(t), stored reduced with monic denominator. Field arithmetic is
// total; zero/pole data (divisor_of, factored form, serialization) requires
// the function to split over rational points and fails loudly otherwise.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Polynomial::constant(Rat(1))) {}  // zero
    RationalFunction(Polynomial num, Polynomial den);
    static RationalFunction constant(const Rat& c);
    static RationalFunction t();
    static RationalFunction from_factors(const Rat& lead, const std::map<Rat, int>& root_mults);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    std::optional<Rat> constant_value() const;
    // deg num - deg den (the paper's degree of a rational function)
    int degree() const;

    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const;
    RationalFunction operator-() const;
    RationalFunction scaled(const Rat& k) const;
    RationalFunction pow(long k) const;
    RationalFunction derivative() const;
    RationalFunction substitute(const RationalFunction& arg) const;
    std::optional<Rat> eval(const Rat& x) const;  // nullopt at a pole

    bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

    struct Factored {
        Rat lead;
        std::map<Rat, int> factors;  // root -> multiplicity (negative for poles)
    };
    Factored factored() const;  // throws domain_error when roots are irrational

private:
    Polynomial num_, den_;
    void reduce();
};

// alpha = t * f' / f
RationalFunction log_derivative_t(const RationalFunction& f);

// zero/pole divisor; on P1 the coefficient at infinity is -deg f.
QDivisor divisor_of(const RationalFunction& f, CurveKind curve);

// H0(C, O(floor(D))) presented by one generator: A1 gives generator * K[t];
// P1 caps the polynomial degree, and the module is empty iff deg floor(D) < 0.
struct SectionModule {
    CurveKind curve;
    bool empty;
    RationalFunction generator;
    std::optional<Int> degree_cap;  // present iff curve == P1 and !empty
    Int dimension() const;          // P1 only; cap + 1
};

SectionModule h0_basis(const QDivisor& d);

// Fractional-linear map q(t) = (a t + b)/(c t + d). Canonicalized up to
// positive scaling; determinant 1 whenever the scaling can reach it (the
// determinant class in Q*/(Q*)^2 is an invariant of the map).
class MobiusMap {
public:
    MobiusMap(const Rat& a, const Rat& b, const Rat& c, const Rat& d);
    static MobiusMap identity();

    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }
    const Rat& c() const { return c_; }
    const Rat& d() const { return d_; }
    Rat det() const { return a_ * d_ - b_ * c_; }
    bool is_unimodular() const { return det() == 1; }
    bool fixes_infinity() const { return c_ == 0; }

    CurvePoint apply(const CurvePoint& z) const;
    RationalFunction as_function() const;  // (a t + b)/(c t + d)
    MobiusMap inverse() const;
    MobiusMap compose(const MobiusMap& inner) const;  // this(inner(t))

    bool operator==(const MobiusMap& o) const {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
    }

private:
    Rat a_, b_, c_, d_;
};

// Sends up to three distinct points to 0, 1, infinity in order. On A1 only
// one or two points are allowed (affine maps fix infinity).
MobiusMap mobius_normalize(const std::vector<CurvePoint>& points, CurveKind curve);

}  // namespace tvarsl2
