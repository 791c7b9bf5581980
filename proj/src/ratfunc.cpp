#include "tvarsl2/ratfunc.hpp"

#include <algorithm>

namespace tvarsl2 {

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial::Polynomial(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const Rat& c) { return Polynomial(std::vector<Rat>{c}); }

Polynomial Polynomial::t() { return Polynomial(std::vector<Rat>{Rat(0), Rat(1)}); }

Rat Polynomial::leading() const {
    if (is_zero()) throw domain_error("leading coefficient of the zero polynomial");
    return c_.back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Rat> out(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-() const {
    std::vector<Rat> out(c_);
    for (auto& x : out) x = -x;
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<Rat> out(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::scaled(const Rat& k) const {
    std::vector<Rat> out(c_);
    for (auto& x : out) x *= k;
    return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
    if (d.is_zero()) throw domain_error("polynomial division by zero");
    Polynomial r = *this;
    std::vector<Rat> q(std::max(0, degree() - d.degree() + 1), Rat(0));
    while (!r.is_zero() && r.degree() >= d.degree()) {
        Rat f = r.leading() / d.leading();
        int shift = r.degree() - d.degree();
        q[shift] = f;
        std::vector<Rat> sub(shift, Rat(0));
        sub.insert(sub.end(), d.c_.begin(), d.c_.end());
        Polynomial s(std::move(sub));
        r = r - s.scaled(f);
    }
    return {Polynomial(std::move(q)), r};
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return scaled(Rat(1) / leading());
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<Rat> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return Polynomial(std::move(out));
}

Polynomial Polynomial::pow(long k) const {
    if (k < 0) throw domain_error("negative polynomial power");
    Polynomial acc = constant(Rat(1));
    for (long i = 0; i < k; ++i) acc = acc * *this;
    return acc;
}

Rat Polynomial::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        Polynomial r = x.divmod(y).second;
        x = y;
        y = r;
    }
    return x.monic();
}

namespace {

std::vector<Int> positive_divisors(Int n) {
    mpz_abs(n.get_mpz_t(), n.get_mpz_t());
    std::vector<Int> out;
    for (Int d(1); d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    return out;
}

}  // namespace

Polynomial::Split Polynomial::split_rational_roots() const {
    if (is_zero()) throw domain_error("cannot factor the zero polynomial");
    Split s;
    s.lead = leading();
    Polynomial p = monic();

    // strip roots at 0
    int at_zero = 0;
    while (!p.is_zero() && p.coeff(0) == 0) {
        std::vector<Rat> shifted(p.c_.begin() + 1, p.c_.end());
        p = Polynomial(std::move(shifted));
        ++at_zero;
    }
    if (at_zero > 0) s.roots[Rat(0)] = at_zero;

    while (p.degree() >= 1) {
        // clear denominators to a primitive integer polynomial
        Int lcm(1);
        for (const auto& c : p.c_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
        std::vector<Int> ic;
        for (const auto& c : p.c_) ic.push_back(to_integer(c * Rat(lcm)));
        Int content = coord_gcd(ic);
        for (auto& x : ic) x /= content;

        bool found = false;
        for (const Int& num : positive_divisors(ic.front())) {
            for (const Int& den : positive_divisors(ic.back())) {
                for (int sign = 0; sign < 2 && !found; ++sign) {
                    Rat cand = rat(sign ? -num : num, den);
                    if (p.eval(cand) == 0) {
                        ++s.roots[cand];
                        Polynomial lin(std::vector<Rat>{-cand, Rat(1)});
                        auto [q, r] = p.divmod(lin);
                        if (!r.is_zero()) throw internal_error("root deflation left a remainder");
                        p = q;
                        found = true;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    s.complete = p.degree() <= 0;
    s.residual = p;
    return s;
}

// ---------------------------------------------------------------------------

void RationalFunction::reduce() {
    if (den_.is_zero()) throw domain_error("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Polynomial::constant(Rat(1));
        return;
    }
    Polynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
    }
    Rat lead = den_.leading();
    den_ = den_.scaled(Rat(1) / lead);
    num_ = num_.scaled(Rat(1) / lead);
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    reduce();
}

RationalFunction RationalFunction::constant(const Rat& c) {
    return RationalFunction(Polynomial::constant(c), Polynomial::constant(Rat(1)));
}

RationalFunction RationalFunction::t() {
    return RationalFunction(Polynomial::t(), Polynomial::constant(Rat(1)));
}

RationalFunction RationalFunction::from_factors(const Rat& lead, const std::map<Rat, int>& root_mults) {
    if (lead == 0) return RationalFunction();
    Polynomial num = Polynomial::constant(lead);
    Polynomial den = Polynomial::constant(Rat(1));
    for (const auto& [root, mult] : root_mults) {
        Polynomial lin(std::vector<Rat>{-root, Rat(1)});
        if (mult >= 0)
            num = num * lin.pow(mult);
        else
            den = den * lin.pow(-mult);
    }
    return RationalFunction(std::move(num), std::move(den));
}

std::optional<Rat> RationalFunction::constant_value() const {
    if (!is_constant()) return std::nullopt;
    return num_.is_zero() ? Rat(0) : num_.coeff(0);
}

int RationalFunction::degree() const {
    if (is_zero()) throw domain_error("degree of the zero function");
    return num_.degree() - den_.degree();
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    if (o.is_zero()) throw domain_error("division by the zero function");
    return RationalFunction(num_ * o.den_, den_ * o.num_);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction out = *this;
    out.num_ = -out.num_;
    return out;
}

RationalFunction RationalFunction::scaled(const Rat& k) const {
    RationalFunction out = *this;
    out.num_ = out.num_.scaled(k);
    if (k == 0) out.den_ = Polynomial::constant(Rat(1));
    return out;
}

RationalFunction RationalFunction::pow(long k) const {
    if (k == 0) return constant(Rat(1));
    if (is_zero()) {
        if (k < 0) throw domain_error("negative power of the zero function");
        return RationalFunction();
    }
    RationalFunction base = k > 0 ? *this : constant(Rat(1)) / *this;
    long reps = k > 0 ? k : -k;
    RationalFunction acc = constant(Rat(1));
    for (long i = 0; i < reps; ++i) acc = acc * base;
    return acc;
}

RationalFunction RationalFunction::derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::substitute(const RationalFunction& arg) const {
    auto eval_poly = [&](const Polynomial& p) {
        RationalFunction acc;
        for (int i = p.degree(); i >= 0; --i)
            acc = acc * arg + constant(p.coeff(i));
        return acc;
    };
    RationalFunction n = eval_poly(num_), d = eval_poly(den_);
    if (d.is_zero()) throw domain_error("substitution produced a zero denominator");
    return n / d;
}

std::optional<Rat> RationalFunction::eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (d == 0) return std::nullopt;
    return num_.eval(x) / d;
}

RationalFunction::Factored RationalFunction::factored() const {
    if (is_zero()) throw domain_error("factored form of the zero function");
    auto ns = num_.split_rational_roots();
    auto ds = den_.split_rational_roots();
    if (!ns.complete || !ds.complete)
        throw domain_error("function does not split over rational points");
    Factored f;
    f.lead = ns.lead / ds.lead;
    f.factors = ns.roots;
    for (const auto& [root, mult] : ds.roots) {
        f.factors[root] -= mult;
        if (f.factors[root] == 0) f.factors.erase(root);
    }
    return f;
}

RationalFunction log_derivative_t(const RationalFunction& f) {
    if (f.is_zero()) throw domain_error("log derivative of the zero function");
    return RationalFunction::t() * f.derivative() / f;
}

QDivisor divisor_of(const RationalFunction& f, CurveKind curve) {
    if (f.is_zero()) throw domain_error("divisor of the zero function");
    auto fac = f.factored();
    QDivisor out(curve);
    for (const auto& [root, mult] : fac.factors) out.add(CurvePoint::finite(root), Rat(mult));
    if (curve == CurveKind::P1) out.add(CurvePoint::infinity(), Rat(-f.degree()));
    return out;
}

SectionModule h0_basis(const QDivisor& d) {
    QDivisor fl = d.floored();
    std::map<Rat, int> gen_factors;
    for (const auto& [z, c] : fl.coefficients()) {
        if (z.infinite) continue;
        gen_factors[z.coord] = -static_cast<int>(to_integer(c).get_si());
    }
    RationalFunction gen = RationalFunction::from_factors(Rat(1), gen_factors);
    SectionModule out{d.curve(), false, gen, std::nullopt};
    if (d.curve() == CurveKind::P1) {
        Int cap = to_integer(fl.total_degree());
        if (cap < 0) {
            out.empty = true;
            out.generator = RationalFunction();
        } else {
            out.degree_cap = cap;
        }
    }
    return out;
}

Int SectionModule::dimension() const {
    if (curve != CurveKind::P1) throw domain_error("dimension is finite only on P1");
    if (empty) return Int(0);
    return *degree_cap + 1;
}

// ---------------------------------------------------------------------------

MobiusMap::MobiusMap(const Rat& a, const Rat& b, const Rat& c, const Rat& d)
    : a_(a), b_(b), c_(c), d_(d) {
    if (a_ * d_ - b_ * c_ == 0) throw domain_error("Mobius map with zero determinant");
    // canonical positive scaling: primitive integer quadruple, then det -> 1
    // when the determinant is a rational square
    Int lcm(1);
    for (const Rat* x : {&a_, &b_, &c_, &d_})
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x->get_den_mpz_t());
    std::vector<Int> e;
    for (Rat* x : {&a_, &b_, &c_, &d_}) e.push_back(to_integer(*x * Rat(lcm)));
    Int g = coord_gcd(e);
    for (auto& x : e) x /= g;
    int first = 0;
    while (e[first] == 0) ++first;
    if (e[first] < 0)
        for (auto& x : e) x = -x;
    a_ = Rat(e[0]);
    b_ = Rat(e[1]);
    c_ = Rat(e[2]);
    d_ = Rat(e[3]);
    Rat det = a_ * d_ - b_ * c_;
    if (det > 0) {
        Int num_root, den_root;
        bool nsq = mpz_perfect_square_p(det.get_num_mpz_t());
        bool dsq = mpz_perfect_square_p(det.get_den_mpz_t());
        if (nsq && dsq) {
            mpz_sqrt(num_root.get_mpz_t(), det.get_num_mpz_t());
            mpz_sqrt(den_root.get_mpz_t(), det.get_den_mpz_t());
            Rat s = rat(num_root, den_root);
            a_ /= s;
            b_ /= s;
            c_ /= s;
            d_ /= s;
        }
    }
}

MobiusMap MobiusMap::identity() { return MobiusMap(Rat(1), Rat(0), Rat(0), Rat(1)); }

CurvePoint MobiusMap::apply(const CurvePoint& z) const {
    if (z.infinite) {
        if (c_ == 0) return CurvePoint::infinity();
        return CurvePoint::finite(a_ / c_);
    }
    Rat den = c_ * z.coord + d_;
    if (den == 0) return CurvePoint::infinity();
    return CurvePoint::finite((a_ * z.coord + b_) / den);
}

RationalFunction MobiusMap::as_function() const {
    return RationalFunction(Polynomial({b_, a_}), Polynomial({d_, c_}));
}

MobiusMap MobiusMap::inverse() const { return MobiusMap(d_, -b_, -c_, a_); }

MobiusMap MobiusMap::compose(const MobiusMap& i) const {
    return MobiusMap(a_ * i.a_ + b_ * i.c_, a_ * i.b_ + b_ * i.d_,
                     c_ * i.a_ + d_ * i.c_, c_ * i.b_ + d_ * i.d_);
}

MobiusMap mobius_normalize(const std::vector<CurvePoint>& points, CurveKind curve) {
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j]) throw domain_error("mobius_normalize: coincident points");
    if (points.empty() || points.size() > 3) throw domain_error("mobius_normalize: need 1 to 3 points");

    if (curve == CurveKind::A1) {
        if (points.size() > 2) throw domain_error("A1 admits affine maps only (at most 2 points)");
        for (const auto& z : points)
            if (z.infinite) throw domain_error("point at infinity is not on A1");
        Rat z0 = points[0].coord;
        if (points.size() == 1) return MobiusMap(Rat(1), -z0, Rat(0), Rat(1));
        Rat z1 = points[1].coord;
        return MobiusMap(Rat(1), -z0, Rat(0), z1 - z0);  // t -> (t - z0)/(z1 - z0)
    }

    // P1: send (z0[, z1][, zinf]) to (0[, 1][, inf])
    CurvePoint z0 = points[0];
    std::optional<CurvePoint> z1, zi;
    if (points.size() == 2) zi = points[1];
    if (points.size() == 3) {
        z1 = points[1];
        zi = points[2];
    }

    auto lin_to_zero = [&](const CurvePoint& z) {
        // map with divisor [z] - [inf] (or constant-free 1/(t) style for inf)
        return z.infinite ? MobiusMap(Rat(0), Rat(1), Rat(1), Rat(0))  // 1/t
                          : MobiusMap(Rat(1), -z.coord, Rat(0), Rat(1));
    };

    if (!zi) return lin_to_zero(z0);

    // q(t) = (t - z0)/(t - zi), with the usual degenerations at infinity
    MobiusMap q = [&]() {
        if (z0.infinite) return MobiusMap(Rat(0), Rat(1), Rat(1), -zi->coord);
        if (zi->infinite) return MobiusMap(Rat(1), -z0.coord, Rat(0), Rat(1));
        return MobiusMap(Rat(1), -z0.coord, Rat(1), -zi->coord);
    }();
    if (!z1) return q;
    CurvePoint img = q.apply(*z1);
    if (img.infinite || img.coord == 0) throw internal_error("mobius_normalize: degenerate middle point");
    // scale so the middle point lands on 1
    return MobiusMap(Rat(1) / img.coord, Rat(0), Rat(0), Rat(1)).compose(q);
}

}  // namespace tvarsl2
