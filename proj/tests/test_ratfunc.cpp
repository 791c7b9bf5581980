#include <doctest.h>

#include "test_support.hpp"
#include "tvarsl2/ratfunc.hpp"

using namespace tvarsl2;

namespace {

RationalFunction rf(std::vector<long> num, std::vector<long> den = {1}) {
    std::vector<Rat> n(num.begin(), num.end()), d(den.begin(), den.end());
    return RationalFunction(Polynomial(std::move(n)), Polynomial(std::move(d)));
}

const RationalFunction T = RationalFunction::t();
const RationalFunction ONE = RationalFunction::constant(Rat(1));

}  // namespace

TEST_CASE("polynomial arithmetic and division") {
    Polynomial p({Rat(-1), Rat(0), Rat(1)});  // t^2 - 1
    Polynomial q({Rat(1), Rat(1)});           // t + 1
    auto [quot, rem] = p.divmod(q);
    CHECK(quot == Polynomial({Rat(-1), Rat(1)}));
    CHECK(rem.is_zero());
    CHECK(gcd(p, q) == q.monic());
    CHECK(p.derivative() == Polynomial({Rat(0), Rat(2)}));
    CHECK(p.eval(Rat(3)) == 8);
}

TEST_CASE("rational-root splitting") {
    // 6(t - 1/2)(t + 2/3)(t - 1) = 6t^3 - 5t^2 - 3t + 2
    Polynomial p({Rat(2), Rat(-3), Rat(-5), Rat(6)});
    auto s = p.split_rational_roots();
    CHECK(s.complete);
    CHECK(s.lead == 6);
    CHECK(s.roots == std::map<Rat, int>{{rat(1, 2), 1}, {rat(-2, 3), 1}, {Rat(1), 1}});

    Polynomial irr({Rat(-2), Rat(0), Rat(1)});  // t^2 - 2
    CHECK_FALSE(irr.split_rational_roots().complete);
}

TEST_CASE("divisor_of: (t-1)/t on P1") {
    auto f = rf({-1, 1}, {0, 1});
    QDivisor d = divisor_of(f, CurveKind::P1);
    CHECK(d.coefficient(CurvePoint::at(1)) == 1);
    CHECK(d.coefficient(CurvePoint::at(0)) == -1);
    CHECK(d.coefficient(CurvePoint::infinity()) == 0);
    CHECK(d.total_degree() == 0);
}

TEST_CASE("divisor_of: t^2 on P1") {
    QDivisor d = divisor_of(T * T, CurveKind::P1);
    CHECK(d.coefficient(CurvePoint::at(0)) == 2);
    CHECK(d.coefficient(CurvePoint::infinity()) == -2);
}

TEST_CASE("divisor_of: the Case II cocycle phi^e = t-1") {
    QDivisor d = divisor_of(rf({-1, 1}), CurveKind::P1);
    CHECK(d.coefficient(CurvePoint::at(1)) == 1);
    CHECK(d.coefficient(CurvePoint::infinity()) == -1);
}

TEST_CASE("divisor_of is multiplicative, zero exactly on constants") {
    tvtest::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        Rat lead = rng.rat(5, 3);
        if (lead == 0) lead = Rat(1);
        auto f = RationalFunction::from_factors(
            lead, {{Rat(rng.pick(-3, 3)), static_cast<int>(rng.pick(-2, 2))}});
        auto g = RationalFunction::from_factors(Rat(2), {{Rat(rng.pick(-3, 3)), 1}});
        CHECK(divisor_of(f * g, CurveKind::P1) ==
              divisor_of(f, CurveKind::P1) + divisor_of(g, CurveKind::P1));
        CHECK(divisor_of(f * g, CurveKind::P1).total_degree() == 0);
    }
    CHECK(divisor_of(RationalFunction::constant(Rat(7)), CurveKind::A1).is_zero());
    CHECK_FALSE(divisor_of(T, CurveKind::A1).is_zero());
    CHECK_THROWS_AS(divisor_of(RationalFunction(), CurveKind::A1), domain_error);
}

TEST_CASE("h0_basis: trivial and fractional divisors on A1") {
    QDivisor zero(CurveKind::A1);
    auto m0 = h0_basis(zero);
    CHECK(m0.generator == ONE);

    QDivisor half(CurveKind::A1);
    half.add(CurvePoint::at(0), rat(1, 2));
    CHECK(h0_basis(half).generator == ONE);  // floor kills the half
}

TEST_CASE("h0_basis: D = [0] + [1] - 2[inf] on P1 is one-dimensional") {
    QDivisor d(CurveKind::P1);
    d.add(CurvePoint::at(0), Rat(1));
    d.add(CurvePoint::at(1), Rat(1));
    d.add(CurvePoint::infinity(), Rat(-2));
    auto mod = h0_basis(d);
    REQUIRE_FALSE(mod.empty);
    CHECK(mod.dimension() == 1);
    CHECK(*mod.degree_cap == 0);
    // the generator is an honest section: div(g) + floor(D) >= 0
    CHECK(divisor_of(mod.generator, CurveKind::P1) + d.floored() >= QDivisor(CurveKind::P1));
    // one step above the cap fails
    RationalFunction above = mod.generator * T;
    bool ok = divisor_of(above, CurveKind::P1) + d.floored() >= QDivisor(CurveKind::P1);
    CHECK_FALSE(ok);
}

TEST_CASE("h0_basis: empty section space on P1") {
    QDivisor d(CurveKind::P1);
    d.add(CurvePoint::at(0), Rat(-1));
    auto mod = h0_basis(d);
    CHECK(mod.empty);
    CHECK(mod.dimension() == 0);
}

TEST_CASE("h0_basis sections satisfy the pole bound exhaustively") {
    QDivisor d(CurveKind::P1);
    d.add(CurvePoint::at(0), Rat(2));
    d.add(CurvePoint::at(3), rat(3, 2));
    d.add(CurvePoint::infinity(), Rat(-1));
    auto mod = h0_basis(d);
    REQUIRE_FALSE(mod.empty);
    for (Int k(0); k <= *mod.degree_cap; ++k) {
        RationalFunction f = mod.generator * T.pow(k.get_si());
        CHECK(divisor_of(f, CurveKind::P1) + d.floored() >= QDivisor(CurveKind::P1));
    }
}

TEST_CASE("mobius_normalize: (0,1,inf) is the identity") {
    auto q = mobius_normalize({CurvePoint::at(0), CurvePoint::at(1), CurvePoint::infinity()},
                              CurveKind::P1);
    CHECK(q == MobiusMap::identity());
}

TEST_CASE("mobius_normalize: A1 translation by the marked point") {
    auto q = mobius_normalize({CurvePoint::at(5)}, CurveKind::A1);
    CHECK(q.a() == 1);
    CHECK(q.b() == -5);
    CHECK(q.c() == 0);
    CHECK(q.d() == 1);
    CHECK(q.is_unimodular());
}

TEST_CASE("mobius_normalize: two points to (0, inf)") {
    auto q = mobius_normalize({CurvePoint::at(2), CurvePoint::infinity()}, CurveKind::P1);
    CHECK(q.apply(CurvePoint::at(2)) == CurvePoint::at(0));
    CHECK(q.apply(CurvePoint::infinity()) == CurvePoint::infinity());
    CHECK(q.as_function() == rf({-2, 1}));
}

TEST_CASE("mobius_normalize: generic three points land on 0,1,inf") {
    std::vector<CurvePoint> pts = {CurvePoint::at(2), CurvePoint::at(3), CurvePoint::infinity()};
    auto q = mobius_normalize(pts, CurveKind::P1);
    CHECK(q.apply(pts[0]) == CurvePoint::at(0));
    CHECK(q.apply(pts[1]) == CurvePoint::at(1));
    CHECK(q.apply(pts[2]) == CurvePoint::infinity());

    std::vector<CurvePoint> pts2 = {CurvePoint::at(0), CurvePoint::at(1), CurvePoint::at(2)};
    auto q2 = mobius_normalize(pts2, CurveKind::P1);
    CHECK(q2.apply(pts2[0]) == CurvePoint::at(0));
    CHECK(q2.apply(pts2[1]) == CurvePoint::at(1));
    CHECK(q2.apply(pts2[2]) == CurvePoint::infinity());

    CHECK_THROWS_AS(mobius_normalize({CurvePoint::at(1), CurvePoint::at(1)}, CurveKind::P1),
                    domain_error);
}

TEST_CASE("mobius map canonicalization reaches determinant 1 when possible") {
    MobiusMap m(Rat(2), Rat(2), Rat(0), Rat(2));  // scales to t+1
    CHECK(m.is_unimodular());
    CHECK(m.a() == 1);
    CHECK(m.b() == 1);
    // composition with inverse is the identity
    MobiusMap w(Rat(2), Rat(1), Rat(1), Rat(1));
    CHECK(w.compose(w.inverse()) == MobiusMap::identity());
}

TEST_CASE("derivative and log derivative") {
    auto f = rf({-1, 1});  // t - 1
    CHECK(f.derivative() == ONE);
    CHECK(log_derivative_t(f) == T / f);

    auto f2 = f * f;
    CHECK(log_derivative_t(f2) == T.scaled(Rat(2)) / f);
}

TEST_CASE("the rational identity t/(t-1) + t/(t-1)^2 - t^2/(t-1)^2 = 0") {
    auto tm1 = rf({-1, 1});
    auto expr = T / tm1 + T / (tm1 * tm1) - (T * T) / (tm1 * tm1);
    CHECK(expr.is_zero());
}

TEST_CASE("log derivative is additive under multiplication") {
    tvtest::Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = RationalFunction::from_factors(Rat(3), {{Rat(rng.pick(-4, 4)), static_cast<int>(rng.pick(1, 3))}});
        auto g = RationalFunction::from_factors(rat(1, 2), {{Rat(rng.pick(-4, 4)), -static_cast<int>(rng.pick(1, 2))}});
        CHECK(log_derivative_t(f * g) == log_derivative_t(f) + log_derivative_t(g));
    }
}

TEST_CASE("factored form round trip") {
    std::map<Rat, int> factors = {{Rat(0), 2}, {Rat(1), -1}, {rat(5, 2), 1}};
    auto f = RationalFunction::from_factors(rat(-3, 7), factors);
    auto fac = f.factored();
    CHECK(fac.lead == rat(-3, 7));
    CHECK(fac.factors == factors);

    // irrational zeros are rejected loudly
    RationalFunction irr(Polynomial({Rat(-2), Rat(0), Rat(1)}), Polynomial::constant(Rat(1)));
    CHECK_THROWS_AS(irr.factored(), domain_error);
}

TEST_CASE("substitution composes functions") {
    auto f = T * T;                           // t^2
    auto q = rf({1, 1});                      // t + 1
    CHECK(f.substitute(q) == rf({1, 2, 1}));  // (t+1)^2
}
