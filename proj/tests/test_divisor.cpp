#include <doctest.h>

#include <set>

#include "test_support.hpp"
#include "tvarsl2/divisor.hpp"

using namespace tvarsl2;

namespace {

Cone ncone(int rank, std::vector<std::vector<long>> rays) {
    std::vector<LatticeVector> gens;
    for (auto& r : rays) gens.push_back(LatticeVector(Side::N, std::vector<Int>(r.begin(), r.end())));
    return Cone::from_generators(Side::N, rank, gens);
}

VectorQ nq(std::vector<long> c) {
    std::vector<Rat> v(c.begin(), c.end());
    return VectorQ(Side::N, std::move(v));
}

VectorQ mq(std::vector<long> c) {
    std::vector<Rat> v(c.begin(), c.end());
    return VectorQ(Side::M, std::move(v));
}

SigmaPolyhedron seg(const Cone& tail, std::vector<long> a, std::vector<long> b) {
    return SigmaPolyhedron::from_vertices(tail, {nq(a), nq(b)});
}

// the section 2.3 example: Delta = conv((1,1,-1),(-1,-1,1)) + octant on A1
PolyhedralDivisor z3_example() {
    Cone octant = ncone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    PolyhedralDivisor d(CurveKind::A1, octant);
    d.set_slice(CurvePoint::at(0), seg(octant, {1, 1, -1}, {-1, -1, 1}));
    return d;
}

// table row data: Delta_0 = conv(0,(1,0)) + sigma, Delta_1 = conv(0,(r-1,r)) + sigma,
// Delta_inf = (a,a) + sigma over P1 with sigma = cone((a+1,a),(r+a-1,r+a))
PolyhedralDivisor p1_threefold(long r, Rat a) {
    Rat a1 = a + 1;
    VectorQ ray1(Side::N, {a1, a});
    VectorQ ray2(Side::N, {a + Rat(r - 1), a + Rat(r)});
    Cone sigma = Cone::from_generators_q(Side::N, 2, {ray1, ray2});
    PolyhedralDivisor d(CurveKind::P1, sigma);
    d.set_slice(CurvePoint::at(0), seg(sigma, {0, 0}, {1, 0}));
    d.set_slice(CurvePoint::at(1), seg(sigma, {0, 0}, {r - 1, r}));
    d.set_slice(CurvePoint::infinity(),
                SigmaPolyhedron::from_vertices(sigma, {VectorQ(Side::N, {a, a})}));
    return d;
}

}  // namespace

TEST_CASE("sigma-polyhedron canonicalizes its vertex set") {
    Cone q = ncone(2, {{1, 0}, {0, 1}});
    // (2,2) lies in 0 + quadrant, so only (0,0) and (3,-1) are vertices
    auto p = SigmaPolyhedron::from_vertices(q, {nq({0, 0}), nq({3, -1}), nq({2, 2})});
    CHECK(p.vertices() == std::vector<VectorQ>{nq({0, 0}), nq({3, -1})});
    CHECK(p.contains(nq({2, 2})));
    CHECK_FALSE(p.contains(nq({-1, 0})));
}

TEST_CASE("support_value: the Z^3 example pairs to zero") {
    Cone octant = ncone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    auto delta = seg(octant, {1, 1, -1}, {-1, -1, 1});
    CHECK(delta.support_value(mq({-1, 1, 0})) == 0);
    CHECK_FALSE(delta.in_tail_dual(mq({-1, 1, 0})));
}

TEST_CASE("support_value: trivial polyhedron vanishes on the dual cone") {
    Cone q = ncone(2, {{1, 0}, {0, 1}});
    auto p = SigmaPolyhedron::trivial(q);
    CHECK(p.support_value(mq({2, 3})) == 0);
    CHECK(p.in_tail_dual(mq({2, 3})));
    CHECK(p.is_trivial());
}

TEST_CASE("support_value: single rational vertex") {
    Cone sigma = ncone(2, {{2, 1}, {1, 2}});
    Rat a = rat(3, 2);
    auto p = SigmaPolyhedron::from_vertices(sigma, {VectorQ(Side::N, {a, a})});
    CHECK(p.support_value(mq({1, 0})) == rat(3, 2));
}

TEST_CASE("minkowski sum: unit square from two segments") {
    Cone zero = Cone::zero(Side::N, 2);
    auto s1 = seg(zero, {0, 0}, {1, 0});
    auto s2 = seg(zero, {0, 0}, {0, 1});
    auto sum = minkowski_sum(s1, s2);
    CHECK(sum.vertices().size() == 4);
    // support additivity on a grid of functionals
    for (long x = -3; x <= 3; ++x)
        for (long y = -3; y <= 3; ++y) {
            VectorQ m = mq({x, y});
            CHECK(sum.support_value(m) == s1.support_value(m) + s2.support_value(m));
        }
}

TEST_CASE("minkowski sum: trivial polyhedron is the identity") {
    Cone sigma = ncone(2, {{1, 0}, {1, 2}});
    auto d = seg(sigma, {0, 0}, {-1, 1});
    CHECK(minkowski_sum(d, SigmaPolyhedron::trivial(sigma)) == d);
}

TEST_CASE("minkowski sum canonicalizes away absorbed sum vertices") {
    Cone sigma = ncone(2, {{2, 1}, {1, 2}});
    auto s1 = seg(sigma, {0, 0}, {1, 0});
    auto s2 = seg(sigma, {0, 0}, {0, 1});
    auto sum = minkowski_sum(s1, s2);
    // (1,1) = (1,0)+(0,1) is absorbed into conv((1,0),(0,1)) + sigma
    CHECK(sum.vertices() == std::vector<VectorQ>{nq({0, 0}), nq({0, 1}), nq({1, 0})});
    // support additivity holds on the tail dual
    for (long x = -3; x <= 3; ++x)
        for (long y = -3; y <= 3; ++y) {
            VectorQ m = mq({x, y});
            if (!sum.in_tail_dual(m)) continue;
            CHECK(sum.support_value(m) == s1.support_value(m) + s2.support_value(m));
        }
}

TEST_CASE("evaluate: Z^3 example gives D(e) + D(-e) = 0") {
    auto d = z3_example();
    QDivisor de = d.evaluate(mq({-1, 1, 0}));
    QDivisor dme = d.evaluate(mq({1, -1, 0}));
    CHECK(de.is_zero());
    CHECK((de + dme).is_zero());
}

TEST_CASE("evaluate: m = 0 gives the zero divisor") {
    auto d = p1_threefold(2, Rat(1));
    CHECK(d.evaluate(mq({0, 0})).is_zero());
}

TEST_CASE("evaluate: threefold P1 data r=1, a=1 at m=(1,1)") {
    auto d = p1_threefold(1, Rat(1));
    QDivisor v = d.evaluate(mq({1, 1}));
    CHECK(v.coefficient(CurvePoint::at(0)) == 0);
    CHECK(v.coefficient(CurvePoint::at(1)) == 0);
    // h_{Delta_inf}(1,1) = <(1,1),(1,1)> = 2
    CHECK(v.coefficient(CurvePoint::infinity()) == 2);
}

TEST_CASE("properness: A1 divisors are always proper") {
    CHECK(z3_example().is_proper().proper);
}

TEST_CASE("properness: threefold P1 data is proper") {
    CHECK(p1_threefold(1, Rat(1)).is_proper().proper);
    CHECK(p1_threefold(3, rat(7, 3)).is_proper().proper);
}

TEST_CASE("properness: deg D = sigma is rejected with certificate") {
    Cone sigma = ncone(2, {{1, 0}, {0, 1}});
    PolyhedralDivisor d(CurveKind::P1, sigma);
    auto rep = d.is_proper();
    CHECK_FALSE(rep.proper);
    CHECK(rep.violating_vertex.has_value());
}

TEST_CASE("shift: zero moves are the identity") {
    auto d = p1_threefold(2, Rat(1));
    CHECK(d.shifted({}) == d);
}

TEST_CASE("shift: A1 slice translation follows the support-function rule") {
    Cone sigma = ncone(2, {{1, 0}, {1, 2}});
    PolyhedralDivisor d(CurveKind::A1, sigma);
    d.set_slice(CurvePoint::at(1), seg(sigma, {0, 0}, {0, 1}));
    LatticeVector v = nvec({0, -1});
    auto moved = d.shifted({{CurvePoint::at(1), v}});
    CHECK(moved.slice(CurvePoint::at(1)) == seg(sigma, {0, -1}, {0, 0}));
    // evaluate(shift(D,v), m) = evaluate(D,m) + <m,v>[1]
    for (long x = -2; x <= 2; ++x)
        for (long y = -2; y <= 2; ++y) {
            VectorQ m = mq({x, y});
            QDivisor lhs = moved.evaluate(m);
            QDivisor rhs = d.evaluate(m);
            rhs.add(CurvePoint::at(1), pairing(m, v));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("shift: P1 requires zero move sum") {
    auto d = p1_threefold(1, Rat(1));
    CHECK_NOTHROW(d.shifted({{CurvePoint::at(0), nvec({1, 0})},
                             {CurvePoint::infinity(), nvec({-1, 0})}}));
    CHECK_THROWS_AS(d.shifted({{CurvePoint::at(0), nvec({1, 0})}}), domain_error);
}

TEST_CASE("properness is invariant under admissible shifts") {
    auto d = p1_threefold(2, rat(3, 2));
    auto moved = d.shifted({{CurvePoint::at(0), nvec({2, -1})},
                            {CurvePoint::at(1), nvec({-1, 0})},
                            {CurvePoint::infinity(), nvec({-1, 1})}});
    CHECK(d.is_proper().proper == moved.is_proper().proper);
}

TEST_CASE("toric form: the Z^3 example produces the 5-ray cone") {
    auto tf = z3_example().toric_form();
    REQUIRE(tf.has_value());
    const Cone& c = tf->cone;
    CHECK(c.rank() == 4);
    REQUIRE(c.rays().size() == 5);
    std::set<std::vector<Int>> rays;
    for (const auto& r : c.rays()) rays.insert(r.coords);
    CHECK(rays.count(nvec({1, 1, -1, 1}).coords) == 1);
    CHECK(rays.count(nvec({-1, -1, 1, 1}).coords) == 1);
    CHECK(rays.count(nvec({1, 0, 0, 0}).coords) == 1);
    CHECK(rays.count(nvec({0, 1, 0, 0}).coords) == 1);
    CHECK(rays.count(nvec({0, 0, 1, 0}).coords) == 1);
}

TEST_CASE("toric form: three essential slices on P1 is not toric") {
    auto d = p1_threefold(2, rat(3, 2));  // all three slices essential
    CHECK_FALSE(d.toric_form().has_value());
}

TEST_CASE("toric form: lattice translates shift away on A1") {
    Cone sigma = ncone(2, {{1, 0}, {1, 2}});
    PolyhedralDivisor d(CurveKind::A1, sigma);
    d.set_slice(CurvePoint::at(0), seg(sigma, {0, 0}, {0, 1}));
    LatticeVector v = nvec({2, 1});
    d.set_slice(CurvePoint::at(1), SigmaPolyhedron::trivial(sigma).translated(VectorQ(v)));
    auto tf = d.toric_form();
    REQUIRE(tf.has_value());
    CHECK(tf->moves.at(CurvePoint::at(1)) == -v);
    CHECK(tf->support_points == std::vector<CurvePoint>{CurvePoint::at(0)});
}

TEST_CASE("degree: all trivial slices give the tail polyhedron") {
    Cone sigma = ncone(2, {{1, 0}, {1, 2}});
    PolyhedralDivisor d(CurveKind::A1, sigma);
    CHECK(d.degree().is_trivial());
}

TEST_CASE("degree: homogeneous threefold data r=2 is a parallelogram") {
    Cone zero = Cone::zero(Side::N, 2);
    PolyhedralDivisor d(CurveKind::A1, zero);
    d.set_slice(CurvePoint::at(0), seg(zero, {0, 0}, {1, 0}));
    d.set_slice(CurvePoint::at(1), seg(zero, {0, 0}, {1, 2}));
    auto deg = d.degree();
    CHECK(deg.vertices() ==
          std::vector<VectorQ>{nq({0, 0}), nq({1, 0}), nq({1, 2}), nq({2, 2})});
}

TEST_CASE("degree over C' for the P1 threefold r=1, a=1") {
    auto d = p1_threefold(1, Rat(1));
    auto deg = d.degree(CurvePoint::infinity());
    // (1,1) = (1,0)+(0,1) is absorbed by the tail cone((2,1),(1,2))
    CHECK(deg.vertices() == std::vector<VectorQ>{nq({0, 0}), nq({0, 1}), nq({1, 0})});
    // deg-minkowski consistency on the tail dual
    for (long x = -4; x <= 4; ++x)
        for (long y = -4; y <= 4; ++y) {
            VectorQ m = mq({x, y});
            if (!deg.in_tail_dual(m)) continue;
            Rat sum(0);
            for (const auto& z : d.support()) {
                if (z.infinite) continue;
                sum += d.slice(z).support_value(m);
            }
            CHECK(deg.support_value(m) == sum);
        }
}

TEST_CASE("evaluation is superadditive and positively homogeneous") {
    auto d = p1_threefold(2, Rat(2));
    tvtest::Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        VectorQ m1 = mq({rng.pick(-4, 4), rng.pick(-4, 4)});
        VectorQ m2 = mq({rng.pick(-4, 4), rng.pick(-4, 4)});
        bool both_in_dual = true;
        for (const auto& z : d.support()) {
            if (!d.slice(z).in_tail_dual(m1) || !d.slice(z).in_tail_dual(m2)) both_in_dual = false;
        }
        if (both_in_dual) {
            CHECK(d.evaluate(m1 + m2) >= d.evaluate(m1) + d.evaluate(m2));
        }
        Rat lambda(rng.pick(0, 5));
        CHECK(d.evaluate(m1 * lambda) == d.evaluate(m1) * lambda);
    }
}

TEST_CASE("vertex adjacency in rank 2") {
    Cone zero = Cone::zero(Side::N, 2);
    PolyhedralDivisor d(CurveKind::A1, zero);
    d.set_slice(CurvePoint::at(0), seg(zero, {0, 0}, {1, 0}));
    d.set_slice(CurvePoint::at(1), seg(zero, {0, 0}, {0, 1}));
    auto sq = d.degree();  // unit square
    CHECK(sq.vertices_adjacent(nq({0, 0}), nq({1, 0})));
    CHECK(sq.vertices_adjacent(nq({0, 0}), nq({0, 1})));
    CHECK_FALSE(sq.vertices_adjacent(nq({0, 0}), nq({1, 1})));
}

TEST_CASE("shift equivalence detects translate-equivalent divisors") {
    Cone sigma = ncone(2, {{1, 0}, {1, 2}});
    PolyhedralDivisor d1(CurveKind::A1, sigma);
    d1.set_slice(CurvePoint::at(0), seg(sigma, {0, 0}, {0, 1}));
    auto d2 = d1.shifted({{CurvePoint::at(0), nvec({3, -2})}});
    auto mv = d1.shift_equivalence_to(d2);
    REQUIRE(mv.has_value());
    CHECK(mv->at(CurvePoint::at(0)) == nvec({3, -2}));

    PolyhedralDivisor d3(CurveKind::A1, sigma);
    d3.set_slice(CurvePoint::at(0), seg(sigma, {0, 0}, {1, 1}));
    CHECK_FALSE(d1.shift_equivalence_to(d3).has_value());
}
