#include <doctest.h>

#include <set>

#include "test_support.hpp"
#include "tvarsl2/cone.hpp"

using namespace tvarsl2;

namespace {

Cone ncone(int rank, std::vector<std::vector<long>> rays) {
    std::vector<LatticeVector> gens;
    for (auto& r : rays) gens.push_back(LatticeVector(Side::N, std::vector<Int>(r.begin(), r.end())));
    return Cone::from_generators(Side::N, rank, gens);
}

Int l1norm(const LatticeVector& v) {
    Int n(0);
    for (const auto& c : v.coords) {
        Int a;
        mpz_abs(a.get_mpz_t(), c.get_mpz_t());
        n += a;
    }
    return n;
}

bool is_nonneg_combination(const std::vector<LatticeVector>& basis, const LatticeVector& x0) {
    // exhaustive search over difference chains within a bounded L1 ball
    Int cap = l1norm(x0) + 8;
    std::set<std::vector<Int>> seen;
    std::vector<LatticeVector> stack{x0};
    long nodes = 0;
    while (!stack.empty() && nodes < 200000) {
        LatticeVector x = stack.back();
        stack.pop_back();
        ++nodes;
        if (x.is_zero()) return true;
        if (!seen.insert(x.coords).second) continue;
        for (const auto& b : basis) {
            std::vector<Int> diff(x.coords);
            for (int i = 0; i < x.rank(); ++i) diff[i] -= b.coords[i];
            LatticeVector d(x.side, std::move(diff));
            if (l1norm(d) <= cap) stack.push_back(std::move(d));
        }
    }
    return false;
}

}  // namespace

TEST_CASE("dual cone: first quadrant is self-dual") {
    Cone q = ncone(2, {{1, 0}, {0, 1}});
    Cone d = q.dual();
    CHECK(d.side() == Side::M);
    CHECK(d.rays() == std::vector<LatticeVector>{mvec({0, 1}), mvec({1, 0})});
}

TEST_CASE("dual cone: kernel cone of the SL2/mu_r model, r=2") {
    Cone omega = ncone(2, {{-1, 0}, {1, 2}});
    Cone d = omega.dual();
    std::set<std::vector<Int>> rays;
    for (const auto& r : d.rays()) rays.insert(r.coords);
    CHECK(rays.count(mvec({0, 1}).coords) == 1);
    CHECK(rays.count(mvec({-2, 1}).coords) == 1);
    CHECK(d.rays().size() == 2);
}

TEST_CASE("dual cone: cone((2,1),(1,2)) against box-membership oracle") {
    Cone c = ncone(2, {{2, 1}, {1, 2}});
    Cone d = c.dual();
    std::set<std::vector<Int>> rays;
    for (const auto& r : d.rays()) rays.insert(r.coords);
    CHECK(rays.count(mvec({-1, 2}).coords) == 1);
    CHECK(rays.count(mvec({2, -1}).coords) == 1);

    // every lattice point with |coords| <= 6 is in dual(c) iff it pairs >= 0
    // with both rays of c
    for (long x = -6; x <= 6; ++x)
        for (long y = -6; y <= 6; ++y) {
            bool direct = (2 * x + y >= 0) && (x + 2 * y >= 0);
            CHECK(d.contains(mvec({x, y})) == direct);
        }
}

TEST_CASE("biduality on random pointed full-dimensional cones") {
    tvtest::Rng rng(11);
    int done = 0;
    while (done < 12) {
        int rank = static_cast<int>(rng.pick(2, 3));
        std::vector<LatticeVector> gens;
        int k = static_cast<int>(rng.pick(rank, rank + 2));
        for (int i = 0; i < k; ++i) gens.emplace_back(Side::N, rng.ivec(rank, 4));
        std::vector<LatticeVector> nz;
        for (auto& g : gens)
            if (!g.is_zero()) nz.push_back(g);
        if (nz.empty()) continue;
        Cone c = Cone::from_generators(Side::N, rank, nz);
        if (!c.is_pointed() || !c.is_full_dimensional()) continue;
        ++done;
        CHECK(c.dual().dual() == c);
    }
}

TEST_CASE("zero cone and full space duality") {
    Cone z = Cone::zero(Side::N, 2);
    CHECK(z.is_zero());
    Cone f = z.dual();
    CHECK(f.dim() == 2);
    CHECK_FALSE(f.is_pointed());
    CHECK(f.contains(mvec({-3, 5})));
    CHECK(f.dual().is_zero());
}

TEST_CASE("hilbert basis: first quadrant") {
    auto hb = hilbert_basis(ncone(2, {{1, 0}, {0, 1}}));
    CHECK(hb == std::vector<LatticeVector>{nvec({0, 1}), nvec({1, 0})});
}

TEST_CASE("hilbert basis: semigroup generators m1, m3, m2 for r=2") {
    auto hb = hilbert_basis(Cone::from_generators(Side::M, 2, {mvec({0, 1}), mvec({-2, 1})}));
    std::set<std::vector<Int>> got;
    for (const auto& h : hb) got.insert(h.coords);
    CHECK(got == std::set<std::vector<Int>>{mvec({0, 1}).coords, mvec({-1, 1}).coords, mvec({-2, 1}).coords});
}

TEST_CASE("hilbert basis: saturation of cone((1,0),(1,3))") {
    Cone c = ncone(2, {{1, 0}, {1, 3}});
    auto hb = hilbert_basis(c);
    std::set<std::vector<Int>> got;
    for (const auto& h : hb) got.insert(h.coords);
    CHECK(got == std::set<std::vector<Int>>{nvec({1, 0}).coords, nvec({1, 1}).coords, nvec({1, 2}).coords,
                                            nvec({1, 3}).coords});
    // oracle: every cone lattice point with coords bounded by 6 is a
    // nonnegative integer combination of the basis
    for (long x = -6; x <= 6; ++x)
        for (long y = -6; y <= 6; ++y) {
            LatticeVector v = nvec({x, y});
            if (!c.contains(v)) continue;
            CHECK(is_nonneg_combination(hb, v));
        }
}

TEST_CASE("hilbert basis generates all bounded lattice points (rank 3)") {
    Cone c = ncone(3, {{1, 0, 0}, {0, 1, 0}, {-1, 0, 1}});
    auto hb = hilbert_basis(c);
    for (long x = -4; x <= 4; ++x)
        for (long y = -4; y <= 4; ++y)
            for (long z = -4; z <= 4; ++z) {
                LatticeVector v = nvec({x, y, z});
                if (!c.contains(v)) continue;
                CHECK(is_nonneg_combination(hb, v));
            }
}

TEST_CASE("is_root: quadrant roots and non-roots") {
    Cone q = ncone(2, {{1, 0}, {0, 1}});
    auto r = is_root(q, mvec({-1, 0}));
    REQUIRE(r.has_value());
    CHECK(r->distinguished_ray == nvec({1, 0}));
    CHECK_FALSE(is_root(q, mvec({-1, -1})).has_value());

    Cone v = ncone(2, {{1, 0}, {1, 2}});
    auto r2 = is_root(v, mvec({1, -1}));
    REQUIRE(r2.has_value());
    CHECK(r2->distinguished_ray == nvec({1, 2}));

    CHECK_FALSE(is_root(Cone::zero(Side::N, 2), mvec({1, 0})).has_value());
}

TEST_CASE("sl2 roots of the quadrant: the pair (1,-1), (-1,1)") {
    auto out = enumerate_sl2_roots(ncone(2, {{1, 0}, {0, 1}}));
    CHECK(out.spanning);
    REQUIRE(out.roots.size() == 2);
    CHECK(out.roots[0].e == mvec({-1, 1}));
    CHECK(out.roots[1].e == mvec({1, -1}));
    for (const auto& r : out.roots) CHECK(pairing(r.e, r.p) == 2);
}

TEST_CASE("sl2 roots of cone((1,0),(2,3))") {
    auto out = enumerate_sl2_roots(ncone(2, {{1, 0}, {2, 3}}));
    CHECK(out.spanning);
    REQUIRE(out.roots.size() == 2);
    CHECK(out.roots[0].e == mvec({-1, 1}));
    CHECK(out.roots[1].e == mvec({1, -1}));
}

TEST_CASE("sl2 roots: non-spanning rays give affine families") {
    Cone c = Cone::from_generators(Side::N, 3, {nvec({1, 0, 0}), nvec({1, 1, 0})});
    auto out = enumerate_sl2_roots(c);
    CHECK_FALSE(out.spanning);
    REQUIRE(!out.families.empty());
    for (const auto& fam : out.families) {
        REQUIRE(fam.kernel_basis.size() == 1);
        CHECK(fam.kernel_basis[0] == mvec({0, 0, 1}));
        // brute-force: every family member within |t| <= 3 is an SL2-root
        for (long t = -3; t <= 3; ++t) {
            LatticeVector e = fam.representative.e + fam.kernel_basis[0] * Int(t);
            CHECK(is_root(c, e).has_value());
            CHECK(is_root(c, -e).has_value());
        }
    }
}

TEST_CASE("sl2 root count r(r-1) for standard basis cones") {
    for (int r = 2; r <= 4; ++r) {
        std::vector<LatticeVector> gens;
        for (int i = 0; i < r; ++i) {
            std::vector<Int> c(r, Int(0));
            c[i] = 1;
            gens.emplace_back(Side::N, c);
        }
        auto out = enumerate_sl2_roots(Cone::from_generators(Side::N, r, gens));
        CHECK(out.spanning);
        CHECK(out.roots.size() == static_cast<std::size_t>(r * (r - 1)));
    }
}

TEST_CASE("sl2 root sets are closed under negation, swapping the rays") {
    auto out = enumerate_sl2_roots(ncone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    for (const auto& r : out.roots) {
        bool found = false;
        for (const auto& s : out.roots)
            if (s.e == -r.e) {
                found = true;
                CHECK(s.rho_plus == r.rho_minus);
                CHECK(s.rho_minus == r.rho_plus);
            }
        CHECK(found);
    }
}

TEST_CASE("sl2 roots agree with exhaustive scan on random pointed cones") {
    tvtest::Rng rng(23);
    int done = 0;
    while (done < 10) {
        int rank = static_cast<int>(rng.pick(2, 3));
        std::vector<LatticeVector> gens;
        int k = static_cast<int>(rng.pick(rank, rank + 1));
        for (int i = 0; i < k; ++i) gens.emplace_back(Side::N, rng.ivec(rank, 4));
        std::vector<LatticeVector> nz;
        for (auto& g : gens)
            if (!g.is_zero()) nz.push_back(g);
        if (nz.empty()) continue;
        Cone c = Cone::from_generators(Side::N, rank, nz);
        if (!c.is_pointed() || !c.rays_span()) continue;
        ++done;
        auto out = enumerate_sl2_roots(c);
        std::set<std::vector<Int>> fast;
        for (const auto& r : out.roots) fast.insert(r.e.coords);
        std::set<std::vector<Int>> slow;
        long bound = 12;
        std::vector<long> e(rank, -bound);
        while (true) {
            LatticeVector cand(Side::M, std::vector<Int>(e.begin(), e.end()));
            if (!cand.is_zero() && is_root(c, cand) && is_root(c, -cand)) slow.insert(cand.coords);
            int j = 0;
            for (; j < rank; ++j) {
                if (e[j] < bound) { ++e[j]; break; }
                e[j] = -bound;
            }
            if (j == rank) break;
        }
        CHECK(fast == slow);
    }
}

TEST_CASE("facet dual to ray") {
    Cone q = ncone(2, {{1, 0}, {0, 1}});
    Cone tau = facet_dual_to_ray(q, nvec({1, 0}));
    CHECK(tau.rays() == std::vector<LatticeVector>{mvec({0, 1})});

    Cone v = ncone(2, {{1, 0}, {1, 2}});
    Cone tau2 = facet_dual_to_ray(v, nvec({1, 2}));
    CHECK(tau2.rays() == std::vector<LatticeVector>{mvec({2, -1})});
    // oracle: lattice points of sigma-dual vanishing on rho, small box
    for (long x = -5; x <= 5; ++x)
        for (long y = -5; y <= 5; ++y) {
            bool in_dual = (x >= 0) && (x + 2 * y >= 0);
            bool on_rho = (x + 2 * y == 0);
            CHECK(tau2.contains(mvec({x, y})) == (in_dual && on_rho));
        }

    Cone c3 = ncone(3, {{1, 0, 0}, {0, 1, 0}, {-1, 0, 1}});
    Cone tau3 = facet_dual_to_ray(c3, nvec({1, 0, 0}));
    CHECK(tau3.rays() == std::vector<LatticeVector>{mvec({0, 0, 1}), mvec({0, 1, 0})});

    CHECK_THROWS_AS(facet_dual_to_ray(q, nvec({1, 1})), domain_error);
}

TEST_CASE("containment classification") {
    Cone q = ncone(2, {{1, 0}, {0, 1}});
    CHECK(q.locate(VectorQ(nvec({1, 1}))) == Cone::Where::Interior);
    Cone c = ncone(2, {{2, 1}, {1, 2}});
    CHECK(c.locate(VectorQ(nvec({2, 1}))) == Cone::Where::Boundary);
    CHECK(c.locate(VectorQ(nvec({1, 1}))) == Cone::Where::Interior);
    CHECK(c.locate(VectorQ(nvec({1, -1}))) == Cone::Where::Outside);
    // lower-dimensional cone: relative interior
    Cone ray = ncone(2, {{1, 1}});
    CHECK(ray.locate(VectorQ(nvec({2, 2}))) == Cone::Where::Interior);
    CHECK(ray.locate(VectorQ(nvec({0, 0}))) == Cone::Where::Boundary);
    CHECK(ray.locate(VectorQ(nvec({1, 0}))) == Cone::Where::Outside);
}

TEST_CASE("semigroup generators of non-pointed cones") {
    auto g1 = semigroup_generators(Cone::full_space(Side::M, 2));
    CHECK(g1.size() == 4);
    Cone half = Cone::from_inequalities(Side::M, 2, {LatticeVector(Side::N, {Int(1), Int(1)})});
    auto g2 = semigroup_generators(half);
    for (long x = -4; x <= 4; ++x)
        for (long y = -4; y <= 4; ++y) {
            if (x + y < 0) continue;
            CHECK(is_nonneg_combination(g2, mvec({x, y})));
        }
}

TEST_CASE("cone equality is canonical") {
    Cone a = ncone(2, {{2, 0}, {0, 3}, {1, 1}});  // (1,1) redundant, rays unscaled
    Cone b = ncone(2, {{0, 1}, {1, 0}});
    CHECK(a == b);
}
