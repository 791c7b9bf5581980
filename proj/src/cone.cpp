#include "tvarsl2/cone.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tvarsl2 {

namespace {

using Row = std::vector<Int>;

Int dot(const Row& a, const Row& b) {
    Int acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

Row primitive_row(Row r) {
    Int g = coord_gcd(r);
    if (g == 0) return r;
    for (auto& x : r) x /= g;
    return r;
}

bool row_is_zero(const Row& r) {
    return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
}

// Double description: generators of {x : <x,h> >= 0 for all h in constraints}.
// Starts from +-basis of the whole space; possibly redundant output.
std::vector<Row> dd_dual_generators(const IntMat& constraints, int n) {
    std::set<Row> rs;
    for (int i = 0; i < n; ++i) {
        Row e(n, Int(0));
        e[i] = 1;
        rs.insert(e);
        e[i] = -1;
        rs.insert(e);
    }
    for (const auto& h : constraints) {
        if (row_is_zero(h)) continue;
        std::vector<Row> pos, zero, neg;
        std::vector<Int> pv, nv;
        for (const auto& r : rs) {
            Int s = dot(r, h);
            if (s > 0) { pos.push_back(r); pv.push_back(s); }
            else if (s < 0) { neg.push_back(r); nv.push_back(s); }
            else zero.push_back(r);
        }
        std::set<Row> next(zero.begin(), zero.end());
        next.insert(pos.begin(), pos.end());
        for (std::size_t i = 0; i < pos.size(); ++i)
            for (std::size_t j = 0; j < neg.size(); ++j) {
                Row w(h.size());
                for (std::size_t t = 0; t < w.size(); ++t)
                    w[t] = pv[i] * neg[j][t] - nv[j] * pos[i][t];
                if (!row_is_zero(w)) next.insert(primitive_row(std::move(w)));
            }
        rs = std::move(next);
    }
    return std::vector<Row>(rs.begin(), rs.end());
}

// Orthogonal projection of g onto the complement of span(lin) over Q,
// returned as the primitive integral vector along it (zero row if g in span).
Row project_off_lineality(const Row& g, const IntMat& lin) {
    if (lin.empty()) return primitive_row(g);
    int k = static_cast<int>(lin.size());
    // solve Gram * lambda = (lin_i . g)
    std::vector<std::vector<Rat>> gram(k, std::vector<Rat>(k + 1));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) gram[i][j] = Rat(dot(lin[i], lin[j]));
        gram[i][k] = Rat(dot(lin[i], g));
    }
    // Gaussian elimination (Gram matrix is invertible: lin rows independent)
    for (int col = 0; col < k; ++col) {
        int piv = -1;
        for (int i = col; i < k; ++i)
            if (gram[i][col] != 0) { piv = i; break; }
        if (piv < 0) throw internal_error("degenerate Gram matrix");
        std::swap(gram[col], gram[piv]);
        for (int i = 0; i < k; ++i) {
            if (i == col || gram[i][col] == 0) continue;
            Rat f = gram[i][col] / gram[col][col];
            for (int j = col; j <= k; ++j) gram[i][j] -= f * gram[col][j];
        }
    }
    std::vector<Rat> lambda(k);
    for (int i = 0; i < k; ++i) lambda[i] = gram[i][k] / gram[i][i];
    std::vector<Rat> perp(g.size());
    for (std::size_t t = 0; t < g.size(); ++t) {
        perp[t] = Rat(g[t]);
        for (int i = 0; i < k; ++i) perp[t] -= lambda[i] * Rat(lin[i][t]);
    }
    bool zero = std::all_of(perp.begin(), perp.end(), [](const Rat& x) { return x == 0; });
    if (zero) return Row(g.size(), Int(0));
    Int lcm(1);
    for (const auto& x : perp) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    Row out(g.size());
    for (std::size_t t = 0; t < g.size(); ++t) out[t] = to_integer(perp[t] * Rat(lcm));
    return primitive_row(std::move(out));
}

// Canonical extreme-ray representatives of cone(gens) given a complete
// constraint description (inequalities whose kernel is the lineality).
std::vector<Row> extreme_rays(const std::vector<Row>& gens, const IntMat& constraints, int n) {
    IntMat lin = integral_kernel_basis(constraints.empty() ? IntMat{Row(n, Int(0))} : constraints);
    int rank_h = constraints.empty() ? 0 : rank_of(constraints);
    std::set<Row> out;
    for (const auto& g : gens) {
        if (row_is_zero(g)) continue;
        Row proj = project_off_lineality(g, lin);
        if (row_is_zero(proj)) continue;  // lineality direction
        IntMat active;
        for (const auto& h : constraints)
            if (dot(g, h) == 0) active.push_back(h);
        int rank_active = active.empty() ? 0 : rank_of(active);
        if (rank_active == rank_h - 1) out.insert(std::move(proj));
    }
    return std::vector<Row>(out.begin(), out.end());
}

std::vector<LatticeVector> to_vecs(const std::vector<Row>& rows, Side side) {
    std::vector<LatticeVector> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.emplace_back(side, r);
    std::sort(out.begin(), out.end());
    return out;
}

IntMat to_rows(const std::vector<LatticeVector>& vs) {
    IntMat out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(v.coords);
    return out;
}

}  // namespace

Cone Cone::from_generators(Side side, int rank, const std::vector<LatticeVector>& gens) {
    if (rank < 1) throw domain_error("cone rank must be >= 1");
    std::vector<Row> g;
    for (const auto& v : gens) {
        if (v.side != side) throw domain_error("cone generator on wrong side");
        if (v.rank() != rank) throw domain_error("cone generator rank mismatch");
        if (v.is_zero()) continue;
        g.push_back(primitive_row(v.coords));
    }
    Cone c(side, rank);

    // dual description first
    IntMat gmat = g;
    std::vector<Row> dual_raw = dd_dual_generators(gmat, rank);
    std::vector<Row> facets = extreme_rays(dual_raw, gmat, rank);
    IntMat span_perp = integral_kernel_basis(gmat.empty() ? IntMat{Row(rank, Int(0))} : gmat);
    c.facet_normals_ = to_vecs(facets, dual_side(side));
    c.span_normals_ = to_vecs(span_perp, dual_side(side));

    // own canonical generators
    IntMat constraints = facets;
    for (const auto& s : span_perp) {
        constraints.push_back(s);
        Row neg = s;
        for (auto& x : neg) x = -x;
        constraints.push_back(std::move(neg));
    }
    std::vector<Row> rays = extreme_rays(g, constraints, rank);
    c.rays_ = to_vecs(rays, side);
    IntMat lin = integral_kernel_basis(constraints.empty() ? IntMat{Row(rank, Int(0))} : constraints);
    c.lineality_ = to_vecs(lin, side);
    return c;
}

Cone Cone::from_generators_q(Side side, int rank, const std::vector<VectorQ>& gens) {
    std::vector<LatticeVector> ints;
    for (const auto& v : gens) {
        if (v.is_zero()) continue;
        ints.push_back(primitive_part(v));
    }
    return from_generators(side, rank, ints);
}

Cone Cone::from_inequalities(Side side, int rank, const std::vector<LatticeVector>& normals,
                             const std::vector<LatticeVector>& equalities) {
    IntMat cons;
    for (const auto& v : normals) {
        if (v.rank() != rank) throw domain_error("constraint rank mismatch");
        cons.push_back(v.coords);
    }
    for (const auto& v : equalities) {
        if (v.rank() != rank) throw domain_error("constraint rank mismatch");
        cons.push_back(v.coords);
        Row neg = v.coords;
        for (auto& x : neg) x = -x;
        cons.push_back(std::move(neg));
    }
    std::vector<Row> gens = dd_dual_generators(cons, rank);
    std::vector<LatticeVector> gv;
    for (auto& r : gens)
        if (!row_is_zero(r)) gv.emplace_back(side, std::move(r));
    return from_generators(side, rank, gv);
}

Cone Cone::zero(Side side, int rank) { return from_generators(side, rank, {}); }

Cone Cone::full_space(Side side, int rank) {
    std::vector<LatticeVector> gens;
    for (int i = 0; i < rank; ++i) {
        std::vector<Int> c(rank, Int(0));
        c[i] = 1;
        gens.emplace_back(side, c);
        c[i] = -1;
        gens.emplace_back(side, c);
    }
    return from_generators(side, rank, gens);
}

int Cone::dim() const { return rank_ - static_cast<int>(span_normals_.size()); }

Cone::Where Cone::locate(const VectorQ& v) const {
    if (v.rank() != rank_) throw domain_error("locate: rank mismatch");
    if (v.side != side_) throw domain_error("locate: vector on wrong side");
    for (const auto& s : span_normals_)
        if (pairing(v, s) != 0) return Where::Outside;
    bool strict = true;
    for (const auto& f : facet_normals_) {
        Rat p = pairing(v, f);
        if (p < 0) return Where::Outside;
        if (p == 0) strict = false;
    }
    return strict ? Where::Interior : Where::Boundary;
}

Cone Cone::dual() const {
    Cone d(dual_side(side_), rank_);
    d.rays_ = facet_normals_;
    d.lineality_ = span_normals_;
    d.facet_normals_ = rays_;
    d.span_normals_ = lineality_;
    return d;
}

bool Cone::has_ray(const LatticeVector& rho) const {
    if (rho.is_zero()) return false;
    LatticeVector p = primitive_part(rho);
    return std::find(rays_.begin(), rays_.end(), p) != rays_.end();
}

std::vector<LatticeVector> Cone::generators() const {
    std::vector<LatticeVector> g = rays_;
    for (const auto& l : lineality_) {
        g.push_back(l);
        g.push_back(-l);
    }
    return g;
}

Cone intersect(const Cone& a, const Cone& b) {
    if (a.side() != b.side() || a.rank() != b.rank()) throw domain_error("intersect: incompatible cones");
    std::vector<LatticeVector> normals = a.facet_normals();
    normals.insert(normals.end(), b.facet_normals().begin(), b.facet_normals().end());
    std::vector<LatticeVector> eqs = a.span_normals();
    eqs.insert(eqs.end(), b.span_normals().begin(), b.span_normals().end());
    return Cone::from_inequalities(a.side(), a.rank(), normals, eqs);
}

std::vector<LatticeVector> hilbert_basis(const Cone& c) {
    if (!c.is_pointed()) throw domain_error("hilbert_basis requires a pointed cone");
    if (c.is_zero()) return {};
    int n = c.rank();
    const auto& rays = c.rays();

    std::vector<Int> lo(n, Int(0)), hi(n, Int(0));
    for (const auto& r : rays)
        for (int j = 0; j < n; ++j) {
            if (r.coords[j] < 0) lo[j] += r.coords[j];
            else hi[j] += r.coords[j];
        }
    Int cells(1);
    for (int j = 0; j < n; ++j) cells *= hi[j] - lo[j] + 1;
    if (cells > 20'000'000) throw domain_error("hilbert_basis: enumeration box too large");

    auto in_cone = [&](const std::vector<Int>& x) {
        for (const auto& s : c.span_normals())
            if (dot(x, s.coords) != 0) return false;
        for (const auto& f : c.facet_normals())
            if (dot(x, f.coords) < 0) return false;
        return true;
    };
    auto grade = [&](const std::vector<Int>& x) {
        Int g(0);
        for (const auto& f : c.facet_normals()) g += dot(x, f.coords);
        return g;
    };

    std::vector<std::pair<Int, std::vector<Int>>> cand;
    std::vector<Int> x(lo);
    while (true) {
        bool zero = std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; });
        if (!zero && in_cone(x)) cand.emplace_back(grade(x), x);
        int j = 0;
        for (; j < n; ++j) {
            if (x[j] < hi[j]) {
                ++x[j];
                break;
            }
            x[j] = lo[j];
        }
        if (j == n) break;
    }
    std::sort(cand.begin(), cand.end());

    std::vector<std::vector<Int>> basis;
    for (const auto& [g, v] : cand) {
        bool reducible = false;
        for (const auto& h : basis) {
            std::vector<Int> diff(n);
            bool dz = true;
            for (int j = 0; j < n; ++j) {
                diff[j] = v[j] - h[j];
                if (diff[j] != 0) dz = false;
            }
            if (dz) { reducible = true; break; }  // duplicate grading entry
            if (in_cone(diff)) { reducible = true; break; }
        }
        if (!reducible) basis.push_back(v);
    }
    std::vector<LatticeVector> out;
    out.reserve(basis.size());
    for (auto& b : basis) out.emplace_back(c.side(), std::move(b));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<LatticeVector> semigroup_generators(const Cone& c) {
    if (c.is_pointed()) return hilbert_basis(c);
    int n = c.rank();
    IntMat lin = to_rows(c.lineality());
    int k = static_cast<int>(lin.size());
    IntMat basis = complete_to_basis(lin, n);
    // invert basis (unimodular) to get coordinates
    // coordinates of x: solve  coords * basis = x  -> coords = x * basis^{-1}
    // compute basis^{-1} via the same augmented elimination used elsewhere
    IntMat binv;
    {
        IntMat aug(n, std::vector<Int>(2 * n, Int(0)));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) aug[i][j] = basis[j][i];  // transpose: solve B^T y = e_i
            aug[i][n + i] = 1;
        }
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int i = col; i < n; ++i)
                if (aug[i][col] != 0) { piv = i; break; }
            if (piv < 0) throw internal_error("semigroup_generators: singular basis");
            std::swap(aug[col], aug[piv]);
            for (int i = col + 1; i < n; ++i) {
                while (aug[i][col] != 0) {
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), aug[col][col].get_mpz_t(), aug[i][col].get_mpz_t());
                    for (int t = 0; t < 2 * n; ++t) aug[col][t] -= q * aug[i][t];
                    std::swap(aug[col], aug[i]);
                }
            }
        }
        for (int col = n - 1; col >= 0; --col) {
            if (aug[col][col] < 0)
                for (int t = 0; t < 2 * n; ++t) aug[col][t] = -aug[col][t];
            for (int i = 0; i < col; ++i) {
                Int q = aug[i][col];
                if (q != 0)
                    for (int t = 0; t < 2 * n; ++t) aug[i][t] -= q * aug[col][t];
            }
        }
        binv.assign(n, std::vector<Int>(n));
        // aug now holds (B^T)^{-1} on the right; (B^{-1})^T = (B^T)^{-1}
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) binv[i][j] = aug[j][n + i];
    }
    auto coords_of = [&](const Row& x) {
        Row cds(n, Int(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) cds[i] += x[j] * binv[j][i];
        return cds;
    };

    int qrank = n - k;
    if (qrank == 0) {
        std::vector<LatticeVector> out;
        for (const auto& l : c.lineality()) {
            out.push_back(l);
            out.push_back(-l);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    std::vector<LatticeVector> qgens;
    for (const auto& r : c.rays()) {
        Row cds = coords_of(r.coords);
        Row tail(cds.begin() + k, cds.end());
        if (!row_is_zero(tail)) qgens.emplace_back(c.side(), tail);
    }
    Cone quotient = Cone::from_generators(c.side(), qrank, qgens);
    std::vector<LatticeVector> hb = hilbert_basis(quotient);

    std::vector<LatticeVector> out;
    for (const auto& h : hb) {
        Row lifted(n, Int(0));
        for (int i = 0; i < qrank; ++i)
            for (int j = 0; j < n; ++j) lifted[j] += h.coords[i] * basis[k + i][j];
        out.emplace_back(c.side(), std::move(lifted));
    }
    for (const auto& l : c.lineality()) {
        out.push_back(l);
        out.push_back(-l);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Root> is_root(const Cone& c, const LatticeVector& e) {
    if (e.side != dual_side(c.side())) throw domain_error("root candidate on wrong side");
    if (e.rank() != c.rank()) throw domain_error("root candidate rank mismatch");
    if (c.rays().empty()) return std::nullopt;
    std::optional<LatticeVector> distinguished;
    for (const auto& rho : c.rays()) {
        Rat p = pairing(e, rho);
        if (p >= 0) continue;
        if (p != -1 || distinguished) return std::nullopt;
        distinguished = rho;
    }
    if (!distinguished) return std::nullopt;
    return Root{e, *distinguished};
}

SL2Root make_sl2_root(const Cone& c, const LatticeVector& e) {
    auto plus = is_root(c, e);
    auto minus = is_root(c, -e);
    if (!plus || !minus) throw domain_error("not an SL2-root of the cone");
    return SL2Root{e, plus->distinguished_ray, minus->distinguished_ray,
                   minus->distinguished_ray - plus->distinguished_ray};
}

SL2RootEnumeration enumerate_sl2_roots(const Cone& c) {
    SL2RootEnumeration out;
    out.spanning = c.rays_span();
    const auto& rays = c.rays();
    std::set<std::vector<Int>> seen;
    for (std::size_t i = 0; i < rays.size(); ++i) {
        for (std::size_t j = 0; j < rays.size(); ++j) {
            if (i == j) continue;
            std::vector<Rat> targets(rays.size(), Rat(0));
            targets[i] = Rat(-1);
            targets[j] = Rat(1);
            auto sol = solve_pairings(rays, targets);
            if (sol.kind == SolvePairingsResult::Kind::Unique) {
                const auto& e = *sol.particular;
                if (!seen.insert(e.coords).second) continue;
                out.roots.push_back(make_sl2_root(c, e));
            } else if (sol.kind == SolvePairingsResult::Kind::Family) {
                if (!seen.insert(sol.particular->coords).second) continue;
                out.families.push_back(SL2RootFamily{make_sl2_root(c, *sol.particular), sol.kernel_basis});
            }
        }
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const SL2Root& a, const SL2Root& b) { return a.e < b.e; });
    std::sort(out.families.begin(), out.families.end(),
              [](const SL2RootFamily& a, const SL2RootFamily& b) { return a.representative.e < b.representative.e; });
    return out;
}

Cone facet_dual_to_ray(const Cone& c, const LatticeVector& rho) {
    if (!c.has_ray(rho)) throw domain_error("facet_dual_to_ray: not a ray of the cone");
    // tau = {m : <m, ray> >= 0 for all rays, <m, rho> = 0, <m, lineality> = 0};
    // the constraint vectors are functionals on the dual side.
    std::vector<LatticeVector> ineqs, eqs;
    for (const auto& r : c.rays()) ineqs.push_back(r);
    for (const auto& l : c.lineality()) eqs.push_back(l);
    eqs.push_back(primitive_part(rho));
    return Cone::from_inequalities(dual_side(c.side()), c.rank(), ineqs, eqs);
}

}  // namespace tvarsl2
