#include "tvarsl2/lnd.hpp"

#include <algorithm>

namespace tvarsl2 {

namespace {

VectorQ append_coord(const VectorQ& v, const Rat& last) {
    std::vector<Rat> c = v.coords;
    c.push_back(last);
    return VectorQ(v.side, std::move(c));
}

std::string vec_str(const VectorQ& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.coords.size(); ++i) {
        if (i) s += ",";
        s += rat_to_string(v.coords[i]);
    }
    return s + ")";
}

std::string vec_str(const LatticeVector& v) { return vec_str(VectorQ(v)); }

}  // namespace

GradedTerm::GradedTerm(RationalFunction coeff, LatticeVector m, Rat t_exp)
    : coeff_(std::move(coeff)), m_(std::move(m)), t_exp_(std::move(t_exp)) {
    if (m_.side != Side::M) throw domain_error("graded term weight must be M-side");
    if (coeff_.is_zero()) {
        t_exp_ = 0;
        return;
    }
    Int fl = rat_floor(t_exp_);
    if (fl != 0) {
        coeff_ = coeff_ * RationalFunction::t().pow(fl.get_si());
        t_exp_ -= Rat(fl);
    }
}

GradedTerm GradedTerm::monomial(const LatticeVector& m, long t_power) {
    return GradedTerm(RationalFunction::t().pow(t_power), m, Rat(0));
}

GradedTerm GradedTerm::zero(int rank) {
    return GradedTerm(RationalFunction(), LatticeVector(Side::M, std::vector<Int>(rank, Int(0))),
                      Rat(0));
}

GradedTerm GradedTerm::operator*(const GradedTerm& o) const {
    return GradedTerm(coeff_ * o.coeff_, m_ + o.m_, t_exp_ + o.t_exp_);
}

GradedTerm GradedTerm::operator-(const GradedTerm& o) const {
    if (is_zero()) return GradedTerm(-o.coeff_, o.m_, o.t_exp_);
    if (o.is_zero()) return *this;
    if (!(m_ == o.m_) || t_exp_ != o.t_exp_)
        throw domain_error("graded term subtraction across different degrees");
    return GradedTerm(coeff_ - o.coeff_, m_, t_exp_);
}

GradedTerm GradedTerm::scaled(const Rat& k) const { return GradedTerm(coeff_.scaled(k), m_, t_exp_); }

std::optional<std::pair<LatticeVector, Rat>> GradedTerm::homogeneous_degree() const {
    if (is_zero()) return std::nullopt;
    auto monomial_deg = [](const Polynomial& p) -> std::optional<int> {
        int nonzero = -1;
        for (int i = 0; i <= p.degree(); ++i)
            if (p.coeff(i) != 0) {
                if (nonzero >= 0) return std::nullopt;
                nonzero = i;
            }
        return nonzero;
    };
    auto dn = monomial_deg(coeff_.num());
    auto dd = monomial_deg(coeff_.den());
    if (!dn || !dd) return std::nullopt;
    return std::make_pair(m_, t_exp_ + Rat(*dn - *dd));
}

// ---------------------------------------------------------------------------

VectorQ Coloring::chosen_vertex(const CurvePoint& z) const {
    auto it = chosen.find(z);
    if (it != chosen.end()) return it->second;
    return VectorQ(Side::N, std::vector<Rat>(divisor.rank(), Rat(0)));
}

Coloring make_coloring(const PolyhedralDivisor& divisor, const std::optional<CurvePoint>& z_inf,
                       const std::map<CurvePoint, VectorQ>& chosen, const CurvePoint& z0) {
    if ((divisor.curve() == CurveKind::P1) != z_inf.has_value())
        throw domain_error("coloring: z_inf is required exactly on P1");
    if (z_inf && z0 == *z_inf) throw domain_error("coloring: marked point cannot be z_inf");

    Coloring c{divisor,
               z_inf,
               chosen,
               z0,
               Int(1),
               VectorQ(Side::N, std::vector<Rat>(divisor.rank(), Rat(0))),
               Cone::zero(Side::N, divisor.rank()),
               Cone::zero(Side::N, divisor.rank() + 1)};

    VectorQ v0 = c.chosen_vertex(z0);
    Int d(1);
    for (const auto& x : v0.coords) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    c.d = d;

    VectorQ vdeg(Side::N, std::vector<Rat>(divisor.rank(), Rat(0)));
    for (const auto& [z, v] : chosen) {
        if (z_inf && z == *z_inf) continue;
        vdeg = vdeg + v;
    }
    c.v_deg = vdeg;

    SigmaPolyhedron deg = divisor.degree(z_inf);
    std::vector<VectorQ> gens;
    for (const auto& v : deg.vertices()) gens.push_back(v - vdeg);
    for (const auto& r : divisor.tail().rays()) gens.push_back(VectorQ(r));
    c.omega = Cone::from_generators_q(Side::N, divisor.rank(), gens);

    std::vector<VectorQ> tgens;
    for (const auto& r : c.omega.rays()) tgens.push_back(append_coord(VectorQ(r), Rat(0)));
    tgens.push_back(append_coord(v0, Rat(1)));
    if (z_inf) {
        for (const auto& u : divisor.slice(*z_inf).vertices())
            tgens.push_back(append_coord(u + vdeg - v0, Rat(-1)));
    }
    c.omega_tilde = Cone::from_generators_q(Side::N, divisor.rank() + 1, tgens);
    return c;
}

bool ValidationReport::all_pass() const {
    return std::all_of(items.begin(), items.end(), [](const ValidationItem& i) { return i.pass; });
}

ValidationReport validate_coloring(const Coloring& c) {
    ValidationReport rep;
    auto push = [&](const std::string& name, bool pass, const std::string& detail) {
        rep.items.push_back({name, pass, detail});
    };

    auto proper = c.divisor.is_proper();
    push("(1) divisor is proper", proper.proper, proper.reason);

    bool vertices_ok = true;
    std::string bad;
    for (const auto& [z, v] : c.chosen) {
        if (c.z_inf && z == *c.z_inf) {
            vertices_ok = false;
            bad = "colored vertex at z_inf";
            break;
        }
        const auto& verts = c.divisor.slice(z).vertices();
        if (std::find(verts.begin(), verts.end(), v) == verts.end()) {
            vertices_ok = false;
            bad = "chosen vector at " + z.str() + " is not a vertex of the slice";
            break;
        }
    }
    for (const auto& z : c.divisor.support()) {
        if (c.z_inf && z == *c.z_inf) continue;
        if (!c.chosen.count(z)) {
            vertices_ok = false;
            bad = "support point " + z.str() + " has no colored vertex";
            break;
        }
    }
    push("(1) one colored vertex per point of C'", vertices_ok, bad);

    SigmaPolyhedron deg = c.divisor.degree(c.z_inf);
    const auto& dverts = deg.vertices();
    bool vdeg_is_vertex = std::find(dverts.begin(), dverts.end(), c.v_deg) != dverts.end();
    push("(2) v_deg is a vertex of deg D|C'", vdeg_is_vertex, vec_str(c.v_deg));

    int non_lattice = 0;
    bool marked_ok = true;
    for (const auto& [z, v] : c.chosen) {
        if (c.z_inf && z == *c.z_inf) continue;
        if (!v.is_integral()) {
            ++non_lattice;
            if (!(z == c.z0)) marked_ok = false;
        }
    }
    push("(3) at most one non-lattice colored vertex, at the marked point",
         non_lattice <= 1 && marked_ok, non_lattice > 1 ? "several non-lattice vertices" : "");
    return rep;
}

CoherentPair make_coherent_pair(Coloring coloring, const LatticeVector& e) {
    if (e.side != Side::M || e.rank() != coloring.divisor.rank())
        throw domain_error("coherent pair: bad degree vector");
    Rat s = -rat(Int(1), coloring.d) - pairing(e, coloring.chosen_vertex(coloring.z0));
    return CoherentPair{std::move(coloring), e, s};
}

ValidationReport validate_coherent(const CoherentPair& cp) {
    ValidationReport rep = validate_coloring(cp.coloring);
    auto push = [&](const std::string& name, bool pass, const std::string& detail) {
        rep.items.push_back({name, pass, detail});
    };
    const Coloring& c = cp.coloring;

    bool s_integral = is_integer(cp.s);
    push("(1) s = -1/d - v_{z0}(e) is an integer", s_integral, rat_to_string(cp.s));

    bool root_ok = false;
    std::string root_detail;
    if (s_integral) {
        std::vector<Int> ec = cp.e.coords;
        ec.push_back(to_integer(cp.s));
        LatticeVector e_tilde(Side::M, std::move(ec));
        VectorQ v0 = c.chosen_vertex(c.z0);
        std::vector<Rat> rc;
        for (const auto& x : v0.coords) rc.push_back(x * Rat(c.d));
        rc.push_back(Rat(c.d));
        LatticeVector rho_tilde = VectorQ(Side::N, rc).to_lattice();
        auto root = is_root(c.omega_tilde, e_tilde);
        if (!root) {
            root_detail = "(e,s) is not a root of the associated cone";
        } else if (!(root->distinguished_ray == primitive_part(rho_tilde))) {
            root_detail = "distinguished ray is " + vec_str(root->distinguished_ray) +
                          ", expected " + vec_str(rho_tilde);
        } else {
            root_ok = true;
        }
    }
    push("(1) (e,s) is a root of omega_tilde with distinguished ray (d v0, d)", root_ok,
         root_detail);

    bool cond2 = true;
    std::string det2;
    for (const auto& z : c.divisor.support()) {
        if ((c.z_inf && z == *c.z_inf) || z == c.z0) continue;
        VectorQ vz = c.chosen_vertex(z);
        Rat vze = pairing(cp.e, vz);
        for (const auto& v : c.divisor.slice(z).vertices()) {
            if (v == vz) continue;
            if (pairing(cp.e, v) < Rat(1) + vze) {
                cond2 = false;
                det2 = "violated at " + z.str() + " by vertex " + vec_str(v);
            }
        }
    }
    push("(2) v(e) >= 1 + v_z(e) for uncolored vertices off the marked point", cond2, det2);

    bool cond3 = true;
    std::string det3;
    {
        VectorQ v0 = c.chosen_vertex(c.z0);
        Rat v0e = pairing(cp.e, v0);
        for (const auto& v : c.divisor.slice(c.z0).vertices()) {
            if (v == v0) continue;
            if (Rat(c.d) * pairing(cp.e, v) < Rat(1) + Rat(c.d) * v0e) {
                cond3 = false;
                det3 = "violated by vertex " + vec_str(v);
            }
        }
    }
    push("(3) d v(e) >= 1 + d v_{z0}(e) for the other vertices at z0", cond3, det3);

    bool cond4 = true;
    std::string det4;
    if (c.z_inf) {
        Rat vdege = pairing(cp.e, c.v_deg);
        for (const auto& v : c.divisor.slice(*c.z_inf).vertices()) {
            if (Rat(c.d) * pairing(cp.e, v) < Rat(-1) - Rat(c.d) * vdege) {
                cond4 = false;
                det4 = "violated by vertex " + vec_str(v);
            }
        }
    }
    push("(4) d v(e) >= -1 - d v_deg(e) on the slice at infinity", cond4, det4);
    return rep;
}

// ---------------------------------------------------------------------------

FiberLND make_fiber_lnd(const PolyhedralDivisor& divisor, const LatticeVector& e,
                        const RationalFunction& phi) {
    auto root = is_root(divisor.tail(), e);
    if (!root) throw domain_error("fiber LND: e is not a root of the tail cone");
    if (phi.is_zero()) throw domain_error("fiber LND: phi must be nonzero");
    QDivisor de = divisor.evaluate(VectorQ(e));
    if (!(divisor_of(phi, divisor.curve()) + de >= QDivisor(divisor.curve())))
        throw domain_error("fiber LND: phi is not a section of O(D(e))");
    return FiberLND{divisor, *root, phi};
}

RationalFunction HorizontalLND::phi_power(const LatticeVector& m) const {
    RationalFunction acc = RationalFunction::constant(Rat(1));
    for (const auto& [z, vz] : cocycle) {
        long k = to_integer(pairing(m, vz)).get_si();
        Polynomial lin(std::vector<Rat>{-z, Rat(1)});
        acc = acc * RationalFunction(lin, Polynomial::constant(Rat(1))).pow(-k);
    }
    return acc;
}

RationalFunction HorizontalLND::alpha(const LatticeVector& m) const {
    RationalFunction acc;
    for (const auto& [z, vz] : cocycle) {
        Rat p = pairing(m, vz);
        RationalFunction term(Polynomial({Rat(0), -p}), Polynomial({-z, Rat(1)}));
        acc = acc + term;
    }
    return acc;
}

HorizontalLND make_horizontal_lnd(const CoherentPair& pair) {
    const Coloring& c = pair.coloring;
    if (!(c.z0 == CurvePoint::at(0)))
        throw domain_error("horizontal LND: chart must be normalized with z0 = 0");
    if (c.z_inf && !c.z_inf->infinite)
        throw domain_error("horizontal LND: chart must be normalized with z_inf = infinity");
    HorizontalLND h{pair, pair.e, c.d, c.chosen_vertex(c.z0), pair.s, {}};
    for (const auto& [z, v] : c.chosen) {
        if (z == c.z0 || (c.z_inf && z == *c.z_inf)) continue;
        if (v.is_zero()) continue;
        if (z.infinite) throw domain_error("horizontal LND: colored vertex at infinity");
        if (!v.is_integral())
            throw domain_error("horizontal LND: non-lattice colored vertex off the marked point");
        h.cocycle.emplace(z.coord, v.to_lattice());
    }
    return h;
}

HomogeneousLND::HomogeneousLND(FiberLND f)
    : data_(std::move(f)), degree_(std::get<FiberLND>(data_).root.e) {}

HomogeneousLND::HomogeneousLND(HorizontalLND h)
    : data_(std::move(h)), degree_(std::get<HorizontalLND>(data_).e_deg) {}

const PolyhedralDivisor& HomogeneousLND::divisor() const {
    return is_fiber() ? fiber().divisor : horizontal().pair.coloring.divisor;
}

GradedTerm apply(const HomogeneousLND& lnd, const GradedTerm& x) {
    if (x.is_zero()) return x;
    if (lnd.is_fiber()) {
        const FiberLND& f = lnd.fiber();
        Rat factor = pairing(x.m(), f.root.distinguished_ray);
        return GradedTerm(x.coeff().scaled(factor) * f.phi, x.m() + f.root.e, x.t_exp());
    }
    const HorizontalLND& h = lnd.horizontal();
    if (h.d % denominator(x.t_exp()) != 0)
        throw domain_error("graded term t-exponent denominator does not divide d");
    const RationalFunction& f = x.coeff();
    RationalFunction inner = RationalFunction::t() * f.derivative() +
                             f.scaled(pairing(x.m(), h.v0) + x.t_exp()) - h.alpha(x.m()) * f;
    RationalFunction factor = h.phi_power(h.e_deg).scaled(Rat(h.d));
    return GradedTerm(factor * inner, x.m() + h.e_deg, x.t_exp() + h.s);
}

NilpotencyResult iterate_to_zero(const HomogeneousLND& lnd, const GradedTerm& x, int bound) {
    if (bound < 1) throw domain_error("iterate_to_zero: bound must be >= 1");
    GradedTerm cur = x;
    for (int n = 0; n <= bound; ++n) {
        if (cur.is_zero()) return {true, std::max(n, 1)};
        cur = apply(lnd, cur);
    }
    return {false, bound};
}

KernelCone kernel_cone(const HomogeneousLND& lnd) {
    int n = lnd.degree().rank();
    if (lnd.is_fiber()) {
        const FiberLND& f = lnd.fiber();
        Cone tau = facet_dual_to_ray(f.divisor.tail(), f.root.distinguished_ray);
        IntMat full;
        for (int i = 0; i < n; ++i) {
            std::vector<Int> row(n, Int(0));
            row[i] = 1;
            full.push_back(std::move(row));
        }
        return {tau, full};
    }
    const HorizontalLND& h = lnd.horizontal();
    Cone omega_dual = h.pair.coloring.omega.dual();
    std::vector<Int> w;
    for (const auto& x : h.v0.coords) w.push_back(to_integer(x * Rat(h.d)));
    IntMat sys(1);
    sys[0] = w;
    sys[0].push_back(h.d);
    IntMat ker = integral_kernel_basis(sys);
    IntMat basis;
    for (const auto& row : ker) basis.push_back(std::vector<Int>(row.begin(), row.begin() + n));
    return {omega_dual, hnf_rows(std::move(basis))};
}

bool kernels_intersect_trivially(const HorizontalLND& a, const HorizontalLND& b) {
    const Coloring& ca = a.pair.coloring;
    const Coloring& cb = b.pair.coloring;
    if (ca.z_inf.has_value() != cb.z_inf.has_value() || (ca.z_inf && !(*ca.z_inf == *cb.z_inf)))
        throw domain_error("kernel intersection requires matching points at infinity");
    if (!(ca.divisor == cb.divisor))
        throw domain_error("kernel intersection requires a common divisor");
    // the kernel weight cones are the duals of the degree-polytope cones
    bool trivial = intersect(ca.omega.dual(), cb.omega.dual()).is_zero();
    if (ca.divisor.rank() == 2 && !(ca.v_deg == cb.v_deg) && ca.omega.is_full_dimensional() &&
        cb.omega.is_full_dimensional()) {
        SigmaPolyhedron deg = ca.divisor.degree(ca.z_inf);
        bool adjacent = deg.vertices_adjacent(ca.v_deg, cb.v_deg);
        if (adjacent == trivial)
            throw internal_error("rank-2 adjacency cross-check disagrees with cone intersection");
    }
    return trivial;
}

CommutatorResult commutator(const HomogeneousLND& plus, const HomogeneousLND& minus,
                            const std::vector<GradedTerm>& probes) {
    if (!(plus.degree() == -minus.degree()))
        throw domain_error("commutator requires opposite degrees");
    int n = plus.degree().rank();

    struct Row {
        std::vector<Rat> lhs;
        Rat rhs;
        const GradedTerm* probe;
    };
    std::vector<Row> rows;
    for (const auto& x : probes) {
        if (x.is_zero()) continue;
        GradedTerm pm = apply(plus, apply(minus, x));
        GradedTerm mp = apply(minus, apply(plus, x));
        GradedTerm delta = pm - mp;
        Rat cval(0);
        if (!delta.is_zero()) {
            if (!(delta.m() == x.m()) || delta.t_exp() != x.t_exp())
                return {false, std::nullopt, x, "commutator does not preserve the probe degree"};
            RationalFunction ratio = delta.coeff() / x.coeff();
            auto c = ratio.constant_value();
            if (!c)
                return {false, std::nullopt, x, "commutator does not act by a scalar on this probe"};
            cval = *c;
        }
        Row r;
        for (const auto& c : x.m().coords) r.lhs.emplace_back(c);
        auto hd = x.homogeneous_degree();
        r.lhs.push_back(hd ? hd->second : Rat(0));
        r.rhs = cval;
        r.probe = &x;
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw domain_error("commutator: no usable probes");

    int cols = n + 1;
    std::vector<std::vector<Rat>> aug;
    for (const auto& r : rows) {
        std::vector<Rat> row = r.lhs;
        row.push_back(r.rhs);
        aug.push_back(std::move(row));
    }
    std::vector<int> pivot_col;
    int prow = 0;
    for (int col = 0; col < cols && prow < static_cast<int>(aug.size()); ++col) {
        int piv = -1;
        for (int i = prow; i < static_cast<int>(aug.size()); ++i)
            if (aug[i][col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(aug[prow], aug[piv]);
        for (int i = 0; i < static_cast<int>(aug.size()); ++i) {
            if (i == prow || aug[i][col] == 0) continue;
            Rat f = aug[i][col] / aug[prow][col];
            for (int j = col; j <= cols; ++j) aug[i][j] -= f * aug[prow][j];
        }
        pivot_col.push_back(col);
        ++prow;
    }
    for (int i = prow; i < static_cast<int>(aug.size()); ++i)
        if (aug[i][cols] != 0)
            return {false, std::nullopt, *rows[0].probe,
                    "commutator scalars are not linear in the probe degrees"};

    // p must be pinned by the probes (tau may stay free; it is then zero)
    int m_pivots = 0;
    for (int col : pivot_col)
        if (col < n) ++m_pivots;
    if (m_pivots < n) throw domain_error("commutator: probes do not span enough degrees to pin p");

    std::vector<Rat> sol(cols, Rat(0));
    for (int i = 0; i < prow; ++i) sol[pivot_col[i]] = aug[i][cols] / aug[i][pivot_col[i]];

    for (const auto& r : rows) {
        Rat acc(0);
        for (int j = 0; j < cols; ++j) acc += r.lhs[j] * sol[j];
        if (acc != r.rhs) return {false, std::nullopt, *r.probe, "fitted covector fails on a probe"};
    }
    if (sol[n] != 0)
        return {false, std::nullopt, std::nullopt,
                "commutator grading has a nonzero t-weight (not a downgrading)"};

    std::vector<Int> pc;
    for (int j = 0; j < n; ++j) {
        if (!is_integer(sol[j]))
            return {false, std::nullopt, std::nullopt, "downgrading covector is not integral"};
        pc.push_back(to_integer(sol[j]));
    }
    return {true, LatticeVector(Side::N, std::move(pc)), std::nullopt, ""};
}

std::vector<GradedTerm> default_probes(const PolyhedralDivisor& divisor, bool include_t) {
    Cone sigma_dual = divisor.tail().dual();
    std::vector<LatticeVector> degrees = semigroup_generators(sigma_dual);
    std::vector<GradedTerm> probes;
    int n = divisor.rank();
    probes.push_back(GradedTerm::monomial(LatticeVector(Side::M, std::vector<Int>(n, Int(0))), 0));
    if (include_t)
        probes.push_back(GradedTerm::monomial(LatticeVector(Side::M, std::vector<Int>(n, Int(0))), 1));
    for (const auto& m : degrees) {
        SectionModule mod = h0_basis(divisor.evaluate(VectorQ(m)));
        if (mod.empty) continue;
        probes.emplace_back(mod.generator, m, Rat(0));
        if (include_t) probes.emplace_back(mod.generator * RationalFunction::t(), m, Rat(0));
    }
    return probes;
}

}  // namespace tvarsl2
