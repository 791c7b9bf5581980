#include "tvarsl2/threefold.hpp"

#include <algorithm>
#include <set>

namespace tvarsl2 {

namespace {

using QMat = std::vector<std::vector<Rat>>;

VectorQ apply_qmat(const QMat& a, const VectorQ& v) {
    int n = static_cast<int>(a.size());
    std::vector<Rat> out(n, Rat(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i] += a[i][j] * v.coords[j];
    return VectorQ(v.side, std::move(out));
}

PolyhedralDivisor transform_rational(const PolyhedralDivisor& d, const QMat& a) {
    int n = d.rank();
    std::vector<LatticeVector> rays;
    for (const auto& r : d.tail().rays()) rays.push_back(primitive_part(apply_qmat(a, VectorQ(r))));
    Cone tail = Cone::from_generators(Side::N, n, rays);
    PolyhedralDivisor out(d.curve(), tail);
    for (const auto& [z, s] : d.slices()) {
        std::vector<VectorQ> verts;
        for (const auto& v : s.vertices()) verts.push_back(apply_qmat(a, v));
        out.set_slice(z, SigmaPolyhedron::from_vertices(tail, verts));
    }
    return out;
}

SigmaPolyhedron segment(const Cone& tail, const VectorQ& a, const VectorQ& b) {
    return SigmaPolyhedron::from_vertices(tail, {a, b});
}

VectorQ nq2(const Rat& x, const Rat& y) { return VectorQ(Side::N, {x, y}); }

// the + coloring of the table data: v_1 = (r-1, r) colored, everything else 0
Coloring table_plus_coloring(const ThreefoldDescriptor& x) {
    return x.action.partial_plus.horizontal().pair.coloring;
}

}  // namespace

PolyhedralDivisor threefold_divisor(ThreefoldFamily f, const Int& r, const std::optional<Rat>& a) {
    if (r < 1) throw domain_error("threefold: r must be a positive integer");
    if ((f == ThreefoldFamily::P1Family) != a.has_value())
        throw domain_error("threefold: parameter a is required exactly for the P1 family");
    if (a && *a <= 0) throw domain_error("threefold: a must be positive");

    Cone sigma = [&]() {
        switch (f) {
            case ThreefoldFamily::A1Homogeneous: return Cone::zero(Side::N, 2);
            case ThreefoldFamily::A1Cone:
                return Cone::from_generators(Side::N, 2, {nvec({1, 1})});
            default: {
                VectorQ r1(Side::N, {*a + 1, *a});
                VectorQ r2(Side::N, {*a + Rat(r) - 1, *a + Rat(r)});
                return Cone::from_generators_q(Side::N, 2, {r1, r2});
            }
        }
    }();

    CurveKind curve = f == ThreefoldFamily::P1Family ? CurveKind::P1 : CurveKind::A1;
    PolyhedralDivisor d(curve, sigma);
    VectorQ zero = nq2(Rat(0), Rat(0));
    d.set_slice(CurvePoint::at(0), segment(sigma, zero, nq2(Rat(1), Rat(0))));
    d.set_slice(CurvePoint::at(1), segment(sigma, zero, nq2(Rat(r - 1), Rat(r))));
    if (f == ThreefoldFamily::P1Family)
        d.set_slice(CurvePoint::infinity(), SigmaPolyhedron::from_vertices(sigma, {nq2(*a, *a)}));
    return d;
}

namespace {

struct TableParams {
    ThreefoldFamily family;
    Int r;
    std::optional<Rat> a;
};

// try to read the table parameters off a normalized horizontal action
std::optional<TableParams> table_parameters(const SL2ActionDescriptor& act);

}  // namespace

ThreefoldDescriptor build_threefold(ThreefoldFamily f, const Int& r, const std::optional<Rat>& a) {
    PolyhedralDivisor d = threefold_divisor(f, r, a);
    auto proper = d.is_proper();
    if (!proper.proper) throw internal_error("table divisor is not proper: " + proper.reason);

    auto actions = classify_horizontal(d);
    if (actions.empty()) throw internal_error("table divisor carries no horizontal action");

    // every action class on the table divisor must exhibit the same table
    // structure (SL2 and SL2/mu_2 also carry the descended right action)
    std::set<std::vector<Int>> classes, recognized;
    for (const auto& act : actions) {
        classes.insert(act.conjugacy_key.coords);
        auto tp = table_parameters(act);
        if (!tp) continue;
        if (tp->family != f || tp->r != r || tp->a != a)
            throw internal_error("table divisor carries an action of a different table row");
        recognized.insert(act.conjugacy_key.coords);
    }
    if (classes != recognized)
        throw internal_error("an action class on the table divisor is not of table shape");

    const LatticeVector e = mvec({1, -1});
    const SL2ActionDescriptor* chosen = nullptr;
    for (const auto& act : actions)
        if (act.e == e) chosen = &act;
    if (!chosen) throw internal_error("table divisor action is not in the e = (1,-1) orientation");
    if (!kernels_intersect_trivially(chosen->partial_plus.horizontal(),
                                     chosen->partial_minus.horizontal()))
        throw internal_error("table divisor has no open orbit");

    ThreefoldDescriptor x{f, r, a, d, *chosen, {}};
    x.invariants.homogeneous = f == ThreefoldFamily::A1Homogeneous;
    x.invariants.r_x = stabilizer_order(x);
    if (x.invariants.r_x != r) throw internal_error("stabilizer order disagrees with r");
    if (!x.invariants.homogeneous) {
        x.invariants.slope = slope(x);
        x.invariants.height = height(x);
    }
    switch (f) {
        case ThreefoldFamily::A1Homogeneous: x.invariants.n_x = 1; break;
        case ThreefoldFamily::A1Cone: x.invariants.n_x = 2; break;
        default: x.invariants.n_x = 3; break;
    }
    auto tor = is_toric_threefold(x);
    if (!tor.agree) throw internal_error("toricity criteria disagree");
    x.invariants.toric = tor.toric;
    return x;
}

Int stabilizer_order(const ThreefoldDescriptor& x) {
    // p_T = v_0^- - v_1^+ and p_R = (1,1) in the table coordinates
    LatticeVector p_t = nvec({1, 0}) - LatticeVector(Side::N, {x.r - 1, x.r});
    LatticeVector p_r = nvec({1, 1});
    Cone omega_dual = table_plus_coloring(x).omega.dual();

    std::optional<Int> best;
    const long bound = 64;
    for (long m1 = -bound; m1 <= bound; ++m1)
        for (long m2 = -bound; m2 <= bound; ++m2) {
            if (m1 == 0 && m2 == 0) continue;
            LatticeVector m = mvec({m1, m2});
            if (!omega_dual.contains(m)) continue;
            if (pairing(m, p_r) == 0) continue;
            Rat w = pairing(m, p_t);
            Int aw = to_integer(w);
            mpz_abs(aw.get_mpz_t(), aw.get_mpz_t());
            if (aw == 0) continue;
            if (!best || aw < *best) best = aw;
        }
    if (!best) throw domain_error("stabilizer_order: no eligible weight within the search bound");
    return *best;
}

namespace {

// slope of an r = 1 table model read off the U+-invariant weight cone: in the
// jointly normalized coordinates that cone is cone((1,0), (a+1, -a)), so the
// non-common ray carries a/(a+1) as -w2/w1
Rat slope_from_weight_cone(const Cone& omega_dual) {
    std::optional<Rat> sloped;
    bool found_common = false;
    for (const auto& ray : omega_dual.rays()) {
        if (ray == mvec({1, 0})) {
            found_common = true;
        } else if (ray.coords[0] > 0 && ray.coords[1] < 0) {
            sloped = Rat(-ray.coords[1]) / Rat(ray.coords[0]);
        }
    }
    if (!found_common || !sloped)
        throw internal_error("weight cone is not in the jointly normalized form");
    return *sloped;
}

Cone plus_coloring_weight_cone(const PolyhedralDivisor& d, const Int& r) {
    std::optional<CurvePoint> zinf;
    if (d.curve() == CurveKind::P1) zinf = CurvePoint::infinity();
    VectorQ zero(Side::N, {Rat(0), Rat(0)});
    std::map<CurvePoint, VectorQ> chosen = {{CurvePoint::at(0), zero},
                                            {CurvePoint::at(1), VectorQ(Side::N, {Rat(r - 1), Rat(r)})}};
    return make_coloring(d, zinf, chosen, CurvePoint::at(0)).omega.dual();
}

}  // namespace

Rat slope(const ThreefoldDescriptor& x) {
    if (x.family == ThreefoldFamily::A1Homogeneous)
        throw domain_error("slope undefined for homogeneous spaces");
    if (x.family == ThreefoldFamily::A1Cone) return Rat(1);
    Rat a = *x.a;
    Rat hbar = a / (a + 1);
    if (x.r == 1) {
        // reference-cone cross-check, active exactly for r = 1
        Rat check = slope_from_weight_cone(table_plus_coloring(x).omega.dual());
        if (check != hbar) throw internal_error("slope cross-check failed against the weight cone");
    }
    return hbar;
}

Rat height_from_slope(const Int& r, const Rat& hbar) {
    return hbar / (Rat(r) - Rat(r - 1) * hbar);
}

Rat height(const ThreefoldDescriptor& x) {
    if (x.family == ThreefoldFamily::A1Homogeneous)
        throw domain_error("height undefined for homogeneous spaces");

    // route (i): the closed form
    Rat direct = x.family == ThreefoldFamily::A1Cone ? Rat(1) : *x.a / (*x.a + Rat(x.r));

    // route (ii): quotient to the r = 1 model and take its slope, read off
    // the weight cone of the transformed divisor
    Rat via_quotient = [&]() {
        Rat rr(x.r);
        QMat phi_inv = {{Rat(1), (Rat(1) - rr) / rr}, {Rat(0), Rat(1) / rr}};
        PolyhedralDivisor dprime = transform_rational(x.divisor, phi_inv);
        if (x.family == ThreefoldFamily::A1Cone) {
            PolyhedralDivisor expect = threefold_divisor(ThreefoldFamily::A1Cone, Int(1), {});
            if (!(dprime == expect)) throw internal_error("quotient model mismatch (A1-cone)");
            return Rat(1);
        }
        Rat aprime = *x.a / rr;
        PolyhedralDivisor expect = threefold_divisor(ThreefoldFamily::P1Family, Int(1), aprime);
        if (!(dprime == expect)) throw internal_error("quotient model mismatch (P1)");
        return slope_from_weight_cone(plus_coloring_weight_cone(dprime, Int(1)));
    }();

    if (direct != via_quotient)
        throw internal_error("height routes disagree: " + rat_to_string(direct) + " vs " +
                             rat_to_string(via_quotient));
    return direct;
}

ToricityReport is_toric_threefold(const ThreefoldDescriptor& x) {
    ToricityReport rep{};
    rep.a_integral = x.a.has_value() && is_integer(*x.a);

    rep.slope_criterion = false;
    if (!x.invariants.homogeneous) {
        Rat hbar = slope(x);
        if (hbar < 1) {
            Rat p = hbar / (Rat(1) - hbar);
            rep.slope_criterion = is_integer(p) && p > 0;
        }
    }

    rep.height_criterion = false;
    if (!x.invariants.homogeneous) {
        Rat h = height(x);
        Int p = numerator(h), q = denominator(h);
        Int gap = q - p;
        rep.height_criterion = gap > 0 && x.r % gap == 0;
    }

    rep.divisor_toric = x.divisor.toric_form().has_value();
    rep.agree = (rep.a_integral == rep.slope_criterion) &&
                (rep.slope_criterion == rep.height_criterion) &&
                (rep.height_criterion == rep.divisor_toric);
    rep.toric = rep.divisor_toric;
    return rep;
}

namespace {

// unimodular change of N-coordinates sending v0 to (1,0) and v1 to (r-1, r),
// in the presence of <e, v0> = 1, <e, v1> = -1 with primitive e
std::optional<QMat> normalizing_automorphism(const LatticeVector& e, const LatticeVector& v0,
                                             const LatticeVector& v1, const Int& r) {
    // step 1: M-side map U with U e = (1,-1); N-side transforms by U^{-T}
    IntMat basis = complete_to_basis({e.coords}, 2);
    // U maps basis row 0 -> (1,-1), row 1 -> (0,1) (any completion works):
    // U = T * B^{-1} with rows of B the basis
    QMat binv(2, std::vector<Rat>(2));
    Rat det = Rat(basis[0][0]) * Rat(basis[1][1]) - Rat(basis[0][1]) * Rat(basis[1][0]);
    binv[0][0] = Rat(basis[1][1]) / det;
    binv[0][1] = Rat(-basis[0][1]) / det;
    binv[1][0] = Rat(-basis[1][0]) / det;
    binv[1][1] = Rat(basis[0][0]) / det;
    // rows of T: images of the basis rows
    QMat t = {{Rat(1), Rat(-1)}, {Rat(0), Rat(1)}};
    // U acts on row vectors: m U; as column convention: U^T... work with the
    // N-side map directly: V = U^{-T}; on N-side columns v -> V v, and
    // <m U, V v> = <m, v>. Compute V from U = (B^{-1})^T applied... to keep the
    // conventions straight we build V by solving the pairing conditions:
    // V must satisfy <(1,-1), V v> = <e, v> for all v, i.e. V^T (1,-1) = e.
    (void)t;
    (void)binv;

    auto shear_to = [&](const VectorQ& w) {
        // within the stabilizer of (1,-1): v -> v + k <.,(1,-1)> (1,1)
        // sends w (pairing 1) to (1,0) with k = -w_2
        QMat s = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
        Rat k = -w.coords[1];
        // shear matrix: v -> v + k (v1 - v2) (1,1)
        s[0][0] += k;
        s[0][1] -= k;
        s[1][0] += k;
        s[1][1] -= k;
        return s;
    };

    // build some V1 with V1^T (1,-1) = e: columns of V1^T ... choose V1 as any
    // unimodular integer matrix with first row of V1^T, i.e. we need
    // <(1,-1), V1 v> = <e, v>: (V1^T)(1,-1) = e. Take V1^T = [e | f]-style:
    // complete e to a basis (rows e, f) of Z^2 and set V1^T = columns solving
    // (1)(col1) + (-1)(col2) = per coordinate... Simplest: V1^T = A with
    // A^T... we parametrize: find integer matrix W = V1 with W^T (1,-1)^T = e.
    // W^T = [[w11, w21],[w12, w22]]: w11 - w21 = e1, w12 - w22 = e2, det W = 1.
    // Choose w21 = x, w11 = e1 + x, w22 = y, w12 = e2 + y:
    // det W = w11 w22 - w12 w21 = (e1+x) y - (e2+y) x = e1 y - e2 x + ... pick
    // integers x, y with e1 y - e2 x = 1 (e primitive, solvable).
    Int g, xs, ys;
    mpz_gcdext(g.get_mpz_t(), ys.get_mpz_t(), xs.get_mpz_t(), e.coords[0].get_mpz_t(),
               e.coords[1].get_mpz_t());
    if (g != 1) return std::nullopt;
    // e1*ys + e2*xs = 1; want e1 y - e2 x = 1: y = ys, x = -xs
    Int xx = -xs, yy = ys;
    QMat v1m = {{Rat(e.coords[0]) + Rat(xx), Rat(e.coords[1]) + Rat(yy)},
                {Rat(xx), Rat(yy)}};
    // check pairing transport
    auto mul = [&](const QMat& a, const QMat& b) {
        QMat c(2, std::vector<Rat>(2, Rat(0)));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) c[i][j] += a[i][k] * b[k][j];
        return c;
    };

    for (int use_swap = 0; use_swap < 2; ++use_swap) {
        QMat w = v1m;
        if (use_swap) {
            QMat sw = {{Rat(0), Rat(-1)}, {Rat(-1), Rat(0)}};  // stabilizer reflection
            w = mul(sw, w);
        }
        VectorQ w0 = apply_qmat(w, VectorQ(v0));
        if (pairing(mvec({1, -1}), w0) != 1) continue;
        QMat full = mul(shear_to(w0), w);
        VectorQ img0 = apply_qmat(full, VectorQ(v0));
        VectorQ img1 = apply_qmat(full, VectorQ(v1));
        if (img0 == nq2(Rat(1), Rat(0)) && img1 == nq2(Rat(r - 1), Rat(r))) return full;
    }
    return std::nullopt;
}

}  // namespace

namespace {

std::optional<TableParams> table_parameters(const SL2ActionDescriptor& act) {
    const PolyhedralDivisor& dn = act.divisor;
    const SigmaPolyhedron& s0 = dn.slice(CurvePoint::at(0));
    const SigmaPolyhedron& s1 = dn.slice(CurvePoint::at(1));
    if (s0.vertices().size() != 2 || s1.vertices().size() != 2) return std::nullopt;
    std::optional<LatticeVector> v0, v1;
    for (const auto& v : s0.vertices())
        if (!v.is_zero() && v.is_integral()) v0 = v.to_lattice();
    for (const auto& v : s1.vertices())
        if (!v.is_zero() && v.is_integral()) v1 = v.to_lattice();
    if (!v0 || !v1) return std::nullopt;
    if (pairing(act.e, *v0) != 1 || pairing(act.e, *v1) != -1) return std::nullopt;

    Int det = v0->coords[0] * v1->coords[1] - v0->coords[1] * v1->coords[0];
    Int r = det;
    mpz_abs(r.get_mpz_t(), r.get_mpz_t());
    if (r < 1) return std::nullopt;

    auto aut = normalizing_automorphism(act.e, *v0, *v1, r);
    if (!aut) return std::nullopt;
    PolyhedralDivisor dt = transform_rational(dn, *aut);

    if (dt.curve() == CurveKind::A1) {
        for (ThreefoldFamily f : {ThreefoldFamily::A1Homogeneous, ThreefoldFamily::A1Cone})
            if (dt == threefold_divisor(f, r, {})) return TableParams{f, r, {}};
        return std::nullopt;
    }
    auto sv = dt.slice(CurvePoint::infinity()).single_vertex();
    if (!sv) return std::nullopt;
    Rat a = sv->coords[0];
    if (a <= 0 || sv->coords[1] != a) return std::nullopt;
    if (dt == threefold_divisor(ThreefoldFamily::P1Family, r, a))
        return TableParams{ThreefoldFamily::P1Family, r, a};
    return std::nullopt;
}

}  // namespace

std::optional<ThreefoldDescriptor> recognize(const PolyhedralDivisor& divisor) {
    if (divisor.rank() != 2) throw domain_error("recognize expects rank 2 data");
    std::vector<SL2ActionDescriptor> actions;
    try {
        actions = classify_horizontal(divisor);
    } catch (const domain_error&) {
        return std::nullopt;
    }
    std::vector<SL2ActionDescriptor> open_orbit;
    for (const auto& act : actions) {
        if (act.partial_plus.is_fiber()) continue;
        if (kernels_intersect_trivially(act.partial_plus.horizontal(),
                                        act.partial_minus.horizontal()))
            open_orbit.push_back(act);
    }
    if (open_orbit.empty()) return std::nullopt;  // not quasi-homogeneous
    for (const auto& act : open_orbit) {
        auto tp = table_parameters(act);
        if (tp) return build_threefold(tp->family, tp->r, tp->a);
    }
    return std::nullopt;
}

}  // namespace tvarsl2
