#include "tvarsl2/sl2.hpp"

#include <algorithm>
#include <set>

namespace tvarsl2 {

namespace {

LatticeVector conjugacy_key_of(const LatticeVector& e) { return std::max(e, -e); }

// X_sigma realized over the trivial divisor on A1; the extra line is inert.
PolyhedralDivisor toric_model(const Cone& sigma) {
    return PolyhedralDivisor(CurveKind::A1, sigma);
}

SL2ActionDescriptor make_descriptor(ActionKind kind, const SL2Root& root,
                                    const PolyhedralDivisor& divisor, HomogeneousLND plus,
                                    HomogeneousLND minus, std::optional<Cone> toric_cone,
                                    NormalizationRecord normalization) {
    return SL2ActionDescriptor{kind,
                               root.e,
                               root.p,
                               effectiveness_of(root.p),
                               std::move(plus),
                               std::move(minus),
                               divisor,
                               std::move(toric_cone),
                               std::move(normalization),
                               conjugacy_key_of(root.e)};
}

}  // namespace

Effectiveness effectiveness_of(const LatticeVector& p) {
    if (is_primitive(p)) return Effectiveness::SL2Effective;
    LatticeVector half = p;
    for (auto& c : half.coords) {
        if (c % 2 != 0) throw internal_error("downgrading covector is neither primitive nor twice primitive");
        c /= 2;
    }
    if (!is_primitive(half))
        throw internal_error("downgrading covector is neither primitive nor twice primitive");
    return Effectiveness::PSL2Effective;
}

SL2ActionDescriptor classify_toric_representative(const Cone& sigma, const LatticeVector& e) {
    SL2Root root = make_sl2_root(sigma, e);
    PolyhedralDivisor model = toric_model(sigma);
    RationalFunction one = RationalFunction::constant(Rat(1));
    HomogeneousLND plus{make_fiber_lnd(model, root.e, one)};
    HomogeneousLND minus{make_fiber_lnd(model, -root.e, one)};
    return make_descriptor(ActionKind::Toric, root, model, std::move(plus), std::move(minus), sigma,
                           {});
}

std::vector<SL2ActionDescriptor> classify_toric(const Cone& sigma) {
    if (sigma.side() != Side::N) throw domain_error("classify_toric expects a cone in N");
    if (!sigma.is_pointed()) throw domain_error("classify_toric expects a pointed cone");
    auto roots = enumerate_sl2_roots(sigma);
    if (!roots.spanning && !roots.families.empty())
        throw domain_error(
            "rays do not span: SL2-roots form affine families; pick a representative with "
            "classify_toric_representative");
    std::vector<SL2ActionDescriptor> out;
    for (const auto& r : roots.roots) out.push_back(classify_toric_representative(sigma, r.e));
    return out;
}

std::vector<SL2ActionDescriptor> classify_fiber(const PolyhedralDivisor& divisor) {
    auto proper = divisor.is_proper();
    if (!proper.proper) throw domain_error("classify_fiber requires a proper divisor: " + proper.reason);
    auto roots = enumerate_sl2_roots(divisor.tail());
    if (!roots.spanning && !roots.families.empty())
        throw domain_error(
            "tail rays do not span: SL2-roots form affine families; select a representative");

    std::vector<SL2ActionDescriptor> out;
    for (const auto& root : roots.roots) {
        // (a) every slice must sit on a single e-level line
        bool level = true;
        for (const auto& [z, p] : divisor.slices()) {
            const auto& verts = p.vertices();
            Rat v0 = pairing(root.e, verts[0]);
            for (const auto& v : verts)
                if (pairing(root.e, v) != v0) { level = false; break; }
            if (!level) break;
        }
        if (!level) continue;
        // (b) D(e) principal
        QDivisor de = divisor.evaluate(VectorQ(root.e));
        if (!de.is_principal()) continue;
        QDivisor dme = divisor.evaluate(VectorQ(-root.e));
        if (!(de + dme).is_zero()) throw internal_error("level slices but D(e) + D(-e) != 0");

        std::map<Rat, int> factors;
        for (const auto& [z, c] : de.coefficients()) {
            if (z.infinite) continue;
            factors[z.coord] = -static_cast<int>(to_integer(c).get_si());
        }
        RationalFunction phi = RationalFunction::from_factors(Rat(1), factors);
        RationalFunction phi_inv = RationalFunction::constant(Rat(1)) / phi;
        HomogeneousLND plus{make_fiber_lnd(divisor, root.e, phi)};
        HomogeneousLND minus{make_fiber_lnd(divisor, -root.e, phi_inv)};
        out.push_back(make_descriptor(ActionKind::FiberType, root, divisor, std::move(plus),
                                      std::move(minus), std::nullopt, {}));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Horizontal classification

namespace {

enum class SliceShape { Translate, SingleHalf, TwoLattice, Other };

SliceShape shape_of(const SigmaPolyhedron& p) {
    const auto& verts = p.vertices();
    if (verts.size() == 1) {
        if (verts[0].is_integral()) return SliceShape::Translate;
        bool half = (verts[0] * Rat(2)).is_integral();
        return half ? SliceShape::SingleHalf : SliceShape::Other;
    }
    if (verts.size() == 2 && verts[0].is_integral() && verts[1].is_integral())
        return SliceShape::TwoLattice;
    return SliceShape::Other;
}

struct Candidate {
    LatticeVector e;
    VectorQ v0_minus;        // colored vertex at 0 (rational in family 2)
    LatticeVector v1_plus;   // vertex difference at 1
    int family;              // 1 or 2
    std::map<CurvePoint, LatticeVector> moves;
};

// window for affine solution families, bounded by the coherence inequalities
std::vector<Rat> feasible_window(const Rat& base, const Rat& slope,
                                 const std::vector<std::pair<Rat, Rat>>& ineqs) {
    // ineqs: (alpha, beta) meaning alpha + beta j >= 0
    Rat lo(-64), hi(64);
    for (const auto& [alpha, beta] : ineqs) {
        if (beta == 0) continue;
        Rat bound = -alpha / beta;
        if (beta > 0) {
            if (bound > lo) lo = bound;
        } else {
            if (bound < hi) hi = bound;
        }
    }
    std::vector<Rat> out;
    Int j0 = rat_floor(lo) - 1, j1 = rat_floor(hi) + 1;
    for (Int j = j0; j <= j1; ++j) out.emplace_back(j);
    (void)base;
    (void)slope;
    return out;
}

}  // namespace

std::vector<SL2ActionDescriptor> classify_horizontal(const PolyhedralDivisor& divisor,
                                                     int family_window) {
    auto proper = divisor.is_proper();
    if (!proper.proper)
        throw domain_error("classify_horizontal requires a proper divisor: " + proper.reason);
    const bool p1 = divisor.curve() == CurveKind::P1;
    const int n = divisor.rank();

    std::vector<CurvePoint> essential;  // slices that are not lattice translates
    for (const auto& [z, p] : divisor.slices())
        if (shape_of(p) != SliceShape::Translate) essential.push_back(z);

    std::vector<SL2ActionDescriptor> out;
    std::set<std::pair<std::vector<Int>, std::vector<Int>>> seen;

    auto emit = [&](const Candidate& cand, const MobiusMap& q, const PolyhedralDivisor& dn) {
        // canonical colorings of Theorem form; both coherent pairs must pass
        const CurvePoint p0 = CurvePoint::at(0), p1pt = CurvePoint::at(1);
        std::optional<CurvePoint> zinf;
        if (p1) zinf = CurvePoint::infinity();
        VectorQ zerov(Side::N, std::vector<Rat>(n, Rat(0)));

        std::map<CurvePoint, VectorQ> chosen_plus, chosen_minus;
        if (cand.family == 1) {
            chosen_plus.emplace(p0, zerov);
            chosen_plus.emplace(p1pt, VectorQ(cand.v1_plus));
            chosen_minus.emplace(p0, cand.v0_minus);
            chosen_minus.emplace(p1pt, zerov);
        } else {
            chosen_plus.emplace(p0, cand.v0_minus);
            chosen_plus.emplace(p1pt, VectorQ(cand.v1_plus));
            chosen_minus.emplace(p0, cand.v0_minus);
            chosen_minus.emplace(p1pt, zerov);
        }
        Coloring col_plus = make_coloring(dn, zinf, chosen_plus, p0);
        Coloring col_minus = make_coloring(dn, zinf, chosen_minus, p0);
        CoherentPair pair_plus = make_coherent_pair(col_plus, cand.e);
        CoherentPair pair_minus = make_coherent_pair(col_minus, -cand.e);
        if (!validate_coherent(pair_plus).all_pass()) return;
        if (!validate_coherent(pair_minus).all_pass()) return;

        HomogeneousLND plus{make_horizontal_lnd(pair_plus)};
        HomogeneousLND minus{make_horizontal_lnd(pair_minus)};
        auto comm = commutator(plus, minus, default_probes(dn, true));
        if (!comm.diagonal || !comm.p) return;

        // one descriptor per action: (e, p) pins the triple up to gauge
        if (!seen.insert({cand.e.coords, comm.p->coords}).second) return;

        NormalizationRecord norm{q, cand.moves};
        SL2Root root{cand.e, LatticeVector(Side::N, std::vector<Int>(n, Int(0))),
                     LatticeVector(Side::N, std::vector<Int>(n, Int(0))), *comm.p};
        SL2ActionDescriptor desc = make_descriptor(ActionKind::HorizontalType, root, dn, plus,
                                                   minus, std::nullopt, norm);
        out.push_back(desc);
        // the conjugate presentation (-e, swapped derivations)
        if (seen.insert({(-cand.e).coords, (-*comm.p).coords}).second) {
            SL2Root conj{-cand.e, root.rho_plus, root.rho_minus, -*comm.p};
            out.push_back(make_descriptor(ActionKind::HorizontalType, conj, dn, minus, plus,
                                          std::nullopt, norm));
        }
    };

    auto try_assignment = [&](const CurvePoint& za, const CurvePoint& zb,
                              const std::optional<CurvePoint>& zc) {
        // rename support so that (za, zb[, zc]) becomes (0, 1[, inf])
        MobiusMap q = p1 ? mobius_normalize({za, zb, *zc}, CurveKind::P1)
                         : mobius_normalize({za, zb}, CurveKind::A1);
        std::map<CurvePoint, CurvePoint> pmap;
        for (const auto& z : divisor.support()) pmap[z] = q.apply(z);
        PolyhedralDivisor d1 = divisor.relabeled(pmap);

        const SigmaPolyhedron& s0 = d1.slice(CurvePoint::at(0));
        const SigmaPolyhedron& s1 = d1.slice(CurvePoint::at(1));
        SliceShape sh0 = shape_of(s0), sh1 = shape_of(s1);
        if (sh1 != SliceShape::TwoLattice) return;

        // translate slices off {0,1,inf} are shifted to the tail
        std::map<CurvePoint, LatticeVector> base_moves;
        std::vector<Int> dump(n, Int(0));
        for (const auto& [z, s] : d1.slices()) {
            if (z == CurvePoint::at(0) || z == CurvePoint::at(1) ||
                (p1 && z == CurvePoint::infinity()))
                continue;
            auto u = s.lattice_translate_of_tail();
            if (!u) return;  // an essential slice escaped the role points
            base_moves.emplace(z, -*u);
            for (int i = 0; i < n; ++i) dump[i] += u->coords[i];
        }

        auto finish = [&](const LatticeVector& e, const VectorQ& v0m, const LatticeVector& v1p,
                          int family, std::map<CurvePoint, LatticeVector> moves) {
            if (e.is_zero()) return;
            PolyhedralDivisor dn = d1.shifted(moves);
            // structural check of the theorem form
            Cone sigma = dn.tail();
            std::vector<VectorQ> want0;
            VectorQ zv(Side::N, std::vector<Rat>(n, Rat(0)));
            if (family == 1) {
                want0 = {zv, v0m};
            } else {
                want0 = {v0m};
            }
            if (!(dn.slice(CurvePoint::at(0)) == SigmaPolyhedron::from_vertices(sigma, want0)))
                return;
            if (!(dn.slice(CurvePoint::at(1)) ==
                  SigmaPolyhedron::from_vertices(sigma, {zv, VectorQ(v1p)})))
                return;
            if (sigma.contains(VectorQ(v1p))) return;
            if (family == 1 && sigma.contains(v0m)) return;
            if (p1) {
                for (const auto& v : dn.slice(CurvePoint::infinity()).vertices())
                    if (pairing(e, v) != 0) return;
            }
            for (const auto& [z, s] : dn.slices()) {
                bool role = z == CurvePoint::at(0) || z == CurvePoint::at(1) ||
                            (p1 && z == CurvePoint::infinity());
                if (!role) return;  // an essential slice survived off the role points
                (void)s;
            }
            Candidate cand{e, v0m, v1p, family, std::move(moves)};
            emit(cand, q, dn);
        };

        // family 1: both role slices have two lattice vertices
        if (sh0 == SliceShape::TwoLattice) {
            for (int i0 = 0; i0 < 2; ++i0)
                for (int i1 = 0; i1 < 2; ++i1) {
                    LatticeVector base0 = s0.vertices()[i0].to_lattice();
                    LatticeVector v0m = (s0.vertices()[1 - i0] - s0.vertices()[i0]).to_lattice();
                    LatticeVector base1 = s1.vertices()[i1].to_lattice();
                    LatticeVector v1p = (s1.vertices()[1 - i1] - s1.vertices()[i1]).to_lattice();

                    std::map<CurvePoint, LatticeVector> moves = base_moves;
                    moves.emplace(CurvePoint::at(0), -base0);
                    moves.emplace(CurvePoint::at(1), -base1);
                    std::vector<LatticeVector> rows = {v0m, v1p};
                    std::vector<Rat> targets = {Rat(1), Rat(-1)};
                    LatticeVector w(Side::N, dump);
                    if (p1) {
                        w = w + base0 + base1;
                        moves.emplace(CurvePoint::infinity(), w);
                        const auto& vinf = d1.slice(CurvePoint::infinity()).vertices();
                        for (std::size_t i = 1; i < vinf.size(); ++i) {
                            rows.push_back(primitive_part(vinf[i] - vinf[0]));
                            targets.push_back(Rat(0));
                        }
                        VectorQ lvl = vinf[0] + VectorQ(w);
                        if (!lvl.is_zero()) {
                            // <e, v + w> = 0 with rational v: clear denominators
                            LatticeVector r = primitive_part(lvl);
                            // only the direction matters for a zero target
                            rows.push_back(r);
                            targets.push_back(Rat(0));
                        }
                    }
                    auto sol = solve_pairings(rows, targets);
                    if (sol.kind == SolvePairingsResult::Kind::Unique) {
                        finish(*sol.particular, VectorQ(v0m), v1p, 1, moves);
                    } else if (sol.kind == SolvePairingsResult::Kind::Family) {
                        for (const auto& k : sol.kernel_basis)
                            for (long j = -family_window; j <= family_window; ++j)
                                finish(*sol.particular + k * Int(j), VectorQ(v0m), v1p, 1, moves);
                    }
                }
        }

        // family 2: single half-lattice vertex at 0
        if (sh0 == SliceShape::SingleHalf) {
            const VectorQ x = s0.vertices()[0];
            for (int i1 = 0; i1 < 2; ++i1) {
                LatticeVector base1 = s1.vertices()[i1].to_lattice();
                LatticeVector v1p = (s1.vertices()[1 - i1] - s1.vertices()[i1]).to_lattice();
                // unknown (e, k) in M + Z with k = <e, w0>
                auto extend = [&](const LatticeVector& v, const Int& last) {
                    std::vector<Int> c = v.coords;
                    c.push_back(last);
                    return LatticeVector(Side::N, std::move(c));
                };
                LatticeVector twox = (x * Rat(2)).to_lattice();
                std::vector<LatticeVector> rows = {extend(v1p, Int(0)), extend(twox, Int(2))};
                std::vector<Rat> targets = {Rat(-1), Rat(1)};
                LatticeVector w2(Side::N, dump);
                if (p1) {
                    w2 = w2 + base1;
                    const auto& vinf = d1.slice(CurvePoint::infinity()).vertices();
                    for (std::size_t i = 1; i < vinf.size(); ++i) {
                        LatticeVector diff = primitive_part(vinf[i] - vinf[0]);
                        rows.push_back(extend(diff, Int(0)));
                        targets.push_back(Rat(0));
                    }
                    VectorQ lvl = vinf[0] + VectorQ(w2);
                    std::vector<Rat> c = lvl.coords;
                    c.push_back(Rat(-1));
                    VectorQ full(Side::N, std::move(c));
                    // clear denominators; the target stays 0
                    if (!full.is_zero()) {
                        rows.push_back(primitive_part(full));
                        targets.push_back(Rat(0));
                    }
                }

                auto handle = [&](const LatticeVector& ek) {
                    LatticeVector e(Side::M, std::vector<Int>(ek.coords.begin(), ek.coords.end() - 1));
                    Int k = ek.coords.back();
                    if (e.is_zero()) return;
                    auto wsol = solve_pairings({LatticeVector(Side::N, e.coords)}, {Rat(k)});
                    // rows must be N-side for an M-target; here we need w0 in N:
                    // <e, w0> = k, so solve with e as the single (M-side) row
                    if (wsol.kind != SolvePairingsResult::Kind::Unique &&
                        wsol.kind != SolvePairingsResult::Kind::Family)
                        return;
                    LatticeVector w0(Side::N, wsol.particular->coords);
                    std::map<CurvePoint, LatticeVector> moves = base_moves;
                    moves.emplace(CurvePoint::at(0), w0);
                    moves.emplace(CurvePoint::at(1), -base1);
                    if (p1) moves.emplace(CurvePoint::infinity(), w2 - w0);
                    VectorQ v0m = x + VectorQ(w0);
                    finish(e, v0m, v1p, 2, std::move(moves));
                };
                auto sol = solve_pairings(rows, targets);
                if (sol.kind == SolvePairingsResult::Kind::Unique) {
                    handle(*sol.particular);
                } else if (sol.kind == SolvePairingsResult::Kind::Family) {
                    for (const auto& kb : sol.kernel_basis)
                        for (long j = -family_window; j <= family_window; ++j)
                            handle(*sol.particular + kb * Int(j));
                }
            }
        }
    };

    // enumerate role assignments
    std::vector<CurvePoint> zc_candidates;
    if (p1) {
        for (const auto& z : divisor.support()) zc_candidates.push_back(z);
        for (long pad = 0;; ++pad) {  // one extra off-support point
            CurvePoint cand = pad == 0 ? CurvePoint::infinity() : CurvePoint::at(pad - 1);
            bool used = false;
            for (const auto& z : divisor.support())
                if (z == cand) used = true;
            if (!used) {
                zc_candidates.push_back(cand);
                break;
            }
        }
    }

    auto roles_from = [&](const std::optional<CurvePoint>& zc) {
        std::vector<CurvePoint> pool;
        for (const auto& z : essential)
            if (!zc || !(z == *zc)) pool.push_back(z);
        if (pool.size() != 2) return;
        try_assignment(pool[0], pool[1], zc);
        try_assignment(pool[1], pool[0], zc);
    };

    if (p1) {
        for (const auto& zc : zc_candidates) roles_from(zc);
    } else {
        roles_from(std::nullopt);
    }

    std::sort(out.begin(), out.end(), [](const SL2ActionDescriptor& a, const SL2ActionDescriptor& b) {
        return a.e < b.e;
    });
    return out;
}

// ---------------------------------------------------------------------------

TripleReport verify_sl2_triple(const SL2ActionDescriptor& a, const std::vector<GradedTerm>& probes) {
    TripleReport rep{{}, {false, std::nullopt, std::nullopt, ""}};
    auto push = [&](const std::string& name, bool pass, const std::string& detail) {
        rep.checks.items.push_back({name, pass, detail});
    };

    rep.commutator = commutator(a.partial_plus, a.partial_minus, probes);
    push("[d+, d-] acts diagonally with an integral covector", rep.commutator.diagonal,
         rep.commutator.detail);
    bool p_match = rep.commutator.diagonal && rep.commutator.p && *rep.commutator.p == a.p;
    push("downgrading covector equals the certificate p", p_match, "");
    push("<e, p> = 2 (Z-degrees of the derivations are +-2)", pairing(a.e, a.p) == 2, "");

    bool nil_plus = true, nil_minus = true, indices_ok = true;
    for (const auto& x : probes) {
        if (x.is_zero()) continue;
        auto rp = iterate_to_zero(a.partial_plus, x, 64);
        auto rm = iterate_to_zero(a.partial_minus, x, 64);
        nil_plus = nil_plus && rp.reached_zero;
        nil_minus = nil_minus && rm.reached_zero;
        if (a.partial_plus.is_fiber() && rp.reached_zero) {
            Rat pairing_val = pairing(x.m(), a.partial_plus.fiber().root.distinguished_ray);
            if (pairing_val >= 0 && is_integer(pairing_val)) {
                int predicted = static_cast<int>(to_integer(pairing_val).get_si()) + 1;
                if (rp.index != predicted) indices_ok = false;
            }
        }
    }
    push("partial_+ is locally nilpotent on the probes", nil_plus, "");
    push("partial_- is locally nilpotent on the probes", nil_minus, "");
    push("nilpotency indices match the predicted values", indices_ok, "");
    return rep;
}

TripleReport verify_sl2_triple(const SL2ActionDescriptor& a) {
    return verify_sl2_triple(a, default_probes(a.divisor, true));
}

SpecialnessReport is_special(const SL2ActionDescriptor& a) {
    if (a.kind == ActionKind::Toric)
        return {true, "every compatible SL2-action on a toric variety is special"};
    if (a.kind == ActionKind::FiberType)
        return {true, "compatible SL2-actions of fiber type are special"};
    // horizontal: special iff the action is compatible with a bigger torus,
    // i.e. all slices away from z0 and z_inf are lattice translates of sigma
    const PolyhedralDivisor& d = a.divisor;
    for (const auto& [z, s] : d.slices()) {
        if (z == CurvePoint::at(0)) continue;
        if (d.curve() == CurveKind::P1 && z.infinite) continue;
        if (!s.lattice_translate_of_tail())
            return {false,
                    "slice at " + z.str() +
                        " is essential away from the marked points: no big-torus lift"};
    }
    return {true, "support confined to the marked point and infinity: X is toric and the "
                  "action lifts to the big torus"};
}

SpecialAction build_special(const Int& r, const QDivisor& h) {
    if (r < 1) throw domain_error("build_special: r must be a positive integer");
    if (h.curve() != CurveKind::P1) throw domain_error("build_special: H must live on P1");
    if (h.total_degree() <= 0) throw domain_error("build_special: H must have positive degree (ampleness)");

    Cone sigma = Cone::from_generators(
        Side::N, 2, {nvec({1, 0}), LatticeVector(Side::N, {r - 1, r})});
    PolyhedralDivisor d(CurveKind::P1, sigma);
    for (const auto& [z, alpha] : h.coefficients()) {
        VectorQ v(Side::N, {alpha, alpha});
        d.set_slice(z, SigmaPolyhedron::from_vertices(sigma, {v}));
    }
    auto actions = classify_fiber(d);
    const LatticeVector e = mvec({1, -1});
    for (auto& a : actions) {
        if (a.e == e) {
            std::string grading =
                "K[X]^{U+} = sum_{i >= 0} B_i t^{" + int_to_string(r) + " i},  B_i = H0(Y, O(i H))";
            return SpecialAction{r, h, d, a, grading, "U_(" + int_to_string(r) + ")"};
        }
    }
    throw internal_error("build_special: the fiber classifier did not return e = (1,-1)");
}

std::vector<GradedTerm> augment_probes(std::vector<GradedTerm> probes,
                                       const PolyhedralDivisor& divisor, unsigned long seed,
                                       int count) {
    std::uint64_t state = seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull;
    auto next = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    Cone sigma_dual = divisor.tail().dual();
    int n = divisor.rank();
    int made = 0, guard = 0;
    while (made < count && guard < 1000) {
        ++guard;
        std::vector<Int> c;
        for (int i = 0; i < n; ++i) c.emplace_back(static_cast<long>(next() % 9) - 4);
        LatticeVector m(Side::M, std::move(c));
        if (m.is_zero() || !sigma_dual.contains(m)) continue;
        auto mod = h0_basis(divisor.evaluate(VectorQ(m)));
        if (mod.empty) continue;
        long tp = static_cast<long>(next() % 2);
        probes.emplace_back(mod.generator * RationalFunction::t().pow(tp), m, Rat(0));
        ++made;
    }
    return probes;
}

}  // namespace tvarsl2
