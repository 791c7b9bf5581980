#include "tvarsl2/json_io.hpp"

namespace tvarsl2 {

namespace {

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw parse_error("expected a rational as \"p/q\" string or integer");
}

Json rat_to_json(const Rat& q) { return rat_to_string(q); }

}  // namespace

Json vec_to_json(const LatticeVector& v) {
    Json out = Json::array();
    for (const auto& c : v.coords) out.push_back(int_to_string(c));
    return out;
}

Json vec_to_json(const VectorQ& v) {
    Json out = Json::array();
    for (const auto& c : v.coords) out.push_back(rat_to_string(c));
    return out;
}

LatticeVector lattice_vec_from_json(const Json& j, Side side) {
    if (!j.is_array() || j.empty()) throw parse_error("expected a nonempty coordinate array");
    std::vector<Int> c;
    for (const auto& x : j) {
        Rat q = rat_from_json(x);
        if (!is_integer(q)) throw parse_error("integer entry required, got " + rat_to_string(q));
        c.push_back(numerator(q));
    }
    return LatticeVector(side, std::move(c));
}

VectorQ qvec_from_json(const Json& j, Side side) {
    if (!j.is_array() || j.empty()) throw parse_error("expected a nonempty coordinate array");
    std::vector<Rat> c;
    for (const auto& x : j) c.push_back(rat_from_json(x));
    return VectorQ(side, std::move(c));
}

Json cone_to_json(const Cone& c) {
    Json out;
    out["side"] = side_name(c.side());
    Json rays = Json::array();
    for (const auto& r : c.rays()) rays.push_back(vec_to_json(r));
    out["rays"] = rays;
    if (!c.is_pointed()) {
        Json lin = Json::array();
        for (const auto& l : c.lineality()) lin.push_back(vec_to_json(l));
        out["lineality"] = lin;
    }
    if (c.is_zero()) out["rank"] = c.rank();
    return out;
}

Cone cone_from_json(const Json& j) {
    if (!j.contains("side") || !j.contains("rays")) throw parse_error("cone needs side and rays");
    std::string s = j.at("side").get<std::string>();
    if (s != "N" && s != "M") throw parse_error("cone side must be N or M");
    Side side = s == "N" ? Side::N : Side::M;
    std::vector<LatticeVector> gens;
    int rank = -1;
    for (const auto& r : j.at("rays")) {
        gens.push_back(lattice_vec_from_json(r, side));
        rank = gens.back().rank();
    }
    if (j.contains("lineality"))
        for (const auto& l : j.at("lineality")) {
            gens.push_back(lattice_vec_from_json(l, side));
            gens.push_back(-gens.back());
            rank = gens.back().rank();
        }
    if (rank < 0) {
        if (!j.contains("rank")) throw parse_error("a cone without rays needs an explicit rank");
        rank = j.at("rank").get<int>();
    }
    return Cone::from_generators(side, rank, gens);
}

Json point_to_json(const CurvePoint& z) { return z.str(); }

CurvePoint point_from_json(const Json& j) {
    std::string s = j.get<std::string>();
    if (s == "inf") return CurvePoint::infinity();
    return CurvePoint::finite(rat_from_string(s));
}

Json qdivisor_to_json(const QDivisor& d) {
    Json out;
    out["curve"] = curve_name(d.curve());
    Json cs = Json::array();
    for (const auto& [z, c] : d.coefficients()) {
        Json e;
        e["point"] = point_to_json(z);
        e["value"] = rat_to_json(c);
        cs.push_back(e);
    }
    out["coefficients"] = cs;
    return out;
}

QDivisor qdivisor_from_json(const Json& j) {
    std::string c = j.at("curve").get<std::string>();
    if (c != "A1" && c != "P1") throw parse_error("curve must be A1 or P1");
    QDivisor out(c == "A1" ? CurveKind::A1 : CurveKind::P1);
    for (const auto& e : j.at("coefficients"))
        out.add(point_from_json(e.at("point")), rat_from_json(e.at("value")));
    return out;
}

Json divisor_to_json(const PolyhedralDivisor& d) {
    Json out;
    out["curve"] = curve_name(d.curve());
    out["tail"] = cone_to_json(d.tail());
    if (!out["tail"].contains("rank")) out["tail"]["rank"] = d.rank();
    Json slices = Json::array();
    for (const auto& [z, p] : d.slices()) {
        Json s;
        s["point"] = point_to_json(z);
        Json verts = Json::array();
        for (const auto& v : p.vertices()) verts.push_back(vec_to_json(v));
        s["vertices"] = verts;
        slices.push_back(s);
    }
    out["slices"] = slices;
    return out;
}

PolyhedralDivisor divisor_from_json(const Json& j) {
    std::string c = j.at("curve").get<std::string>();
    if (c != "A1" && c != "P1") throw parse_error("curve must be A1 or P1");
    Cone tail = cone_from_json(j.at("tail"));
    PolyhedralDivisor out(c == "A1" ? CurveKind::A1 : CurveKind::P1, tail);
    if (j.contains("slices"))
        for (const auto& s : j.at("slices")) {
            std::vector<VectorQ> verts;
            for (const auto& v : s.at("vertices")) verts.push_back(qvec_from_json(v, Side::N));
            out.set_slice(point_from_json(s.at("point")),
                          SigmaPolyhedron::from_vertices(tail, verts));
        }
    return out;
}

Json ratfunc_to_json(const RationalFunction& f) {
    auto fac = f.factored();
    Json out;
    out["lead"] = rat_to_json(fac.lead);
    Json factors = Json::array();
    for (const auto& [root, mult] : fac.factors) {
        Json e;
        e["root"] = rat_to_json(root);
        e["mult"] = mult;
        factors.push_back(e);
    }
    out["factors"] = factors;
    return out;
}

RationalFunction ratfunc_from_json(const Json& j) {
    Rat lead = rat_from_json(j.at("lead"));
    std::map<Rat, int> factors;
    if (j.contains("factors"))
        for (const auto& e : j.at("factors"))
            factors[rat_from_json(e.at("root"))] = e.at("mult").get<int>();
    return RationalFunction::from_factors(lead, factors);
}

Json mobius_to_json(const MobiusMap& m) {
    Json out;
    out["a"] = rat_to_json(m.a());
    out["b"] = rat_to_json(m.b());
    out["c"] = rat_to_json(m.c());
    out["d"] = rat_to_json(m.d());
    return out;
}

Json term_to_json(const GradedTerm& t) {
    Json out;
    out["coeff"] = ratfunc_to_json(t.coeff());
    out["m"] = vec_to_json(t.m());
    out["t_exp"] = rat_to_json(t.t_exp());
    return out;
}

GradedTerm term_from_json(const Json& j) {
    RationalFunction coeff = ratfunc_from_json(j.at("coeff"));
    LatticeVector m = lattice_vec_from_json(j.at("m"), Side::M);
    Rat t_exp = j.contains("t_exp") ? rat_from_json(j.at("t_exp")) : Rat(0);
    return GradedTerm(std::move(coeff), std::move(m), std::move(t_exp));
}

Json lnd_to_json(const HomogeneousLND& lnd) {
    Json out;
    if (lnd.is_fiber()) {
        out["kind"] = "fiber";
        out["e"] = vec_to_json(lnd.fiber().root.e);
        out["phi"] = ratfunc_to_json(lnd.fiber().phi);
        return out;
    }
    const HorizontalLND& h = lnd.horizontal();
    out["kind"] = "horizontal";
    out["e"] = vec_to_json(h.e_deg);
    Json col;
    col["z0"] = point_to_json(h.pair.coloring.z0);
    if (h.pair.coloring.z_inf) col["z_inf"] = point_to_json(*h.pair.coloring.z_inf);
    Json chosen = Json::array();
    for (const auto& [z, v] : h.pair.coloring.chosen) {
        Json e;
        e["point"] = point_to_json(z);
        e["vertex"] = vec_to_json(v);
        chosen.push_back(e);
    }
    col["chosen"] = chosen;
    out["coloring"] = col;
    return out;
}

HomogeneousLND lnd_from_json(const Json& j, const PolyhedralDivisor& divisor) {
    std::string kind = j.at("kind").get<std::string>();
    LatticeVector e = lattice_vec_from_json(j.at("e"), Side::M);
    if (kind == "fiber") {
        RationalFunction phi = j.contains("phi") ? ratfunc_from_json(j.at("phi"))
                                                 : RationalFunction::constant(Rat(1));
        return HomogeneousLND{make_fiber_lnd(divisor, e, phi)};
    }
    if (kind != "horizontal") throw parse_error("lnd kind must be fiber or horizontal");
    const Json& col = j.at("coloring");
    std::map<CurvePoint, VectorQ> chosen;
    for (const auto& entry : col.at("chosen"))
        chosen.emplace(point_from_json(entry.at("point")),
                       qvec_from_json(entry.at("vertex"), Side::N));
    std::optional<CurvePoint> zinf;
    if (col.contains("z_inf")) zinf = point_from_json(col.at("z_inf"));
    CurvePoint z0 = point_from_json(col.at("z0"));
    Coloring coloring = make_coloring(divisor, zinf, chosen, z0);
    auto rep = validate_coloring(coloring);
    if (!rep.all_pass()) throw domain_error("lnd coloring fails validation");
    CoherentPair pair = make_coherent_pair(coloring, e);
    auto rep2 = validate_coherent(pair);
    if (!rep2.all_pass()) throw domain_error("lnd coherent pair fails validation");
    return HomogeneousLND{make_horizontal_lnd(pair)};
}

Json validation_to_json(const ValidationReport& r) {
    Json out = Json::array();
    for (const auto& item : r.items) {
        Json e;
        e["condition"] = item.condition;
        e["pass"] = item.pass;
        if (!item.detail.empty()) e["detail"] = item.detail;
        out.push_back(e);
    }
    return out;
}

Json descriptor_to_json(const SL2ActionDescriptor& a) {
    Json out;
    out["kind"] = action_kind_name(a.kind);
    out["e"] = vec_to_json(a.e);
    out["p"] = vec_to_json(a.p);
    out["effective"] = a.effectiveness == Effectiveness::SL2Effective ? "SL2" : "PSL2";
    out["special"] = is_special(a).special;
    out["lnds"] = Json::array({lnd_to_json(a.partial_plus), lnd_to_json(a.partial_minus)});
    if (a.toric_cone) out["cone"] = cone_to_json(*a.toric_cone);
    out["divisor"] = divisor_to_json(a.divisor);
    Json norm;
    if (a.normalization.mobius) norm["mobius"] = mobius_to_json(*a.normalization.mobius);
    Json shifts = Json::array();
    for (const auto& [z, v] : a.normalization.shifts) {
        Json s;
        s["point"] = point_to_json(z);
        s["move"] = vec_to_json(v);
        shifts.push_back(s);
    }
    norm["shifts"] = shifts;
    out["normalization"] = norm;
    out["verified"] = "Lie-algebra relations only";
    return out;
}

Json threefold_to_json(const ThreefoldDescriptor& x) {
    Json out;
    out["family"] = family_name(x.family);
    out["r"] = int_to_string(x.r);
    if (x.a) out["a"] = rat_to_json(*x.a);
    out["divisor"] = divisor_to_json(x.divisor);
    Json inv;
    inv["r_X"] = int_to_string(x.invariants.r_x);
    inv["slope"] = x.invariants.slope ? Json(rat_to_string(*x.invariants.slope)) : Json("--");
    inv["height"] = x.invariants.height ? Json(rat_to_string(*x.invariants.height)) : Json("--");
    inv["N_X"] = x.invariants.n_x;
    inv["N_X_status"] = "unproved metadata";
    inv["homogeneous"] = x.invariants.homogeneous;
    inv["toric"] = x.invariants.toric;
    out["invariants"] = inv;
    out["action"] = descriptor_to_json(x.action);
    return out;
}

Json special_to_json(const SpecialAction& s) {
    Json out;
    out["r"] = int_to_string(s.r);
    out["H"] = qdivisor_to_json(s.h);
    out["divisor"] = divisor_to_json(s.divisor);
    out["action"] = descriptor_to_json(s.descriptor);
    out["u_invariant_grading"] = s.u_invariant_grading;
    out["generic_isotropy"] = s.generic_isotropy;
    return out;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tvarsl2
