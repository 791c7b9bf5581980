#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tvarsl2/json_io.hpp"

using namespace tvarsl2;

namespace {

constexpr const char* kSchemaVersion = "1";

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open input file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& ex) {
        throw parse_error(std::string("malformed JSON: ") + ex.what());
    }
    return j;
}

unsigned long probe_seed() {
    const char* env = std::getenv("TVARSL2_SEED");
    if (!env) return 0;
    return std::strtoul(env, nullptr, 10);
}

// q(t) given as "t", "t-5", "2t+1", "(2t+1)/(t+1)", "1/t", ...
std::pair<Rat, Rat> parse_linear(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    if (s.empty()) throw parse_error("empty linear term");
    Rat a(0), b(0);
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+') { ++i; }
        else if (s[i] == '-') { sign = -1; ++i; }
        std::string num;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/'))
            num += s[i++];
        bool has_t = i < s.size() && s[i] == 't';
        if (has_t) ++i;
        Rat value = num.empty() ? Rat(1) : rat_from_string(num);
        if (!has_t && num.empty()) throw parse_error("bad linear term: " + raw);
        if (sign < 0) value = -value;
        if (has_t) a += value;
        else b += value;
    }
    return {a, b};
}

MobiusMap parse_mobius(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    int depth = 0;
    std::size_t slash = std::string::npos;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == '/' && depth == 0) { slash = i; break; }
    }
    if (slash == std::string::npos) {
        auto [a, b] = parse_linear(s);
        return MobiusMap(a, b, Rat(0), Rat(1));
    }
    auto [a, b] = parse_linear(s.substr(0, slash));
    auto [c, d] = parse_linear(s.substr(slash + 1));
    return MobiusMap(a, b, c, d);
}

LatticeVector parse_vec(const std::string& raw, Side side) {
    std::vector<Int> coords;
    std::string cur;
    for (char c : raw) {
        if (c == ',') {
            coords.push_back(int_from_string(cur));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) coords.push_back(int_from_string(cur));
    if (coords.empty()) throw parse_error("empty vector literal");
    return LatticeVector(side, std::move(coords));
}

struct Output {
    Json result;
    Json verification = Json::object();
    std::string text;
};

// option storage shared between the parser setup and the dispatcher
std::string input_path, format = "json", evec, mvec_s, moves_path, family_s, a_s, q_s, h_path;
bool do_verify = false;
int probe_bound = 8;
long r_val = 1;
int dplus = 1, dminus = 1;

void emit(const Output& out, const std::string& command, const std::string& format) {
    if (format == "text" && !out.text.empty()) {
        std::cout << out.text;
        return;
    }
    Json cert;
    cert["schema_version"] = kSchemaVersion;
    cert["command"] = command;
    cert["result"] = out.result;
    cert["verification"] = out.verification;
    std::cout << canonical_dump(cert);
}

std::string describe_descriptor(const SL2ActionDescriptor& a) {
    std::ostringstream os;
    os << action_kind_name(a.kind) << " action: e=";
    Json je = vec_to_json(a.e);
    os << je.dump() << " p=" << vec_to_json(a.p).dump()
       << " effective=" << (a.effectiveness == Effectiveness::SL2Effective ? "SL2" : "PSL2")
       << " special=" << (is_special(a).special ? "yes" : "no") << "\n";
    return os.str();
}

Json verify_actions(const std::vector<SL2ActionDescriptor>& actions, int probe_count) {
    Json v = Json::array();
    for (const auto& a : actions) {
        auto probes = augment_probes(default_probes(a.divisor, true), a.divisor, probe_seed(),
                                     probe_count);
        auto rep = verify_sl2_triple(a, probes);
        Json e;
        e["e"] = vec_to_json(a.e);
        e["checks"] = validation_to_json(rep.checks);
        e["pass"] = rep.all_pass();
        v.push_back(e);
    }
    return v;
}

int dispatch(CLI::App& app, const std::string& command_echo) {
    auto* cone_cmd = app.get_subcommand("cone");
    auto* divisor_cmd = app.get_subcommand("divisor");
    auto* lnd_cmd = app.get_subcommand("lnd");
    auto* sl2_cmd = app.get_subcommand("sl2");
    auto* threefold_cmd = app.get_subcommand("threefold");
    auto* appendix_cmd = app.get_subcommand("appendix");

    Output out;

    if (cone_cmd->parsed()) {
        Json j = load_json(input_path);
        Cone c = cone_from_json(j);
        if (cone_cmd->get_subcommand("dual")->parsed()) {
            out.result = cone_to_json(c.dual());
            out.text = canonical_dump(out.result);
        } else if (cone_cmd->get_subcommand("hilbert")->parsed()) {
            Json hb = Json::array();
            for (const auto& h : hilbert_basis(c)) hb.push_back(vec_to_json(h));
            out.result["hilbert_basis"] = hb;
            out.text = out.result.dump(2) + "\n";
        } else if (cone_cmd->get_subcommand("roots")->parsed()) {
            LatticeVector e = parse_vec(evec, dual_side(c.side()));
            auto root = is_root(c, e);
            out.result["is_root"] = root.has_value();
            if (root) out.result["distinguished_ray"] = vec_to_json(root->distinguished_ray);
            out.text = out.result.dump(2) + "\n";
        } else {  // sl2-roots
            auto roots = enumerate_sl2_roots(c);
            out.result["spanning"] = roots.spanning;
            Json rs = Json::array();
            for (const auto& r : roots.roots) {
                Json e;
                e["e"] = vec_to_json(r.e);
                e["rho_plus"] = vec_to_json(r.rho_plus);
                e["rho_minus"] = vec_to_json(r.rho_minus);
                e["p"] = vec_to_json(r.p);
                rs.push_back(e);
            }
            out.result["roots"] = rs;
            Json fams = Json::array();
            for (const auto& f : roots.families) {
                Json e;
                e["representative"] = vec_to_json(f.representative.e);
                Json kb = Json::array();
                for (const auto& k : f.kernel_basis) kb.push_back(vec_to_json(k));
                e["kernel_basis"] = kb;
                fams.push_back(e);
            }
            out.result["families"] = fams;
            out.text = "sl2-roots: " + std::to_string(roots.roots.size()) + " root(s), " +
                       std::to_string(roots.families.size()) + " affine family(ies)\n";
        }
        emit(out, command_echo, format);
        return 0;
    }

    if (divisor_cmd->parsed()) {
        PolyhedralDivisor d = divisor_from_json(load_json(input_path));
        if (divisor_cmd->get_subcommand("eval")->parsed()) {
            LatticeVector m = parse_vec(mvec_s, Side::M);
            out.result = qdivisor_to_json(d.evaluate(VectorQ(m)));
        } else if (divisor_cmd->get_subcommand("proper")->parsed()) {
            auto rep = d.is_proper();
            out.result["proper"] = rep.proper;
            out.result["reason"] = rep.reason;
            if (rep.violating_vertex) out.result["violating_vertex"] = vec_to_json(*rep.violating_vertex);
        } else if (divisor_cmd->get_subcommand("toric")->parsed()) {
            auto tf = d.toric_form();
            out.result["toric"] = tf.has_value();
            if (tf) {
                out.result["cone"] = cone_to_json(tf->cone);
                Json moves = Json::array();
                for (const auto& [z, v] : tf->moves) {
                    Json e;
                    e["point"] = point_to_json(z);
                    e["move"] = vec_to_json(v);
                    moves.push_back(e);
                }
                out.result["moves"] = moves;
                Json pts = Json::array();
                for (const auto& z : tf->support_points) pts.push_back(point_to_json(z));
                out.result["support"] = pts;
            }
        } else {  // shift
            Json mv = load_json(moves_path);
            std::map<CurvePoint, LatticeVector> moves;
            for (const auto& e : mv.at("moves"))
                moves.emplace(point_from_json(e.at("point")),
                              lattice_vec_from_json(e.at("move"), Side::N));
            out.result = divisor_to_json(d.shifted(moves));
        }
        out.text = out.result.dump(2) + "\n";
        emit(out, command_echo, format);
        return 0;
    }

    if (lnd_cmd->parsed()) {
        Json j = load_json(input_path);
        PolyhedralDivisor d = divisor_from_json(j.at("divisor"));
        HomogeneousLND lnd = lnd_from_json(j.at("lnd"), d);
        if (lnd_cmd->get_subcommand("apply")->parsed()) {
            GradedTerm x = term_from_json(j.at("term"));
            GradedTerm y = apply(lnd, x);
            if (y.is_zero())
                out.result["zero"] = true;
            else
                out.result = term_to_json(y);
        } else if (lnd_cmd->get_subcommand("kernel")->parsed()) {
            auto k = kernel_cone(lnd);
            out.result["cone"] = cone_to_json(k.cone);
            Json lat = Json::array();
            for (const auto& row : k.lattice_basis) {
                Json r = Json::array();
                for (const auto& c : row) r.push_back(int_to_string(c));
                lat.push_back(r);
            }
            out.result["lattice_basis"] = lat;
        } else {  // verify
            if (lnd.is_fiber()) {
                out.result["kind"] = "fiber";
                out.result["valid"] = true;  // construction already validated phi and the root
            } else {
                auto rep = validate_coherent(lnd.horizontal().pair);
                out.result["kind"] = "horizontal";
                out.result["coherent"] = validation_to_json(rep);
                out.result["valid"] = rep.all_pass();
            }
        }
        out.text = out.result.dump(2) + "\n";
        emit(out, command_echo, format);
        return 0;
    }

    if (sl2_cmd->parsed()) {
        if (sl2_cmd->get_subcommand("classify")->parsed()) {
            Json j = load_json(input_path);
            std::vector<SL2ActionDescriptor> actions;
            if (j.contains("curve")) {
                PolyhedralDivisor d = divisor_from_json(j);
                actions = classify_fiber(d);
                auto horizontal = classify_horizontal(d);
                actions.insert(actions.end(), horizontal.begin(), horizontal.end());
            } else {
                actions = classify_toric(cone_from_json(j));
            }
            Json arr = Json::array();
            std::string text;
            for (const auto& a : actions) {
                arr.push_back(descriptor_to_json(a));
                text += describe_descriptor(a);
            }
            out.result["actions"] = arr;
            out.result["count"] = actions.size();
            out.text = text.empty() ? "no compatible SL2-actions\n" : text;
            if (do_verify) out.verification = verify_actions(actions, probe_bound);
        } else if (sl2_cmd->get_subcommand("verify")->parsed()) {
            Json j = load_json(input_path);
            PolyhedralDivisor d = divisor_from_json(j.at("divisor"));
            HomogeneousLND plus = lnd_from_json(j.at("lnds").at(0), d);
            HomogeneousLND minus = lnd_from_json(j.at("lnds").at(1), d);
            auto probes = augment_probes(default_probes(d, true), d, probe_seed(), probe_bound);
            auto comm = commutator(plus, minus, probes);
            out.result["diagonal"] = comm.diagonal;
            if (comm.p) out.result["p"] = vec_to_json(*comm.p);
            if (!comm.detail.empty()) out.result["detail"] = comm.detail;
            out.text = out.result.dump(2) + "\n";
        } else if (sl2_cmd->get_subcommand("special")->parsed()) {
            Json j = load_json(input_path);
            PolyhedralDivisor d = divisor_from_json(j.at("divisor"));
            HomogeneousLND plus = lnd_from_json(j.at("lnds").at(0), d);
            HomogeneousLND minus = lnd_from_json(j.at("lnds").at(1), d);
            auto probes = default_probes(d, true);
            auto comm = commutator(plus, minus, probes);
            if (!comm.diagonal || !comm.p) throw domain_error("not an sl2-pair: " + comm.detail);
            ActionKind kind = plus.is_fiber() ? ActionKind::FiberType : ActionKind::HorizontalType;
            SL2ActionDescriptor a{kind,
                                  plus.degree(),
                                  *comm.p,
                                  effectiveness_of(*comm.p),
                                  plus,
                                  minus,
                                  d,
                                  std::nullopt,
                                  {},
                                  std::max(plus.degree(), -plus.degree())};
            auto rep = is_special(a);
            out.result["special"] = rep.special;
            out.result["reason"] = rep.reason;
            out.text = std::string(rep.special ? "special" : "not special") + ": " + rep.reason + "\n";
        } else {  // build-special
            QDivisor h = qdivisor_from_json(load_json(h_path));
            SpecialAction s = build_special(Int(r_val), h);
            out.result = special_to_json(s);
            out.text = "special action with r = " + int_to_string(s.r) + ", " +
                       s.generic_isotropy + " isotropy\n";
            if (do_verify)
                out.verification = verify_actions({s.descriptor}, probe_bound);
        }
        emit(out, command_echo, format);
        return 0;
    }

    if (threefold_cmd->parsed()) {
        auto family_from = [&](const std::string& f) {
            if (f == "A1" || f == "A1-homogeneous") return ThreefoldFamily::A1Homogeneous;
            if (f == "A1-cone") return ThreefoldFamily::A1Cone;
            if (f == "P1") return ThreefoldFamily::P1Family;
            throw parse_error("family must be A1-homogeneous, A1-cone, or P1");
        };
        if (threefold_cmd->get_subcommand("build")->parsed() ||
            threefold_cmd->get_subcommand("invariants")->parsed()) {
            ThreefoldFamily fam = family_from(family_s);
            std::optional<Rat> a;
            if (!a_s.empty()) a = rat_from_string(a_s);
            ThreefoldDescriptor x = build_threefold(fam, Int(r_val), a);
            out.result = threefold_to_json(x);
            std::ostringstream os;
            os << "family " << family_name(x.family) << "  r_X=" << int_to_string(x.invariants.r_x)
               << "  slope=" << (x.invariants.slope ? rat_to_string(*x.invariants.slope) : "--")
               << "  height=" << (x.invariants.height ? rat_to_string(*x.invariants.height) : "--")
               << "  toric=" << (x.invariants.toric ? "yes" : "no")
               << "  N_X=" << x.invariants.n_x << " (unproved metadata)\n";
            out.text = os.str();
            if (do_verify) out.verification = verify_actions({x.action}, probe_bound);
        } else {  // recognize
            PolyhedralDivisor d = divisor_from_json(load_json(input_path));
            auto x = recognize(d);
            out.result["recognized"] = x.has_value();
            if (x) out.result["threefold"] = threefold_to_json(*x);
            out.text = x ? ("recognized: r=" + int_to_string(x->r) +
                            (x->a ? " a=" + rat_to_string(*x->a) : "") + "\n")
                         : "not a quasi-homogeneous SL2-threefold datum\n";
        }
        emit(out, command_echo, format);
        return 0;
    }

    if (appendix_cmd->parsed()) {
        MobiusMap q = parse_mobius(q_s);
        appendix::Commutator1Input in{q, dplus, dminus, Rat(0), Rat(0), RationalFunction()};
        auto rep = appendix::verify_commutator1(in);
        out.result["delta_t_matches_closed_form"] = rep.delta_t_matches_closed_form;
        out.result["gamma_identically_zero"] = rep.gamma_identically_zero;
        Json gc = Json::array();
        for (int i = 0; i <= rep.gamma.degree(); ++i) gc.push_back(rat_to_string(rep.gamma.coeff(i)));
        out.result["gamma_coefficients"] = gc;
        out.result["quadratic_matches_bracket"] = rep.quadratic_matches_bracket;
        std::ostringstream os;
        os << "delta(t) " << (rep.delta_t_matches_closed_form ? "matches" : "DIFFERS from")
           << " the closed form; Gamma " << (rep.gamma_identically_zero ? "== 0" : "!= 0") << "\n";
        out.text = os.str();
        emit(out, command_echo, format);
        return 0;
    }

    std::cerr << app.help() << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact SL2-action classification on affine T-varieties"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
        cmd->add_flag("--verify", do_verify, "run the verification suites on the results");
        cmd->add_option("--probe-bound", probe_bound, "extra probe count for --verify");
    };

    auto* cone_cmd = app.add_subcommand("cone", "cone operations");
    for (const char* sub : {"dual", "hilbert", "roots", "sl2-roots"}) {
        auto* s = cone_cmd->add_subcommand(sub);
        s->add_option("--input", input_path, "cone JSON")->required();
        if (std::string(sub) == "roots")
            s->add_option("--e", evec, "candidate root, comma separated")->required();
        add_common(s);
    }
    cone_cmd->require_subcommand(1);

    auto* divisor_cmd = app.add_subcommand("divisor", "polyhedral divisor operations");
    for (const char* sub : {"eval", "proper", "toric", "shift"}) {
        auto* s = divisor_cmd->add_subcommand(sub);
        s->add_option("--input", input_path, "divisor JSON")->required();
        if (std::string(sub) == "eval")
            s->add_option("--m", mvec_s, "weight vector, comma separated")->required();
        if (std::string(sub) == "shift")
            s->add_option("--moves", moves_path, "moves JSON")->required();
        add_common(s);
    }
    divisor_cmd->require_subcommand(1);

    auto* lnd_cmd = app.add_subcommand("lnd", "homogeneous LND operations");
    for (const char* sub : {"apply", "kernel", "verify"}) {
        auto* s = lnd_cmd->add_subcommand(sub);
        s->add_option("--input", input_path, "composite JSON with divisor, lnd[, term]")->required();
        add_common(s);
    }
    lnd_cmd->require_subcommand(1);

    auto* sl2_cmd = app.add_subcommand("sl2", "SL2-action classification");
    {
        auto* s = sl2_cmd->add_subcommand("classify");
        s->add_option("--input", input_path, "cone or divisor JSON")->required();
        add_common(s);
        auto* v = sl2_cmd->add_subcommand("verify");
        v->add_option("--input", input_path, "composite JSON with divisor and lnds")->required();
        add_common(v);
        auto* sp = sl2_cmd->add_subcommand("special");
        sp->add_option("--input", input_path, "composite JSON with divisor and lnds")->required();
        add_common(sp);
        auto* b = sl2_cmd->add_subcommand("build-special");
        b->add_option("--r", r_val, "positive integer r")->required();
        b->add_option("--H", h_path, "ample Q-divisor JSON on P1")->required();
        add_common(b);
    }
    sl2_cmd->require_subcommand(1);

    auto* threefold_cmd = app.add_subcommand("threefold", "quasi-homogeneous SL2-threefolds");
    {
        for (const char* sub : {"build", "invariants"}) {
            auto* s = threefold_cmd->add_subcommand(sub);
            s->add_option("--family", family_s, "A1-homogeneous|A1-cone|P1")->required();
            s->add_option("--r", r_val, "positive integer r")->required();
            s->add_option("--a", a_s, "positive rational a (P1 family)");
            add_common(s);
        }
        auto* rec = threefold_cmd->add_subcommand("recognize");
        rec->add_option("--input", input_path, "divisor JSON")->required();
        add_common(rec);
    }
    threefold_cmd->require_subcommand(1);

    auto* appendix_cmd = app.add_subcommand("appendix", "commutator formula checks");
    {
        auto* v = appendix_cmd->add_subcommand("verify");
        v->add_option("--q", q_s, "Mobius map, e.g. \"t\", \"t-5\", \"(2t+1)/(t+1)\"")->required();
        v->add_option("--dplus", dplus, "d+ in {1,2}")->required();
        v->add_option("--dminus", dminus, "d- in {1,2}")->required();
        add_common(v);
    }
    appendix_cmd->require_subcommand(1);

    std::string command_echo;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) command_echo += " ";
        command_echo += argv[i];
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        return dispatch(app, command_echo);
    } catch (const parse_error& e) {
        Json err{{"error", "parse"}, {"message", e.what()}};
        std::cerr << canonical_dump(err);
        return 2;
    } catch (const domain_error& e) {
        Json err{{"error", "domain"}, {"message", e.what()}};
        std::cerr << canonical_dump(err);
        return 3;
    } catch (const std::exception& e) {
        Json err{{"error", "internal"}, {"message", e.what()}};
        std::cerr << canonical_dump(err);
        return 4;
    }
}
