#include "tvarsl2/divisor.hpp"

#include <algorithm>

namespace tvarsl2 {

namespace {

VectorQ append_coord(const VectorQ& v, const Rat& last) {
    std::vector<Rat> c = v.coords;
    c.push_back(last);
    return VectorQ(v.side, std::move(c));
}

}  // namespace

SigmaPolyhedron::SigmaPolyhedron(Cone tail, std::vector<VectorQ> verts, Cone homog)
    : tail_(std::move(tail)), vertices_(std::move(verts)), homog_(std::move(homog)) {}

SigmaPolyhedron SigmaPolyhedron::from_vertices(const Cone& tail, const std::vector<VectorQ>& vertices) {
    if (!tail.is_pointed()) throw domain_error("sigma-polyhedron requires a pointed tail cone");
    if (vertices.empty()) throw domain_error("sigma-polyhedron requires at least one vertex");
    int n = tail.rank();
    std::vector<VectorQ> gens;
    for (const auto& v : vertices) {
        if (v.rank() != n || v.side != tail.side()) throw domain_error("vertex rank/side mismatch");
        gens.push_back(append_coord(v, Rat(1)));
    }
    for (const auto& r : tail.rays()) gens.push_back(append_coord(VectorQ(r), Rat(0)));
    Cone homog = Cone::from_generators_q(tail.side(), n + 1, gens);

    std::vector<VectorQ> canon;
    for (const auto& ray : homog.rays()) {
        const Int& h = ray.coords[n];
        if (h == 0) continue;
        if (h < 0) throw internal_error("homogenization ray below height 0");
        std::vector<Rat> c(n);
        for (int i = 0; i < n; ++i) c[i] = rat(ray.coords[i], h);
        canon.emplace_back(tail.side(), std::move(c));
    }
    if (canon.empty()) throw internal_error("polyhedron lost all vertices");
    std::sort(canon.begin(), canon.end());
    return SigmaPolyhedron(tail, std::move(canon), std::move(homog));
}

SigmaPolyhedron SigmaPolyhedron::trivial(const Cone& tail) {
    std::vector<Rat> zero(tail.rank(), Rat(0));
    return from_vertices(tail, {VectorQ(tail.side(), zero)});
}

bool SigmaPolyhedron::is_trivial() const {
    return vertices_.size() == 1 && vertices_[0].is_zero();
}

std::optional<VectorQ> SigmaPolyhedron::single_vertex() const {
    if (vertices_.size() == 1) return vertices_[0];
    return std::nullopt;
}

std::optional<LatticeVector> SigmaPolyhedron::lattice_translate_of_tail() const {
    if (vertices_.size() != 1 || !vertices_[0].is_integral()) return std::nullopt;
    return vertices_[0].to_lattice();
}

bool SigmaPolyhedron::contains(const VectorQ& x) const {
    return homog_.contains(append_coord(x, Rat(1)));
}

SigmaPolyhedron SigmaPolyhedron::translated(const VectorQ& v) const {
    std::vector<VectorQ> verts;
    for (const auto& w : vertices_) verts.push_back(w + v);
    return from_vertices(tail_, verts);
}

Rat SigmaPolyhedron::support_value(const VectorQ& m) const {
    if (m.side != dual_side(side())) throw domain_error("support_value: wrong side");
    std::optional<Rat> best;
    for (const auto& v : vertices_) {
        Rat p = pairing(m, v);
        if (!best || p < *best) best = p;
    }
    return *best;
}

bool SigmaPolyhedron::in_tail_dual(const VectorQ& m) const {
    for (const auto& rho : tail_.rays())
        if (pairing(m, rho) < 0) return false;
    for (const auto& l : tail_.lineality())
        if (pairing(m, l) != 0) return false;
    return true;
}

bool SigmaPolyhedron::vertices_adjacent(const VectorQ& v, const VectorQ& w) const {
    if (rank() != 2) throw domain_error("vertex adjacency implemented for rank 2 only");
    if (v == w) return false;
    VectorQ d = w - v;
    std::vector<Rat> n1 = {-d.coords[1], d.coords[0]};
    std::vector<Rat> n2 = {d.coords[1], -d.coords[0]};
    for (const auto& cand : {n1, n2}) {
        VectorQ m(dual_side(side()), cand);
        Rat level = pairing(m, v);
        if (pairing(m, w) != level) throw internal_error("edge normal construction");
        bool ok = true;
        for (const auto& u : vertices_) {
            if (u == v || u == w) continue;
            if (pairing(m, u) <= level) { ok = false; break; }
        }
        if (ok)
            for (const auto& rho : tail_.rays())
                if (pairing(m, rho) < 0) { ok = false; break; }
        if (ok) return true;
    }
    return false;
}

SigmaPolyhedron minkowski_sum(const SigmaPolyhedron& a, const SigmaPolyhedron& b) {
    if (!(a.tail() == b.tail())) throw domain_error("minkowski_sum: tail cones differ");
    std::vector<VectorQ> cand;
    for (const auto& v : a.vertices())
        for (const auto& w : b.vertices()) cand.push_back(v + w);
    return SigmaPolyhedron::from_vertices(a.tail(), cand);
}

// ---------------------------------------------------------------------------

Rat QDivisor::coefficient(const CurvePoint& z) const {
    auto it = coeffs_.find(z);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

void QDivisor::add(const CurvePoint& z, const Rat& c) {
    if (z.infinite && curve_ == CurveKind::A1)
        throw domain_error("point at infinity is not on A1");
    auto it = coeffs_.find(z);
    Rat next = (it == coeffs_.end() ? Rat(0) : it->second) + c;
    if (next == 0) {
        if (it != coeffs_.end()) coeffs_.erase(it);
    } else {
        coeffs_[z] = next;
    }
}

Rat QDivisor::total_degree() const {
    Rat acc(0);
    for (const auto& [z, c] : coeffs_) acc += c;
    return acc;
}

bool QDivisor::is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const auto& kv) { return is_integer(kv.second); });
}

bool QDivisor::is_principal() const {
    if (!is_integral()) return false;
    return curve_ == CurveKind::A1 || total_degree() == 0;
}

QDivisor QDivisor::floored() const {
    QDivisor out(curve_);
    for (const auto& [z, c] : coeffs_) out.add(z, Rat(rat_floor(c)));
    return out;
}

QDivisor QDivisor::operator+(const QDivisor& o) const {
    if (curve_ != o.curve_) throw domain_error("divisor curves differ");
    QDivisor out = *this;
    for (const auto& [z, c] : o.coeffs_) out.add(z, c);
    return out;
}

QDivisor QDivisor::operator-(const QDivisor& o) const { return *this + (-o); }

QDivisor QDivisor::operator-() const {
    QDivisor out(curve_);
    for (const auto& [z, c] : coeffs_) out.add(z, -c);
    return out;
}

QDivisor QDivisor::operator*(const Rat& k) const {
    QDivisor out(curve_);
    if (k != 0)
        for (const auto& [z, c] : coeffs_) out.add(z, c * k);
    return out;
}

bool QDivisor::operator>=(const QDivisor& o) const {
    QDivisor diff = *this - o;
    return std::all_of(diff.coefficients().begin(), diff.coefficients().end(),
                       [](const auto& kv) { return kv.second >= 0; });
}

// ---------------------------------------------------------------------------

PolyhedralDivisor::PolyhedralDivisor(CurveKind curve, Cone tail)
    : curve_(curve), tail_(std::move(tail)), trivial_(SigmaPolyhedron::trivial(tail_)) {
    if (tail_.side() != Side::N) throw domain_error("tail cone must live in N");
}

void PolyhedralDivisor::set_slice(const CurvePoint& z, const SigmaPolyhedron& p) {
    if (z.infinite && curve_ == CurveKind::A1)
        throw domain_error("point at infinity is not on A1");
    if (!(p.tail() == tail_)) throw domain_error("slice tail differs from divisor tail");
    if (p.is_trivial())
        slices_.erase(z);
    else
        slices_.insert_or_assign(z, p);
}

const SigmaPolyhedron& PolyhedralDivisor::slice(const CurvePoint& z) const {
    auto it = slices_.find(z);
    return it == slices_.end() ? trivial_ : it->second;
}

std::vector<CurvePoint> PolyhedralDivisor::support() const {
    std::vector<CurvePoint> out;
    for (const auto& [z, p] : slices_) out.push_back(z);
    return out;
}

QDivisor PolyhedralDivisor::evaluate(const VectorQ& m) const {
    QDivisor out(curve_);
    for (const auto& [z, p] : slices_) out.add(z, p.support_value(m));
    return out;
}

PolyhedralDivisor::ProperReport PolyhedralDivisor::is_proper() const {
    if (curve_ == CurveKind::A1) return {true, "every sigma-polyhedral divisor on A1 is proper", {}};
    SigmaPolyhedron deg = degree();
    for (const auto& v : deg.vertices())
        if (!tail_.contains(v))
            return {false, "deg D has a vertex outside the tail cone", v};
    if (deg.is_trivial())
        return {false, "deg D equals the tail cone", VectorQ(deg.vertices()[0])};
    return {true, "deg D is strictly contained in the tail cone", {}};
}

PolyhedralDivisor PolyhedralDivisor::shifted(const std::map<CurvePoint, LatticeVector>& moves) const {
    if (curve_ == CurveKind::P1) {
        std::vector<Int> sum(rank(), Int(0));
        for (const auto& [z, v] : moves)
            for (int i = 0; i < rank(); ++i) sum[i] += v.coords[i];
        if (!LatticeVector(Side::N, sum).is_zero())
            throw domain_error("shift on P1 must have zero move sum (principality)");
    }
    PolyhedralDivisor out(curve_, tail_);
    out.slices_ = slices_;
    for (const auto& [z, v] : moves) {
        if (v.side != Side::N || v.rank() != rank()) throw domain_error("bad shift vector");
        out.set_slice(z, slice(z).translated(VectorQ(v)));
    }
    return out;
}

SigmaPolyhedron PolyhedralDivisor::degree(const std::optional<CurvePoint>& exclude) const {
    SigmaPolyhedron acc = trivial_;
    for (const auto& [z, p] : slices_) {
        if (exclude && z == *exclude) continue;
        acc = minkowski_sum(acc, p);
    }
    return acc;
}

std::optional<PolyhedralDivisor::ToricForm> PolyhedralDivisor::toric_form() const {
    auto proper = is_proper();
    if (!proper.proper) throw domain_error("toric_form requires a proper divisor: " + proper.reason);

    std::vector<CurvePoint> exceptional;
    std::map<CurvePoint, LatticeVector> moves;
    std::vector<Int> dumped(rank(), Int(0));
    for (const auto& [z, p] : slices_) {
        if (auto u = p.lattice_translate_of_tail()) {
            moves.emplace(z, -*u);
            for (int i = 0; i < rank(); ++i) dumped[i] += u->coords[i];
        } else {
            exceptional.push_back(z);
        }
    }
    std::size_t cap = curve_ == CurveKind::A1 ? 1 : 2;
    if (exceptional.size() > cap) return std::nullopt;

    LatticeVector dump(Side::N, dumped);
    if (curve_ == CurveKind::P1 && !dump.is_zero()) {
        CurvePoint target = exceptional.empty() ? CurvePoint::infinity() : exceptional[0];
        auto it = moves.find(target);
        if (it != moves.end())
            it->second = it->second + dump;
        else
            moves.emplace(target, dump);
        if (exceptional.empty()) exceptional.push_back(target);
    }

    PolyhedralDivisor normalized = shifted(moves);
    std::vector<CurvePoint> support_points = normalized.support();
    if (support_points.size() > cap) throw internal_error("toric_form: support did not collapse");

    std::vector<CurvePoint> pads = {CurvePoint::infinity(), CurvePoint::at(0), CurvePoint::at(1)};
    std::size_t want = curve_ == CurveKind::A1 ? 1 : 2;
    for (const auto& pad : pads) {
        if (support_points.size() >= want) break;
        if (curve_ == CurveKind::A1 && pad.infinite) continue;
        if (std::find(support_points.begin(), support_points.end(), pad) == support_points.end())
            support_points.push_back(pad);
    }
    std::sort(support_points.begin(), support_points.end());

    int n = rank();
    std::vector<VectorQ> gens;
    for (const auto& r : tail_.rays()) gens.push_back(append_coord(VectorQ(r), Rat(0)));
    const Rat heights[2] = {Rat(1), Rat(-1)};
    for (std::size_t i = 0; i < support_points.size(); ++i)
        for (const auto& v : normalized.slice(support_points[i]).vertices())
            gens.push_back(append_coord(v, heights[i]));
    Cone toric = Cone::from_generators_q(Side::N, n + 1, gens);
    return ToricForm{std::move(moves), std::move(support_points), std::move(toric)};
}

std::optional<std::map<CurvePoint, LatticeVector>> PolyhedralDivisor::shift_equivalence_to(
    const PolyhedralDivisor& other) const {
    if (curve_ != other.curve_ || !(tail_ == other.tail_)) return std::nullopt;
    std::map<CurvePoint, LatticeVector> moves;
    std::vector<CurvePoint> points;
    for (const auto& [z, p] : slices_) points.push_back(z);
    for (const auto& [z, p] : other.slices_)
        if (std::find(points.begin(), points.end(), z) == points.end()) points.push_back(z);

    std::vector<Int> sum(rank(), Int(0));
    for (const auto& z : points) {
        const SigmaPolyhedron& a = slice(z);
        const SigmaPolyhedron& b = other.slice(z);
        VectorQ w = b.vertices()[0] - a.vertices()[0];
        if (!w.is_integral()) return std::nullopt;
        if (!(a.translated(w) == b)) return std::nullopt;
        LatticeVector wi = w.to_lattice();
        for (int i = 0; i < rank(); ++i) sum[i] += wi.coords[i];
        if (!wi.is_zero()) moves.emplace(z, wi);
    }
    if (curve_ == CurveKind::P1 && !LatticeVector(Side::N, sum).is_zero()) return std::nullopt;
    return moves;
}

PolyhedralDivisor PolyhedralDivisor::transformed(const IntMat& na) const {
    int n = rank();
    auto apply = [&](const VectorQ& v) {
        std::vector<Rat> out(n, Rat(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out[i] += Rat(na[i][j]) * v.coords[j];
        return VectorQ(v.side, std::move(out));
    };
    std::vector<LatticeVector> rays;
    for (const auto& r : tail_.rays()) rays.push_back(primitive_part(apply(VectorQ(r))));
    for (const auto& l : tail_.lineality()) rays.push_back(primitive_part(apply(VectorQ(l))));
    Cone new_tail = Cone::from_generators(Side::N, n, rays);
    PolyhedralDivisor out(curve_, new_tail);
    for (const auto& [z, p] : slices_) {
        std::vector<VectorQ> verts;
        for (const auto& v : p.vertices()) verts.push_back(apply(v));
        out.set_slice(z, SigmaPolyhedron::from_vertices(new_tail, verts));
    }
    return out;
}

PolyhedralDivisor PolyhedralDivisor::relabeled(const std::map<CurvePoint, CurvePoint>& point_map) const {
    PolyhedralDivisor out(curve_, tail_);
    for (const auto& [z, p] : slices_) {
        auto it = point_map.find(z);
        CurvePoint target = it == point_map.end() ? z : it->second;
        if (out.slices_.count(target)) throw domain_error("relabeled: point map not injective on support");
        out.set_slice(target, p);
    }
    return out;
}

}  // namespace tvarsl2
