#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tvarsl2/cone.hpp"

namespace tvarsl2 {

// conv(vertices) + tail, tail pointed. Canonicalized through the
// homogenization cone in rank+1, so the stored vertex set is minimal.
class SigmaPolyhedron {
public:
    static SigmaPolyhedron from_vertices(const Cone& tail, const std::vector<VectorQ>& vertices);
    static SigmaPolyhedron trivial(const Cone& tail);  // = tail itself (vertex 0)

    const Cone& tail() const { return tail_; }
    const std::vector<VectorQ>& vertices() const { return vertices_; }
    Side side() const { return tail_.side(); }
    int rank() const { return tail_.rank(); }

    bool is_trivial() const;
    std::optional<VectorQ> single_vertex() const;
    // u in N with P = u + tail
    std::optional<LatticeVector> lattice_translate_of_tail() const;

    bool contains(const VectorQ& x) const;
    SigmaPolyhedron translated(const VectorQ& v) const;

    // min over vertices of <m, v_i>; defined for every m by the generalized
    // evaluation formula. in_tail_dual reports whether m lies in tail-dual
    // (where the min is the honest support function).
    Rat support_value(const VectorQ& m) const;
    bool in_tail_dual(const VectorQ& m) const;

    // rank 2: do v and w span an edge (a one-dimensional face)?
    bool vertices_adjacent(const VectorQ& v, const VectorQ& w) const;

    bool operator==(const SigmaPolyhedron& o) const {
        return tail_ == o.tail_ && vertices_ == o.vertices_;
    }

private:
    SigmaPolyhedron(Cone tail, std::vector<VectorQ> verts, Cone homog);
    Cone tail_;
    std::vector<VectorQ> vertices_;
    Cone homog_;  // cone over {(v,1)} + (tail,0) in rank+1
};

SigmaPolyhedron minkowski_sum(const SigmaPolyhedron& a, const SigmaPolyhedron& b);

struct CurvePoint {
    bool infinite;
    Rat coord;  // meaningful iff !infinite

    static CurvePoint finite(const Rat& c) { return CurvePoint{false, c}; }
    static CurvePoint at(long c) { return CurvePoint{false, Rat(c)}; }
    static CurvePoint infinity() { return CurvePoint{true, Rat(0)}; }

    bool operator==(const CurvePoint& o) const {
        return infinite == o.infinite && (infinite || coord == o.coord);
    }
    bool operator<(const CurvePoint& o) const {
        if (infinite != o.infinite) return !infinite;  // finite points first
        if (infinite) return false;
        return coord < o.coord;
    }
    std::string str() const { return infinite ? "inf" : rat_to_string(coord); }
};

enum class CurveKind { A1, P1 };
inline const char* curve_name(CurveKind c) { return c == CurveKind::A1 ? "A1" : "P1"; }

// Finitely supported Q-divisor on the curve; zero coefficients are not stored.
class QDivisor {
public:
    explicit QDivisor(CurveKind curve) : curve_(curve) {}

    CurveKind curve() const { return curve_; }
    const std::map<CurvePoint, Rat>& coefficients() const { return coeffs_; }
    Rat coefficient(const CurvePoint& z) const;
    void add(const CurvePoint& z, const Rat& c);

    Rat total_degree() const;
    bool is_zero() const { return coeffs_.empty(); }
    bool is_integral() const;
    // A1: principal iff integral; P1: integral and of degree 0
    bool is_principal() const;
    QDivisor floored() const;  // coefficientwise floor

    QDivisor operator+(const QDivisor& o) const;
    QDivisor operator-(const QDivisor& o) const;
    QDivisor operator*(const Rat& k) const;
    QDivisor operator-() const;
    bool operator>=(const QDivisor& o) const;  // coefficientwise
    bool operator==(const QDivisor& o) const { return curve_ == o.curve_ && coeffs_ == o.coeffs_; }

private:
    CurveKind curve_;
    std::map<CurvePoint, Rat> coeffs_;
};

// Proper sigma-polyhedral divisor on A1 or P1. Slices equal to the tail are
// not stored; the support is the set of stored points.
class PolyhedralDivisor {
public:
    PolyhedralDivisor(CurveKind curve, Cone tail);

    CurveKind curve() const { return curve_; }
    const Cone& tail() const { return tail_; }
    int rank() const { return tail_.rank(); }

    void set_slice(const CurvePoint& z, const SigmaPolyhedron& p);
    const SigmaPolyhedron& slice(const CurvePoint& z) const;
    const std::map<CurvePoint, SigmaPolyhedron>& slices() const { return slices_; }
    std::vector<CurvePoint> support() const;

    QDivisor evaluate(const VectorQ& m) const;

    struct ProperReport {
        bool proper;
        std::string reason;
        std::optional<VectorQ> violating_vertex;
    };
    ProperReport is_proper() const;

    PolyhedralDivisor shifted(const std::map<CurvePoint, LatticeVector>& moves) const;

    // Minkowski sum of the slices, optionally excluding one point (degree over
    // C' = C minus the point at infinity of a coloring).
    SigmaPolyhedron degree(const std::optional<CurvePoint>& exclude = std::nullopt) const;

    struct ToricForm {
        std::map<CurvePoint, LatticeVector> moves;  // admissible shift used
        std::vector<CurvePoint> support_points;     // the <=1 / <=2 surviving points
        Cone cone;                                  // in (N + Z)_Q
    };
    std::optional<ToricForm> toric_form() const;

    // moves making shifted(*this) == other, if any (equivalence of Cor. form)
    std::optional<std::map<CurvePoint, LatticeVector>> shift_equivalence_to(
        const PolyhedralDivisor& other) const;

    // image under a lattice automorphism of N (rows act on coordinates)
    PolyhedralDivisor transformed(const IntMat& na) const;
    // relabel support points (injective map required)
    PolyhedralDivisor relabeled(const std::map<CurvePoint, CurvePoint>& point_map) const;

    bool operator==(const PolyhedralDivisor& o) const {
        return curve_ == o.curve_ && tail_ == o.tail_ && slices_ == o.slices_;
    }

private:
    CurveKind curve_;
    Cone tail_;
    SigmaPolyhedron trivial_;
    std::map<CurvePoint, SigmaPolyhedron> slices_;
};

}  // namespace tvarsl2
