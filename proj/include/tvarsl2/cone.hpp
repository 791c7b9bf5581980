#pragma once

#include <optional>
#include <vector>

#include "tvarsl2/lattice.hpp"

namespace tvarsl2 {

// Rational polyhedral cone, canonicalized at construction so structural
// equality is semantic equality. Primary objects (tail cones sigma) are
// pointed; duals of lower-dimensional cones carry a lineality part, stored
// as an HNF basis next to the extreme rays of the pointed quotient.
class Cone {
public:
    static Cone from_generators(Side side, int rank, const std::vector<LatticeVector>& gens);
    static Cone from_generators_q(Side side, int rank, const std::vector<VectorQ>& gens);
    // {x : <n,x> >= 0 for n in normals, <n,x> = 0 for n in equalities}
    static Cone from_inequalities(Side side, int rank, const std::vector<LatticeVector>& normals,
                                  const std::vector<LatticeVector>& equalities = {});
    static Cone zero(Side side, int rank);
    static Cone full_space(Side side, int rank);

    Side side() const { return side_; }
    int rank() const { return rank_; }

    const std::vector<LatticeVector>& rays() const { return rays_; }
    const std::vector<LatticeVector>& lineality() const { return lineality_; }
    const std::vector<LatticeVector>& facet_normals() const { return facet_normals_; }
    const std::vector<LatticeVector>& span_normals() const { return span_normals_; }

    bool is_pointed() const { return lineality_.empty(); }
    bool is_zero() const { return rays_.empty() && lineality_.empty(); }
    int dim() const;
    bool is_full_dimensional() const { return span_normals_.empty(); }
    bool rays_span() const { return dim() == rank_ && lineality_.empty(); }

    enum class Where { Interior, Boundary, Outside };  // Interior = relative interior
    Where locate(const VectorQ& v) const;
    bool contains(const VectorQ& v) const { return locate(v) != Where::Outside; }
    bool contains(const LatticeVector& v) const { return contains(VectorQ(v)); }

    Cone dual() const;
    bool has_ray(const LatticeVector& rho) const;

    // All generators as one list: extreme rays plus +-lineality basis.
    std::vector<LatticeVector> generators() const;

    bool operator==(const Cone& o) const {
        return side_ == o.side_ && rank_ == o.rank_ && rays_ == o.rays_ && lineality_ == o.lineality_;
    }

private:
    Cone(Side side, int rank) : side_(side), rank_(rank) {}

    Side side_;
    int rank_;
    std::vector<LatticeVector> rays_;
    std::vector<LatticeVector> lineality_;
    std::vector<LatticeVector> facet_normals_;
    std::vector<LatticeVector> span_normals_;
};

Cone intersect(const Cone& a, const Cone& b);

// Minimal generating set of the semigroup of lattice points; pointed cones only.
std::vector<LatticeVector> hilbert_basis(const Cone& c);

// Generating set of the lattice-point monoid of an arbitrary cone: Hilbert
// basis of the pointed quotient lifted, plus +- a basis of the lineality
// lattice. Equals hilbert_basis for pointed cones.
std::vector<LatticeVector> semigroup_generators(const Cone& c);

struct Root {
    LatticeVector e;
    LatticeVector distinguished_ray;
};

// Demazure root test: <e, rho_e> = -1 for exactly one ray, >= 0 elsewhere.
std::optional<Root> is_root(const Cone& c, const LatticeVector& e);

struct SL2Root {
    LatticeVector e;
    LatticeVector rho_plus;   // distinguished ray of e
    LatticeVector rho_minus;  // distinguished ray of -e
    LatticeVector p;          // rho_minus - rho_plus; <e,p> = 2
};

struct SL2RootFamily {
    SL2Root representative;
    std::vector<LatticeVector> kernel_basis;  // sublattice orthogonal to all rays
};

struct SL2RootEnumeration {
    bool spanning = true;  // rays span N_Q: finitely many roots
    std::vector<SL2Root> roots;
    std::vector<SL2RootFamily> families;  // nonempty only when !spanning
};

SL2RootEnumeration enumerate_sl2_roots(const Cone& c);

SL2Root make_sl2_root(const Cone& c, const LatticeVector& e);  // validates, throws if not

// tau_e = sigma_dual intersect rho_perp, as a cone on the dual side.
Cone facet_dual_to_ray(const Cone& c, const LatticeVector& rho);

}  // namespace tvarsl2
