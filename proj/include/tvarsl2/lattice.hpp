#pragma once

#include <optional>
#include <vector>

#include "tvarsl2/rational.hpp"

namespace tvarsl2 {

// The two mutually dual lattices. N-side vectors pair against M-side vectors.
enum class Side { N, M };

inline Side dual_side(Side s) { return s == Side::N ? Side::M : Side::N; }
inline const char* side_name(Side s) { return s == Side::N ? "N" : "M"; }

struct LatticeVector {
    Side side;
    std::vector<Int> coords;

    LatticeVector(Side s, std::vector<Int> c) : side(s), coords(std::move(c)) {}

    int rank() const { return static_cast<int>(coords.size()); }
    bool is_zero() const;

    LatticeVector operator+(const LatticeVector& o) const;
    LatticeVector operator-(const LatticeVector& o) const;
    LatticeVector operator-() const;
    LatticeVector operator*(const Int& k) const;
    bool operator==(const LatticeVector& o) const { return side == o.side && coords == o.coords; }
    bool operator<(const LatticeVector& o) const;  // lexicographic, for canonical sorting
};

struct VectorQ {
    Side side;
    std::vector<Rat> coords;

    VectorQ(Side s, std::vector<Rat> c) : side(s), coords(std::move(c)) {}
    VectorQ(const LatticeVector& v);  // lossless widening

    int rank() const { return static_cast<int>(coords.size()); }
    bool is_zero() const;
    bool is_integral() const;
    LatticeVector to_lattice() const;  // throws if not integral

    VectorQ operator+(const VectorQ& o) const;
    VectorQ operator-(const VectorQ& o) const;
    VectorQ operator-() const;
    VectorQ operator*(const Rat& k) const;
    bool operator==(const VectorQ& o) const { return side == o.side && coords == o.coords; }
    bool operator<(const VectorQ& o) const;
};

inline LatticeVector nvec(std::vector<long> c) {
    std::vector<Int> v(c.begin(), c.end());
    return LatticeVector(Side::N, std::move(v));
}
inline LatticeVector mvec(std::vector<long> c) {
    std::vector<Int> v(c.begin(), c.end());
    return LatticeVector(Side::M, std::move(v));
}

// <m, p>: the duality pairing M_Q x N_Q -> Q. Arguments may come in either
// order; they must live on opposite sides and have equal rank.
Rat pairing(const VectorQ& a, const VectorQ& b);
Rat pairing(const LatticeVector& a, const LatticeVector& b);
Rat pairing(const LatticeVector& a, const VectorQ& b);
Rat pairing(const VectorQ& a, const LatticeVector& b);

// gcd of coordinates is 1; throws on the zero vector.
bool is_primitive(const LatticeVector& v);

// v / gcd(coords); throws on zero. Sign of v is kept.
LatticeVector primitive_part(const LatticeVector& v);

// Scales a rational vector to its primitive integral representative along
// the same ray (positive multiple).
LatticeVector primitive_part(const VectorQ& v);

Int coord_gcd(const std::vector<Int>& c);

// ---------------------------------------------------------------------------
// Exact integer linear algebra (row-major matrices over Z).

using IntMat = std::vector<std::vector<Int>>;

// Row-style Hermite normal form: unique canonical basis of the row lattice.
// Pivots positive, entries above a pivot reduced into [0, pivot), zero rows
// dropped.
IntMat hnf_rows(IntMat a);

struct SmithDecomposition {
    IntMat u;       // unimodular, rows x rows
    IntMat s;       // diagonal, s = u * a * v
    IntMat v;       // unimodular, cols x cols
    int rank = 0;
};

SmithDecomposition smith_normal_form(const IntMat& a);

// Basis of {x in Z^n : a x = 0}, HNF-canonical rows.
IntMat integral_kernel_basis(const IntMat& a);

int rank_of(const IntMat& a);

// Exact solution set of <e, rows[i]> = targets[i] over the integral lattice M.
struct SolvePairingsResult {
    enum class Kind { Unique, Family, NoIntegralSolution, Inconsistent };
    Kind kind;
    std::optional<LatticeVector> particular;      // Unique / Family
    std::vector<LatticeVector> kernel_basis;      // Family only
};

SolvePairingsResult solve_pairings(const std::vector<LatticeVector>& rows,
                                   const std::vector<Rat>& targets);

// Completes the rows of `sat` (a basis of a saturated sublattice of Z^n) to a
// basis of Z^n; the returned matrix has the given rows first.
IntMat complete_to_basis(const IntMat& sat, int n);

}  // namespace tvarsl2
