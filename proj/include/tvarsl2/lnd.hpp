#pragma once

#include <variant>

#include "tvarsl2/ratfunc.hpp"

namespace tvarsl2 {

// coeff(t) * chi^m * t^t_exp. Canonical form folds every integer power of t
// into coeff, so t_exp is the fractional part (denominator = the d of the
// computation at hand).
class GradedTerm {
public:
    GradedTerm(RationalFunction coeff, LatticeVector m, Rat t_exp);
    static GradedTerm monomial(const LatticeVector& m, long t_power);
    static GradedTerm zero(int rank);

    const RationalFunction& coeff() const { return coeff_; }
    const LatticeVector& m() const { return m_; }
    const Rat& t_exp() const { return t_exp_; }
    bool is_zero() const { return coeff_.is_zero(); }

    GradedTerm operator*(const GradedTerm& o) const;
    GradedTerm operator-(const GradedTerm& o) const;  // requires matching (m, t_exp)
    GradedTerm scaled(const Rat& k) const;

    // (m, t-weight) when coeff is a single t-monomial c*t^k
    std::optional<std::pair<LatticeVector, Rat>> homogeneous_degree() const;

    bool operator==(const GradedTerm& o) const {
        return coeff_ == o.coeff_ && m_ == o.m_ && t_exp_ == o.t_exp_;
    }

private:
    RationalFunction coeff_;
    LatticeVector m_;
    Rat t_exp_;
};

// Coloring of a proper sigma-polyhedral divisor (one chosen vertex per point
// of C', a marked point z0, the degree vertex, and the associated cones).
struct Coloring {
    PolyhedralDivisor divisor;
    std::optional<CurvePoint> z_inf;       // set iff curve is P1
    std::map<CurvePoint, VectorQ> chosen;  // colored vertices on C' support (+ z0)
    CurvePoint z0;

    // derived
    Int d;
    VectorQ v_deg;
    Cone omega;        // cone over deg D|C' - v_deg, in N
    Cone omega_tilde;  // associated cone in (N + Z)_Q

    VectorQ chosen_vertex(const CurvePoint& z) const;  // 0 off the support
};

Coloring make_coloring(const PolyhedralDivisor& divisor, const std::optional<CurvePoint>& z_inf,
                       const std::map<CurvePoint, VectorQ>& chosen, const CurvePoint& z0);

struct ValidationItem {
    std::string condition;
    bool pass;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationItem> items;
    bool all_pass() const;
};

ValidationReport validate_coloring(const Coloring& c);

struct CoherentPair {
    Coloring coloring;
    LatticeVector e;  // the degree of the candidate derivation
    Rat s;            // -1/d - v_{z0}(e)
};

CoherentPair make_coherent_pair(Coloring coloring, const LatticeVector& e);

ValidationReport validate_coherent(const CoherentPair& cp);

// partial_{e,phi}(f chi^m) = <m, rho_e> phi f chi^{m+e}
struct FiberLND {
    PolyhedralDivisor divisor;
    Root root;              // e with distinguished ray on the tail cone
    RationalFunction phi;   // in Phi*_e: div(phi) + D(e) >= 0
};

FiberLND make_fiber_lnd(const PolyhedralDivisor& divisor, const LatticeVector& e,
                        const RationalFunction& phi);

// Horizontal derivation in the normalized chart z0 = 0, z_inf = infinity,
// with the non-marked colored vertices realized as the cocycle
// phi^m = prod_z (t - z)^{-<m, v_z>}.
struct HorizontalLND {
    CoherentPair pair;
    LatticeVector e_deg;                      // signed degree of the derivation
    Int d;
    VectorQ v0;                               // colored vertex at the marked point
    Rat s;                                    // -1/d - <e_deg, v0>
    std::map<Rat, LatticeVector> cocycle;     // finite point -> exponent vector

    RationalFunction phi_power(const LatticeVector& m) const;  // phi^m
    RationalFunction alpha(const LatticeVector& m) const;      // t dln(phi^m)/dt
};

HorizontalLND make_horizontal_lnd(const CoherentPair& pair);

class HomogeneousLND {
public:
    explicit HomogeneousLND(FiberLND f);
    explicit HomogeneousLND(HorizontalLND h);

    bool is_fiber() const { return std::holds_alternative<FiberLND>(data_); }
    const FiberLND& fiber() const { return std::get<FiberLND>(data_); }
    const HorizontalLND& horizontal() const { return std::get<HorizontalLND>(data_); }
    const LatticeVector& degree() const { return degree_; }
    const PolyhedralDivisor& divisor() const;

private:
    std::variant<FiberLND, HorizontalLND> data_;
    LatticeVector degree_;
};

GradedTerm apply(const HomogeneousLND& lnd, const GradedTerm& x);

struct NilpotencyResult {
    bool reached_zero;
    int index;  // least n with lnd^n x = 0 when reached_zero
};

NilpotencyResult iterate_to_zero(const HomogeneousLND& lnd, const GradedTerm& x, int bound);

struct KernelCone {
    Cone cone;              // fiber: tau_e; horizontal: omega dual
    IntMat lattice_basis;   // rows: basis of the sublattice L of M
};

KernelCone kernel_cone(const HomogeneousLND& lnd);

bool kernels_intersect_trivially(const HorizontalLND& a, const HorizontalLND& b);

struct CommutatorResult {
    bool diagonal;
    std::optional<LatticeVector> p;   // downgrading covector when diagonal
    std::optional<GradedTerm> witness;  // probe where diagonality fails
    std::string detail;
};

CommutatorResult commutator(const HomogeneousLND& plus, const HomogeneousLND& minus,
                            const std::vector<GradedTerm>& probes);

// Default probes: Hilbert-basis degrees of sigma-dual (semigroup generators
// when sigma-dual is not pointed), realized as section-generator terms, with
// t-powers 0 and 1 where the curve allows.
std::vector<GradedTerm> default_probes(const PolyhedralDivisor& divisor, bool include_t);

}  // namespace tvarsl2
