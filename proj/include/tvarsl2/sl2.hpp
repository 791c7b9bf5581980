#pragma once

#include "tvarsl2/appendix.hpp"

namespace tvarsl2 {

enum class ActionKind { Toric, FiberType, HorizontalType };
enum class Effectiveness { SL2Effective, PSL2Effective };

inline const char* action_kind_name(ActionKind k) {
    switch (k) {
        case ActionKind::Toric: return "toric";
        case ActionKind::FiberType: return "fiber";
        default: return "horizontal";
    }
}

struct NormalizationRecord {
    std::optional<MobiusMap> mobius;             // support renaming applied first
    std::map<CurvePoint, LatticeVector> shifts;  // admissible shift applied second
};

// Classification certificate: the sl2-triple is (delta, partial_plus,
// partial_minus) with delta = [partial_plus, partial_minus] acting as <m, p>.
struct SL2ActionDescriptor {
    ActionKind kind;
    LatticeVector e;
    LatticeVector p;
    Effectiveness effectiveness;
    HomogeneousLND partial_plus;
    HomogeneousLND partial_minus;
    PolyhedralDivisor divisor;        // normalized model the LNDs act on
    std::optional<Cone> toric_cone;   // the defining cone for kind == Toric
    NormalizationRecord normalization;
    LatticeVector conjugacy_key;      // canonical representative of {e, -e}
};

Effectiveness effectiveness_of(const LatticeVector& p);

std::vector<SL2ActionDescriptor> classify_toric(const Cone& sigma);
// representative selection for cones whose rays do not span
SL2ActionDescriptor classify_toric_representative(const Cone& sigma, const LatticeVector& e);

std::vector<SL2ActionDescriptor> classify_fiber(const PolyhedralDivisor& divisor);

std::vector<SL2ActionDescriptor> classify_horizontal(const PolyhedralDivisor& divisor,
                                                     int family_window = 64);

struct TripleReport {
    ValidationReport checks;
    CommutatorResult commutator;
    bool all_pass() const { return checks.all_pass(); }
};

TripleReport verify_sl2_triple(const SL2ActionDescriptor& a, const std::vector<GradedTerm>& probes);
TripleReport verify_sl2_triple(const SL2ActionDescriptor& a);  // default probes

struct SpecialnessReport {
    bool special;
    std::string reason;
};

SpecialnessReport is_special(const SL2ActionDescriptor& a);

struct SpecialAction {
    Int r;
    QDivisor h;                  // the ample class on P1
    PolyhedralDivisor divisor;   // Delta * H with Delta = (1,1) + sigma
    SL2ActionDescriptor descriptor;
    std::string u_invariant_grading;  // K[X]^{U+} description
    std::string generic_isotropy;     // U_(r)
};

SpecialAction build_special(const Int& r, const QDivisor& h);

// deterministic probe augmentation used under --verify
std::vector<GradedTerm> augment_probes(std::vector<GradedTerm> probes,
                                       const PolyhedralDivisor& divisor, unsigned long seed,
                                       int count);

}  // namespace tvarsl2
