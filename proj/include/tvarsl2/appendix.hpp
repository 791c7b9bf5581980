#pragma once

#include "tvarsl2/lnd.hpp"

namespace tvarsl2 {
namespace appendix {

// Data for the delta(t) computation with marked points z0+ = 0 (coordinate t)
// and z0- = q^{-1}(0) (coordinate q). alpha_e = t dln(phi^e)/dt is a free
// instantiation of the cocycle's logarithmic derivative.
struct Commutator1Input {
    MobiusMap q;
    int d_plus;
    int d_minus;
    Rat v0p_e;                 // v_{0}^+(e)
    Rat v0m_e;                 // v_{z0^-}^-(e)
    RationalFunction alpha_e;  // logarithmic derivative of the formal phi^e
};

struct Commutator1Report {
    bool delta_t_matches_closed_form;  // derived delta(t) equals the displayed formula
    bool gamma_identically_zero;
    Polynomial gamma;                 // the bracket, cleared to a polynomial in t
    bool quadratic_matches_bracket;   // bracket == ac(2-l+)t^2 + (l- - l+(2bc+1) + 2bc)t - l+ b d
    std::string detail;
};

Commutator1Report verify_commutator1(const Commutator1Input& in);

struct Commutator2Report {
    bool matches_closed_form;  // double application equals (commutator-2) on all probes
    CommutatorResult commutator;
    std::string detail;
};

// Both derivations must live in the normalized chart (z0 = 0, z_inf = inf)
// with a common d; the minus side must carry a trivial cocycle.
Commutator2Report verify_commutator2(const HorizontalLND& plus, const HorizontalLND& minus,
                                     const std::vector<GradedTerm>& probes);

}  // namespace appendix
}  // namespace tvarsl2
