#pragma once

#include "tvarsl2/sl2.hpp"

namespace tvarsl2 {

enum class ThreefoldFamily { A1Homogeneous, A1Cone, P1Family };

inline const char* family_name(ThreefoldFamily f) {
    switch (f) {
        case ThreefoldFamily::A1Homogeneous: return "A1-homogeneous";
        case ThreefoldFamily::A1Cone: return "A1-cone";
        default: return "P1";
    }
}

struct ThreefoldInvariants {
    Int r_x;
    std::optional<Rat> slope;   // absent for homogeneous spaces
    std::optional<Rat> height;  // absent for homogeneous spaces
    int n_x;                    // orbit count from the table; unproved metadata
    bool homogeneous;
    bool toric;
};

struct ThreefoldDescriptor {
    ThreefoldFamily family;
    Int r;
    std::optional<Rat> a;  // P1 family only
    PolyhedralDivisor divisor;
    SL2ActionDescriptor action;  // the horizontal action, e = (1,-1) orientation
    ThreefoldInvariants invariants;
};

// The table divisor: Delta_0 = conv(0,(1,0)) + sigma, Delta_1 = conv(0,(r-1,r)) + sigma,
// and on P1 additionally Delta_inf = (a,a) + sigma.
PolyhedralDivisor threefold_divisor(ThreefoldFamily f, const Int& r, const std::optional<Rat>& a);

ThreefoldDescriptor build_threefold(ThreefoldFamily f, const Int& r,
                                    const std::optional<Rat>& a = std::nullopt);

std::optional<ThreefoldDescriptor> recognize(const PolyhedralDivisor& divisor);

// order of the cyclic generic stabilizer, by bounded weight enumeration
Int stabilizer_order(const ThreefoldDescriptor& x);

Rat slope(const ThreefoldDescriptor& x);   // throws for homogeneous spaces
Rat height(const ThreefoldDescriptor& x);  // two independent routes, must agree
Rat height_from_slope(const Int& r, const Rat& hbar);

struct ToricityReport {
    bool a_integral;        // a in Z (P1 family)
    bool slope_criterion;   // hbar = p/(p+1), p positive integer
    bool height_criterion;  // h = p/q lowest terms and (q - p) | r
    bool divisor_toric;     // divisor-level toric_form exists
    bool agree;
    bool toric;
};

ToricityReport is_toric_threefold(const ThreefoldDescriptor& x);

}  // namespace tvarsl2
