#pragma once

#include <json.hpp>

#include "tvarsl2/threefold.hpp"

namespace tvarsl2 {

using Json = nlohmann::json;

Json vec_to_json(const LatticeVector& v);
Json vec_to_json(const VectorQ& v);
LatticeVector lattice_vec_from_json(const Json& j, Side side);
VectorQ qvec_from_json(const Json& j, Side side);

Json cone_to_json(const Cone& c);
Cone cone_from_json(const Json& j);

Json point_to_json(const CurvePoint& z);
CurvePoint point_from_json(const Json& j);

Json qdivisor_to_json(const QDivisor& d);
QDivisor qdivisor_from_json(const Json& j);

Json divisor_to_json(const PolyhedralDivisor& d);
PolyhedralDivisor divisor_from_json(const Json& j);

Json ratfunc_to_json(const RationalFunction& f);
RationalFunction ratfunc_from_json(const Json& j);

Json mobius_to_json(const MobiusMap& m);

Json term_to_json(const GradedTerm& t);
GradedTerm term_from_json(const Json& j);

Json lnd_to_json(const HomogeneousLND& lnd);
HomogeneousLND lnd_from_json(const Json& j, const PolyhedralDivisor& divisor);

Json validation_to_json(const ValidationReport& r);
Json descriptor_to_json(const SL2ActionDescriptor& a);
Json threefold_to_json(const ThreefoldDescriptor& x);
Json special_to_json(const SpecialAction& s);

// canonical bytes: sorted keys, two-space indent, trailing newline
std::string canonical_dump(const Json& j);

}  // namespace tvarsl2
