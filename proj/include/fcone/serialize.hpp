#pragma once

#include <map>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fcone/feasibility.hpp"
#include "fcone/kmaps.hpp"
#include "fcone/logfano.hpp"
#include "fcone/mcurves.hpp"
#include "fcone/strata.hpp"

namespace fcone {

using Json = nlohmann::ordered_json;

// Rationals travel as "p/q" strings. JSON integers are accepted on input;
// floating-point numbers are rejected.
Rational rational_from_json(const Json& j);

/// {"m":5, "psi":{"5":"3"}, "delta":{"4,5":"1", ...}}. "psi" holds the
/// singleton-key coefficients c_{i}, i.e. the class -c_{i} psi_i. Delta keys
/// may be given by either side; output uses canonical keys.
Json to_json(const MDivisor& h);
MDivisor mdivisor_from_json(const Json& j);

/// {"n":5, "L":{"1":"-2", ...}, "B":{"1,2":"1/4", ...}}. The shorthand
/// {"n":5, "K":true, "a":{"2":"1/4", ...}} means K_n + sum a_s B[s]; it may be
/// combined with explicit "L"/"B" terms, which are added on top.
Json to_json(const KDivisor& h);
KDivisor kdivisor_from_json(const Json& j);

Json to_json(const BoundaryCombo& combo);

Json to_json(const LinearForm& f);
LinearForm linear_form_from_json(const Json& j);

/// {"status":"infeasible", "multipliers":[{"form":0,"lambda":"1/3"}, ...], "forms":[...]}
/// or {"status":"feasible", "point":{"2":"1/4", ...}, "forms":[...]}.
Json to_json(const FeasibilityResult& r);
FeasibilityResult feasibility_from_json(const Json& j);

Json to_json(const FValue& v);
Json to_json(const AmpDecision& d);
Json to_json(const ChsDecision& d);
Json to_json(const WitnessReport& r);
Json to_json(const Constraint& c);
Json to_json(const DivisorCorrespondence& c);

/// "a4=1", "2=1/4,4=1/4,5=1" (the leading 'a' is optional).
std::map<int, Rational> parse_combo_spec(std::string_view spec);
/// "a4>=0,a6<=1".
std::vector<Bound> parse_bounds_spec(std::string_view spec);
std::string to_string(const Bound& b);

}  // namespace fcone
