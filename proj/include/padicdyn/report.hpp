#pragma once

#include <json.hpp>

#include "padicdyn/ergodicity.hpp"
#include "padicdyn/errors.hpp"
#include "padicdyn/verify.hpp"

namespace padicdyn {

using Json = nlohmann::ordered_json;

// Structured report fragments. Rationals and radii are written as strings that
// parse_rational / parse_radius read back to equal values.
Json to_json(const CanonicalMap& f);
Json to_json(const NormCase& nc, const Prime& p);
Json to_json(const ClassificationReport& r, const Prime& p);
Json to_json(const StepOutcome& s, const Prime& p);
Json to_json(const NormTrace& t, const NormCase& nc, const Prime& p);
Json to_json(const PreimageRoot& root, const Prime& p);
Json to_json(const NonErgodicWitness& w, const Prime& p);
Json to_json(const Mod4Result& m);
Json to_json(const ErgodicityVerdict& v);
Json to_json(const EquidistributionReport& e);
Json to_json(const SuiteResult& s);
Json to_json(const PeriodicOrbit& o);

/// "ball=<residue> count=<n> freq=<rational>" per unit residue class.
std::vector<std::string> histogram_lines(const EquidistributionReport& e);

Json error_json(const DomainError& e);

}  // namespace padicdyn
