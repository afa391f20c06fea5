#pragma once

// JSON documents for every report. Integers are decimal strings and rationals
// "num/den" strings; each document carries a top-level "schema" field.

#include "qhl/density.hpp"
#include "qhl/witness.hpp"

#include <json.hpp>

namespace qhl {

using Json = nlohmann::json;

Json to_json(const Integer& n);
Json to_json(const Rational& q);
Json to_json(const BinaryQuarticForm& f);
Json to_json(const IntegerMatrix2x2& m);
Json to_json(const Point& p);
Json to_json(const InvariantData& d);
Json to_json(const ProjectiveRoot& r);
Json to_json(const SplitData& s);
Json to_json(const LocalCertificate& c);
Json to_json(const LocalReport& r);
Json to_json(const SolutionSet& s);
Json to_json(const GFamily& f);
Json to_json(const CorrespondenceReport& r);
Json to_json(const DensityInterval& d, unsigned digits);
Json to_json(const WitnessSpec& s);
Json to_json(const WitnessChecks& c);
Json to_json(const WitnessReport& r);

Integer integer_from_json(const Json& j);
Rational rational_from_json(const Json& j);
BinaryQuarticForm form_from_json(const Json& j);
Point point_from_json(const Json& j);
LocalCertificate certificate_from_json(const Json& j);
WitnessSpec witness_spec_from_json(const Json& j);

/// Independent re-verification of a witness report document: the checks on F, the
/// family forms, every member certificate and every listed solution.
struct RecheckResult {
    bool ok = true;
    std::vector<std::string> failures;
};

RecheckResult recheck_witness_report(const Json& report);

inline constexpr const char* kWitnessSchema = "qhl.witness/1";

}  // namespace qhl
