#pragma once

// JSON file formats. Rationals are canonical lowest-term strings, complex
// numbers are [re, im] pairs.

#include <json.hpp>

#include <string>

#include "torelli_lab/ivhs_synth.hpp"
#include "torelli_lab/plumb.hpp"
#include "torelli_lab/ramlocus.hpp"
#include "torelli_lab/torelli.hpp"

namespace torelli::io {

using Json = nlohmann::json;

// Malformed documents raise DomainError.
Json surface_to_json(const WeierstrassSurface& s);
WeierstrassSurface surface_from_json(const Json& j);

Json divisor_to_json(const DivisorP1& d);

Json presentation_to_json(const IVHSPresentation& w);
IVHSPresentation presentation_from_json(const Json& j);

Json truth_to_json(const GroundTruth& t);
GroundTruth truth_from_json(const Json& j);

Json jet_to_json(const JetCoefficients& b);
JetCoefficients jet_from_json(const Json& j);

Json invariants_to_json(const Invariants& inv);
Json fibers_to_json(const FiberReport& r);
Json roundtrip_to_json(const RoundtripReport& r, bool with_timings);
Json geometry_to_json(const RecoveredGeometry& g);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

}  // namespace torelli::io
