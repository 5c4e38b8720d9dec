#pragma once

#include <string>

#include <json.hpp>

#include "dweak/convergence.hpp"
#include "dweak/functional.hpp"
#include "dweak/oracle.hpp"
#include "dweak/point.hpp"
#include "dweak/sequence.hpp"
#include "dweak/space.hpp"

namespace dweak {

using Json = nlohmann::ordered_json;

// Every *_from_json throws ParseError naming the JSON pointer `at` of the
// offending value. Unknown keys are rejected.

Json to_json(const Point& x);
Point point_from_json(const Json& j, const std::string& at = "");

Json to_json(const Space& s);
Space space_from_json(const Json& j, const std::string& at = "");

/// Functionals serialize without their space; the space is supplied on read.
Json to_json(const MetricFunctional& h);
MetricFunctional functional_from_json(const Space& space, const Json& j,
                                      const std::string& at = "");

Json to_json(const SequenceSpec& seq);
SequenceSpec sequence_from_json(const Space& space, const Json& j, const std::string& at = "");

Json to_json(const Verdict& v);
Json to_json(const LambdaEstimate& e);
Json to_json(const RegionDescriptor& d);
Json to_json(const GlidingHump& g);
Json to_json(const UniformConvexityReport& r);
Json to_json(const DiscreteClassification& c);
Json to_json(const DistanceBoundReport& r);
Json to_json(const CompactificationTable& t);
Json to_json(const DiagonalResult& d);
Json to_json(const PropertyReport& r);
Json to_json(const ValidationReport& r);

/// Parses text, mapping syntax errors to ParseError with line and column.
Json parse_json_text(const std::string& text, const std::string& source = "");

}  // namespace dweak
