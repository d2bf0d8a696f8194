#pragma once

#include <string>

#include <json.hpp>

#include "funceq/beck.hpp"
#include "funceq/extract.hpp"
#include "funceq/residuals.hpp"
#include "funceq/verify.hpp"

namespace funceq {

using json = nlohmann::ordered_json;

json to_json(const ResidualReport& r);
json to_json(const InequalityReport& r);
json to_json(const HsReport& r);
json to_json(const BeckSequence& s);
json to_json(const JumpIndex& j);
json to_json(const GapBound& g);
json to_json(const ClassificationResult& c);
json to_json(const TheoremReport& t);

/// Serialize with every floating-point number printed at 17 significant
/// digits (round-trip exact), so identical results serialize identically.
/// Non-finite numbers become null. `indent` < 0 means compact.
std::string dump_json_17(const json& j, int indent = 2);

} // namespace funceq
