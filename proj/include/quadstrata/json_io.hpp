#pragma once

#include "quadstrata/signature.hpp"

#include <json.hpp>

namespace quadstrata {

using Json = nlohmann::ordered_json;

// All numbers serialize as strings ("p/q"), never as JSON numbers, so no
// reader can silently parse them as floating point.
Json to_json(const Rational& q);
Json to_json(const GaussianRational& z);
Json to_json(const StratumSignature& sig);
Json to_json(const RootedResidueConfig& config);

Rational rational_from_json(const Json& j);
GaussianRational gaussian_from_json(const Json& j);
StratumSignature signature_from_json(const Json& j);
RootedResidueConfig config_from_json(const Json& j, const StratumSignature& sig);
ComponentSelector component_from_json(const Json& j);

}  // namespace quadstrata
