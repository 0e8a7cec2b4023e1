#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "distance.hpp"
#include "height_bounds.hpp"
#include "interpolation.hpp"
#include "morphism.hpp"
#include "numerics.hpp"
#include "projective.hpp"

namespace hdist {

using Json = nlohmann::ordered_json;

// Decimal endpoints rounded outward, so the printed interval still encloses.
Json to_json(const HeightInterval& h);
Json to_json(const ProjPoint& p);
Json to_json(const Morphism& phi);
Json to_json(const OffsetCertificate& cert);
Json to_json(const DistanceEstimate& e);

std::string lower_text(const Dyadic& v);
std::string upper_text(const Dyadic& v);

// {"N": 1, "d": 2, "coords": ["x^2", "y^2"]}
Morphism morphism_from_json(const Json& j);
OffsetCertificate certificate_from_json(const Morphism& phi, const Json& j);
std::vector<PointValue> pairs_from_json(const Json& j);

// A map given as JSON text, "power:N,d", "phi-a:d,A", or coordinates
// separated by ':' such as "x^2 + y^2 : x*y" (degree inferred).
Morphism parse_map(std::string_view text);

}  // namespace hdist
