#pragma once

#include <json.hpp>

#include "saatsp/instances.hpp"
#include "saatsp/moment.hpp"
#include "saatsp/report.hpp"
#include "saatsp/sa_lift.hpp"

namespace saatsp {

using Json = nlohmann::ordered_json;

Json to_json(const Decomposition& d);
Json to_json(const SplitInstance& s);
Json to_json(const PqDecomposition& d);
/// Decomposition sidecar for `gen`: kind plus the fields of whichever decomposition the instance has.
Json decomposition_sidecar(const BuiltInstance& inst);

/// {"level", "ground_size", "sparse", "entries": {"<sorted ids, comma-joined>": "p/q"}}.
Json to_json(const MomentVector& y);
/// Inverse of to_json; throws ParseError on malformed input.
MomentVector moment_from_json(const Json& j);

Json to_json(const SaVerdict& v);
/// Exact fractions plus 6-place decimal renderings marked approx.
Json to_json(const RatioReport& r);

}  // namespace saatsp
