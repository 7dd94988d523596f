#pragma once

#include <json.hpp>

#include "qrec/alpha.hpp"
#include "qrec/counting.hpp"
#include "qrec/grover.hpp"
#include "qrec/newton.hpp"
#include "qrec/orbit_sets.hpp"
#include "qrec/period_finding.hpp"

namespace qrec {

/// JSON views of the result records. Key order is fixed (ordered_json) so a
/// run is byte-reproducible; volatile data (wall clock) lives in a single
/// "timestamp" field callers may add and strip.
using json = nlohmann::ordered_json;

json to_json(const GateStats& s);
json to_json(const MeasurementRecord& r);
json to_json(const LatticePoint& p);
json to_json(const LatticeMapSpec& spec);
json to_json(const AlphaResult& r);
json to_json(const ReturnSet& r);
json to_json(const PeriodicSet& r);
json to_json(const PeriodResult& r);
json to_json(const SearchResult& r);
json to_json(const CountResult& r);
json to_json(const NewtonResult& r);

}  // namespace qrec
