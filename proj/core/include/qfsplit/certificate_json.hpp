#pragma once

#include "qfsplit/criteria.hpp"

#include <json.hpp>

namespace qfsplit {

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json polynomials_to_json(const std::vector<Polynomial>& polys);
nlohmann::json certificate_to_json(const Certificate& c);

/// {schema_version, verdict, n, route, certificate: {kind, data}, steps,
/// wall_time_ms, diagnostic}. Timing is omitted when include_timing is false
/// so that reports are byte-stable.
nlohmann::json result_to_json(const HeightResult& r, bool include_timing = true);

/// One-line human summary, e.g. "height 3 (local_chain)".
std::string describe(const HeightResult& r);

}  // namespace qfsplit
