#pragma once

#include <string>

#include <json.hpp>

#include "qga/approximation.hpp"
#include "qga/latin.hpp"
#include "qga/semigroup.hpp"

namespace qga {

inline constexpr int kSchemaVersion = 1;

nlohmann::json region_to_json(const CompactRegion& r);
CompactRegion region_from_json(const nlohmann::json& j);

nlohmann::json element_to_json(const GroupElement& g);
GroupElement element_from_json(const nlohmann::json& j);

/// {schema_version, model, C, U, side, n, table (row-major), embedding, report}.
nlohmann::json approximation_to_json(const FiniteLeftQuasigroup& q, const ApproximationProblem& p,
                                     const ApproximationReport& report);
/// Rebuilds the quasigroup and the problem from the artifact. Throws
/// std::runtime_error naming the offending field on malformed input.
std::pair<FiniteLeftQuasigroup, ApproximationProblem> approximation_from_json(
    const nlohmann::json& j);

nlohmann::json report_to_json(const ApproximationReport& r);

nlohmann::json latin_to_json(const LatinSquare& sq);
nlohmann::json semigroup_to_json(const FiniteSemigroup& s);
FiniteSemigroup semigroup_from_json(const nlohmann::json& j);

/// Writes via a temp file in the same directory plus rename, so readers
/// never observe a truncated artifact.
void atomic_write_file(const std::string& path, const std::string& contents);

std::string read_file(const std::string& path);

}  // namespace qga
