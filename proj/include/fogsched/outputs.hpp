#pragma once

#include <string>
#include <vector>

#include "fogsched/config.hpp"
#include "fogsched/oracle.hpp"
#include "fogsched/simulation.hpp"
#include "fogsched/types.hpp"

namespace fogsched {

// Canonical shortest-round-trip decimal formatting; keeps CSV output
// byte-stable for a given build.
std::string format_double(double x);

std::string slots_csv_text(const std::vector<RunRecord>& records);

// Writes slots_<tag>.csv. Throws std::runtime_error on empty input or I/O
// failure, naming the path.
void write_slots_csv(const std::string& dir, const std::string& tag,
                     const std::vector<RunRecord>& records);

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows);

void write_bounds_json(const std::string& path, const std::vector<oracle::BoundsReport>& reports);

// manifest.json: config hash, seed, and the full config for reproduction.
void write_manifest(const std::string& path, const NetworkConfig& cfg);

void ensure_dir(const std::string& dir);

} // namespace fogsched
