#pragma once

// Paired comparison of weak-level and strong-level session reports.

#include "mbc/harness/session.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace mbc::harness {

/// Two sessions that share class, seed, budget and bugs. `weak` is the
/// first column of a manifest line and `strong` the second.
struct ReportPair {
    SessionReport weak;
    SessionReport strong;
};

/// Reads a manifest of "weak_path strong_path" lines. Relative paths are
/// resolved against the manifest's directory; '#' starts a comment.
std::vector<ReportPair> read_manifest(const std::string& path);

/// Identity used for the partition: the matched bug id, or class.routine.
std::string fault_identity(const FaultRecord& f);

/// Throws ConfigError when a pair does not match.
nlohmann::ordered_json compare_sessions(const std::vector<ReportPair>& pairs, std::size_t checkpoints = 20);

} // namespace mbc::harness
