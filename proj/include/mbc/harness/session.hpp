#pragma once

// Seeded random testing sessions over the container corpus.

#include "mbc/containers/bugs.hpp"
#include "mbc/contracts.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mbc::harness {

struct SessionConfig {
    std::string class_name;
    SpecLevel level = SpecLevel::strong;
    std::uint64_t seed = 0;
    /// Exactly one budget kind is set.
    std::optional<std::uint64_t> max_calls;
    std::optional<double> wall_secs;
    double p_new = 0.1;
    /// Element arguments are drawn uniformly from 1..alphabet.
    int alphabet = 4;
    std::size_t max_pool = 12;
    /// Objects whose size exceeds this are retired from the pool.
    std::int64_t max_object_size = 48;
    std::vector<std::string> bugs;
    std::string report_path;

    /// Throws ConfigError.
    void validate() const;

    nlohmann::ordered_json to_json() const;
    static SessionConfig from_json(const nlohmann::json& j);
};

enum class Classification { real, inconsistency, specification_suspect };

std::string to_string(Classification c);
Classification parse_classification(std::string_view text);

struct FaultRecord {
    std::string class_name;
    std::string routine;
    std::string clause;
    ViolationKind kind = ViolationKind::postcondition;
    Blame blame = Blame::callee;
    /// Index (1-based) of the generated call that first triggered it.
    std::uint64_t first_call = 0;
    double first_seconds = 0;
    std::uint64_t occurrences = 0;
    /// Bug matched at first detection.
    std::optional<std::string> bug_id;
    /// Every bug matched by a real-classified occurrence, sorted.
    std::vector<std::string> matched_bugs;
    Classification classification = Classification::real;

    std::string key() const;
};

struct SessionReport {
    SessionConfig config;
    std::uint64_t total_calls = 0;
    std::uint64_t valid_calls = 0;
    std::uint64_t invalid_calls = 0;
    std::uint64_t creations = 0;
    /// Top-level bodies executed, and how many of those belonged to calls
    /// later counted invalid (always 0 when the protocol is respected).
    std::uint64_t bodies_entered = 0;
    std::uint64_t invalid_bodies = 0;
    double elapsed_seconds = 0;
    std::vector<FaultRecord> faults;
    /// (call index, cumulative unique faults) at each new detection.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> faults_over_time;
    std::map<std::string, std::uint64_t> bug_firings;

    double calls_per_second() const { return elapsed_seconds > 0 ? total_calls / elapsed_seconds : 0.0; }
    const FaultRecord* find(std::string_view key) const;
    std::size_t count(Classification c) const;

    /// Deterministic summary: no wall-clock quantities.
    nlohmann::ordered_json summary_json() const;
    /// Wall-clock quantities, kept apart so summaries stay reproducible.
    nlohmann::ordered_json timing_json() const;
    static SessionReport from_json(const nlohmann::json& summary, const nlohmann::json* timing = nullptr);
};

/// One line of the event log.
struct SessionEvent {
    std::uint64_t call = 0;
    Violation violation;
    Classification classification = Classification::real;
    std::optional<std::string> bug_id;
    bool new_fault = false;

    nlohmann::ordered_json to_json() const;
};

/// Runs one session. `events` receives every violation in order.
SessionReport run_session(const SessionConfig& config, std::vector<SessionEvent>* events = nullptr);

/// Runs independent sessions on `threads` worker threads; results keep the
/// order of `configs`.
std::vector<SessionReport> run_sessions(const std::vector<SessionConfig>& configs, unsigned threads);

/// Writes `<path>` (summary), `<path>.events.jsonl` and `<path>.timing.json`.
void write_report(const SessionReport& report, const std::vector<SessionEvent>& events, const std::string& path);
/// Reads a summary and, when present, its timing sidecar.
SessionReport read_report(const std::string& path);

} // namespace mbc::harness
