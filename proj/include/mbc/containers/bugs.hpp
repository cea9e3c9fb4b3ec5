#pragma once

// Seeded-fault catalog and the runtime trace of which faults actually
// deviated from correct behavior during a run.

#include "mbc/contracts.hpp"

#include <nlohmann/json.hpp>

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mbc::containers {

/// Which specification level is expected to expose a seeded fault.
enum class Detectability { weak_and_strong, strong_only, weak_only, neither };

std::string to_string(Detectability d);

struct BugEntry {
    std::string id;
    std::string class_name;
    std::string routine;
    std::string description;
    Detectability detectability = Detectability::strong_only;
    /// Clause expected to fire under the strong level (empty if none).
    std::string strong_clause;
    /// Clause expected to fire under the weak level (empty if none).
    std::string weak_clause;
};

class BugCatalog {
public:
    static const BugCatalog& standard();

    const std::vector<BugEntry>& entries() const { return entries_; }
    const BugEntry* find(std::string_view id) const;
    std::vector<std::string> ids() const;
    std::vector<std::string> ids_for_class(std::string_view class_name) const;

    nlohmann::json to_json() const;

private:
    explicit BugCatalog(std::vector<BugEntry> entries);
    std::vector<BugEntry> entries_;
};

struct BugFiring {
    std::string id;
    std::uint64_t call_ordinal = 0;
    ObjectId object;
};

/// Enabled fault switches plus the log of deviations, one per session.
class BugTrace {
public:
    BugTrace() = default;
    explicit BugTrace(std::set<std::string, std::less<>> enabled) : enabled_(std::move(enabled)) {}

    void attach(const Engine& engine) { engine_ = &engine; }
    bool enabled(std::string_view id) const { return enabled_.contains(id); }
    void fire(std::string_view id, ObjectId object);

    const std::vector<BugFiring>& firings() const { return firings_; }
    const std::set<std::string, std::less<>>& enabled_ids() const { return enabled_; }

private:
    std::set<std::string, std::less<>> enabled_;
    std::vector<BugFiring> firings_;
    const Engine* engine_ = nullptr;
};

} // namespace mbc::containers
