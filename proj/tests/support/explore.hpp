#pragma once

// Breadth-first exploration of small container states. Every path is
// replayed from a fresh object, so a found path is a self-contained
// scenario.

#include "mbc/contracts.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mbc::testing {

struct Step {
    std::string routine;
    /// One entry per parameter: the integer, or a shape index for references.
    std::vector<std::int64_t> args;
};

using Path = std::vector<Step>;

std::string describe(const Path& path);

struct ExploreOptions {
    std::string class_name;
    SpecLevel level = SpecLevel::strong;
    std::set<std::string, std::less<>> bugs;
    /// States with more elements are not expanded.
    int max_size = 4;
    int alphabet = 2;
    std::size_t max_states = 5000;
};

struct ExploreResult {
    std::size_t states = 0;
    std::uint64_t calls = 0;
    /// First path whose last call satisfied the stop predicate.
    std::optional<Path> found;
    CallOutcome found_outcome;
};

/// Stops at the first step whose outcome satisfies `stop`. Steps that are
/// invalid or violate something are never extended.
ExploreResult explore(const ExploreOptions& options, const std::function<bool(const CallOutcome&)>& stop);

/// Replays `path` on a fresh object; returns the outcome of every step.
std::vector<CallOutcome> replay(const std::string& class_name, SpecLevel level,
                                const std::set<std::string, std::less<>>& bugs, const Path& path);

} // namespace mbc::testing
