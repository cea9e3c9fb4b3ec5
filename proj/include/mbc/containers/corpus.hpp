#pragma once

// Registry of the container classes: specifications at both levels, object
// factories and bounded state enumerators for the completeness probe.

#include "mbc/completeness.hpp"
#include "mbc/containers/bugs.hpp"
#include "mbc/containers/container.hpp"
#include "mbc/contracts.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace mbc::containers {

const std::vector<std::string>& corpus_class_names();
bool is_corpus_class(std::string_view name);

/// Unbound specification of one class. Throws ConfigError for unknown names.
ClassSpec make_class_spec(std::string_view name, SpecLevel level);

/// Every corpus class at `level`, bound.
SpecSuite make_suite(SpecLevel level);

/// Default-constructed instance of `spec`'s class, owned by `engine`.
ContainerObject& create_object(Engine& engine, const ClassSpec& spec, BugTrace& bugs);

/// Candidate states for `routine` with sequences of length <= max_len over
/// the alphabet 1..alphabet. Throws ConfigError for classes without an
/// enumerator (BINARY_TREE) and for non-positive bounds.
ProbeDomain make_probe_domain(const ClassSpec& cls, const RoutineSpec& routine, int max_len, int alphabet);

} // namespace mbc::containers
