#pragma once

// Bounded completeness probe: does a routine's postcondition plus frame
// determine a unique abstract post-state for every valid pre-state?

#include "mbc/contracts.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mbc {

/// Model-query values of one object, or Void.
struct AbstractState {
    std::map<std::string, ModelValue, std::less<>> queries;
    bool is_void = false;

    static AbstractState void_state() { return AbstractState{{}, true}; }
    std::string to_string() const;
};

/// Finite candidate sets for every role of a routine.
struct ProbeDomain {
    struct Arg {
        Param::Kind kind = Param::Kind::integer;
        std::vector<AbstractState> pre;   // references
        std::vector<AbstractState> post;  // references
        std::vector<ModelValue> values;   // integers
    };
    std::vector<AbstractState> target_pre;
    std::vector<AbstractState> target_post;
    std::vector<Arg> args;
    /// Candidate results for functions; ignored for procedures.
    std::vector<ModelValue> results;
};

struct ProbeWitness {
    std::string pre_state;
    /// Up to two admitted post-states; empty means unsatisfiable.
    std::vector<std::string> post_states;
    bool unsatisfiable() const { return post_states.empty(); }
};

struct ProbeResult {
    bool complete = false;
    std::optional<ProbeWitness> witness;
    std::size_t pre_states_checked = 0;
};

/// Checks every pre-state that satisfies the precondition. Returns the first
/// pre-state admitting zero or several post-states as the witness.
/// Throws ConfigError when the domain is empty.
ProbeResult completeness_probe(const ClassSpec& cls, const RoutineSpec& routine, const ProbeDomain& domain);

} // namespace mbc
