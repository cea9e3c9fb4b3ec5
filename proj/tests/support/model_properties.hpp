#pragma once

// Exhaustive identities of the model library checked against plain vector
// computations.

#include <cstdint>
#include <string>
#include <vector>

namespace mbc::testing {

struct PropertyReport {
    std::uint64_t checks = 0;
    std::vector<std::string> counterexamples;
};

/// Every sequence of length <= max_len over 1..alphabet; pairs for the
/// binary identities use `pair_alphabet`.
PropertyReport run_model_properties(int max_len = 6, int alphabet = 3, int pair_alphabet = 2);

} // namespace mbc::testing
