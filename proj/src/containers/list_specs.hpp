#pragma once

// Routine specifications shared by the cursor list families
// (LINKED_LIST, TWO_WAY_LIST). Both levels are built from one set of
// precondition objects.

#include "mbc/contracts.hpp"
#include "spec_helpers.hpp"

#include <string>

namespace mbc::containers::detail {

struct ListPreconditions {
    PreconditionPtr not_after = pre("not after", [](const PredicateEnv& e) {
        return num(e, "index") <= seq(e).count();
    });
    PreconditionPtr not_before = pre("not before", [](const PredicateEnv& e) { return num(e, "index") >= 1; });
    PreconditionPtr writable = pre("writable", [](const PredicateEnv& e) {
        const auto i = num(e, "index");
        return 1 <= i && i <= seq(e).count();
    });
    PreconditionPtr valid_cursor_index = pre("valid_cursor_index (i)", [](const PredicateEnv& e) {
        const auto i = int_arg(e, 1);
        return 0 <= i && i <= seq(e).count() + 1;
    });
    PreconditionPtr other_not_void = pre("other /= Void", [](const PredicateEnv& e) { return !e.is_void(arg1); });
    PreconditionPtr other_not_current = pre("other /= Current", [](const PredicateEnv& e) {
        return e.id(arg1) != e.id(current);
    });
};

/// One instance shared by every cursor class and both levels.
const ListPreconditions& list_pre();

/// Model queries, the index invariant and the cursor routines (start,
/// finish, forth, back, go_i_th, wipe_out, has, item, count).
void add_cursor_core(ClassSpec& cls, SpecLevel level, std::vector<InvariantClause> repr_invariants);

/// Adds model queries, invariants and routine specs of a cursor list.
/// `repr_invariants` are the representation constraints of the concrete
/// class (strong level only). `two_way` adds `put_left`.
void add_cursor_list_spec(ClassSpec& cls, SpecLevel level, std::vector<InvariantClause> repr_invariants,
                          bool two_way);

} // namespace mbc::containers::detail
