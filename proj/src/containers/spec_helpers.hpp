#pragma once

// Shorthands for writing container specifications.

#include "mbc/contracts.hpp"

#include <memory>
#include <string>

namespace mbc::containers::detail {

inline constexpr Role current = Role::target();
inline constexpr Role arg1 = Role::arg(1);
inline constexpr Role arg2 = Role::arg(2);

inline PreconditionPtr pre(std::string name, Predicate holds) {
    return std::make_shared<const Precondition>(Precondition{std::move(name), std::move(holds)});
}

inline Postcondition post(std::string name, Predicate holds) {
    Postcondition p;
    p.name = std::move(name);
    p.holds = std::move(holds);
    return p;
}

inline InvariantClause invariant(std::string name, std::function<bool(const InvariantContext&)> holds,
                                 InvariantKind kind = InvariantKind::model_constraint,
                                 std::vector<std::string> depend = {}) {
    return InvariantClause{std::move(name), std::move(holds), std::move(depend), kind, false};
}

inline Sequence seq(const PredicateEnv& e, Role r = current) { return e.model(r, "sequence").as_sequence(); }
inline Sequence old_seq(const PredicateEnv& e, Role r = current) { return e.old(r, "sequence").as_sequence(); }
inline std::int64_t num(const PredicateEnv& e, std::string_view q, Role r = current) {
    return e.model(r, q).as_integer();
}
inline std::int64_t old_num(const PredicateEnv& e, std::string_view q, Role r = current) {
    return e.old(r, q).as_integer();
}
inline std::int64_t int_arg(const PredicateEnv& e, int k) { return e.arg(k).as_integer(); }

inline std::vector<ModifyEntry> modify(std::initializer_list<const char*> target_queries) {
    std::vector<ModifyEntry> m;
    for (const char* q : target_queries) m.push_back(ModifyEntry{current, q});
    return m;
}

inline RoutineSpec routine(std::string name, std::vector<Param> params = {}, ResultKind result = ResultKind::none) {
    RoutineSpec r;
    r.name = std::move(name);
    r.params = std::move(params);
    r.result = result;
    return r;
}

} // namespace mbc::containers::detail
