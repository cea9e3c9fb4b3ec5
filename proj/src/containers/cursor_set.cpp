#include "mbc/containers/cursor_set.hpp"

#include "class_specs.hpp"
#include "list_specs.hpp"
#include "spec_helpers.hpp"

#include <algorithm>

namespace mbc::containers {

std::int64_t CursorSet::position_of(Item v) const {
    auto it = std::find(items_.begin(), items_.end(), v);
    return it == items_.end() ? 0 : (it - items_.begin()) + 1;
}

void CursorSet::extend(Item v) {
    if (position_of(v) == 0) {
        items_.push_back(v);
    } else if (bug("LS-3")) {
        items_.push_back(v);
        fire("LS-3");
    }
}

void CursorSet::remove(Item v) {
    const auto p = position_of(v);
    if (p == 0) return;
    items_.erase(items_.begin() + (p - 1));
    if (p < index_) {
        --index_;
    } else if (p == index_ && bug("LS-4")) {
        index_ = 0;
        fire("LS-4");
    }
}

void CursorSet::replace(Item v) {
    const auto p = position_of(v);
    auto& slot = items_.at(static_cast<std::size_t>(index_ - 1));
    if (p == 0 || p == index_) {
        slot = v;
    } else if (bug("SR-1")) {
        slot = v;
        fire("SR-1");
    } else {
        items_.erase(items_.begin() + (index_ - 1));
    }
}

std::optional<ModelValue> CursorSet::invoke(CallContext& ctx, std::string_view r, std::span<const ModelValue> args) {
    auto int_arg = [&](std::size_t k) { return args[k].as_integer(); };
    const auto n = count_attribute();

    if (r == "extend") {
        extend(int_arg(0));
    } else if (r == "remove") {
        remove(int_arg(0));
    } else if (r == "replace") {
        replace(int_arg(0));
    } else if (r == "start") {
        index_ = 1;
    } else if (r == "finish") {
        index_ = n;
    } else if (r == "forth") {
        ++index_;
    } else if (r == "back") {
        --index_;
    } else if (r == "go_i_th") {
        index_ = int_arg(0);
    } else if (r == "wipe_out") {
        items_.clear();
        index_ = 0;
    } else if (r == "has") {
        return mbool(position_of(int_arg(0)) != 0);
    } else if (r == "item") {
        return mint(items_.at(static_cast<std::size_t>(index_ - 1)));
    } else if (r == "count") {
        return mint(n);
    } else if (r == "is_equal") {
        auto* other = dynamic_cast<CursorSet*>(ctx.engine().find(args[0].as_object()));
        if (other == nullptr) throw std::invalid_argument("argument is not a set");
        auto a = items_;
        auto b = other->items_;
        const bool ordered = a == b;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        const bool same = a == b;
        if (bug("EQ-1")) {
            if (ordered != same) fire("EQ-1");
            return mbool(ordered);
        }
        return mbool(same);
    } else {
        unknown_routine(r);
    }
    return std::nullopt;
}

namespace detail {

namespace {
std::int64_t position_in(const Sequence& s, const ModelValue& v) {
    for (std::int64_t i = 1; i <= s.count(); ++i)
        if (s.item(i) == v) return i;
    return 0;
}
} // namespace

ClassSpec linked_set_spec(SpecLevel level) {
    const auto& P = list_pre();
    const bool strong = level == SpecLevel::strong;
    ClassSpec cls;
    cls.name = "LINKED_SET";
    cls.level = level;

    std::vector<InvariantClause> repr;
    repr.push_back(invariant("no_duplicates: sequence.to_bag.domain.count = sequence.count",
                             [](const InvariantContext& c) {
                                 const auto s = c.query("sequence").as_sequence();
                                 return s.to_bag().domain().count() == s.count();
                             }));
    add_cursor_core(cls, level, std::move(repr));

    {
        auto r = routine("extend", {Param::element_value("v")});
        if (strong) {
            r.modify = modify({"sequence"});
            r.postconditions.push_back(post("sequence = if old sequence.has (v) then old sequence else old sequence & v",
                                            [](const PredicateEnv& e) {
                                                const auto s = old_seq(e);
                                                return seq(e) == (s.has(e.arg(1)) ? s : s.extended(e.arg(1)));
                                            }));
        } else {
            r.postconditions.push_back(post("in_set_already: old has (v) implies count = old count",
                                            [](const PredicateEnv& e) {
                                                return !old_seq(e).has(e.arg(1)) ||
                                                       num(e, "count") == old_num(e, "count");
                                            }));
            r.postconditions.push_back(post("added_to_set: not old has (v) implies count = old count + 1",
                                            [](const PredicateEnv& e) {
                                                return old_seq(e).has(e.arg(1)) ||
                                                       num(e, "count") == old_num(e, "count") + 1;
                                            }));
            r.postconditions.push_back(post("extended: has (v)", [](const PredicateEnv& e) {
                return seq(e).has(e.arg(1));
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("remove", {Param::element_value("v")});
        if (strong) {
            r.modify = modify({"sequence", "index"});
            r.postconditions.push_back(post("sequence = old sequence.removed_at (old position (v))",
                                            [](const PredicateEnv& e) {
                                                const auto s = old_seq(e);
                                                const auto p = position_in(s, e.arg(1));
                                                return seq(e) == (p == 0 ? s : s.removed_at(p));
                                            }));
            r.postconditions.push_back(post("index = if old position (v) < old index then old index - 1 else old index",
                                            [](const PredicateEnv& e) {
                                                const auto p = position_in(old_seq(e), e.arg(1));
                                                const auto oi = old_num(e, "index");
                                                return num(e, "index") == (p != 0 && p < oi ? oi - 1 : oi);
                                            }));
        } else {
            r.postconditions.push_back(post("removed_count_change: old has (v) implies count = old count - 1",
                                            [](const PredicateEnv& e) {
                                                return !old_seq(e).has(e.arg(1)) ||
                                                       num(e, "count") == old_num(e, "count") - 1;
                                            }));
            r.postconditions.push_back(post("not_found_after_removal: not has (v)", [](const PredicateEnv& e) {
                return !seq(e).has(e.arg(1));
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("replace", {Param::element_value("v")});
        r.preconditions = {P.writable};
        if (strong) {
            r.modify = modify({"sequence"});
            r.postconditions.push_back(
                post("sequence = if old sequence.has (v) then old sequence.removed_at (index) else "
                     "old sequence.replaced_at (index, v)",
                     [](const PredicateEnv& e) {
                         const auto s = old_seq(e);
                         const auto i = old_num(e, "index");
                         const auto p = position_in(s, e.arg(1));
                         if (p == i) return seq(e) == s;
                         return seq(e) == (p != 0 ? s.removed_at(i) : s.replaced_at(i, e.arg(1)));
                     }));
        } else {
            r.postconditions.push_back(post("replaced: has (v)", [](const PredicateEnv& e) {
                return seq(e).has(e.arg(1));
            }));
            r.postconditions.push_back(post("no_growth: count <= old count", [](const PredicateEnv& e) {
                return num(e, "count") <= old_num(e, "count");
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("is_equal", {Param::reference("other", "LINKED_SET")}, ResultKind::boolean);
        r.preconditions = {P.other_not_void};
        if (strong) {
            r.modify = modify({});
            r.postconditions.push_back(post("Result = (sequence.range = other.sequence.range)",
                                            [](const PredicateEnv& e) {
                                                return e.result().as_boolean() ==
                                                       (seq(e).to_bag().domain() == seq(e, arg1).to_bag().domain());
                                            }));
        } else {
            r.postconditions.push_back(post("consistent: Result implies count = other.count",
                                            [](const PredicateEnv& e) {
                                                return !e.result().as_boolean() ||
                                                       num(e, "count") == num(e, "count", arg1);
                                            }));
        }
        cls.routines.push_back(std::move(r));
    }
    return cls;
}

} // namespace detail

} // namespace mbc::containers
