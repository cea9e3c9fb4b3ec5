#include "mbc/containers/linked_stack.hpp"

#include "class_specs.hpp"
#include "spec_helpers.hpp"

#include <algorithm>

namespace mbc::containers {

Sequence LinkedStack::model_sequence() const { return int_seq(std::vector<Item>(cells_.rbegin(), cells_.rend())); }

std::optional<ModelValue> LinkedStack::invoke(CallContext&, std::string_view r, std::span<const ModelValue> args) {
    if (r == "put") {
        const Item v = args[0].as_integer();
        if (cells_.size() == 2 && cells_.back() != v && bug("ST-2")) {
            cells_.insert(cells_.end() - 1, v);
            fire("ST-2");
        } else {
            cells_.push_back(v);
        }
    } else if (r == "remove") {
        if (cells_.size() >= 3 && cells_.back() != cells_[cells_.size() - 2] && bug("ST-1")) {
            cells_.erase(cells_.end() - 2);
            fire("ST-1");
        } else {
            cells_.pop_back();
        }
    } else if (r == "item") {
        return mint(cells_.at(cells_.size() - 1));
    } else if (r == "has") {
        const Item v = args[0].as_integer();
        const bool found = std::find(cells_.begin(), cells_.end(), v) != cells_.end();
        if (found && bug("ST-3")) {
            const bool above_bottom = std::find(cells_.begin() + 1, cells_.end(), v) != cells_.end();
            if (!above_bottom) fire("ST-3");
            return mbool(above_bottom);
        }
        return mbool(found);
    } else if (r == "count") {
        return mint(count());
    } else if (r == "wipe_out") {
        cells_.clear();
    } else {
        unknown_routine(r);
    }
    return std::nullopt;
}

namespace detail {

namespace {
const LinkedStack& as_stack(const Object& o) { return static_cast<const LinkedStack&>(o); }

const PreconditionPtr& stack_not_empty() {
    static const PreconditionPtr p = pre("not_empty", [](const PredicateEnv& e) { return seq(e).count() > 0; });
    return p;
}
} // namespace

ClassSpec linked_stack_spec(SpecLevel level) {
    const bool strong = level == SpecLevel::strong;
    ClassSpec cls;
    cls.name = "LINKED_STACK";
    cls.level = level;
    cls.model.push_back({"sequence", [](const Object& o) { return ModelValue(as_stack(o).model_sequence()); }});
    if (!strong) {
        cls.model.push_back({"count", [](const Object& o) { return mint(as_stack(o).count()); }});
        cls.invariants.push_back(invariant("count_non_negative: count >= 0", [](const InvariantContext& c) {
            return c.query("count").as_integer() >= 0;
        }));
    }

    {
        auto r = routine("put", {Param::element_value("v")});
        if (strong) {
            r.modify = modify({"sequence"});
            r.postconditions.push_back(post("sequence = old sequence.prepended (v)", [](const PredicateEnv& e) {
                return seq(e) == old_seq(e).prepended(e.arg(1));
            }));
        } else {
            r.postconditions.push_back(post("item_pushed: item = v", [](const PredicateEnv& e) {
                return !seq(e).is_empty() && seq(e).first() == e.arg(1);
            }));
            r.postconditions.push_back(post("one_more: count = old count + 1", [](const PredicateEnv& e) {
                return num(e, "count") == old_num(e, "count") + 1;
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("remove");
        r.preconditions = {stack_not_empty()};
        if (strong) {
            r.modify = modify({"sequence"});
            r.postconditions.push_back(post("sequence = old sequence.tail (2)", [](const PredicateEnv& e) {
                return seq(e) == old_seq(e).tail(2);
            }));
        } else {
            r.postconditions.push_back(post("one_less: count = old count - 1", [](const PredicateEnv& e) {
                return num(e, "count") == old_num(e, "count") - 1;
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("item", {}, ResultKind::integer);
        r.preconditions = {stack_not_empty()};
        if (strong) {
            r.modify = modify({});
            r.postconditions.push_back(post("Result = sequence.first", [](const PredicateEnv& e) {
                return e.result() == seq(e).first();
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("has", {Param::element_value("v")}, ResultKind::boolean);
        if (strong) {
            r.modify = modify({});
            r.postconditions.push_back(post("Result = sequence.has (v)", [](const PredicateEnv& e) {
                return e.result().as_boolean() == seq(e).has(e.arg(1));
            }));
        } else {
            r.postconditions.push_back(post("not_found_in_empty: Result implies not is_empty",
                                            [](const PredicateEnv& e) {
                                                return !e.result().as_boolean() || num(e, "count") > 0;
                                            }));
        }
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("count", {}, ResultKind::integer);
        if (strong) {
            r.modify = modify({});
            r.postconditions.push_back(post("Result = sequence.count", [](const PredicateEnv& e) {
                return e.result().as_integer() == seq(e).count();
            }));
        } else {
            r.postconditions.push_back(post("count_non_negative: Result >= 0", [](const PredicateEnv& e) {
                return e.result().as_integer() >= 0;
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("wipe_out");
        if (strong) {
            r.modify = modify({"sequence"});
            r.postconditions.push_back(post("sequence.is_empty", [](const PredicateEnv& e) {
                return seq(e).is_empty();
            }));
        } else {
            r.postconditions.push_back(post("wiped_out: is_empty", [](const PredicateEnv& e) {
                return num(e, "count") == 0;
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    return cls;
}

} // namespace detail

} // namespace mbc::containers
