#include "list_specs.hpp"

#include "mbc/containers/cursor_list.hpp"
#include "spec_helpers.hpp"

namespace mbc::containers::detail {

namespace {

const CursorListBase& as_list(const Object& o) { return static_cast<const CursorListBase&>(o); }

} // namespace

const ListPreconditions& list_pre() {
    static const ListPreconditions p;
    return p;
}

void add_cursor_core(ClassSpec& cls, SpecLevel level, std::vector<InvariantClause> repr_invariants) {
    const auto& P = list_pre();
    const bool strong = level == SpecLevel::strong;

    cls.model.push_back({"sequence", [](const Object& o) { return ModelValue(as_list(o).model_sequence()); }});
    cls.model.push_back({"index", [](const Object& o) { return mint(as_list(o).cursor_index()); }});
    if (!strong) cls.model.push_back({"count", [](const Object& o) { return mint(as_list(o).count_attribute()); }});

    if (strong) {
        cls.invariants.push_back(invariant("0 <= index and index <= sequence.count + 1", [](const InvariantContext& c) {
            const auto i = c.query("index").as_integer();
            return 0 <= i && i <= c.query("sequence").as_sequence().count() + 1;
        }));
        for (auto& inv : repr_invariants) cls.invariants.push_back(std::move(inv));
    } else {
        cls.invariants.push_back(invariant("index_in_range: 0 <= index and index <= count + 1",
                                           [](const InvariantContext& c) {
                                               const auto i = c.query("index").as_integer();
                                               return 0 <= i && i <= c.query("count").as_integer() + 1;
                                           }));
        cls.invariants.push_back(invariant("empty_constraint: is_empty implies first_cell = Void",
                                           [](const InvariantContext& c) {
                                               return c.as<CursorListBase>().count_attribute() != 0 ||
                                                      !c.as<CursorListBase>().has_first_cell();
                                           },
                                           InvariantKind::representation_constraint));
    }

    // cursor movement
    {
        auto r = routine("start");
        if (strong) {
            r.modify = modify({"index"});
            r.postconditions.push_back(post("index = 1", [](const PredicateEnv& e) { return num(e, "index") == 1; }));
        } else {
            r.postconditions.push_back(post("at_first: not is_empty implies index = 1", [](const PredicateEnv& e) {
                return num(e, "count") == 0 || num(e, "index") == 1;
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("finish");
        if (strong) {
            r.modify = modify({"index"});
            r.postconditions.push_back(post("index = sequence.count", [](const PredicateEnv& e) {
                return num(e, "index") == seq(e).count();
            }));
        } else {
            r.postconditions.push_back(post("at_last: not is_empty implies index = count", [](const PredicateEnv& e) {
                return num(e, "count") == 0 || num(e, "index") == num(e, "count");
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("forth");
        r.preconditions = {P.not_after};
        r.postconditions.push_back(post(strong ? "index = old index + 1" : "moved_forth: index = old index + 1",
                                        [](const PredicateEnv& e) {
                                            return num(e, "index") == old_num(e, "index") + 1;
                                        }));
        if (strong) r.modify = modify({"index"});
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("back");
        r.preconditions = {P.not_before};
        r.postconditions.push_back(post(strong ? "index = old index - 1" : "moved_back: index = old index - 1",
                                        [](const PredicateEnv& e) {
                                            return num(e, "index") == old_num(e, "index") - 1;
                                        }));
        if (strong) r.modify = modify({"index"});
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("go_i_th", {Param::integer("i")});
        r.preconditions = {P.valid_cursor_index};
        r.postconditions.push_back(post(strong ? "index = i" : "cursor_moved: index = i", [](const PredicateEnv& e) {
            return num(e, "index") == int_arg(e, 1);
        }));
        if (strong) r.modify = modify({"index"});
        cls.routines.push_back(std::move(r));
    }
    // wipe_out
    {
        auto r = routine("wipe_out");
        if (strong) {
            r.modify = modify({"sequence", "index"});
            r.postconditions.push_back(post("sequence.is_empty", [](const PredicateEnv& e) {
                return seq(e).is_empty();
            }));
            r.postconditions.push_back(post("index = 0", [](const PredicateEnv& e) { return num(e, "index") == 0; }));
        } else {
            r.postconditions.push_back(post("wiped_out: is_empty", [](const PredicateEnv& e) {
                return num(e, "count") == 0;
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    // queries
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
        auto r = routine("item", {}, ResultKind::integer);
        r.preconditions = {P.writable};
        if (strong) {
            r.modify = modify({});
            r.postconditions.push_back(post("Result = sequence.item (index)", [](const PredicateEnv& e) {
                return e.result() == seq(e).item(num(e, "index"));
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
}

void add_cursor_list_spec(ClassSpec& cls, SpecLevel level, std::vector<InvariantClause> repr_invariants,
                          bool two_way) {
    const auto& P = list_pre();
    const bool strong = level == SpecLevel::strong;
    const std::string self = cls.name;
    add_cursor_core(cls, level, std::move(repr_invariants));

    auto count_eq = [](std::int64_t delta) {
        return [delta](const PredicateEnv& e) { return num(e, "count") == old_num(e, "count") + delta; };
    };
    auto index_unchanged = [](const PredicateEnv& e) { return num(e, "index") == old_num(e, "index"); };

    // extend (v)
    {
        auto r = routine("extend", {Param::element_value("v")});
        if (strong) {
            r.modify = modify({"sequence"});
            r.postconditions.push_back(post("sequence = old sequence & v", [](const PredicateEnv& e) {
                return seq(e) == old_seq(e).extended(e.arg(1));
            }));
        } else {
            r.postconditions.push_back(post("one_more: count = old count + 1", count_eq(1)));
            r.postconditions.push_back(post("item_inserted: has (v)", [](const PredicateEnv& e) {
                return seq(e).has(e.arg(1));
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    // put_front (v)
    {
        auto r = routine("put_front", {Param::element_value("v")});
        if (strong) {
            r.modify = modify({"sequence", "index"});
            r.postconditions.push_back(post("sequence = old sequence.prepended (v)", [](const PredicateEnv& e) {
                return seq(e) == old_seq(e).prepended(e.arg(1));
            }));
            r.postconditions.push_back(post("index = if old index = 0 then 0 else old index + 1",
                                            [](const PredicateEnv& e) {
                                                const auto oi = old_num(e, "index");
                                                return num(e, "index") == (oi == 0 ? 0 : oi + 1);
                                            }));
        } else {
            r.postconditions.push_back(post("new_count: count = old count + 1", count_eq(1)));
            r.postconditions.push_back(post("item_inserted: first = v", [](const PredicateEnv& e) {
                return !seq(e).is_empty() && seq(e).first() == e.arg(1);
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    // put_right (v)
    {
        auto r = routine("put_right", {Param::element_value("v")});
        r.preconditions = {P.not_after};
        if (strong) {
            r.modify = modify({"sequence"});
            r.postconditions.push_back(post("sequence = old (sequence.front (index) & v + sequence.tail (index + 1))",
                                            [](const PredicateEnv& e) {
                                                const auto s = old_seq(e);
                                                const auto i = old_num(e, "index");
                                                return seq(e) == s.front(i).extended(e.arg(1)) + s.tail(i + 1);
                                            }));
        } else {
            r.postconditions.push_back(post("new_count: count = old count + 1", count_eq(1)));
            r.postconditions.push_back(post("same_index: index = old index", index_unchanged));
        }
        cls.routines.push_back(std::move(r));
    }
    if (two_way) {
        auto r = routine("put_left", {Param::element_value("v")});
        r.preconditions = {P.not_before};
        if (strong) {
            r.modify = modify({"sequence", "index"});
            r.postconditions.push_back(post("sequence = old (sequence.front (index - 1) & v + sequence.tail (index))",
                                            [](const PredicateEnv& e) {
                                                const auto s = old_seq(e);
                                                const auto i = old_num(e, "index");
                                                return seq(e) == s.front(i - 1).extended(e.arg(1)) + s.tail(i);
                                            }));
            r.postconditions.push_back(post("index = old index + 1", [](const PredicateEnv& e) {
                return num(e, "index") == old_num(e, "index") + 1;
            }));
        } else {
            r.postconditions.push_back(post("new_count: count = old count + 1", count_eq(1)));
            r.postconditions.push_back(post("new_index: index = old index + 1", [](const PredicateEnv& e) {
                return num(e, "index") == old_num(e, "index") + 1;
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    // remove
    {
        auto r = routine("remove");
        r.preconditions = {P.writable};
        if (strong) {
            r.modify = modify({"sequence"});
            r.postconditions.push_back(post("sequence = old sequence.removed_at (index)", [](const PredicateEnv& e) {
                return seq(e) == old_seq(e).removed_at(old_num(e, "index"));
            }));
        } else {
            r.postconditions.push_back(post("one_less: count = old count - 1", count_eq(-1)));
            r.postconditions.push_back(post("same_index: index = old index", index_unchanged));
        }
        cls.routines.push_back(std::move(r));
    }
    // replace (v)
    {
        auto r = routine("replace", {Param::element_value("v")});
        r.preconditions = {P.writable};
        if (strong) {
            r.modify = modify({"sequence"});
            r.postconditions.push_back(post("sequence = old sequence.replaced_at (index, v)", [](const PredicateEnv& e) {
                return seq(e) == old_seq(e).replaced_at(old_num(e, "index"), e.arg(1));
            }));
        } else {
            r.postconditions.push_back(post("item_replaced: item = v", [](const PredicateEnv& e) {
                return seq(e).item(num(e, "index")) == e.arg(1);
            }));
            r.postconditions.push_back(post("same_count: count = old count", count_eq(0)));
        }
        cls.routines.push_back(std::move(r));
    }
    if (!two_way) {
        // merge_right (other)
        auto r = routine("merge_right", {Param::reference("other", self)});
        r.preconditions = {P.not_after, P.other_not_void, P.other_not_current};
        if (strong) {
            r.modify = modify({"sequence"});
            r.postconditions.push_back(
                post("sequence = old (sequence.front (index) + other.sequence + sequence.tail (index + 1))",
                     [](const PredicateEnv& e) {
                         const auto s = old_seq(e);
                         const auto i = old_num(e, "index");
                         return seq(e) == s.front(i) + old_seq(e, arg1) + s.tail(i + 1);
                     }));
        } else {
            r.postconditions.push_back(post("count = old count + old other.count", [](const PredicateEnv& e) {
                return num(e, "count") == old_num(e, "count") + old_num(e, "count", arg1);
            }));
            r.postconditions.push_back(post("index = old index", index_unchanged));
        }
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("is_equal", {Param::reference("other", self)}, ResultKind::boolean);
        r.preconditions = {P.other_not_void};
        if (strong) {
            r.modify = modify({});
            r.postconditions.push_back(post("Result = (sequence = other.sequence)", [](const PredicateEnv& e) {
                return e.result().as_boolean() == (seq(e) == seq(e, arg1));
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
}

} // namespace mbc::containers::detail
