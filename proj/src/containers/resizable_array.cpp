#include "mbc/containers/resizable_array.hpp"

#include "class_specs.hpp"
#include "spec_helpers.hpp"

#include <algorithm>

namespace mbc::containers {

Sequence ResizableArray::model_sequence() const {
    std::vector<ModelValue> v;
    v.reserve(area_.size());
    for (Item x : area_) v.push_back(mint(x));
    return Sequence(std::move(v));
}

void ResizableArray::force(Item v, std::int64_t i) {
    if (area_.empty()) {
        lower_ = i;
        area_ = {v};
        return;
    }
    const std::int64_t old_upper = upper();
    const std::int64_t new_lower = std::min(lower_, i);
    const std::int64_t new_upper = std::max(old_upper, i);
    std::vector<Item> grown(static_cast<std::size_t>(new_upper - new_lower + 1), 0);
    const auto offset = static_cast<std::size_t>(lower_ - new_lower);
    std::copy(area_.begin(), area_.end(), grown.begin() + static_cast<std::ptrdiff_t>(offset));
    grown[static_cast<std::size_t>(i - new_lower)] = v;

    std::vector<Item> result = grown;
    if (i >= old_upper + 2 && bug("AF-1")) {
        result[static_cast<std::size_t>(i - 1 - new_lower)] = area_.back();
        if (result != grown) fire("AF-1");
    }
    if (i <= lower_ - 2 && bug("AR-3")) {
        std::fill(result.begin() + 1, result.end(), 0);
        std::copy(area_.begin(), area_.end(), result.begin() + static_cast<std::ptrdiff_t>(offset - 1));
        if (result != grown) fire("AR-3");
    }
    area_ = std::move(result);
    lower_ = new_lower;
}

std::optional<ModelValue> ResizableArray::invoke(CallContext&, std::string_view r, std::span<const ModelValue> args) {
    auto slot = [&](std::int64_t i) -> Item& { return area_.at(static_cast<std::size_t>(i - lower_)); };

    if (r == "item") {
        return mint(slot(args[0].as_integer()));
    } else if (r == "put") {
        slot(args[1].as_integer()) = args[0].as_integer();
    } else if (r == "force") {
        force(args[0].as_integer(), args[1].as_integer());
    } else if (r == "count") {
        return mint(count());
    } else if (r == "clear_all") {
        auto end = area_.end();
        if (area_.size() >= 2 && area_.back() != 0 && bug("AR-2")) {
            --end;
            fire("AR-2");
        }
        std::fill(area_.begin(), end, 0);
    } else if (r == "has") {
        return mbool(std::find(area_.begin(), area_.end(), args[0].as_integer()) != area_.end());
    } else {
        unknown_routine(r);
    }
    return std::nullopt;
}

namespace detail {

namespace {

const ResizableArray& as_array(const Object& o) { return static_cast<const ResizableArray&>(o); }

bool index_valid(const PredicateEnv& e, std::int64_t i) {
    const auto lower = num(e, "lower");
    return lower <= i && i <= lower + seq(e).count() - 1;
}

struct ArrayPreconditions {
    PreconditionPtr valid_index_1 = pre("valid_index (i)", [](const PredicateEnv& e) {
        return index_valid(e, int_arg(e, 1));
    });
    PreconditionPtr valid_index_2 = pre("valid_index (i)", [](const PredicateEnv& e) {
        return index_valid(e, int_arg(e, 2));
    });
};

const ArrayPreconditions& array_pre() {
    static const ArrayPreconditions p;
    return p;
}

/// Expected sequence after force (v, i), starting from `s` at `lower`.
Sequence forced(const Sequence& s, std::int64_t lower, std::int64_t v, std::int64_t i) {
    if (s.is_empty()) return int_seq({v});
    const std::int64_t upper = lower + s.count() - 1;
    const std::int64_t nl = std::min(lower, i);
    const std::int64_t nu = std::max(upper, i);
    std::vector<ModelValue> out;
    for (std::int64_t k = nl; k <= nu; ++k)
        out.push_back(k == i ? mint(v) : (k >= lower && k <= upper) ? s.item(k - lower + 1) : mint(0));
    return Sequence(std::move(out));
}

} // namespace

ClassSpec array_spec(SpecLevel level) {
    const auto& P = array_pre();
    const bool strong = level == SpecLevel::strong;
    ClassSpec cls;
    cls.name = "ARRAY";
    cls.level = level;
    cls.model.push_back({"sequence", [](const Object& o) { return ModelValue(as_array(o).model_sequence()); }});
    cls.model.push_back({"lower", [](const Object& o) { return mint(as_array(o).lower()); }});
    if (!strong) cls.model.push_back({"count", [](const Object& o) { return mint(as_array(o).count()); }});

    if (!strong)
        cls.invariants.push_back(invariant("consistent_size: count = upper - lower + 1", [](const InvariantContext& c) {
            const auto& a = c.as<ResizableArray>();
            return a.count() == a.upper() - a.lower() + 1;
        }));
    else
        cls.invariants.push_back(invariant("area.count = sequence.count", [](const InvariantContext& c) {
            return static_cast<std::int64_t>(c.as<ResizableArray>().area().size()) ==
                   c.query("sequence").as_sequence().count();
        }, InvariantKind::representation_constraint));

    {
        auto r = routine("item", {Param::integer("i")}, ResultKind::integer);
        r.preconditions = {P.valid_index_1};
        if (strong) {
            r.modify = modify({});
            r.postconditions.push_back(post("Result = sequence.item (i - lower + 1)", [](const PredicateEnv& e) {
                return e.result() == seq(e).item(int_arg(e, 1) - num(e, "lower") + 1);
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("put", {Param::element_value("v"), Param::integer("i")});
        r.preconditions = {P.valid_index_2};
        if (strong) {
            r.modify = modify({"sequence"});
            r.postconditions.push_back(post("sequence = old sequence.replaced_at (i - lower + 1, v)",
                                            [](const PredicateEnv& e) {
                                                return seq(e) == old_seq(e).replaced_at(
                                                                     int_arg(e, 2) - old_num(e, "lower") + 1, e.arg(1));
                                            }));
        } else {
            r.postconditions.push_back(post("inserted: item (i) = v", [](const PredicateEnv& e) {
                return seq(e).item(int_arg(e, 2) - num(e, "lower") + 1) == e.arg(1);
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("force", {Param::element_value("v"), Param::integer("i")});
        if (strong) {
            r.modify = modify({"sequence", "lower"});
            r.postconditions.push_back(post("lower = if old sequence.is_empty then i else old lower.min (i)",
                                            [](const PredicateEnv& e) {
                                                const auto i = int_arg(e, 2);
                                                return num(e, "lower") ==
                                                       (old_seq(e).is_empty() ? i : std::min(old_num(e, "lower"), i));
                                            }));
            r.postconditions.push_back(post("sequence = old sequence padded to i with v at i",
                                            [](const PredicateEnv& e) {
                                                return seq(e) == forced(old_seq(e), old_num(e, "lower"),
                                                                        int_arg(e, 1), int_arg(e, 2));
                                            }));
        } else {
            r.postconditions.push_back(post("inserted: item (i) = v", [](const PredicateEnv& e) {
                const auto k = int_arg(e, 2) - num(e, "lower") + 1;
                return 1 <= k && k <= seq(e).count() && seq(e).item(k) == e.arg(1);
            }));
            r.postconditions.push_back(post("higher_count: count >= old count", [](const PredicateEnv& e) {
                return num(e, "count") >= old_num(e, "count");
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
        auto r = routine("clear_all");
        auto all_default = [](const PredicateEnv& e) {
            const auto& s = seq(e);
            for (const auto& x : s.items())
                if (x.as_integer() != 0) return false;
            return true;
        };
        if (strong) {
            r.modify = modify({"sequence"});
            r.postconditions.push_back(post("sequence.count = old sequence.count", [](const PredicateEnv& e) {
                return seq(e).count() == old_seq(e).count();
            }));
            r.postconditions.push_back(post("sequence.range = {0}", all_default));
        } else {
            r.postconditions.push_back(post("all_default: across lower |..| upper as i all item (i) = 0", all_default));
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
            r.postconditions.push_back(post("not_found_in_empty: Result implies count > 0", [](const PredicateEnv& e) {
                return !e.result().as_boolean() || num(e, "count") > 0;
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    return cls;
}

} // namespace detail

} // namespace mbc::containers
