#include "mbc/containers/arrayed_queue.hpp"

#include "class_specs.hpp"
#include "spec_helpers.hpp"

namespace mbc::containers {

ArrayedQueue::ArrayedQueue(const ClassSpec& spec, BugTrace& bugs)
    : ContainerObject(spec, bugs), area_(initial_capacity, 0) {}

Sequence ArrayedQueue::model_sequence() const {
    std::vector<Item> v;
    for (std::size_t k = 0; k < count_; ++k) v.push_back(at(k));
    return int_seq(v);
}

void ArrayedQueue::put(Item v) {
    if (count_ == area_.size()) {
        const bool was_wrapped = head_ != 0;
        std::vector<Item> grown(area_.size() * 2, 0);
        for (std::size_t k = 0; k < count_; ++k) grown[k] = at(k);
        area_ = std::move(grown);
        head_ = 0;
        area_[count_] = v;
        if (was_wrapped && bug("QU-1")) {
            fire("QU-1");
            return;
        }
        ++count_;
        return;
    }
    at(count_) = v;
    ++count_;
}

void ArrayedQueue::remove() {
    if (count_ == 1 && bug("QU-2")) {
        head_ = (head_ + 1) % area_.size();
        fire("QU-2");
        return;
    }
    head_ = (head_ + 1) % area_.size();
    --count_;
}

std::optional<ModelValue> ArrayedQueue::invoke(CallContext&, std::string_view r, std::span<const ModelValue> args) {
    if (r == "put") {
        put(args[0].as_integer());
    } else if (r == "remove") {
        remove();
    } else if (r == "item") {
        if (count_ == 0) throw CorruptState("empty queue");
        const Item correct = at(0);
        if (wrapped() && bug("QU-3")) {
            const Item wrong = area_[0];
            if (wrong != correct) fire("QU-3");
            return mint(wrong);
        }
        return mint(correct);
    } else if (r == "has") {
        const Item v = args[0].as_integer();
        for (std::size_t k = 0; k < count_; ++k)
            if (at(k) == v) return mbool(true);
        return mbool(false);
    } else if (r == "count") {
        return mint(count());
    } else if (r == "wipe_out") {
        head_ = count_ = 0;
    } else {
        unknown_routine(r);
    }
    return std::nullopt;
}

namespace detail {

namespace {
const ArrayedQueue& as_queue(const Object& o) { return static_cast<const ArrayedQueue&>(o); }

const PreconditionPtr& queue_not_empty() {
    static const PreconditionPtr p = pre("not_empty", [](const PredicateEnv& e) { return seq(e).count() > 0; });
    return p;
}
} // namespace

ClassSpec arrayed_queue_spec(SpecLevel level) {
    const bool strong = level == SpecLevel::strong;
    ClassSpec cls;
    cls.name = "ARRAYED_QUEUE";
    cls.level = level;
    cls.model.push_back({"sequence", [](const Object& o) { return ModelValue(as_queue(o).model_sequence()); }});
    if (!strong) {
        cls.model.push_back({"count", [](const Object& o) { return mint(as_queue(o).count()); }});
        cls.invariants.push_back(invariant("count_non_negative: count >= 0", [](const InvariantContext& c) {
            return c.query("count").as_integer() >= 0;
        }));
    } else {
        cls.invariants.push_back(invariant("count <= capacity", [](const InvariantContext& c) {
            const auto& q = c.as<ArrayedQueue>();
            return static_cast<std::size_t>(q.count()) <= q.capacity();
        }, InvariantKind::representation_constraint));
    }

    {
        auto r = routine("put", {Param::element_value("v")});
        if (strong) {
            r.modify = modify({"sequence"});
            r.postconditions.push_back(post("sequence = old sequence & v", [](const PredicateEnv& e) {
                return seq(e) == old_seq(e).extended(e.arg(1));
            }));
        } else {
            r.postconditions.push_back(post("one_more: count = old count + 1", [](const PredicateEnv& e) {
                return num(e, "count") == old_num(e, "count") + 1;
            }));
        }
        cls.routines.push_back(std::move(r));
    }
    {
        auto r = routine("remove");
        r.preconditions = {queue_not_empty()};
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
        r.preconditions = {queue_not_empty()};
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
