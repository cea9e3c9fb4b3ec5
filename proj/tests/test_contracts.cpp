#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mbc/contracts.hpp"

#include <memory>

using namespace mbc;

namespace {

// A counter with a hidden auxiliary field and an optional partner. Each
// routine has a deliberately broken twin selected by `bad`.
class Counter : public Object {
public:
    using Object::Object;

    std::int64_t value = 0;
    std::int64_t aux = 0;
    Counter* partner = nullptr;
    bool bad = false;

    std::optional<ModelValue> invoke(CallContext& ctx, std::string_view r, std::span<const ModelValue> args) override {
        if (r == "inc") {
            value += bad ? 2 : 1;
        } else if (r == "set") {
            value = args[0].as_integer();
            if (bad) ++aux;
        } else if (r == "get") {
            return mint(value);
        } else if (r == "sink") {
            value = -1;
        } else if (r == "poke") {
            // qualified call with an argument the callee rejects
            auto* other = static_cast<Counter*>(ctx.engine().find(args[0].as_object()));
            ctx.call(*other, "set", {mint(-5)});
        } else if (r == "pair") {
            auto* other = static_cast<Counter*>(ctx.engine().find(args[0].as_object()));
            partner = other;
            ctx.call(*other, "adopt", {ModelValue::object(id())});
        } else if (r == "unpair") {
            Counter* other = partner;
            partner = nullptr;
            ctx.call(*other, "adopt", {ModelValue::void_ref()});
        } else if (r == "adopt") {
            partner = static_cast<Counter*>(ctx.engine().find(args[0].as_object()));
        } else if (r == "throw") {
            throw std::runtime_error("boom");
        }
        return std::nullopt;
    }
};

const Counter& as_counter(const Object& o) { return static_cast<const Counter&>(o); }

ClassSpec counter_spec(bool with_depend = true) {
    ClassSpec c;
    c.name = "COUNTER";
    c.model.push_back({"value", [](const Object& o) { return mint(as_counter(o).value); }});
    c.model.push_back({"aux", [](const Object& o) { return mint(as_counter(o).aux); }});
    c.attributes["partner"] = [](const Object& o) -> const Object* { return as_counter(o).partner; };
    c.invariants.push_back({"value >= 0", [](const InvariantContext& ctx) {
                                return ctx.query("value").as_integer() >= 0;
                            }});
    c.invariants.push_back({"partner.partner = Current",
                            [](const InvariantContext& ctx) {
                                const auto& self = ctx.as<Counter>();
                                return self.partner == nullptr || self.partner->partner == &self;
                            },
                            with_depend ? std::vector<std::string>{"partner"} : std::vector<std::string>{}});

    auto add = [&](RoutineSpec r) { c.routines.push_back(std::move(r)); };
    {
        RoutineSpec r{.name = "inc"};
        r.modify = std::vector<ModifyEntry>{{Role::target(), "value"}};
        r.postconditions.push_back({"value = old value + 1", [](const PredicateEnv& e) {
                                        return e.model("value").as_integer() == e.old("value").as_integer() + 1;
                                    }});
        add(r);
    }
    {
        RoutineSpec r{.name = "set", .params = {Param::integer("x")}};
        r.preconditions.push_back(std::make_shared<const Precondition>(
            Precondition{"x >= 0", [](const PredicateEnv& e) { return e.arg(1).as_integer() >= 0; }}));
        r.modify = std::vector<ModifyEntry>{{Role::target(), "value"}};
        r.postconditions.push_back({"value = x", [](const PredicateEnv& e) { return e.model("value") == e.arg(1); }});
        add(r);
    }
    {
        RoutineSpec r{.name = "get", .result = ResultKind::integer};
        r.modify = std::vector<ModifyEntry>{};
        r.postconditions.push_back(
            {"Result = value", [](const PredicateEnv& e) { return e.result() == e.model("value"); }});
        add(r);
    }
    add(RoutineSpec{.name = "sink"});
    add(RoutineSpec{.name = "throw"});
    add(RoutineSpec{.name = "poke", .params = {Param::reference("other", "COUNTER")}});
    add(RoutineSpec{.name = "pair", .params = {Param::reference("other", "COUNTER")}});
    add(RoutineSpec{.name = "unpair"});
    add(RoutineSpec{.name = "adopt", .params = {Param::reference("p", "COUNTER")}, .exported = false});
    return c;
}

struct World {
    explicit World(bool with_depend = true) {
        suite.add(counter_spec(with_depend));
        suite.bind();
    }
    Counter& make() {
        auto& c = engine.create<Counter>(suite.at("COUNTER"));
        REQUIRE(engine.check_creation(c).ok());
        return c;
    }
    SpecSuite suite;
    Engine engine;
};

} // namespace

TEST_CASE("clean calls pass and return results") {
    World w;
    auto& c = w.make();
    CHECK(w.engine.call(c, "inc").ok());
    CHECK(w.engine.call(c, "set", {mint(7)}).ok());
    auto out = w.engine.call(c, "get");
    REQUIRE(out.ok());
    CHECK(*out.result == mint(7));
}

TEST_CASE("checks run in protocol order") {
    World w;
    auto& c = w.make();
    std::vector<CheckEvent::Kind> seen;
    w.engine.set_observer([&](const CheckEvent& e) { seen.push_back(e.kind); });
    REQUIRE(w.engine.call(c, "set", {mint(3)}).ok());
    using K = CheckEvent::Kind;
    // two invariants on entry and exit; one frame clause for aux
    std::vector<K> expected{K::entry_invariant, K::entry_invariant, K::precondition, K::snapshot, K::body,
                            K::exit_invariant,  K::exit_invariant,  K::postcondition, K::frame};
    CHECK(seen == expected);
}

TEST_CASE("failing precondition stops before the body") {
    World w;
    auto& c = w.make();
    bool body = false;
    w.engine.set_observer([&](const CheckEvent& e) { body = body || e.kind == CheckEvent::Kind::body; });
    auto out = w.engine.call(c, "set", {mint(-1)});
    REQUIRE(out.violations.size() == 1);
    CHECK(out.violations[0].kind == ViolationKind::precondition);
    CHECK(out.violations[0].blame == Blame::caller);
    CHECK_FALSE(out.invalid);
    CHECK_FALSE(body);
    CHECK(c.value == 0);
}

TEST_CASE("harness mode marks top-level precondition failures invalid") {
    World w;
    w.engine.set_harness_mode(true);
    auto& c = w.make();
    CHECK(w.engine.call(c, "set", {mint(-1)}).invalid);

    // the same failure one level down is a fault of the calling body
    auto& d = w.make();
    auto out = w.engine.call(c, "poke", {ModelValue::object(d.id())});
    REQUIRE(out.violations.size() == 1);
    CHECK_FALSE(out.invalid);
    CHECK(out.violations[0].depth == 1);
    CHECK(out.violations[0].routine == "set");
    CHECK(out.violations[0].blame == Blame::caller);
}

TEST_CASE("postcondition and exit invariant violations") {
    World w;
    auto& c = w.make();
    c.bad = true;
    auto out = w.engine.call(c, "inc");
    REQUIRE(out.violations.size() == 1);
    CHECK(out.violations[0].kind == ViolationKind::postcondition);
    CHECK(out.violations[0].clause == "value = old value + 1");

    auto& d = w.make();
    out = w.engine.call(d, "sink");
    REQUIRE(out.violations.size() == 1);
    CHECK(out.violations[0].kind == ViolationKind::invariant_exit);
    CHECK(out.violations[0].clause == "value >= 0");

    // a later call on the broken object fails on entry and never runs
    out = w.engine.call(d, "inc");
    REQUIRE(out.violations.size() == 1);
    CHECK(out.violations[0].kind == ViolationKind::invariant_entry);
    CHECK(d.value == -1);
}

TEST_CASE("modify clauses become frame postconditions") {
    World w;
    const auto& set = *w.suite.at("COUNTER").routine("set");
    REQUIRE(set.frame.size() == 1);
    CHECK(set.frame[0].name == "aux = old aux");
    CHECK(set.frame[0].derived_frame);
    CHECK(w.suite.at("COUNTER").routine("get")->frame.size() == 2);
    // no modify clause: no frame
    CHECK(w.suite.at("COUNTER").routine("sink")->frame.empty());

    auto& c = w.make();
    c.bad = true;
    auto out = w.engine.call(c, "set", {mint(4)});
    REQUIRE(out.violations.size() == 1);
    CHECK(out.violations[0].kind == ViolationKind::frame);
    CHECK(out.violations[0].clause == "aux = old aux");
}

TEST_CASE("unknown modify query is a definition error") {
    SpecSuite s;
    auto spec = counter_spec();
    spec.routine("inc")->modify = std::vector<ModifyEntry>{{Role::target(), "nope"}};
    s.add(std::move(spec));
    CHECK_THROWS_AS(s.bind(), SpecDefinitionError);
}

TEST_CASE("depend skips clauses whose attached object is open") {
    // `unpair` drops the target's link before telling the partner. On entry
    // to the partner's `adopt` the back-link clause is false, but the object
    // it depends on is open.
    World guarded(true);
    auto& a = guarded.make();
    auto& b = guarded.make();
    REQUIRE(guarded.engine.call(a, "pair", {ModelValue::object(b.id())}).ok());
    std::vector<std::string> adopt_entry;
    guarded.engine.set_observer([&](const CheckEvent& e) {
        if (e.kind == CheckEvent::Kind::entry_invariant && e.routine == "adopt") adopt_entry.push_back(e.clause);
    });
    CHECK(guarded.engine.call(a, "unpair").ok());
    CHECK(adopt_entry == std::vector<std::string>{"value >= 0"});

    World plain(false);
    auto& c = plain.make();
    auto& d = plain.make();
    REQUIRE(plain.engine.call(c, "pair", {ModelValue::object(d.id())}).ok());
    auto out = plain.engine.call(c, "unpair");
    REQUIRE(out.violations.size() == 1);
    CHECK(out.violations[0].kind == ViolationKind::invariant_entry);
    CHECK(out.violations[0].routine == "adopt");
    CHECK(out.violations[0].object == d.id());
    CHECK(out.violations[0].depth == 1);
}

TEST_CASE("exceptions in bodies become crash records") {
    World w;
    auto& c = w.make();
    auto out = w.engine.call(c, "throw");
    REQUIRE(out.violations.size() == 1);
    CHECK(out.violations[0].kind == ViolationKind::model_eval_error);
    CHECK(out.violations[0].clause == "crash");
}

TEST_CASE("snapshots are independent of later mutation") {
    World w;
    auto& c = w.make();
    c.value = 5;
    std::vector<ModelValue> args;
    auto snap = w.engine.snapshot_frame_universe(c, args);
    c.value = 6;
    REQUIRE(snap.find(c.id(), "value") != nullptr);
    CHECK(*snap.find(c.id(), "value") == mint(5));
}
