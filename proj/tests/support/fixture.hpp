#pragma once

// Engine, bug switches and a bound suite for driving containers by hand.

#include "mbc/containers/corpus.hpp"

#include <set>
#include <string>
#include <vector>

namespace mbc::testing {

class Fixture {
public:
    explicit Fixture(SpecLevel level, std::set<std::string, std::less<>> bugs = {}, bool harness = false)
        : suite(containers::make_suite(level)), trace(std::move(bugs)) {
        trace.attach(engine);
        engine.set_harness_mode(harness);
    }
    Fixture(const Fixture&) = delete;
    Fixture& operator=(const Fixture&) = delete;

    /// Fresh object; fails loudly if its creation check does not pass.
    containers::ContainerObject& make(std::string_view cls) {
        auto& obj = containers::create_object(engine, suite.at(cls), trace);
        auto out = engine.check_creation(obj);
        if (!out.ok()) throw std::logic_error("creation check failed for " + std::string(cls));
        return obj;
    }

    /// Calls routine `r` once per value, stopping at the first failure.
    CallOutcome fill(Object& obj, std::string_view r, const std::vector<std::int64_t>& values) {
        CallOutcome last;
        for (auto v : values) {
            last = engine.call(obj, r, {mint(v)});
            if (!last.ok()) break;
        }
        return last;
    }

    static ModelValue ref(const Object& o) { return ModelValue::object(o.id()); }

    SpecSuite suite;
    containers::BugTrace trace;
    Engine engine;
};

/// Names of the violated clauses, in order.
inline std::vector<std::string> clauses(const CallOutcome& out) {
    std::vector<std::string> v;
    for (const auto& x : out.violations) v.push_back(x.clause);
    return v;
}

} // namespace mbc::testing
