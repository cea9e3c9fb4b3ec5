#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mbc/containers/bugs.hpp"
#include "mbc/harness/compare.hpp"
#include "mbc/harness/session.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mbc;
using namespace mbc::harness;

namespace {

SessionConfig config(std::string cls, SpecLevel level, std::uint64_t seed, std::uint64_t calls,
                     std::vector<std::string> bugs = {}) {
    SessionConfig c;
    c.class_name = std::move(cls);
    c.level = level;
    c.seed = seed;
    c.max_calls = calls;
    c.bugs = std::move(bugs);
    return c;
}

std::vector<std::string> all_bugs(const std::string& cls) {
    return containers::BugCatalog::standard().ids_for_class(cls);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "mbc_harness_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("configuration validation") {
    auto c = config("LINKED_LIST", SpecLevel::strong, 1, 10);
    CHECK_NOTHROW(c.validate());
    auto bad = c;
    bad.class_name = "NOPE";
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = c;
    bad.wall_secs = 1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = c;
    bad.max_calls.reset();
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = c;
    bad.p_new = 1.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = c;
    bad.bugs = {"ST-1"};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = c;
    bad.alphabet = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("zero budget runs nothing") {
    auto r = run_session(config("LINKED_STACK", SpecLevel::strong, 3, 0, all_bugs("LINKED_STACK")));
    CHECK(r.total_calls == 0);
    CHECK(r.faults.empty());
}

TEST_CASE("call accounting") {
    auto r = run_session(config("ARRAY", SpecLevel::strong, 5, 5000));
    CHECK(r.total_calls == 5000);
    // creations count as valid calls
    CHECK(r.valid_calls + r.invalid_calls == r.total_calls);
    CHECK(r.invalid_calls > 0);
    CHECK(r.invalid_bodies == 0);
    CHECK(r.bodies_entered == r.valid_calls - r.creations);
    CHECK(r.faults.empty());
}

TEST_CASE("p_new = 0 keeps a single object") {
    auto c = config("LINKED_LIST", SpecLevel::strong, 9, 2000);
    c.p_new = 0;
    auto r = run_session(c);
    CHECK(r.creations == 1);
}

TEST_CASE("sessions are reproducible") {
    auto c = config("TWO_WAY_LIST", SpecLevel::strong, 42, 20000, all_bugs("TWO_WAY_LIST"));
    std::vector<SessionEvent> e1, e2;
    auto r1 = run_session(c, &e1);
    auto r2 = run_session(c, &e2);
    CHECK(r1.summary_json().dump() == r2.summary_json().dump());
    REQUIRE(e1.size() == e2.size());
    for (std::size_t i = 0; i < e1.size(); ++i) CHECK(e1[i].to_json().dump() == e2[i].to_json().dump());

    auto other = c;
    other.seed = 43;
    CHECK(run_session(other).summary_json().dump() != r1.summary_json().dump());
}

TEST_CASE("violations are deduplicated by routine, kind and clause") {
    auto r = run_session(config("LINKED_STACK", SpecLevel::strong, 1, 20000, {"ST-1"}));
    REQUIRE(r.faults.size() == 1);
    const auto& f = r.faults[0];
    CHECK(f.key() == "LINKED_STACK.remove [postcondition] sequence = old sequence.tail (2)");
    CHECK(f.occurrences > 1);
    CHECK(f.bug_id == "ST-1");
    CHECK(f.matched_bugs == std::vector<std::string>{"ST-1"});
    CHECK(f.classification == Classification::real);
    REQUIRE(r.faults_over_time.size() == 1);
    CHECK(r.faults_over_time[0].first == f.first_call);
    CHECK(r.bug_firings.at("ST-1") >= f.occurrences);
}

TEST_CASE("undetected corruption taints later violations") {
    // MB-1 corrupts under the weak level without a report; later calls on the
    // corrupted object or with it as argument are inconsistencies.
    auto r = run_session(config("LINKED_LIST", SpecLevel::weak, 1, 100000, {"MB-1"}));
    CHECK(r.count(Classification::real) == 0);
    CHECK(r.bug_firings.at("MB-1") > 0);
}

TEST_CASE("weak and strong levels differ on the same bugs") {
    auto weak = run_session(config("LINKED_SET", SpecLevel::weak, 2, 50000, all_bugs("LINKED_SET")));
    auto strong = run_session(config("LINKED_SET", SpecLevel::strong, 2, 50000, all_bugs("LINKED_SET")));
    CHECK(strong.count(Classification::real) > weak.count(Classification::real));
}

TEST_CASE("reports round-trip through files") {
    auto c = config("ARRAYED_QUEUE", SpecLevel::strong, 4, 5000, all_bugs("ARRAYED_QUEUE"));
    std::vector<SessionEvent> events;
    auto r = run_session(c, &events);
    const auto path = scratch("queue.json");
    write_report(r, events, path.string());
    CHECK(std::filesystem::exists(path.string() + ".events.jsonl"));
    CHECK(std::filesystem::exists(path.string() + ".timing.json"));
    auto back = read_report(path.string());
    CHECK(back.summary_json().dump() == r.summary_json().dump());
    CHECK(back.elapsed_seconds == doctest::Approx(r.elapsed_seconds));

    // the summary holds no wall-clock values
    CHECK(slurp(path).find("seconds") == std::string::npos);
}

TEST_CASE("classification names") {
    for (auto c : {Classification::real, Classification::inconsistency, Classification::specification_suspect})
        CHECK(parse_classification(to_string(c)) == c);
    CHECK(to_string(Classification::specification_suspect) == "specification-suspect");
    CHECK_THROWS(parse_classification("bogus"));
}

TEST_CASE("compare partitions faults and reports throughput") {
    std::vector<ReportPair> pairs;
    for (std::uint64_t seed : {1, 2, 3}) {
        for (const char* cls : {"LINKED_STACK", "ARRAYED_QUEUE"}) {
            pairs.push_back({run_session(config(cls, SpecLevel::weak, seed, 20000, all_bugs(cls))),
                             run_session(config(cls, SpecLevel::strong, seed, 20000, all_bugs(cls)))});
        }
    }
    auto out = compare_sessions(pairs, 5);
    const auto& part = out.at("partition");
    auto has = [](const nlohmann::ordered_json& arr, const std::string& id) {
        return std::find(arr.begin(), arr.end(), id) != arr.end();
    };
    CHECK(has(part.at("strong_only"), "ST-1"));
    CHECK(has(part.at("strong_only"), "QU-3"));
    CHECK(has(part.at("shared"), "QU-1"));
    for (const char* cls : {"LINKED_STACK", "ARRAYED_QUEUE"}) {
        CAPTURE(cls);
        CHECK(out.at("per_class").at(cls).at("throughput_ratio").get<double>() > 0);
    }
    CHECK(out.at("detection").at("ST-1").at("strong_rate").get<double>() == 1.0);
    CHECK(out.at("detection").at("ST-1").at("weak_rate").get<double>() == 0.0);

    auto mismatched = pairs;
    mismatched[0].strong.config.seed = 99;
    CHECK_THROWS_AS(compare_sessions(mismatched), ConfigError);
}

TEST_CASE("manifest paths resolve against the manifest directory") {
    const auto dir = scratch("manifest");
    std::filesystem::create_directories(dir);
    for (auto level : {SpecLevel::weak, SpecLevel::strong}) {
        auto r = run_session(config("LINKED_STACK", level, 1, 1000));
        write_report(r, {}, (dir / (to_string(level) + ".json")).string());
    }
    {
        std::ofstream m(dir / "pairs.txt");
        m << "# weak strong\nweak.json strong.json\n";
    }
    auto pairs = read_manifest((dir / "pairs.txt").string());
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].weak.config.level == SpecLevel::weak);
    CHECK(pairs[0].strong.config.level == SpecLevel::strong);
}
