// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include "mbc/completeness.hpp"
#include "mbc/containers/binary_tree.hpp"
#include "mbc/containers/corpus.hpp"
#include "mbc/harness/compare.hpp"
#include "mbc/harness/session.hpp"
#include "support/fixture.hpp"
#include "support/model_properties.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#ifndef MBC_TEST_CLI
#error "MBC_TEST_CLI must name the mbc-test executable"
#endif

using namespace mbc;
using namespace mbc::containers;
using mbc::testing::Fixture;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : " | ") + s;
    return out;
}

std::string fmt(double x, int digits = 2) {
    std::ostringstream os;
    os.precision(digits);
    os << std::fixed << x;
    return os.str();
}

const BugEntry& catalog(std::string_view id) { return *BugCatalog::standard().find(id); }

std::vector<std::int64_t> letters(std::string_view word) { return {word.begin(), word.end()}; }

// 1 ------------------------------------------------------------------------

Verdict merge_right_scenario() {
    const auto t0 = Clock::now();
    std::vector<std::string> problems;
    for (auto level : {SpecLevel::weak, SpecLevel::strong}) {
        Fixture fx(level, {"MB-1"});
        auto& list = fx.make("LINKED_LIST");
        auto& other = fx.make("LINKED_LIST");
        fx.fill(list, "extend", letters("fold"));
        fx.fill(other, "extend", letters("un"));
        auto out = fx.engine.call(list, "merge_right", {Fixture::ref(other)});
        const auto got = testing::clauses(out);
        if (level == SpecLevel::weak && !got.empty()) problems.push_back("weak reported " + join(got));
        if (level == SpecLevel::strong && got != std::vector<std::string>{catalog("MB-1").strong_clause})
            problems.push_back("strong reported [" + join(got) + "]");
        if (fx.trace.firings().size() != 1) problems.push_back("bug did not fire exactly once");
    }
    const double secs = seconds_since(t0);
    if (secs >= 1.0) problems.push_back("took " + fmt(secs) + " s");
    if (!problems.empty()) return {false, join(problems)};
    return {true, "weak silent; strong fails only '" + catalog("MB-1").strong_clause + "' (" + fmt(secs, 4) + " s)"};
}

// 2, 3, 9 share one sweep ---------------------------------------------------

struct Sweep {
    std::vector<harness::ReportPair> pairs;
    nlohmann::ordered_json comparison;
    double wall = 0;
    double cpu = 0;
    fs::path dir;
};

Sweep run_sweep(std::uint64_t seeds, std::uint64_t calls, const fs::path& dir) {
    Sweep s;
    s.dir = dir;
    std::vector<harness::SessionConfig> configs;
    for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
        for (const auto& cls : corpus_class_names()) {
            for (auto level : {SpecLevel::weak, SpecLevel::strong}) {
                harness::SessionConfig c;
                c.class_name = cls;
                c.level = level;
                c.seed = seed;
                c.max_calls = calls;
                c.bugs = BugCatalog::standard().ids_for_class(cls);
                configs.push_back(std::move(c));
            }
        }
    }
    const auto t0 = Clock::now();
    const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    auto reports = harness::run_sessions(configs, threads);
    s.wall = seconds_since(t0);

    fs::create_directories(dir);
    std::ofstream manifest(dir / "pairs.txt");
    for (std::size_t i = 0; i + 1 < reports.size(); i += 2) {
        s.cpu += reports[i].elapsed_seconds + reports[i + 1].elapsed_seconds;
        const std::string stem = reports[i].config.class_name + "_" + std::to_string(reports[i].config.seed);
        harness::write_report(reports[i], {}, (dir / (stem + "_weak.json")).string());
        harness::write_report(reports[i + 1], {}, (dir / (stem + "_strong.json")).string());
        manifest << stem << "_weak.json " << stem << "_strong.json\n";
        s.pairs.push_back({std::move(reports[i]), std::move(reports[i + 1])});
    }
    s.comparison = harness::compare_sessions(s.pairs);
    return s;
}

Verdict oracle_strength(const Sweep& s) {
    const auto& agg = s.comparison.at("aggregate");
    const auto weak = agg.at("weak").at("unique_real").get<std::size_t>();
    const auto strong = agg.at("strong").at("unique_real").get<std::size_t>();
    std::string detail = "unique real faults weak " + std::to_string(weak) + ", strong " + std::to_string(strong) +
                         " over " + std::to_string(s.pairs.size()) + " pairs; session time " + fmt(s.cpu, 1) +
                         " s summed";
    const bool pass = strong >= 2 * weak && s.cpu < 600;
    return {pass, detail};
}

Verdict strong_only_detection(const Sweep& s) {
    const auto& det = s.comparison.at("detection");
    std::vector<std::string> low;
    std::size_t n = 0;
    double worst = 1.0;
    for (const auto& bug : BugCatalog::standard().entries()) {
        if (bug.detectability != Detectability::strong_only) continue;
        ++n;
        if (!det.contains(bug.id)) {
            low.push_back(bug.id + " absent");
            continue;
        }
        const double weak = det.at(bug.id).at("weak_rate").get<double>();
        const double strong = det.at(bug.id).at("strong_rate").get<double>();
        worst = std::min(worst, strong);
        if (strong < 0.9 || weak > 0) low.push_back(bug.id + " weak " + fmt(weak) + " strong " + fmt(strong));
    }
    if (!low.empty()) return {false, join(low)};
    return {true, std::to_string(n) + " strong-only bugs; lowest strong rate " + fmt(worst) + ", weak rate 0"};
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(MBC_TEST_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Verdict overhead_report(const Sweep& s) {
    const auto out = s.dir / "comparison.json";
    const int code = run_cli("compare --pairs " + (s.dir / "pairs.txt").string() + " --out " + out.string());
    if (code != 0 && code != 1) return {false, "compare exited with " + std::to_string(code)};
    const auto j = nlohmann::json::parse(slurp(out));
    std::vector<std::string> parts;
    bool pass = true;
    for (const auto& cls : corpus_class_names()) {
        const auto& r = j.at("per_class").at(cls).at("throughput_ratio");
        const double v = r.is_number() ? r.get<double>() : 0.0;
        pass = pass && v > 0;
        parts.push_back(cls + " " + fmt(v));
    }
    return {pass, "strong/weak calls per second: " + join(parts)};
}

// 4 ------------------------------------------------------------------------

Verdict frame_checking() {
    Fixture fx(SpecLevel::strong, {"MF-1"});
    const RoutineSpec& rs = *fx.suite.at("LINKED_LIST").routine("merge_right");
    std::vector<std::string> problems;
    for (const auto& p : rs.postconditions)
        if (p.name.find("sequence") == std::string::npos) problems.push_back("hand-written clause '" + p.name + "'");

    auto& list = fx.make("LINKED_LIST");
    auto& other = fx.make("LINKED_LIST");
    fx.fill(list, "extend", letters("fold"));
    fx.fill(other, "extend", letters("un"));
    fx.engine.call(list, "go_i_th", {mint(2)});
    auto out = fx.engine.call(list, "merge_right", {Fixture::ref(other)});
    if (out.violations.size() != 1) {
        problems.push_back("reported [" + join(testing::clauses(out)) + "]");
    } else {
        const auto& v = out.violations[0];
        const bool derived = std::any_of(rs.frame.begin(), rs.frame.end(), [&](const Postcondition& p) {
            return p.name == v.clause && p.derived_frame;
        });
        if (v.kind != ViolationKind::frame || !derived) problems.push_back("caught by '" + v.clause + "'");
    }
    if (!problems.empty()) return {false, join(problems)};
    return {true, "strong merge_right (postcondition on sequence only, modify sequence) caught by derived '" +
                      out.violations[0].clause + "'"};
}

// 5 ------------------------------------------------------------------------

struct TreeRun {
    std::vector<Violation> violations;
};

TreeRun prune_left_replay(bool with_depend, std::set<std::string, std::less<>> bugs) {
    SpecSuite suite;
    auto spec = make_class_spec("BINARY_TREE", SpecLevel::strong);
    if (!with_depend)
        for (auto& inv : spec.invariants) inv.depend.clear();
    suite.add(std::move(spec));
    suite.bind();
    BugTrace trace(std::move(bugs));
    Engine engine;
    trace.attach(engine);
    auto& parent = create_object(engine, suite.at("BINARY_TREE"), trace);
    auto& child = create_object(engine, suite.at("BINARY_TREE"), trace);
    TreeRun run;
    for (auto* obj : {&parent, &child}) {
        auto out = engine.check_creation(*obj);
        run.violations.insert(run.violations.end(), out.violations.begin(), out.violations.end());
    }
    for (auto out : {engine.call(parent, "put_left", {Fixture::ref(child)}), engine.call(parent, "prune_left")})
        run.violations.insert(run.violations.end(), out.violations.begin(), out.violations.end());
    return run;
}

Verdict invariant_semantics() {
    std::vector<std::string> problems;
    const auto guarded = prune_left_replay(true, {});
    if (!guarded.violations.empty()) problems.push_back("with depend: " + guarded.violations[0].clause);

    const auto plain = prune_left_replay(false, {});
    const auto spurious = std::count_if(plain.violations.begin(), plain.violations.end(), [](const Violation& v) {
        return v.kind == ViolationKind::invariant_entry && v.routine == "set_parent";
    });
    if (spurious < 1) problems.push_back("without depend: no entry violation at set_parent");

    const auto mutant = prune_left_replay(true, {"PL-1"});
    if (mutant.violations.size() != 1 || mutant.violations[0].kind != ViolationKind::invariant_exit)
        problems.push_back("PL-1 produced " + std::to_string(mutant.violations.size()) + " violations");

    if (!problems.empty()) return {false, join(problems)};
    return {true, "depend: 0 violations; no depend: " + std::to_string(spurious) +
                      " entry violation at set_parent; PL-1: one exit violation '" + mutant.violations[0].clause +
                      "' in " + mutant.violations[0].routine};
}

// 6 ------------------------------------------------------------------------

Verdict completeness() {
    const auto t0 = Clock::now();
    std::vector<std::string> problems;
    std::string witness;
    std::size_t checked = 0;
    for (auto level : {SpecLevel::weak, SpecLevel::strong}) {
        SpecSuite suite = make_suite(level);
        const ClassSpec& cls = suite.at("LINKED_LIST");
        const RoutineSpec& rs = *cls.routine("merge_right");
        const auto result = completeness_probe(cls, rs, make_probe_domain(cls, rs, 3, 2));
        checked += result.pre_states_checked;
        if (level == SpecLevel::weak) {
            if (result.complete || !result.witness || result.witness->post_states.size() != 2)
                problems.push_back("weak spec not shown incomplete with two post-states");
            else
                witness = result.witness->pre_state + " admits " + result.witness->post_states[0] + " and " +
                          result.witness->post_states[1];
        } else if (!result.complete) {
            problems.push_back("strong spec incomplete at " + result.witness->pre_state);
        }
    }
    const double secs = seconds_since(t0);
    if (secs >= 30) problems.push_back("took " + fmt(secs) + " s");
    if (!problems.empty()) return {false, join(problems)};
    return {true, "weak incomplete (" + witness + "); strong complete; " + std::to_string(checked) +
                      " pre-states in " + fmt(secs) + " s"};
}

// 7 ------------------------------------------------------------------------

Verdict model_oracle() {
    const auto report = testing::run_model_properties(6, 3, 2);
    if (!report.counterexamples.empty())
        return {false, std::to_string(report.counterexamples.size()) + " counterexamples, first: " +
                           report.counterexamples.front()};
    return {true, std::to_string(report.checks) + " checks, 0 counterexamples"};
}

// 8 ------------------------------------------------------------------------

Verdict determinism(const fs::path& dir) {
    fs::create_directories(dir);
    std::vector<std::string> problems;
    const std::string base =
        "run --class TWO_WAY_LIST --spec strong --seed 17 --max-calls 20000 --bugs all --report ";
    const auto a = dir / "a.json";
    const auto b = dir / "b.json";
    for (const auto& p : {a, b}) {
        const int code = run_cli(base + p.string());
        if (code != 0 && code != 1) problems.push_back("run exited with " + std::to_string(code));
    }
    for (const std::string suffix : {"", ".events.jsonl"}) {
        const auto x = slurp(a.string() + suffix);
        const auto y = slurp(b.string() + suffix);
        if (x.empty() || x != y) problems.push_back("report" + suffix + " differs");
    }
    if (!problems.empty()) return {false, join(problems)};
    return {true, "summary and event log byte-identical (" + std::to_string(slurp(a).size()) + " + " +
                      std::to_string(slurp(a.string() + ".events.jsonl").size()) + " bytes)"};
}

} // namespace

int main(int argc, char** argv) {
    std::uint64_t seeds = 10;
    std::uint64_t calls = 100000;
    if (argc >= 3) {
        seeds = std::stoull(argv[1]);
        calls = std::stoull(argv[2]);
    }
    const fs::path work = fs::temp_directory_path() / "mbc_acceptance";
    fs::remove_all(work);

    int failures = 0;
    auto report = [&](int n, const std::string& title, const std::function<Verdict()>& check) {
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << n << " " << title << ": " << v.detail
                  << std::endl;
        failures += v.pass ? 0 : 1;
    };

    report(1, "merge_right directed scenario", merge_right_scenario);
    const Sweep sweep = run_sweep(seeds, calls, work / "sweep");
    report(2, "oracle strength", [&] { return oracle_strength(sweep); });
    report(3, "strong-only detection", [&] { return strong_only_detection(sweep); });
    report(4, "frame checking", frame_checking);
    report(5, "invariant semantics", invariant_semantics);
    report(6, "completeness probe", completeness);
    report(7, "model oracle equivalence", model_oracle);
    report(8, "determinism", [&] { return determinism(work / "determinism"); });
    report(9, "overhead report", [&] { return overhead_report(sweep); });
    return failures == 0 ? 0 : 1;
}
