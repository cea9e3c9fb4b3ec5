#include "mbc/harness/session.hpp"

#include "mbc/containers/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <random>
#include <set>
#include <thread>

namespace mbc::harness {

using containers::BugCatalog;
using containers::BugTrace;
using containers::ContainerObject;

// ---------------------------------------------------------------------------
// Config

void SessionConfig::validate() const {
    if (!containers::is_corpus_class(class_name)) throw ConfigError("unknown class '" + class_name + "'");
    if (max_calls.has_value() == wall_secs.has_value())
        throw ConfigError("exactly one of max_calls and wall_secs must be set");
    if (wall_secs && !(*wall_secs >= 0)) throw ConfigError("wall_secs must be non-negative");
    if (!(p_new >= 0 && p_new <= 1)) throw ConfigError("p_new must lie in [0, 1]");
    if (alphabet < 1) throw ConfigError("alphabet must be positive");
    if (max_pool == 0) throw ConfigError("max_pool must be positive");
    if (max_object_size < 1) throw ConfigError("max_object_size must be positive");
    const auto& catalog = BugCatalog::standard();
    for (const auto& id : bugs) {
        const auto* entry = catalog.find(id);
        if (entry == nullptr) throw ConfigError("unknown bug id '" + id + "'");
        if (entry->class_name != class_name)
            throw ConfigError("bug " + id + " belongs to " + entry->class_name + ", not " + class_name);
    }
}

nlohmann::ordered_json SessionConfig::to_json() const {
    nlohmann::ordered_json j;
    j["class"] = class_name;
    j["spec"] = mbc::to_string(level);
    j["seed"] = seed;
    j["max_calls"] = max_calls ? nlohmann::ordered_json(*max_calls) : nlohmann::ordered_json(nullptr);
    j["wall_secs"] = wall_secs ? nlohmann::ordered_json(*wall_secs) : nlohmann::ordered_json(nullptr);
    j["p_new"] = p_new;
    j["alphabet"] = alphabet;
    j["max_pool"] = max_pool;
    j["max_object_size"] = max_object_size;
    j["bugs"] = bugs;
    return j;
}

SessionConfig SessionConfig::from_json(const nlohmann::json& j) {
    SessionConfig c;
    c.class_name = j.at("class").get<std::string>();
    c.level = parse_spec_level(j.at("spec").get<std::string>());
    c.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("max_calls").is_null()) c.max_calls = j.at("max_calls").get<std::uint64_t>();
    if (!j.at("wall_secs").is_null()) c.wall_secs = j.at("wall_secs").get<double>();
    c.p_new = j.at("p_new").get<double>();
    c.alphabet = j.at("alphabet").get<int>();
    c.max_pool = j.at("max_pool").get<std::size_t>();
    c.max_object_size = j.at("max_object_size").get<std::int64_t>();
    c.bugs = j.at("bugs").get<std::vector<std::string>>();
    return c;
}

std::string to_string(Classification c) {
    switch (c) {
    case Classification::real: return "real";
    case Classification::inconsistency: return "inconsistency";
    case Classification::specification_suspect: return "specification-suspect";
    }
    return "?";
}

Classification parse_classification(std::string_view text) {
    if (text == "real") return Classification::real;
    if (text == "inconsistency") return Classification::inconsistency;
    if (text == "specification-suspect") return Classification::specification_suspect;
    throw ConfigError("unknown classification '" + std::string(text) + "'");
}

std::string FaultRecord::key() const {
    return class_name + "." + routine + " [" + mbc::to_string(kind) + "] " + clause;
}

// ---------------------------------------------------------------------------
// Session

namespace {

ViolationKind parse_kind(std::string_view s) {
    for (auto k : {ViolationKind::precondition, ViolationKind::invariant_entry, ViolationKind::invariant_exit,
                   ViolationKind::postcondition, ViolationKind::frame, ViolationKind::model_eval_error})
        if (mbc::to_string(k) == s) return k;
    throw ConfigError("unknown violation kind '" + std::string(s) + "'");
}

Blame parse_blame(std::string_view s) {
    if (s == "caller") return Blame::caller;
    if (s == "callee") return Blame::callee;
    throw ConfigError("unknown blame '" + std::string(s) + "'");
}

bool clause_is_experimental(const SpecSuite& suite, const Violation& v) {
    const ClassSpec* cls = suite.find(v.class_name);
    if (cls == nullptr) return false;
    for (const auto& inv : cls->invariants)
        if (inv.name == v.clause) return inv.experimental;
    if (const RoutineSpec* r = cls->routine(v.routine)) {
        for (const auto& p : r->postconditions)
            if (p.name == v.clause) return p.experimental;
    }
    return false;
}

class Session {
public:
    Session(const SessionConfig& config, std::vector<SessionEvent>* events)
        : config_(config),
          events_(events),
          suite_(containers::make_suite(config.level)),
          spec_(suite_.at(config.class_name)),
          trace_(std::set<std::string, std::less<>>(config.bugs.begin(), config.bugs.end())),
          rng_(config.seed) {
        engine_.set_harness_mode(true);
        trace_.attach(engine_);
        engine_.set_observer([this](const CheckEvent& e) {
            if (e.kind == CheckEvent::Kind::body && e.call_ordinal == engine_.top_level_ordinal()) body_seen_ = true;
        });
        for (const auto& r : spec_.routines)
            if (r.exported) routines_.push_back(&r);
        report_.config = config;
    }

    SessionReport run() {
        using clock = std::chrono::steady_clock;
        start_ = clock::now();
        const auto deadline = config_.wall_secs
                                  ? start_ + std::chrono::duration_cast<clock::duration>(
                                                 std::chrono::duration<double>(*config_.wall_secs))
                                  : clock::time_point::max();
        for (std::uint64_t steps = 0;; ++steps) {
            if (config_.max_calls && report_.total_calls >= *config_.max_calls) break;
            if (config_.wall_secs && steps % 64 == 0 && clock::now() >= deadline) break;
            step();
        }
        report_.elapsed_seconds = elapsed();
        for (const auto& f : trace_.firings()) ++report_.bug_firings[f.id];
        return std::move(report_);
    }

private:
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    std::uint64_t uniform(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
    bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }

    void step() {
        if (pool_.empty() || (pool_.size() < config_.max_pool && chance(config_.p_new))) {
            create();
            return;
        }
        ContainerObject& target = *pool_[uniform(pool_.size())];
        const RoutineSpec& routine = *routines_[uniform(routines_.size())];
        std::vector<ModelValue> args;
        std::vector<ObjectId> involved{target.id()};
        args.reserve(routine.params.size());
        for (const auto& p : routine.params) {
            if (p.element) {
                args.push_back(mint(std::uniform_int_distribution<std::int64_t>(1, config_.alphabet)(rng_)));
            } else if (p.kind == Param::Kind::integer) {
                args.push_back(mint(integer_argument(target.size_hint())));
            } else {
                involved.push_back(reference_argument().id());
                args.push_back(ModelValue::object(involved.back()));
            }
        }
        ++report_.total_calls;
        body_seen_ = false;
        const std::uint64_t first_ordinal = engine_.call_count() + 1;
        auto outcome = engine_.call(target, routine.name, std::move(args));
        if (body_seen_) ++report_.bodies_entered;
        if (outcome.invalid) {
            ++report_.invalid_calls;
            if (body_seen_) ++report_.invalid_bodies;
            return;
        }
        ++report_.valid_calls;
        after_call(involved, outcome, first_ordinal);
        if (target.size_hint() > config_.max_object_size) evict(target.id());
    }

    std::int64_t integer_argument(std::int64_t count) {
        if (chance(0.5)) {
            const std::int64_t boundary[] = {0, 1, -1, count - 1, count, count + 1};
            return boundary[uniform(6)];
        }
        return std::uniform_int_distribution<std::int64_t>(-10, 10)(rng_);
    }

    ContainerObject& reference_argument() {
        if (!pool_.empty() && !chance(config_.p_new)) return *pool_[uniform(pool_.size())];
        return create();
    }

    ContainerObject& create() {
        ContainerObject& obj = containers::create_object(engine_, spec_, trace_);
        ++report_.total_calls;
        ++report_.creations;
        const std::uint64_t first_ordinal = engine_.call_count() + 1;
        auto outcome = engine_.check_creation(obj);
        ++report_.valid_calls;
        if (pool_.size() < config_.max_pool) pool_.push_back(&obj);
        after_call({obj.id()}, outcome, first_ordinal);
        return obj;
    }

    void evict(ObjectId id) {
        pool_.erase(std::remove_if(pool_.begin(), pool_.end(), [&](ContainerObject* o) { return o->id() == id; }),
                    pool_.end());
    }

    /// `involved` holds the receiver followed by the reference arguments.
    void after_call(const std::vector<ObjectId>& involved, const CallOutcome& outcome,
                    std::uint64_t first_ordinal) {
        std::vector<const containers::BugFiring*> fired;
        const auto& all = trace_.firings();
        for (auto it = all.begin() + static_cast<std::ptrdiff_t>(seen_firings_); it != all.end(); ++it)
            if (it->call_ordinal >= first_ordinal) fired.push_back(&*it);
        seen_firings_ = all.size();

        bool quarantine = false;
        for (const auto& v : outcome.violations) {
            if (v.blame == Blame::callee || v.depth > 0) quarantine = true;
            fold(v, involved, fired);
        }
        if (quarantine) evict(involved.front());
        // Objects touched by a fault are suspect in every later call.
        for (const auto* f : fired) tainted_.insert(f->object);
    }

    bool any_tainted(const std::vector<ObjectId>& involved, ObjectId violator) const {
        if (tainted_.contains(violator)) return true;
        return std::any_of(involved.begin(), involved.end(), [&](ObjectId id) { return tainted_.contains(id); });
    }

    std::optional<std::string> match_bug(const Violation& v,
                                         const std::vector<const containers::BugFiring*>& fired) const {
        if (fired.empty()) return std::nullopt;
        const auto& catalog = BugCatalog::standard();
        for (const auto* f : fired) {
            const auto* entry = catalog.find(f->id);
            if (entry != nullptr && entry->routine == v.routine) return f->id;
        }
        return fired.front()->id;
    }

    void fold(const Violation& v, const std::vector<ObjectId>& involved,
              const std::vector<const containers::BugFiring*>& fired) {
        Classification c = Classification::real;
        if (clause_is_experimental(suite_, v))
            c = Classification::specification_suspect;
        else if (any_tainted(involved, v.object))
            c = Classification::inconsistency;
        auto bug = match_bug(v, fired);

        FaultRecord probe;
        probe.class_name = v.class_name;
        probe.routine = v.routine;
        probe.clause = v.clause;
        probe.kind = v.kind;
        const std::string key = probe.key();
        auto it = index_.find(key);
        bool is_new = it == index_.end();
        auto note_match = [&](FaultRecord& rec) {
            if (c != Classification::real || !bug) return;
            auto pos = std::lower_bound(rec.matched_bugs.begin(), rec.matched_bugs.end(), *bug);
            if (pos == rec.matched_bugs.end() || *pos != *bug) rec.matched_bugs.insert(pos, *bug);
        };
        if (is_new) {
            probe.blame = v.blame;
            probe.first_call = report_.total_calls;
            probe.first_seconds = elapsed();
            probe.occurrences = 1;
            probe.bug_id = bug;
            probe.classification = c;
            note_match(probe);
            index_.emplace(key, report_.faults.size());
            report_.faults.push_back(std::move(probe));
            report_.faults_over_time.emplace_back(report_.total_calls, report_.faults.size());
        } else {
            auto& rec = report_.faults[it->second];
            ++rec.occurrences;
            note_match(rec);
            // A later direct observation upgrades an inconsistency to a real fault.
            if (rec.classification == Classification::inconsistency && c == Classification::real) {
                rec.classification = c;
                rec.bug_id = bug;
            }
        }
        if (events_ != nullptr) events_->push_back(SessionEvent{report_.total_calls, v, c, bug, is_new});
    }

    const SessionConfig& config_;
    std::vector<SessionEvent>* events_;
    SpecSuite suite_;
    const ClassSpec& spec_;
    BugTrace trace_;
    Engine engine_;
    std::mt19937_64 rng_;
    std::vector<const RoutineSpec*> routines_;
    std::vector<ContainerObject*> pool_;
    std::set<ObjectId> tainted_;
    std::map<std::string, std::size_t> index_;
    std::size_t seen_firings_ = 0;
    bool body_seen_ = false;
    std::chrono::steady_clock::time_point start_;
    SessionReport report_;
};

} // namespace

SessionReport run_session(const SessionConfig& config, std::vector<SessionEvent>* events) {
    config.validate();
    Session session(config, events);
    return session.run();
}

std::vector<SessionReport> run_sessions(const std::vector<SessionConfig>& configs, unsigned threads) {
    for (const auto& c : configs) c.validate();
    std::vector<SessionReport> out(configs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) out[i] = run_session(configs[i]);
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

// ---------------------------------------------------------------------------
// Serialization

const FaultRecord* SessionReport::find(std::string_view key) const {
    for (const auto& f : faults)
        if (f.key() == key) return &f;
    return nullptr;
}

std::size_t SessionReport::count(Classification c) const {
    return static_cast<std::size_t>(
        std::count_if(faults.begin(), faults.end(), [&](const FaultRecord& f) { return f.classification == c; }));
}

nlohmann::ordered_json SessionReport::summary_json() const {
    nlohmann::ordered_json j;
    j["config"] = config.to_json();
    j["total_calls"] = total_calls;
    j["valid_calls"] = valid_calls;
    j["invalid_calls"] = invalid_calls;
    j["creations"] = creations;
    j["bodies_entered"] = bodies_entered;
    j["invalid_bodies"] = invalid_bodies;
    auto faults_j = nlohmann::ordered_json::array();
    for (const auto& f : faults) {
        nlohmann::ordered_json r;
        r["class"] = f.class_name;
        r["routine"] = f.routine;
        r["clause"] = f.clause;
        r["kind"] = mbc::to_string(f.kind);
        r["blame"] = mbc::to_string(f.blame);
        r["first_call"] = f.first_call;
        r["occurrences"] = f.occurrences;
        r["bug"] = f.bug_id ? nlohmann::ordered_json(*f.bug_id) : nlohmann::ordered_json(nullptr);
        r["matched_bugs"] = f.matched_bugs;
        r["classification"] = to_string(f.classification);
        faults_j.push_back(std::move(r));
    }
    j["faults"] = std::move(faults_j);
    auto series = nlohmann::ordered_json::array();
    for (const auto& [call, n] : faults_over_time) series.push_back({call, n});
    j["faults_over_time"] = std::move(series);
    nlohmann::ordered_json firings = nlohmann::ordered_json::object();
    for (const auto& [id, n] : bug_firings) firings[id] = n;
    j["bug_firings"] = std::move(firings);
    return j;
}

nlohmann::ordered_json SessionReport::timing_json() const {
    nlohmann::ordered_json j;
    j["elapsed_seconds"] = elapsed_seconds;
    j["calls_per_second"] = calls_per_second();
    auto first = nlohmann::ordered_json::array();
    for (const auto& f : faults) first.push_back(f.first_seconds);
    j["fault_first_seconds"] = std::move(first);
    return j;
}

SessionReport SessionReport::from_json(const nlohmann::json& s, const nlohmann::json* timing) {
    SessionReport r;
    r.config = SessionConfig::from_json(s.at("config"));
    r.total_calls = s.at("total_calls").get<std::uint64_t>();
    r.valid_calls = s.at("valid_calls").get<std::uint64_t>();
    r.invalid_calls = s.at("invalid_calls").get<std::uint64_t>();
    r.creations = s.at("creations").get<std::uint64_t>();
    r.bodies_entered = s.at("bodies_entered").get<std::uint64_t>();
    r.invalid_bodies = s.at("invalid_bodies").get<std::uint64_t>();
    for (const auto& f : s.at("faults")) {
        FaultRecord rec;
        rec.class_name = f.at("class").get<std::string>();
        rec.routine = f.at("routine").get<std::string>();
        rec.clause = f.at("clause").get<std::string>();
        rec.kind = parse_kind(f.at("kind").get<std::string>());
        rec.blame = parse_blame(f.at("blame").get<std::string>());
        rec.first_call = f.at("first_call").get<std::uint64_t>();
        rec.occurrences = f.at("occurrences").get<std::uint64_t>();
        if (!f.at("bug").is_null()) rec.bug_id = f.at("bug").get<std::string>();
        rec.matched_bugs = f.at("matched_bugs").get<std::vector<std::string>>();
        rec.classification = parse_classification(f.at("classification").get<std::string>());
        r.faults.push_back(std::move(rec));
    }
    for (const auto& p : s.at("faults_over_time"))
        r.faults_over_time.emplace_back(p.at(0).get<std::uint64_t>(), p.at(1).get<std::uint64_t>());
    for (const auto& [id, n] : s.at("bug_firings").items()) r.bug_firings[id] = n.get<std::uint64_t>();
    if (timing != nullptr) {
        r.elapsed_seconds = timing->at("elapsed_seconds").get<double>();
        const auto& first = timing->at("fault_first_seconds");
        for (std::size_t i = 0; i < r.faults.size() && i < first.size(); ++i)
            r.faults[i].first_seconds = first[i].get<double>();
    }
    return r;
}

nlohmann::ordered_json SessionEvent::to_json() const {
    nlohmann::ordered_json j;
    j["call"] = call;
    j["class"] = violation.class_name;
    j["routine"] = violation.routine;
    j["clause"] = violation.clause;
    j["kind"] = mbc::to_string(violation.kind);
    j["blame"] = mbc::to_string(violation.blame);
    j["depth"] = violation.depth;
    j["object"] = violation.object.token;
    j["classification"] = to_string(classification);
    j["bug"] = bug_id ? nlohmann::ordered_json(*bug_id) : nlohmann::ordered_json(nullptr);
    j["new"] = new_fault;
    if (!violation.detail.empty()) j["detail"] = violation.detail;
    return j;
}

void write_report(const SessionReport& report, const std::vector<SessionEvent>& events, const std::string& path) {
    auto open = [](const std::string& p) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw ConfigError("cannot write '" + p + "'");
        return out;
    };
    {
        auto out = open(path);
        out << report.summary_json().dump(2) << '\n';
    }
    {
        auto out = open(path + ".events.jsonl");
        for (const auto& e : events) out << e.to_json().dump() << '\n';
    }
    {
        auto out = open(path + ".timing.json");
        out << report.timing_json().dump(2) << '\n';
    }
}

SessionReport read_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read report '" + path + "'");
    nlohmann::json summary;
    try {
        in >> summary;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed report '" + path + "': " + e.what());
    }
    std::ifstream tin(path + ".timing.json");
    if (tin) {
        nlohmann::json timing;
        tin >> timing;
        return SessionReport::from_json(summary, &timing);
    }
    return SessionReport::from_json(summary);
}

} // namespace mbc::harness
