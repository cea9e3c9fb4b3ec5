#include "mbc/harness/compare.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace mbc::harness {

std::vector<ReportPair> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read manifest '" + path + "'");
    const auto base = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return (fp.is_absolute() ? fp : base / fp).string();
    };
    std::vector<ReportPair> pairs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string weak, strong, extra;
        if (!(fields >> weak)) continue;
        if (!(fields >> strong) || (fields >> extra))
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected two report paths");
        pairs.push_back(ReportPair{read_report(resolve(weak)), read_report(resolve(strong))});
    }
    if (pairs.empty()) throw ConfigError("manifest '" + path + "' lists no pairs");
    return pairs;
}

std::string fault_identity(const FaultRecord& f) { return f.bug_id ? *f.bug_id : f.class_name + "." + f.routine; }

namespace {

void check_pair(const ReportPair& p, std::size_t i) {
    const auto& a = p.weak.config;
    const auto& b = p.strong.config;
    auto sorted = [](std::vector<std::string> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    std::string why;
    if (a.class_name != b.class_name) why = "class";
    else if (a.seed != b.seed) why = "seed";
    else if (a.max_calls != b.max_calls || a.wall_secs != b.wall_secs) why = "budget";
    else if (sorted(a.bugs) != sorted(b.bugs)) why = "bugs";
    if (!why.empty()) throw ConfigError("pair " + std::to_string(i + 1) + " differs in " + why);
}

double median(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

struct LevelStats {
    std::set<std::string> real_keys;
    std::set<std::string> all_keys;
    std::set<std::string> identities;
    std::vector<double> per_session_real;
    std::uint64_t calls = 0;
    double seconds = 0;

    void add(const SessionReport& r) {
        std::size_t real = 0;
        for (const auto& f : r.faults) {
            all_keys.insert(f.key());
            if (f.classification != Classification::real) continue;
            ++real;
            real_keys.insert(f.key());
            identities.insert(fault_identity(f));
        }
        per_session_real.push_back(static_cast<double>(real));
        calls += r.total_calls;
        seconds += r.elapsed_seconds;
    }

    double calls_per_second() const { return seconds > 0 ? calls / seconds : 0.0; }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["unique_real"] = real_keys.size();
        j["unique_all"] = all_keys.size();
        j["median_real_per_session"] = median(per_session_real);
        j["calls"] = calls;
        j["seconds"] = seconds;
        j["calls_per_second"] = calls_per_second();
        return j;
    }
};

nlohmann::ordered_json ratio_or_null(double num, double den) {
    return den > 0 && num > 0 ? nlohmann::ordered_json(num / den) : nlohmann::ordered_json(nullptr);
}

std::uint64_t real_by(const SessionReport& r, std::uint64_t t) {
    return static_cast<std::uint64_t>(std::count_if(r.faults.begin(), r.faults.end(), [&](const FaultRecord& f) {
        return f.classification == Classification::real && f.first_call <= t;
    }));
}

} // namespace

nlohmann::ordered_json compare_sessions(const std::vector<ReportPair>& pairs, std::size_t checkpoints) {
    if (pairs.empty()) throw ConfigError("no report pairs to compare");
    if (checkpoints == 0) checkpoints = 1;
    for (std::size_t i = 0; i < pairs.size(); ++i) check_pair(pairs[i], i);

    std::map<std::string, std::pair<LevelStats, LevelStats>> per_class;
    LevelStats weak_all, strong_all;
    std::map<std::string, std::pair<std::size_t, std::size_t>> detection;  // bug -> sessions (weak, strong)
    std::map<std::string, std::size_t> sessions_with_bug;
    std::uint64_t horizon = 0;
    for (const auto& p : pairs) {
        auto& [w, s] = per_class[p.weak.config.class_name];
        w.add(p.weak);
        s.add(p.strong);
        weak_all.add(p.weak);
        strong_all.add(p.strong);
        horizon = std::max({horizon, p.weak.total_calls, p.strong.total_calls});
        for (const auto& id : p.weak.config.bugs) {
            ++sessions_with_bug[id];
            auto detected = [&](const SessionReport& r) {
                return std::any_of(r.faults.begin(), r.faults.end(), [&](const FaultRecord& f) {
                    return std::find(f.matched_bugs.begin(), f.matched_bugs.end(), id) != f.matched_bugs.end();
                });
            };
            auto& d = detection[id];
            d.first += detected(p.weak) ? 1 : 0;
            d.second += detected(p.strong) ? 1 : 0;
        }
    }

    nlohmann::ordered_json out;
    out["pairs"] = pairs.size();
    out["levels"] = {{"weak", mbc::to_string(pairs.front().weak.config.level)},
                     {"strong", mbc::to_string(pairs.front().strong.config.level)}};

    nlohmann::ordered_json classes = nlohmann::ordered_json::object();
    for (const auto& [name, stats] : per_class) {
        nlohmann::ordered_json c;
        c["sessions"] = stats.first.per_session_real.size();
        c["weak"] = stats.first.to_json();
        c["strong"] = stats.second.to_json();
        c["throughput_ratio"] = ratio_or_null(stats.second.calls_per_second(), stats.first.calls_per_second());
        classes[name] = std::move(c);
    }
    out["per_class"] = std::move(classes);

    nlohmann::ordered_json agg;
    agg["weak"] = weak_all.to_json();
    agg["strong"] = strong_all.to_json();
    agg["real_fault_ratio"] = weak_all.real_keys.empty()
                                  ? nlohmann::ordered_json(nullptr)
                                  : nlohmann::ordered_json(static_cast<double>(strong_all.real_keys.size()) /
                                                           static_cast<double>(weak_all.real_keys.size()));
    agg["throughput_ratio"] = ratio_or_null(strong_all.calls_per_second(), weak_all.calls_per_second());
    out["aggregate"] = std::move(agg);

    nlohmann::ordered_json part;
    std::vector<std::string> strong_only, weak_only, shared;
    for (const auto& id : strong_all.identities)
        (weak_all.identities.contains(id) ? shared : strong_only).push_back(id);
    for (const auto& id : weak_all.identities)
        if (!strong_all.identities.contains(id)) weak_only.push_back(id);
    part["strong_only"] = strong_only;
    part["weak_only"] = weak_only;
    part["shared"] = shared;
    out["partition"] = std::move(part);

    nlohmann::ordered_json det = nlohmann::ordered_json::object();
    for (const auto& [id, d] : detection) {
        const auto n = sessions_with_bug[id];
        det[id] = {{"sessions", n},
                   {"weak_detected", d.first},
                   {"strong_detected", d.second},
                   {"weak_rate", static_cast<double>(d.first) / static_cast<double>(n)},
                   {"strong_rate", static_cast<double>(d.second) / static_cast<double>(n)}};
    }
    out["detection"] = std::move(det);

    // Median over seeds of the real faults found by call t, summed across classes.
    std::map<std::uint64_t, std::vector<const ReportPair*>> by_seed;
    for (const auto& p : pairs) by_seed[p.weak.config.seed].push_back(&p);
    std::vector<std::uint64_t> ts;
    std::vector<double> wm, sm;
    for (std::size_t k = 1; k <= checkpoints; ++k) {
        const std::uint64_t t = (horizon * k + checkpoints - 1) / checkpoints;
        std::vector<double> wv, sv;
        for (const auto& [seed, group] : by_seed) {
            double w = 0, s = 0;
            for (const auto* p : group) {
                w += static_cast<double>(real_by(p->weak, t));
                s += static_cast<double>(real_by(p->strong, t));
            }
            wv.push_back(w);
            sv.push_back(s);
        }
        ts.push_back(t);
        wm.push_back(median(wv));
        sm.push_back(median(sv));
    }
    std::optional<std::uint64_t> crossover;
    for (std::size_t k = ts.size(); k-- > 0;) {
        if (sm[k] > wm[k])
            crossover = ts[k];
        else
            break;
    }
    nlohmann::ordered_json curves;
    curves["checkpoints"] = ts;
    curves["weak_median"] = wm;
    curves["strong_median"] = sm;
    curves["crossover"] = crossover ? nlohmann::ordered_json(*crossover) : nlohmann::ordered_json(nullptr);
    out["curves"] = std::move(curves);
    return out;
}

} // namespace mbc::harness
