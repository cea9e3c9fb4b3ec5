#include "model_properties.hpp"

#include "mbc/model.hpp"

#include <algorithm>
#include <map>

namespace mbc::testing {

namespace {

using Raw = std::vector<std::int64_t>;

std::vector<Raw> all_sequences(int max_len, int alphabet) {
    std::vector<Raw> out{{}};
    std::vector<Raw> layer{{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Raw> next;
        for (const auto& s : layer)
            for (int a = 1; a <= alphabet; ++a) {
                auto t = s;
                t.push_back(a);
                next.push_back(std::move(t));
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

std::string show(const Raw& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "]";
}

Raw raw(const Sequence& s) {
    Raw r;
    for (const auto& v : s.items()) r.push_back(v.as_integer());
    return r;
}

Raw slice(const Raw& s, std::int64_t from, std::int64_t to) {
    const auto n = static_cast<std::int64_t>(s.size());
    from = std::clamp<std::int64_t>(from, 0, n);
    to = std::clamp<std::int64_t>(to, from, n);
    return Raw(s.begin() + from, s.begin() + to);
}

class Checker {
public:
    explicit Checker(PropertyReport& r) : r_(r) {}
    void expect(bool ok, const std::string& what) {
        ++r_.checks;
        if (!ok && r_.counterexamples.size() < 50) r_.counterexamples.push_back(what);
    }

private:
    PropertyReport& r_;
};

bool bag_matches(const Bag& b, const std::map<std::int64_t, std::int64_t>& counts) {
    if (b.entries().size() != counts.size()) return false;
    std::int64_t total = 0;
    for (const auto& [v, n] : counts) {
        if (b.occurrences(mint(v)) != n) return false;
        total += n;
    }
    return b.count() == total;
}

std::map<std::int64_t, std::int64_t> tally(const Raw& s) {
    std::map<std::int64_t, std::int64_t> m;
    for (auto v : s) ++m[v];
    return m;
}

} // namespace

PropertyReport run_model_properties(int max_len, int alphabet, int pair_alphabet) {
    PropertyReport report;
    Checker check(report);

    for (const auto& r : all_sequences(max_len, alphabet)) {
        const Sequence s = int_seq(r);
        const auto n = static_cast<std::int64_t>(r.size());
        const std::string tag = show(r);

        check.expect(s.count() == n, tag + ".count");
        for (std::int64_t i = 1; i <= n; ++i)
            check.expect(s.item(i).as_integer() == r[static_cast<std::size_t>(i - 1)], tag + ".item");

        for (std::int64_t i = -2; i <= n + 2; ++i) {
            const std::string at = tag + " i=" + std::to_string(i);
            const Sequence f = s.front(i);
            const Sequence t = s.tail(i);
            check.expect(raw(f) == slice(r, 0, i), at + " front");
            check.expect(raw(t) == slice(r, i - 1, n), at + " tail");
            check.expect(f.count() == std::clamp<std::int64_t>(i, 0, n), at + " front.count");
            check.expect(s.front(i) + s.tail(i + 1) == s, at + " front(i) + tail(i+1) = s");
            check.expect(s.front(i).front(i) == s.front(i), at + " front idempotent");
            check.expect(s.tail(i).tail(1) == s.tail(i), at + " tail(1) identity");
        }
        check.expect(s.front(n) == s, tag + " front(count) = s");
        check.expect(s.tail(1) == s, tag + " tail(1) = s");
        check.expect(s.front(0).is_empty() && s.tail(n + 1).is_empty(), tag + " empty ends");

        const Bag b = s.to_bag();
        check.expect(bag_matches(b, tally(r)), tag + " to_bag");
        check.expect(b.count() == n, tag + " to_bag.count");
        check.expect(s.reversed().to_bag() == b, tag + " to_bag order-free");
        for (std::int64_t v = 0; v <= alphabet + 1; ++v)
            check.expect(s.occurrences(mint(v)) == std::count(r.begin(), r.end(), v) &&
                             s.has(mint(v)) == (std::find(r.begin(), r.end(), v) != r.end()),
                         tag + " occurrences " + std::to_string(v));
    }

    const auto pairs = all_sequences(max_len, pair_alphabet);
    for (const auto& ra : pairs) {
        const Sequence a = int_seq(ra);
        for (const auto& rb : pairs) {
            const Sequence b = int_seq(rb);
            const std::string tag = show(ra) + "+" + show(rb);
            Raw joined = ra;
            joined.insert(joined.end(), rb.begin(), rb.end());
            const Sequence c = a + b;
            check.expect(raw(c) == joined, tag + " concat");
            check.expect(c.count() == a.count() + b.count(), tag + " concat.count");
            check.expect(c.front(a.count()) == a && c.tail(a.count() + 1) == b, tag + " concat split");
            check.expect(c.to_bag() == a.to_bag().united(b.to_bag()), tag + " to_bag additive");
            check.expect((a + b).to_bag() == (b + a).to_bag(), tag + " to_bag commutes");
            check.expect((a == b) == (ra == rb), tag + " equality");
        }
    }
    return report;
}

} // namespace mbc::testing
