#include "mbc/containers/corpus.hpp"

#include "class_specs.hpp"
#include "mbc/containers/arrayed_queue.hpp"
#include "mbc/containers/binary_tree.hpp"
#include "mbc/containers/cursor_list.hpp"
#include "mbc/containers/cursor_set.hpp"
#include "mbc/containers/linked_stack.hpp"
#include "mbc/containers/resizable_array.hpp"

#include <algorithm>
#include <functional>

namespace mbc::containers {

const std::vector<std::string>& corpus_class_names() {
    static const std::vector<std::string> names{"LINKED_LIST",  "TWO_WAY_LIST",  "ARRAY",      "LINKED_SET",
                                                "LINKED_STACK", "ARRAYED_QUEUE", "BINARY_TREE"};
    return names;
}

bool is_corpus_class(std::string_view name) {
    const auto& n = corpus_class_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

ClassSpec make_class_spec(std::string_view name, SpecLevel level) {
    using namespace detail;
    if (name == "LINKED_LIST") return linked_list_spec(level);
    if (name == "TWO_WAY_LIST") return two_way_list_spec(level);
    if (name == "ARRAY") return array_spec(level);
    if (name == "LINKED_SET") return linked_set_spec(level);
    if (name == "LINKED_STACK") return linked_stack_spec(level);
    if (name == "ARRAYED_QUEUE") return arrayed_queue_spec(level);
    if (name == "BINARY_TREE") return binary_tree_spec(level);
    throw ConfigError("unknown class '" + std::string(name) + "'");
}

SpecSuite make_suite(SpecLevel level) {
    SpecSuite suite;
    for (const auto& name : corpus_class_names()) suite.add(make_class_spec(name, level));
    suite.bind();
    return suite;
}

ContainerObject& create_object(Engine& engine, const ClassSpec& spec, BugTrace& bugs) {
    const auto& n = spec.name;
    if (n == "LINKED_LIST") return engine.create<CursorList>(spec, bugs, false);
    if (n == "TWO_WAY_LIST") return engine.create<CursorList>(spec, bugs, true);
    if (n == "ARRAY") return engine.create<ResizableArray>(spec, bugs);
    if (n == "LINKED_SET") return engine.create<CursorSet>(spec, bugs);
    if (n == "LINKED_STACK") return engine.create<LinkedStack>(spec, bugs);
    if (n == "ARRAYED_QUEUE") return engine.create<ArrayedQueue>(spec, bugs);
    if (n == "BINARY_TREE") return engine.create<BinaryNode>(spec, bugs);
    throw ConfigError("unknown class '" + n + "'");
}

namespace {

/// All sequences over 1..alphabet with length <= max_len, shortest first.
std::vector<Sequence> sequences(int max_len, int alphabet, bool distinct, bool with_default) {
    std::vector<std::int64_t> letters;
    if (with_default) letters.push_back(0);
    for (int a = 1; a <= alphabet; ++a) letters.push_back(a);
    std::vector<Sequence> out;
    std::vector<std::int64_t> cur;
    std::function<void(int)> grow = [&](int len) {
        if (static_cast<int>(cur.size()) == len) {
            out.push_back(int_seq(cur));
            return;
        }
        for (auto x : letters) {
            if (distinct && std::find(cur.begin(), cur.end(), x) != cur.end()) continue;
            cur.push_back(x);
            grow(len);
            cur.pop_back();
        }
    };
    for (int len = 0; len <= max_len; ++len) grow(len);
    return out;
}

/// Integer arguments range over [-1, hi]. Arrays use a tighter bound so
/// that every forced post-state stays within max_len + 3 positions.
int index_high(const ClassSpec& cls, int max_len, int alphabet) {
    const int hi = cls.query("lower") != nullptr ? max_len + 2 : 2 * max_len + 2;
    return std::max(hi, alphabet);
}

struct StateShape {
    bool cursor = false;
    bool lower = false;
    bool count = false;
    bool distinct = false;
};

StateShape shape_of(const ClassSpec& cls) {
    StateShape s;
    s.cursor = cls.query("index") != nullptr;
    s.lower = cls.query("lower") != nullptr;
    s.count = cls.query("count") != nullptr;
    s.distinct = cls.name == "LINKED_SET";
    return s;
}

std::vector<AbstractState> states(const ClassSpec& cls, int max_len, int alphabet, bool post, int index_bound) {
    const auto shape = shape_of(cls);
    const bool with_default = shape.lower;
    std::vector<std::int64_t> lowers{1};
    if (shape.lower && !post) lowers = {0, 1};
    if (shape.lower && post) {
        lowers.clear();
        for (std::int64_t x = -1; x <= index_high(cls, index_bound, alphabet); ++x) lowers.push_back(x);
    }
    std::vector<AbstractState> out;
    for (const auto& s : sequences(max_len, alphabet, shape.distinct, with_default)) {
        const auto n = s.count();
        const std::int64_t max_index = shape.cursor ? n + 1 : 0;
        for (std::int64_t i = 0; i <= max_index; ++i) {
            for (auto lo : lowers) {
                AbstractState st;
                st.queries.emplace("sequence", s);
                if (shape.cursor) st.queries.emplace("index", mint(i));
                if (shape.lower) st.queries.emplace("lower", mint(lo));
                if (shape.count) st.queries.emplace("count", mint(n));
                out.push_back(std::move(st));
            }
        }
    }
    return out;
}

std::vector<ModelValue> index_values(int hi) {
    std::vector<ModelValue> v;
    for (int x = -1; x <= hi; ++x) v.push_back(mint(x));
    return v;
}

} // namespace

ProbeDomain make_probe_domain(const ClassSpec& cls, const RoutineSpec& routine, int max_len, int alphabet) {
    if (max_len < 0 || alphabet < 1) throw ConfigError("probe bounds must be max_len >= 0 and alphabet >= 1");
    if (cls.name == "BINARY_TREE") throw ConfigError("no state enumerator for BINARY_TREE");
    if (!is_corpus_class(cls.name)) throw ConfigError("unknown class '" + cls.name + "'");

    const int post_len = cls.query("lower") != nullptr ? max_len + 3 : 2 * max_len;
    ProbeDomain d;
    d.target_pre = states(cls, max_len, alphabet, false, max_len);
    d.target_post = states(cls, post_len, alphabet, true, max_len);

    std::vector<ModelValue> letters;
    for (int a = 1; a <= alphabet; ++a) letters.push_back(mint(a));

    for (const auto& p : routine.params) {
        ProbeDomain::Arg a;
        a.kind = p.kind;
        if (p.kind == Param::Kind::reference) {
            if (p.class_name != cls.name) throw ConfigError("probe supports only arguments of the target's class");
            a.pre = d.target_pre;
            a.pre.push_back(AbstractState::void_state());
            a.post = d.target_post;
            a.post.push_back(AbstractState::void_state());
        } else {
            a.values = p.element ? letters : index_values(index_high(cls, max_len, alphabet));
        }
        d.args.push_back(std::move(a));
    }
    if (routine.result == ResultKind::boolean) d.results = {mbool(false), mbool(true)};
    if (routine.result == ResultKind::integer) {
        d.results = index_values(index_high(cls, max_len, alphabet));
    }
    return d;
}

} // namespace mbc::containers
