#include "mbc/model.hpp"

#include <algorithm>
#include <sstream>

namespace mbc {

namespace {

template <class T>
std::strong_ordering compare_ranges(const std::vector<T>& a, const std::vector<T>& b);

std::strong_ordering compare_elem(const ModelValue& a, const ModelValue& b) { return compare(a, b); }

template <class V>
std::strong_ordering compare_elem(const std::pair<ModelValue, V>& a, const std::pair<ModelValue, V>& b) {
    if (auto c = compare(a.first, b.first); c != 0) return c;
    if constexpr (std::is_same_v<V, ModelValue>) {
        return compare(a.second, b.second);
    } else {
        return a.second <=> b.second;
    }
}

template <class T>
std::strong_ordering compare_ranges(const std::vector<T>& a, const std::vector<T>& b) {
    const auto n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = compare_elem(a[i], b[i]); c != 0) return c;
    }
    return a.size() <=> b.size();
}

bool less(const ModelValue& a, const ModelValue& b) { return compare(a, b) < 0; }

std::shared_ptr<const std::vector<ModelValue>> empty_items() {
    static const auto empty = std::make_shared<const std::vector<ModelValue>>();
    return empty;
}

std::string kind_name(ModelValue::Kind k) {
    switch (k) {
    case ModelValue::Kind::boolean: return "BOOLEAN";
    case ModelValue::Kind::integer: return "INTEGER";
    case ModelValue::Kind::object: return "reference";
    case ModelValue::Kind::sequence: return "sequence";
    case ModelValue::Kind::bag: return "bag";
    case ModelValue::Kind::set: return "set";
    case ModelValue::Kind::map: return "map";
    }
    return "?";
}

[[noreturn]] void wrong_kind(ModelValue::Kind expected, ModelValue::Kind actual) {
    throw ModelError("model value is " + kind_name(actual) + ", expected " + kind_name(expected));
}

} // namespace

// ---------------------------------------------------------------------------
// Sequence

Sequence::Sequence() : items_(empty_items()) {}

Sequence::Sequence(std::initializer_list<ModelValue> items)
    : items_(std::make_shared<const std::vector<ModelValue>>(items)) {}

Sequence::Sequence(std::vector<ModelValue> items)
    : items_(std::make_shared<const std::vector<ModelValue>>(std::move(items))) {}

std::int64_t Sequence::count() const noexcept { return static_cast<std::int64_t>(items_->size()); }

const std::vector<ModelValue>& Sequence::items() const noexcept { return *items_; }

const ModelValue& Sequence::item(std::int64_t i) const {
    if (i < 1 || i > count()) {
        throw ModelError("sequence.item(" + std::to_string(i) + ") outside 1.." + std::to_string(count()));
    }
    return (*items_)[static_cast<std::size_t>(i - 1)];
}

const ModelValue& Sequence::first() const {
    if (is_empty()) throw ModelError("sequence.first on empty sequence");
    return items_->front();
}

const ModelValue& Sequence::last() const {
    if (is_empty()) throw ModelError("sequence.last on empty sequence");
    return items_->back();
}

bool Sequence::has(const ModelValue& v) const {
    return std::find(items_->begin(), items_->end(), v) != items_->end();
}

std::int64_t Sequence::occurrences(const ModelValue& v) const {
    return std::count(items_->begin(), items_->end(), v);
}

Sequence Sequence::front(std::int64_t i) const {
    const auto n = std::clamp<std::int64_t>(i, 0, count());
    if (n == count()) return *this;
    return Sequence(std::vector<ModelValue>(items_->begin(), items_->begin() + n));
}

Sequence Sequence::tail(std::int64_t i) const {
    const auto from = std::max<std::int64_t>(i, 1);
    if (from == 1) return *this;
    if (from > count()) return Sequence();
    return Sequence(std::vector<ModelValue>(items_->begin() + (from - 1), items_->end()));
}

Sequence Sequence::concat(const Sequence& other) const {
    if (other.is_empty()) return *this;
    if (is_empty()) return other;
    std::vector<ModelValue> out;
    out.reserve(items_->size() + other.items_->size());
    out.insert(out.end(), items_->begin(), items_->end());
    out.insert(out.end(), other.items_->begin(), other.items_->end());
    return Sequence(std::move(out));
}

MSet Sequence::domain() const {
    MSet result;
    for (std::int64_t i = 1; i <= count(); ++i) result = result.extended(mint(i));
    return result;
}

Bag Sequence::to_bag() const {
    Bag result;
    for (const auto& v : *items_) result = result.extended(v);
    return result;
}

Sequence Sequence::extended(const ModelValue& v) const { return inserted_at(count() + 1, v); }

Sequence Sequence::prepended(const ModelValue& v) const { return inserted_at(1, v); }

Sequence Sequence::replaced_at(std::int64_t i, const ModelValue& v) const {
    (void)item(i);
    std::vector<ModelValue> out(*items_);
    out[static_cast<std::size_t>(i - 1)] = v;
    return Sequence(std::move(out));
}

Sequence Sequence::removed_at(std::int64_t i) const {
    (void)item(i);
    std::vector<ModelValue> out(*items_);
    out.erase(out.begin() + (i - 1));
    return Sequence(std::move(out));
}

Sequence Sequence::inserted_at(std::int64_t i, const ModelValue& v) const {
    if (i < 1 || i > count() + 1) {
        throw ModelError("sequence.inserted_at(" + std::to_string(i) + ") outside 1.." + std::to_string(count() + 1));
    }
    std::vector<ModelValue> out;
    out.reserve(items_->size() + 1);
    out.insert(out.end(), items_->begin(), items_->begin() + (i - 1));
    out.push_back(v);
    out.insert(out.end(), items_->begin() + (i - 1), items_->end());
    return Sequence(std::move(out));
}

Sequence Sequence::reversed() const {
    return Sequence(std::vector<ModelValue>(items_->rbegin(), items_->rend()));
}

bool operator==(const Sequence& a, const Sequence& b) {
    return a.items().size() == b.items().size() && compare_ranges(a.items(), b.items()) == 0;
}

// ---------------------------------------------------------------------------
// Bag

std::int64_t Bag::occurrences(const ModelValue& v) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                               [](const auto& e, const ModelValue& x) { return less(e.first, x); });
    return (it != entries_.end() && it->first == v) ? it->second : 0;
}

std::int64_t Bag::count() const noexcept {
    std::int64_t n = 0;
    for (const auto& e : entries_) n += e.second;
    return n;
}

Bag Bag::extended(const ModelValue& v, std::int64_t n) const {
    if (n <= 0) return *this;
    Bag result = *this;
    auto it = std::lower_bound(result.entries_.begin(), result.entries_.end(), v,
                               [](const auto& e, const ModelValue& x) { return less(e.first, x); });
    if (it != result.entries_.end() && it->first == v) {
        it->second += n;
    } else {
        result.entries_.insert(it, {v, n});
    }
    return result;
}

Bag Bag::removed(const ModelValue& v) const {
    Bag result = *this;
    auto it = std::lower_bound(result.entries_.begin(), result.entries_.end(), v,
                               [](const auto& e, const ModelValue& x) { return less(e.first, x); });
    if (it != result.entries_.end() && it->first == v) {
        if (--it->second == 0) result.entries_.erase(it);
    }
    return result;
}

Bag Bag::united(const Bag& other) const {
    Bag result = *this;
    for (const auto& [v, n] : other.entries_) result = result.extended(v, n);
    return result;
}

MSet Bag::domain() const {
    MSet result;
    for (const auto& e : entries_) result = result.extended(e.first);
    return result;
}

bool operator==(const Bag& a, const Bag& b) {
    return a.entries().size() == b.entries().size() && compare_ranges(a.entries(), b.entries()) == 0;
}

// ---------------------------------------------------------------------------
// MSet

MSet::MSet(std::initializer_list<ModelValue> elements) {
    for (const auto& v : elements) *this = extended(v);
}

bool MSet::has(const ModelValue& v) const {
    return std::binary_search(elements_.begin(), elements_.end(), v, less);
}

std::int64_t MSet::count() const noexcept { return static_cast<std::int64_t>(elements_.size()); }

MSet MSet::extended(const ModelValue& v) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), v, less);
    if (it != elements_.end() && *it == v) return *this;
    MSet result = *this;
    result.elements_.insert(result.elements_.begin() + (it - elements_.begin()), v);
    return result;
}

MSet MSet::removed(const ModelValue& v) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), v, less);
    if (it == elements_.end() || !(*it == v)) return *this;
    MSet result = *this;
    result.elements_.erase(result.elements_.begin() + (it - elements_.begin()));
    return result;
}

MSet MSet::united(const MSet& other) const {
    MSet result = *this;
    for (const auto& v : other.elements_) result = result.extended(v);
    return result;
}

bool MSet::is_subset_of(const MSet& other) const {
    return std::all_of(elements_.begin(), elements_.end(), [&](const ModelValue& v) { return other.has(v); });
}

bool operator==(const MSet& a, const MSet& b) {
    return a.elements().size() == b.elements().size() && compare_ranges(a.elements(), b.elements()) == 0;
}

// ---------------------------------------------------------------------------
// MMap

namespace {
template <class Pairs>
auto find_key(Pairs& pairs, const ModelValue& key) {
    return std::lower_bound(pairs.begin(), pairs.end(), key,
                            [](const auto& p, const ModelValue& k) { return less(p.first, k); });
}
} // namespace

bool MMap::has(const ModelValue& key) const {
    auto it = find_key(pairs_, key);
    return it != pairs_.end() && it->first == key;
}

const ModelValue& MMap::item(const ModelValue& key) const {
    auto it = find_key(pairs_, key);
    if (it == pairs_.end() || !(it->first == key)) throw ModelError("map.item(" + key.to_string() + ") outside domain");
    return it->second;
}

std::int64_t MMap::count() const noexcept { return static_cast<std::int64_t>(pairs_.size()); }

MSet MMap::domain() const {
    MSet result;
    for (const auto& p : pairs_) result = result.extended(p.first);
    return result;
}

MMap MMap::updated(const ModelValue& key, const ModelValue& value) const {
    MMap result = *this;
    auto it = find_key(result.pairs_, key);
    if (it != result.pairs_.end() && it->first == key) {
        it->second = value;
    } else {
        result.pairs_.insert(it, {key, value});
    }
    return result;
}

MMap MMap::removed(const ModelValue& key) const {
    MMap result = *this;
    auto it = find_key(result.pairs_, key);
    if (it != result.pairs_.end() && it->first == key) result.pairs_.erase(it);
    return result;
}

bool operator==(const MMap& a, const MMap& b) {
    return a.pairs().size() == b.pairs().size() && compare_ranges(a.pairs(), b.pairs()) == 0;
}

// ---------------------------------------------------------------------------
// ModelValue

bool ModelValue::as_boolean() const {
    if (!is_boolean()) wrong_kind(Kind::boolean, kind());
    return std::get<bool>(value_);
}

std::int64_t ModelValue::as_integer() const {
    if (!is_integer()) wrong_kind(Kind::integer, kind());
    return std::get<std::int64_t>(value_);
}

ObjectId ModelValue::as_object() const {
    if (!is_object()) wrong_kind(Kind::object, kind());
    return std::get<ObjectId>(value_);
}

const Sequence& ModelValue::as_sequence() const {
    if (kind() != Kind::sequence) wrong_kind(Kind::sequence, kind());
    return std::get<Sequence>(value_);
}

const Bag& ModelValue::as_bag() const {
    if (kind() != Kind::bag) wrong_kind(Kind::bag, kind());
    return std::get<Bag>(value_);
}

const MSet& ModelValue::as_set() const {
    if (kind() != Kind::set) wrong_kind(Kind::set, kind());
    return std::get<MSet>(value_);
}

const MMap& ModelValue::as_map() const {
    if (kind() != Kind::map) wrong_kind(Kind::map, kind());
    return std::get<MMap>(value_);
}

std::string ModelValue::to_string() const {
    std::ostringstream os;
    auto join = [&os](const auto& range, auto&& emit) {
        bool first = true;
        for (const auto& e : range) {
            if (!first) os << ", ";
            first = false;
            emit(e);
        }
    };
    switch (kind()) {
    case Kind::boolean: os << (std::get<bool>(value_) ? "True" : "False"); break;
    case Kind::integer: os << std::get<std::int64_t>(value_); break;
    case Kind::object: {
        auto id = std::get<ObjectId>(value_);
        if (id.is_void()) os << "Void"; else os << "#" << id.token;
        break;
    }
    case Kind::sequence:
        os << "<";
        join(as_sequence().items(), [&](const ModelValue& v) { os << v.to_string(); });
        os << ">";
        break;
    case Kind::bag:
        os << "{|";
        join(as_bag().entries(), [&](const auto& e) { os << e.first.to_string() << ":" << e.second; });
        os << "|}";
        break;
    case Kind::set:
        os << "{";
        join(as_set().elements(), [&](const ModelValue& v) { os << v.to_string(); });
        os << "}";
        break;
    case Kind::map:
        os << "[";
        join(as_map().pairs(), [&](const auto& p) { os << p.first.to_string() << " -> " << p.second.to_string(); });
        os << "]";
        break;
    }
    return os.str();
}

std::strong_ordering compare(const ModelValue& a, const ModelValue& b) {
    if (auto c = a.value_.index() <=> b.value_.index(); c != 0) return c;
    switch (a.kind()) {
    case ModelValue::Kind::boolean: return std::get<bool>(a.value_) <=> std::get<bool>(b.value_);
    case ModelValue::Kind::integer: return std::get<std::int64_t>(a.value_) <=> std::get<std::int64_t>(b.value_);
    case ModelValue::Kind::object: return std::get<ObjectId>(a.value_) <=> std::get<ObjectId>(b.value_);
    case ModelValue::Kind::sequence: return compare_ranges(a.as_sequence().items(), b.as_sequence().items());
    case ModelValue::Kind::bag: return compare_ranges(a.as_bag().entries(), b.as_bag().entries());
    case ModelValue::Kind::set: return compare_ranges(a.as_set().elements(), b.as_set().elements());
    case ModelValue::Kind::map: return compare_ranges(a.as_map().pairs(), b.as_map().pairs());
    }
    return std::strong_ordering::equal;
}

bool operator==(const ModelValue& a, const ModelValue& b) { return compare(a, b) == 0; }

Sequence int_seq(std::initializer_list<std::int64_t> values) {
    return int_seq(std::vector<std::int64_t>(values));
}

Sequence int_seq(const std::vector<std::int64_t>& values) {
    std::vector<ModelValue> items;
    items.reserve(values.size());
    for (auto v : values) items.push_back(mint(v));
    return Sequence(std::move(items));
}

} // namespace mbc
