#pragma once

// Immutable mathematical model values: the vocabulary that model queries,
// postconditions and invariants are written in.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mbc {

/// Raised when a model operation is applied outside its domain (for example
/// `item(0)` on a sequence). Distinct from a contract violation.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Opaque identity of a checked object. Token 0 is the Void reference.
struct ObjectId {
    std::uint64_t token = 0;

    constexpr bool is_void() const noexcept { return token == 0; }
    friend constexpr auto operator<=>(const ObjectId&, const ObjectId&) = default;
};

inline constexpr ObjectId void_id{};

class ModelValue;
class Bag;
class MSet;

/// Finite sequence with 1-based positions 1..count.
class Sequence {
public:
    Sequence();
    Sequence(std::initializer_list<ModelValue> items);
    explicit Sequence(std::vector<ModelValue> items);

    std::int64_t count() const noexcept;
    bool is_empty() const noexcept { return count() == 0; }
    const ModelValue& item(std::int64_t i) const;
    const ModelValue& first() const;
    const ModelValue& last() const;
    bool has(const ModelValue& v) const;
    std::int64_t occurrences(const ModelValue& v) const;

    /// Prefix of positions 1..min(max(i,0), count).
    Sequence front(std::int64_t i) const;
    /// Suffix from position max(i,1) through count; empty when i > count.
    Sequence tail(std::int64_t i) const;
    Sequence concat(const Sequence& other) const;
    friend Sequence operator+(const Sequence& a, const Sequence& b) { return a.concat(b); }

    /// The integer set {1..count}.
    MSet domain() const;
    Bag to_bag() const;

    Sequence extended(const ModelValue& v) const;
    Sequence prepended(const ModelValue& v) const;
    Sequence replaced_at(std::int64_t i, const ModelValue& v) const;
    Sequence removed_at(std::int64_t i) const;
    Sequence inserted_at(std::int64_t i, const ModelValue& v) const;
    Sequence reversed() const;

    const std::vector<ModelValue>& items() const noexcept;

private:
    std::shared_ptr<const std::vector<ModelValue>> items_;
};

/// Multiset. Entries are kept sorted; multiplicities are always >= 1.
class Bag {
public:
    Bag() = default;

    std::int64_t occurrences(const ModelValue& v) const;
    /// Sum of multiplicities.
    std::int64_t count() const noexcept;
    bool is_empty() const noexcept { return entries_.empty(); }
    Bag extended(const ModelValue& v, std::int64_t n = 1) const;
    Bag removed(const ModelValue& v) const;
    Bag united(const Bag& other) const;
    MSet domain() const;

    const std::vector<std::pair<ModelValue, std::int64_t>>& entries() const noexcept { return entries_; }

private:
    std::vector<std::pair<ModelValue, std::int64_t>> entries_;
};

class MSet {
public:
    MSet() = default;
    MSet(std::initializer_list<ModelValue> elements);

    bool has(const ModelValue& v) const;
    std::int64_t count() const noexcept;
    bool is_empty() const noexcept { return elements_.empty(); }
    MSet extended(const ModelValue& v) const;
    MSet removed(const ModelValue& v) const;
    MSet united(const MSet& other) const;
    bool is_subset_of(const MSet& other) const;

    const std::vector<ModelValue>& elements() const noexcept { return elements_; }

private:
    std::vector<ModelValue> elements_;
};

/// Finite partial map.
class MMap {
public:
    MMap() = default;

    bool has(const ModelValue& key) const;
    const ModelValue& item(const ModelValue& key) const;
    std::int64_t count() const noexcept;
    MSet domain() const;
    MMap updated(const ModelValue& key, const ModelValue& value) const;
    MMap removed(const ModelValue& key) const;

    const std::vector<std::pair<ModelValue, ModelValue>>& pairs() const noexcept { return pairs_; }

private:
    std::vector<std::pair<ModelValue, ModelValue>> pairs_;
};

class ModelValue {
public:
    enum class Kind { boolean, integer, object, sequence, bag, set, map };

    ModelValue() : value_(false) {}
    ModelValue(Sequence s) : value_(std::move(s)) {}
    ModelValue(Bag b) : value_(std::move(b)) {}
    ModelValue(MSet s) : value_(std::move(s)) {}
    ModelValue(MMap m) : value_(std::move(m)) {}
    ModelValue(ObjectId id) : value_(id) {}

    static ModelValue boolean(bool b) { return ModelValue(Storage(b)); }
    static ModelValue integer(std::int64_t i) { return ModelValue(Storage(i)); }
    static ModelValue object(ObjectId id) { return ModelValue(Storage(id)); }
    static ModelValue void_ref() { return object(void_id); }

    Kind kind() const noexcept { return static_cast<Kind>(value_.index()); }
    bool is_boolean() const noexcept { return kind() == Kind::boolean; }
    bool is_integer() const noexcept { return kind() == Kind::integer; }
    bool is_object() const noexcept { return kind() == Kind::object; }
    bool is_void() const noexcept { return is_object() && std::get<ObjectId>(value_).is_void(); }

    bool as_boolean() const;
    std::int64_t as_integer() const;
    ObjectId as_object() const;
    const Sequence& as_sequence() const;
    const Bag& as_bag() const;
    const MSet& as_set() const;
    const MMap& as_map() const;

    std::string to_string() const;

    friend bool operator==(const ModelValue& a, const ModelValue& b);

private:
    using Storage = std::variant<bool, std::int64_t, ObjectId, Sequence, Bag, MSet, MMap>;
    explicit ModelValue(Storage s) : value_(std::move(s)) {}

    Storage value_;

    friend std::strong_ordering compare(const ModelValue& a, const ModelValue& b);
};

/// Total order used internally to keep sets, bags and maps canonical.
/// Only equality is meaningful to clients.
std::strong_ordering compare(const ModelValue& a, const ModelValue& b);

bool operator==(const Sequence& a, const Sequence& b);
bool operator==(const Bag& a, const Bag& b);
bool operator==(const MSet& a, const MSet& b);
bool operator==(const MMap& a, const MMap& b);

inline ModelValue mint(std::int64_t i) { return ModelValue::integer(i); }
inline ModelValue mbool(bool b) { return ModelValue::boolean(b); }

/// Sequence of integers, e.g. `int_seq({1, 2, 3})`.
Sequence int_seq(std::initializer_list<std::int64_t> values);
Sequence int_seq(const std::vector<std::int64_t>& values);

} // namespace mbc
