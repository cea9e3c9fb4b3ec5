#pragma once

#include "mbc/containers/cursor_list.hpp"

#include <vector>

namespace mbc::containers {

/// Set of integers kept in insertion order, with a cursor.
class CursorSet : public CursorListBase {
public:
    CursorSet(const ClassSpec& spec, BugTrace& bugs) : CursorListBase(spec, bugs) {}

    std::optional<ModelValue> invoke(CallContext& ctx, std::string_view routine,
                                     std::span<const ModelValue> args) override;

    Sequence model_sequence() const override { return int_seq(items_); }
    std::int64_t cursor_index() const override { return index_; }
    std::int64_t count_attribute() const override { return static_cast<std::int64_t>(items_.size()); }
    bool has_first_cell() const override { return !items_.empty(); }
    std::int64_t size_hint() const override { return count_attribute(); }

    const std::vector<Item>& items() const { return items_; }

private:
    std::int64_t position_of(Item v) const;
    void extend(Item v);
    void remove(Item v);
    void replace(Item v);

    std::vector<Item> items_;
    std::int64_t index_ = 0;
};

} // namespace mbc::containers
