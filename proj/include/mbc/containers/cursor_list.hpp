#pragma once

// Singly and doubly linked lists with an internal cursor. Cells live in an
// arena and are addressed by position in it; -1 is the null link.

#include "mbc/containers/container.hpp"

#include <vector>

namespace mbc::containers {

class CursorListBase : public ContainerObject {
public:
    using ContainerObject::ContainerObject;

    /// Items reached by following `next` links from the first cell.
    virtual Sequence model_sequence() const = 0;
    virtual std::int64_t cursor_index() const = 0;
    /// The stored element counter (not recomputed).
    virtual std::int64_t count_attribute() const = 0;
    virtual bool has_first_cell() const = 0;
};

class CursorList : public CursorListBase {
public:
    CursorList(const ClassSpec& spec, BugTrace& bugs, bool two_way);

    std::optional<ModelValue> invoke(CallContext& ctx, std::string_view routine,
                                     std::span<const ModelValue> args) override;

    Sequence model_sequence() const override;
    std::int64_t cursor_index() const override { return index_; }
    std::int64_t count_attribute() const override { return count_; }
    bool has_first_cell() const override { return first_ >= 0; }
    std::int64_t size_hint() const override { return count_; }

    bool last_cell_consistent() const;
    bool active_consistent() const;
    /// Following `prev` links from the last cell yields the sequence reversed.
    bool back_links_consistent() const;

    /// Test hook: points `last` at the first cell of a list with two or
    /// more cells, leaving the model untouched.
    void desynchronize_last_cell() {
        if (count_ >= 2) last_ = first_;
    }

    bool two_way() const { return two_way_; }
    std::vector<Item> items() const;

private:
    struct Cell {
        Item item = 0;
        int next = -1;
        int prev = -1;
    };

    int new_cell(Item v);
    int cell_at(std::int64_t i) const;
    void link_after(int c, int n);
    void unlink_at(std::int64_t i);
    void sync_active();
    std::vector<int> chain() const;

    bool lbug(std::string_view id) const { return !two_way_ && bug(id); }
    bool tbug(std::string_view id) const { return two_way_ && bug(id); }

    void extend(Item v);
    void put_front(Item v);
    void put_right(Item v);
    void put_left(Item v);
    void remove();
    void go_i_th(std::int64_t i);
    void merge_right(const CursorList& other);

    bool two_way_;
    std::vector<Cell> cells_;
    int first_ = -1;
    int last_ = -1;
    int active_ = -1;
    std::int64_t count_ = 0;
    std::int64_t index_ = 0;
};

} // namespace mbc::containers
