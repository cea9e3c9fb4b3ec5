#include "mbc/containers/cursor_list.hpp"

#include "class_specs.hpp"
#include "list_specs.hpp"
#include "spec_helpers.hpp"

#include <algorithm>

namespace mbc::containers {

CursorList::CursorList(const ClassSpec& spec, BugTrace& bugs, bool two_way)
    : CursorListBase(spec, bugs), two_way_(two_way) {}

int CursorList::new_cell(Item v) {
    cells_.push_back(Cell{v, -1, -1});
    return static_cast<int>(cells_.size()) - 1;
}

std::vector<int> CursorList::chain() const {
    std::vector<int> out;
    for (int c = first_; c >= 0; c = cells_[c].next) {
        if (out.size() > cells_.size()) throw CorruptState("cycle in next links");
        out.push_back(c);
    }
    return out;
}

Sequence CursorList::model_sequence() const {
    std::vector<ModelValue> v;
    for (int c : chain()) v.push_back(mint(cells_[c].item));
    return Sequence(std::move(v));
}

std::vector<Item> CursorList::items() const {
    std::vector<Item> v;
    for (int c : chain()) v.push_back(cells_[c].item);
    return v;
}

int CursorList::cell_at(std::int64_t i) const {
    if (i < 1) return -1;
    int c = first_;
    for (std::int64_t k = 1; k < i && c >= 0; ++k) c = cells_[c].next;
    return c;
}

void CursorList::link_after(int c, int n) {
    int succ = c < 0 ? first_ : cells_[c].next;
    cells_[n].next = succ;
    cells_[n].prev = c;
    if (c < 0)
        first_ = n;
    else
        cells_[c].next = n;
    if (succ >= 0)
        cells_[succ].prev = n;
    else
        last_ = n;
    ++count_;
}

void CursorList::unlink_at(std::int64_t i) {
    int before = cell_at(i - 1);
    int victim = before < 0 ? first_ : cells_[before].next;
    int succ = cells_[victim].next;
    if (before < 0)
        first_ = succ;
    else
        cells_[before].next = succ;
    if (succ >= 0)
        cells_[succ].prev = before;
    else
        last_ = before;
    --count_;
}

void CursorList::sync_active() { active_ = (index_ >= 1 && index_ <= count_) ? cell_at(index_) : -1; }

bool CursorList::last_cell_consistent() const {
    auto c = chain();
    return c.empty() ? last_ < 0 : last_ == c.back();
}

bool CursorList::active_consistent() const {
    auto c = chain();
    const auto n = static_cast<std::int64_t>(c.size());
    if (index_ >= 1 && index_ <= n) return active_ == c[static_cast<std::size_t>(index_ - 1)];
    return active_ < 0;
}

bool CursorList::back_links_consistent() const {
    auto forward = chain();
    std::vector<int> backward;
    for (int c = last_; c >= 0; c = cells_[c].prev) {
        if (backward.size() > cells_.size()) return false;
        backward.push_back(c);
    }
    return std::equal(forward.rbegin(), forward.rend(), backward.begin(), backward.end());
}

void CursorList::extend(Item v) {
    link_after(last_, new_cell(v));
    sync_active();
}

void CursorList::put_front(Item v) {
    const int old_first = first_;
    link_after(-1, new_cell(v));
    if (index_ != 0) ++index_;
    if (old_first >= 0 && tbug("TW-1")) {
        cells_[old_first].prev = -1;
        fire("TW-1");
    }
    sync_active();
}

void CursorList::put_right(Item v) {
    if (index_ == 0 && count_ >= 1 && lbug("LL-5")) {
        link_after(last_, new_cell(v));
        fire("LL-5");
    } else {
        link_after(cell_at(index_), new_cell(v));
    }
    sync_active();
}

void CursorList::put_left(Item v) {
    link_after(cell_at(index_ - 1), new_cell(v));
    if (index_ == 1 && tbug("TW-2"))
        fire("TW-2");
    else
        ++index_;
    sync_active();
}

void CursorList::remove() {
    const bool removing_last = index_ == count_;
    const int victim = active_;
    unlink_at(index_);
    if (index_ == 1 && count_ >= 1 && lbug("LL-2")) {
        index_ = 0;
        fire("LL-2");
    }
    sync_active();
    if (removing_last && count_ >= 1 && lbug("LC-1")) {
        last_ = victim;
        fire("LC-1");
    }
}

void CursorList::go_i_th(std::int64_t i) {
    index_ = i;
    sync_active();
    if (i == count_ && count_ >= 2 && tbug("TW-3")) {
        active_ = cell_at(count_ - 1);
        fire("TW-3");
    }
}

void CursorList::merge_right(const CursorList& other) {
    const auto incoming = other.items();
    int at = cell_at(index_);
    if (index_ == 0 && count_ >= 1 && !incoming.empty() && lbug("MB-1")) {
        at = first_;
        fire("MB-1");
    }
    for (Item v : incoming) {
        const int n = new_cell(v);
        link_after(at, n);
        at = n;
    }
    if (index_ >= 1 && !incoming.empty() && lbug("MF-1")) {
        ++index_;
        fire("MF-1");
    }
    sync_active();
}

std::optional<ModelValue> CursorList::invoke(CallContext& ctx, std::string_view r, std::span<const ModelValue> args) {
    auto int_arg = [&](std::size_t k) { return args[k].as_integer(); };
    auto list_arg = [&](std::size_t k) -> CursorList& {
        auto* o = dynamic_cast<CursorList*>(ctx.engine().find(args[k].as_object()));
        if (o == nullptr) throw std::invalid_argument("argument is not a list");
        return *o;
    };

    if (r == "extend") {
        extend(int_arg(0));
    } else if (r == "put_front") {
        put_front(int_arg(0));
    } else if (r == "put_right") {
        put_right(int_arg(0));
    } else if (r == "put_left" && two_way_) {
        put_left(int_arg(0));
    } else if (r == "remove") {
        remove();
    } else if (r == "replace") {
        if (active_ < 0) throw CorruptState("no active cell");
        cells_[active_].item = int_arg(0);
    } else if (r == "start") {
        index_ = 1;
        sync_active();
    } else if (r == "finish") {
        index_ = count_;
        sync_active();
    } else if (r == "forth") {
        ++index_;
        sync_active();
    } else if (r == "back") {
        --index_;
        sync_active();
    } else if (r == "go_i_th") {
        go_i_th(int_arg(0));
    } else if (r == "wipe_out") {
        cells_.clear();
        first_ = last_ = active_ = -1;
        count_ = index_ = 0;
    } else if (r == "has") {
        const Item v = int_arg(0);
        for (int c : chain())
            if (cells_[c].item == v) return mbool(true);
        return mbool(false);
    } else if (r == "item") {
        if (active_ < 0) throw CorruptState("no active cell");
        return mint(cells_[active_].item);
    } else if (r == "count") {
        return mint(count_);
    } else if (r == "merge_right" && !two_way_) {
        merge_right(list_arg(0));
    } else if (r == "is_equal") {
        return mbool(items() == list_arg(0).items());
    } else {
        unknown_routine(r);
    }
    return std::nullopt;
}

namespace detail {

namespace {
const CursorList& as_cursor_list(const InvariantContext& c) { return c.as<CursorList>(); }

std::vector<InvariantClause> list_repr_invariants(bool two_way) {
    std::vector<InvariantClause> inv;
    inv.push_back(invariant("last_cell_consistent",
                            [](const InvariantContext& c) { return as_cursor_list(c).last_cell_consistent(); },
                            InvariantKind::representation_constraint));
    inv.push_back(invariant("active_consistent",
                            [](const InvariantContext& c) { return as_cursor_list(c).active_consistent(); },
                            InvariantKind::representation_constraint));
    if (two_way)
        inv.push_back(invariant("back_links",
                                [](const InvariantContext& c) { return as_cursor_list(c).back_links_consistent(); },
                                InvariantKind::representation_constraint));
    return inv;
}
} // namespace

ClassSpec linked_list_spec(SpecLevel level) {
    ClassSpec cls;
    cls.name = "LINKED_LIST";
    cls.level = level;
    add_cursor_list_spec(cls, level, list_repr_invariants(false), false);
    return cls;
}

ClassSpec two_way_list_spec(SpecLevel level) {
    ClassSpec cls;
    cls.name = "TWO_WAY_LIST";
    cls.level = level;
    add_cursor_list_spec(cls, level, list_repr_invariants(true), true);
    return cls;
}

} // namespace detail

} // namespace mbc::containers
