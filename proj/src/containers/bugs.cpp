#include "mbc/containers/bugs.hpp"

#include <algorithm>

namespace mbc::containers {

std::string to_string(Detectability d) {
    switch (d) {
    case Detectability::weak_and_strong: return "weak_and_strong";
    case Detectability::strong_only: return "strong_only";
    case Detectability::weak_only: return "weak_only";
    case Detectability::neither: return "neither";
    }
    return "?";
}

BugCatalog::BugCatalog(std::vector<BugEntry> entries) : entries_(std::move(entries)) {}

const BugCatalog& BugCatalog::standard() {
    using D = Detectability;
    static const BugCatalog catalog({
        {"MB-1", "LINKED_LIST", "merge_right",
         "merging before the first element inserts after position 1", D::strong_only,
         "sequence = old (sequence.front (index) + other.sequence + sequence.tail (index + 1))", ""},
        {"MF-1", "LINKED_LIST", "merge_right", "cursor advances past the merged elements", D::weak_and_strong,
         "index = old index", "index = old index"},
        {"LC-1", "LINKED_LIST", "remove", "removing the last element leaves last_cell stale", D::strong_only,
         "last_cell_consistent", ""},
        {"LL-2", "LINKED_LIST", "remove", "removing the first element moves the cursor before", D::weak_and_strong,
         "index = old index", "same_index: index = old index"},
        {"LL-5", "LINKED_LIST", "put_right", "put_right before the first element appends at the end",
         D::strong_only, "sequence = old (sequence.front (index) & v + sequence.tail (index + 1))", ""},
        {"TW-1", "TWO_WAY_LIST", "put_front", "old first cell keeps a Void back link", D::strong_only, "back_links",
         ""},
        {"TW-2", "TWO_WAY_LIST", "put_left", "put_left at index 1 leaves index unchanged", D::weak_and_strong,
         "index = old index + 1", "new_index: index = old index + 1"},
        {"TW-3", "TWO_WAY_LIST", "go_i_th", "going to the last position activates the cell before it",
         D::strong_only, "active_consistent", ""},
        {"AF-1", "ARRAY", "force", "growing upward leaves a stale copy of the old last item", D::strong_only,
         "sequence = old sequence padded to i with v at i", ""},
        {"AR-2", "ARRAY", "clear_all", "clear_all skips the last element", D::weak_and_strong,
         "sequence.range = {0}", "all_default: across lower |..| upper as i all item (i) = 0"},
        {"AR-3", "ARRAY", "force", "growing downward copies old items one slot off", D::strong_only,
         "sequence = old sequence padded to i with v at i", ""},
        {"SR-1", "LINKED_SET", "replace", "replace does not check whether v is already present", D::strong_only,
         "no_duplicates: sequence.to_bag.domain.count = sequence.count", ""},
        {"EQ-1", "LINKED_SET", "is_equal", "is_equal compares element order", D::strong_only,
         "Result = (sequence.range = other.sequence.range)", ""},
        {"LS-3", "LINKED_SET", "extend", "extend appends an element already present", D::weak_and_strong,
         "no_duplicates: sequence.to_bag.domain.count = sequence.count",
         "in_set_already: old has (v) implies count = old count"},
        {"LS-4", "LINKED_SET", "remove", "removing the element under the cursor moves the cursor before",
         D::strong_only, "index = if old position (v) < old index then old index - 1 else old index", ""},
        {"ST-1", "LINKED_STACK", "remove", "remove on three or more elements drops the second", D::strong_only,
         "sequence = old sequence.tail (2)", ""},
        {"ST-2", "LINKED_STACK", "put", "put on two elements inserts below the top", D::weak_and_strong,
         "sequence = old sequence.prepended (v)", "item_pushed: item = v"},
        {"ST-3", "LINKED_STACK", "has", "has ignores the bottom element", D::strong_only,
         "Result = sequence.has (v)", ""},
        {"QU-1", "ARRAYED_QUEUE", "put", "growing a wrapped full buffer loses the count increment",
         D::weak_and_strong, "sequence = old sequence & v", "one_more: count = old count + 1"},
        {"QU-2", "ARRAYED_QUEUE", "remove", "removing the only element keeps count at 1", D::weak_and_strong,
         "sequence = old sequence.tail (2)", "one_less: count = old count - 1"},
        {"QU-3", "ARRAYED_QUEUE", "item", "item on a wrapped buffer reads slot 0", D::strong_only,
         "Result = sequence.first", ""},
        {"PL-1", "BINARY_TREE", "prune_left", "prune_left keeps the left reference", D::weak_and_strong,
         "left_back_link: left /= Void implies left.parent = Current", "no_left_child: left = Void"},
        {"BT-2", "BINARY_TREE", "put_right", "replacing a right child skips n.set_parent", D::strong_only,
         "right_back_link: right /= Void implies right.parent = Current", ""},
        {"BT-3", "BINARY_TREE", "child_count", "child_count reports 1 when both children exist", D::strong_only,
         "Result = (if left = Void then 0 else 1) + (if right = Void then 0 else 1)", ""},
        {"TC-1", "BINARY_TREE", "put_left", "put_left (Current) is silently ignored", D::weak_only, "",
         "left_child_set: left = n"},
    });
    return catalog;
}

const BugEntry* BugCatalog::find(std::string_view id) const {
    auto it = std::find_if(entries_.begin(), entries_.end(), [&](const BugEntry& b) { return b.id == id; });
    return it == entries_.end() ? nullptr : &*it;
}

std::vector<std::string> BugCatalog::ids() const {
    std::vector<std::string> out;
    for (const auto& b : entries_) out.push_back(b.id);
    return out;
}

std::vector<std::string> BugCatalog::ids_for_class(std::string_view class_name) const {
    std::vector<std::string> out;
    for (const auto& b : entries_)
        if (b.class_name == class_name) out.push_back(b.id);
    return out;
}

nlohmann::json BugCatalog::to_json() const {
    auto out = nlohmann::json::array();
    for (const auto& b : entries_) {
        out.push_back({{"id", b.id},
                       {"class", b.class_name},
                       {"routine", b.routine},
                       {"description", b.description},
                       {"detectability", to_string(b.detectability)},
                       {"strong_clause", b.strong_clause},
                       {"weak_clause", b.weak_clause}});
    }
    return out;
}

void BugTrace::fire(std::string_view id, ObjectId object) {
    firings_.push_back(BugFiring{std::string(id), engine_ ? engine_->top_level_ordinal() : 0, object});
}

} // namespace mbc::containers
