#pragma once

#include "mbc/containers/container.hpp"

namespace mbc::containers {

/// Node of a binary tree with parent back links.
class BinaryNode : public ContainerObject {
public:
    BinaryNode(const ClassSpec& spec, BugTrace& bugs) : ContainerObject(spec, bugs) {}

    std::optional<ModelValue> invoke(CallContext& ctx, std::string_view routine,
                                     std::span<const ModelValue> args) override;

    Item item() const { return item_; }
    BinaryNode* parent() const { return parent_; }
    BinaryNode* left() const { return left_; }
    BinaryNode* right() const { return right_; }
    /// Identities on the parent chain; stops at the first repeat.
    MSet ancestors() const;
    std::int64_t size_hint() const override { return (left_ ? 1 : 0) + (right_ ? 1 : 0); }

private:
    static ObjectId id_of(const BinaryNode* n) { return n ? n->id() : void_id; }
    BinaryNode* node_arg(CallContext& ctx, const ModelValue& v) const;
    void put_child(CallContext& ctx, BinaryNode*& slot, BinaryNode* n, bool right);
    void prune(CallContext& ctx, BinaryNode*& slot, bool right);

    Item item_ = 0;
    BinaryNode* parent_ = nullptr;
    BinaryNode* left_ = nullptr;
    BinaryNode* right_ = nullptr;
};

} // namespace mbc::containers
