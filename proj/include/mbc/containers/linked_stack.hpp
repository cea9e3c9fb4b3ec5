#pragma once

#include "mbc/containers/container.hpp"

#include <vector>

namespace mbc::containers {

/// LIFO stack. The model sequence lists the top first.
class LinkedStack : public ContainerObject {
public:
    LinkedStack(const ClassSpec& spec, BugTrace& bugs) : ContainerObject(spec, bugs) {}

    std::optional<ModelValue> invoke(CallContext& ctx, std::string_view routine,
                                     std::span<const ModelValue> args) override;

    Sequence model_sequence() const;
    std::int64_t count() const { return static_cast<std::int64_t>(cells_.size()); }
    std::int64_t size_hint() const override { return count(); }

private:
    // Bottom at the front, top at the back.
    std::vector<Item> cells_;
};

} // namespace mbc::containers
