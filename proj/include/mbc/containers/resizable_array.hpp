#pragma once

#include "mbc/containers/container.hpp"

#include <vector>

namespace mbc::containers {

/// Array with arbitrary lower bound that grows on `force`.
class ResizableArray : public ContainerObject {
public:
    ResizableArray(const ClassSpec& spec, BugTrace& bugs) : ContainerObject(spec, bugs) {}

    std::optional<ModelValue> invoke(CallContext& ctx, std::string_view routine,
                                     std::span<const ModelValue> args) override;

    Sequence model_sequence() const;
    std::int64_t lower() const { return lower_; }
    std::int64_t upper() const { return lower_ + count() - 1; }
    std::int64_t count() const { return static_cast<std::int64_t>(area_.size()); }
    std::int64_t size_hint() const override { return count(); }
    const std::vector<Item>& area() const { return area_; }

private:
    void force(Item v, std::int64_t i);

    std::vector<Item> area_;
    std::int64_t lower_ = 1;
};

} // namespace mbc::containers
