#pragma once

#include "mbc/containers/container.hpp"

#include <vector>

namespace mbc::containers {

/// FIFO queue in a circular buffer. The model sequence lists the oldest
/// element first.
class ArrayedQueue : public ContainerObject {
public:
    static constexpr std::size_t initial_capacity = 4;

    ArrayedQueue(const ClassSpec& spec, BugTrace& bugs);

    std::optional<ModelValue> invoke(CallContext& ctx, std::string_view routine,
                                     std::span<const ModelValue> args) override;

    Sequence model_sequence() const;
    std::int64_t count() const { return static_cast<std::int64_t>(count_); }
    std::size_t capacity() const { return area_.size(); }
    std::size_t head() const { return head_; }
    bool wrapped() const { return head_ + count_ > area_.size(); }
    std::int64_t size_hint() const override { return count(); }

private:
    Item& at(std::size_t k) { return area_[(head_ + k) % area_.size()]; }
    Item at(std::size_t k) const { return area_[(head_ + k) % area_.size()]; }
    void put(Item v);
    void remove();

    std::vector<Item> area_;
    std::size_t head_ = 0;
    std::size_t count_ = 0;
};

} // namespace mbc::containers
