#pragma once

#include "mbc/containers/bugs.hpp"
#include "mbc/contracts.hpp"

#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace mbc::containers {

/// Element values stored by every container.
using Item = std::int64_t;

/// Common base: bug switches and a size hint for argument generation.
class ContainerObject : public Object {
public:
    ContainerObject(const ClassSpec& spec, BugTrace& bugs) : Object(spec), bugs_(&bugs) {}

    /// Number of elements, used to bias integer arguments.
    virtual std::int64_t size_hint() const = 0;

protected:
    bool bug(std::string_view id) const { return bugs_->enabled(id); }
    void fire(std::string_view id) { bugs_->fire(id, this->id()); }

    [[noreturn]] void unknown_routine(std::string_view routine) const {
        throw std::logic_error(class_name() + " has no body for " + std::string(routine));
    }

private:
    BugTrace* bugs_;
};

/// Raised by a body that finds its own representation corrupt.
class CorruptState : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace mbc::containers
