#pragma once

#include "mbc/contracts.hpp"

namespace mbc::containers::detail {

ClassSpec linked_list_spec(SpecLevel level);
ClassSpec two_way_list_spec(SpecLevel level);
ClassSpec array_spec(SpecLevel level);
ClassSpec linked_set_spec(SpecLevel level);
ClassSpec linked_stack_spec(SpecLevel level);
ClassSpec arrayed_queue_spec(SpecLevel level);
ClassSpec binary_tree_spec(SpecLevel level);

} // namespace mbc::containers::detail
