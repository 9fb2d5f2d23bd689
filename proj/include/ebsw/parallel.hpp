#pragma once

#include <cstddef>
#include <functional>

namespace ebsw {

/// Caps the worker count used by library loops. 0 restores the default (all cores).
void set_num_threads(int n);
int num_threads();

/// Runs body(i) for i in [0, count). Each index must write only its own
/// output slot; reductions are done by the caller in a fixed order, so
/// results do not depend on the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ebsw
