#pragma once

#include <cstddef>
#include <functional>

namespace herzkit {

// Worker count for the per-point loops. Results do not depend on it.
void set_thread_count(unsigned n);
unsigned thread_count();

// Calls body(begin, end) on disjoint chunks covering [0, n).
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace herzkit
