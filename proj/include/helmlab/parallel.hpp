#pragma once
#include <cstddef>
#include <functional>

namespace helmlab {

// Worker count used by parallel_for; 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs body(i) for i in [0, n) on contiguous blocks. Each index must write only
// its own output slot, which keeps results independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace helmlab
