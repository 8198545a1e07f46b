#pragma once

#include <cstddef>
#include <functional>

namespace szego {

/// Caps worker threads used by library loops (0 = hardware concurrency).
void set_thread_count(unsigned threads);
unsigned thread_count();

/// Runs body(i) for i in [0, count). Each index is processed exactly once and
/// bodies write only to their own slot, so results do not depend on threading.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace szego
