#pragma once

#include <cstddef>
#include <functional>

namespace mrnmf {

/// Worker count for parallel sections: MANIFOLD_NMF_THREADS if set to a
/// positive integer, otherwise the number of hardware threads.
std::size_t thread_count();

/// Runs body(i) for i in [0, count) on up to thread_count() threads.
/// Exceptions from any task are rethrown (the first by index).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace mrnmf
