#pragma once

#include <cstddef>
#include <functional>

namespace irrlab {

/// Number of worker threads used by parallel_for. 0 means hardware default.
/// Thread count affects speed only, never results: work items are indexed and
/// any shared reduction must be done by the caller in index order.
void set_thread_count(int k);
int thread_count();

void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

}  // namespace irrlab
