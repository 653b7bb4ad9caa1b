#pragma once

#include <functional>

namespace texseg {

/// Effective worker count: a positive request is taken as-is, 0 means
/// machine parallelism (at least 1).
int resolve_thread_count(int requested);

/// Runs body(begin, end) over a static partition of [0, count) into
/// contiguous chunks, one per worker. Workers must write disjoint outputs;
/// the partition never affects results, only scheduling. Exceptions from
/// workers are rethrown on the calling thread.
void parallel_chunks(int count, int threads, const std::function<void(int, int)>& body);

} // namespace texseg
