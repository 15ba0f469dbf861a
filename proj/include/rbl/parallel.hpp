#pragma once
#include <functional>

namespace rbl {

// Worker count: requested if > 0, else RBL_THREADS, else hardware concurrency.
int effective_threads(int requested = 0);

// Runs fn(i) for i in [0, n) on up to `threads` workers. Exceptions are
// rethrown on the calling thread.
void parallel_for(long n, int threads, const std::function<void(long)>& fn);

}  // namespace rbl
