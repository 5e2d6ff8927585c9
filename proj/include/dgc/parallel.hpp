#pragma once

#include <functional>

namespace dgc {

/// Runs body(i) for i in [0, n). With `parallel` the iterations are spread over
/// OpenMP threads; each iteration must write only to its own slot. If several
/// iterations throw, the exception of the lowest index is rethrown.
void for_each_index(int n, bool parallel, const std::function<void(int)>& body);

/// Number of threads an OpenMP region would use (1 without OpenMP).
int parallel_threads();

}  // namespace dgc
