#pragma once

#include <functional>

namespace polycap {

/// Worker count used by row-parallel kernel loops.  0 = all hardware
/// threads.  Results are bitwise independent of the setting: rows are
/// partitioned, never reduced across threads.
void set_threads(int n);
int effective_threads();

/// Runs fn(begin, end) over a partition of [0, count).
void parallel_for_rows(int count, const std::function<void(int, int)>& fn);

}  // namespace polycap
