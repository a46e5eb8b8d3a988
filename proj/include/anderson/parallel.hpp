#pragma once

namespace anderson {

/// Execution policy for the data-parallel kernels. `serial` runs the same loop
/// nest on one thread and is what the tests compare the OpenMP path against.
enum class Exec { serial, parallel };

inline bool is_parallel(Exec exec) { return exec == Exec::parallel; }

/// Set the OpenMP thread count (no-op without OpenMP). n <= 0 keeps the default.
void set_thread_count(int n);

/// Threads OpenMP would use for a parallel region (1 without OpenMP).
int thread_count();

}  // namespace anderson
