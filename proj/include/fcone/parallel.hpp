#pragma once

#include <cstddef>

namespace fcone {

/// Worker count for enumeration scans: hardware concurrency, capped by the
/// FCONE_THREADS environment variable when it is set to a positive integer.
unsigned default_thread_count();

/// Resolves a requested count (0 = default) against the cap and the amount of
/// work, so tiny scans stay single-threaded.
unsigned resolve_thread_count(unsigned requested, std::size_t work_items);

}  // namespace fcone
