#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace sstpca {

/// Environment variable overriding the default worker count.
inline constexpr const char* kWorkersEnv = "SSTPCA_WORKERS";

/// `requested` if positive, else $SSTPCA_WORKERS, else the hardware concurrency.
unsigned resolve_workers(unsigned requested = 0);

/// Calls body(i) for i in [0, count) on up to `workers` threads (resolved as
/// above). Indices are handed out dynamically; the first exception thrown by
/// any body is rethrown after all threads stop.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace sstpca
