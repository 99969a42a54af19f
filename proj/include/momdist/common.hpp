#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace momdist {

/// Single exception type for every contract violation raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Index = std::uint32_t;

/// Worker count for parallel loops. Reads MOMDIST_THREADS; falls back to the
/// hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Iterations must be independent and write
/// only to slots owned by i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace momdist
