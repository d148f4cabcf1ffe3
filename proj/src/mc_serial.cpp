#include <algorithm>

#include "maxdep/samplers.hpp"

namespace maxdep {

// Reference implementation: same block decomposition as the OpenMP runner,
// executed in order on the calling thread.
void run_blocks_serial(std::uint64_t reps, const BlockBody& body) {
  for (std::uint64_t begin = 0; begin < reps; begin += kRepBlock) {
    body(begin, std::min(reps, begin + kRepBlock));
  }
}

}  // namespace maxdep
