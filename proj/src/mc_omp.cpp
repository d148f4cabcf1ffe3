#include <omp.h>

#include <algorithm>
#include <exception>
#include <mutex>

#include "maxdep/samplers.hpp"

namespace maxdep {

void run_blocks_omp(std::uint64_t reps, int workers, const BlockBody& body) {
  const auto blocks = static_cast<std::int64_t>((reps + kRepBlock - 1) / kRepBlock);
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  std::exception_ptr error;
  std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::uint64_t begin = static_cast<std::uint64_t>(b) * kRepBlock;
    try {
      body(begin, std::min(reps, begin + kRepBlock));
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

void run_blocks(std::uint64_t reps, const ExecPolicy& policy, const BlockBody& body) {
  if (policy.mode == ExecPolicy::Mode::Serial) {
    run_blocks_serial(reps, body);
  } else {
    run_blocks_omp(reps, policy.workers, body);
  }
}

}  // namespace maxdep
