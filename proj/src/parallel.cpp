#include "simlearn/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace simlearn {

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("SIMLEARN_THREADS")) {
    int requested = std::atoi(env);
    if (requested >= 1 && requested < hw) return requested;
    if (requested >= hw) return requested;  // allow oversubscription if asked
  }
  return hw;
}

void for_each_chunk(std::size_t n, std::size_t chunk,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  if (chunk == 0) chunk = 1;
  const std::size_t num_chunks = (n + chunk - 1) / chunk;
  const int workers = worker_count();

  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * chunk;
    const std::size_t end = begin + chunk < n ? begin + chunk : n;
    fn(c, begin, end);
  };

  if (workers == 1 || num_chunks == 1) {
    for (std::size_t c = 0; c < num_chunks; ++c) run_chunk(c);
    return;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= num_chunks) break;
      run_chunk(c);
    }
  };
  std::vector<std::thread> pool;
  const int spawn = workers < static_cast<int>(num_chunks) ? workers : static_cast<int>(num_chunks);
  pool.reserve(static_cast<std::size_t>(spawn));
  for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace simlearn
