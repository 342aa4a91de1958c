#include "citeforensics/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace citeforensics {

int effective_thread_count(int requested) {
    int n = requested;
    if (n <= 0) {
        n = static_cast<int>(std::thread::hardware_concurrency());
        if (n <= 0) n = 1;
    }
    if (const char* env = std::getenv("CITEFORENSICS_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0 && cap < n) n = cap;
    }
    return n < 1 ? 1 : n;
}

void parallel_for_chunks(std::size_t count, std::size_t chunk_size, int threads,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (count == 0) return;
    if (chunk_size == 0) chunk_size = 1;
    const std::size_t n_chunks = (count + chunk_size - 1) / chunk_size;
    const int workers = std::min<std::size_t>(threads < 1 ? 1 : threads, n_chunks);

    if (workers == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            const std::size_t begin = c * chunk_size;
            fn(c, begin, std::min(begin + chunk_size, count));
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                const std::size_t c = next.fetch_add(1);
                if (c >= n_chunks) break;
                const std::size_t begin = c * chunk_size;
                try {
                    fn(c, begin, std::min(begin + chunk_size, count));
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    break;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace citeforensics
