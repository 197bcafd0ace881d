#include "herzkit/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace herzkit {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_thread_count(unsigned n)
{
    g_threads = std::max(1u, n);
}

unsigned thread_count()
{
    return g_threads;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body)
{
    const std::size_t workers = std::min<std::size_t>(g_threads, n);
    if (workers <= 1) {
        if (n > 0)
            body(0, n);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end)
            break;
        pool.emplace_back([&, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

}  // namespace herzkit
