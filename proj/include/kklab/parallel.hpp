#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kklab {

/// Worker count used by every parallel kernel. Results never depend on it.
void set_thread_count(unsigned threads);
unsigned thread_count();

namespace detail {
/// Set on threads executing a parallel_for body; nested calls run inline.
inline thread_local bool inside_parallel_region = false;
} // namespace detail

/// Runs body(i) for i in [0, count) on up to thread_count() threads. If any
/// call throws, the exception from the smallest failing index is rethrown,
/// so failure behaviour is schedule-independent.
template <typename Body>
void parallel_for(std::size_t count, Body && body)
{
    unsigned workers = thread_count();
    if (workers <= 1 || count <= 1 || detail::inside_parallel_region) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    if (workers > count)
        workers = static_cast<unsigned>(count);

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = count;
    std::exception_ptr error;

    auto worker = [&] {
        const bool outer = detail::inside_parallel_region;
        detail::inside_parallel_region = true;
        struct Restore {
            bool value;
            ~Restore() { detail::inside_parallel_region = value; }
        } restore{outer};
        while (true) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count)
                return;
            {
                std::lock_guard lock(error_mutex);
                if (i > error_index)
                    return;
            }
            try {
                body(i);
            }
            catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 1; t < workers; ++t)
        pool.emplace_back(worker);
    worker();
    pool.clear();
    if (error)
        std::rethrow_exception(error);
}

/// parallel_for that stores body(i) into slot i.
template <typename T, typename Body>
std::vector<T> parallel_map(std::size_t count, Body && body)
{
    std::vector<T> out(count);
    parallel_for(count, [&](std::size_t i) { out[i] = body(i); });
    return out;
}

} // namespace kklab
