#include "abg/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>

namespace abg {

namespace {

std::atomic<int> g_override{0};

} // namespace

int thread_count()
{
    if (int t = g_override.load(); t > 0)
        return t;
    if (const char* env = std::getenv("ABG_THREADS")) {
        try {
            int t = std::stoi(env);
            if (t > 0)
                return t;
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void set_thread_count(int threads)
{
    g_override.store(threads);
}

std::vector<std::pair<std::size_t, std::size_t>> split_range(std::size_t n, std::size_t parts)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    parts = std::max<std::size_t>(1, std::min(parts, n));
    for (std::size_t p = 0; p < parts; ++p)
        out.emplace_back(n * p / parts, n * (p + 1) / parts);
    if (n == 0)
        out.assign(1, {0, 0});
    return out;
}

void parallel_tasks(std::size_t tasks, const std::function<void(std::size_t)>& fn)
{
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), tasks);
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next.store(tasks);
            }
        }
    };
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    pool.clear();
    if (error)
        std::rethrow_exception(error);
}

} // namespace abg
