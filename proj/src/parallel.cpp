#include "weakwave/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace weakwave {

unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("WEAKWAVE_THREADS")) {
        try {
            const long cap = std::stol(env);
            // An explicit setting wins over the detected core count so that
            // multi-worker scheduling can be exercised on small machines.
            if (cap > 0) {
                n = static_cast<unsigned>(std::min(cap, 256L));
            }
        } catch (const std::exception&) {
            // ignore malformed values
        }
    }
    return n;
}

void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t, std::size_t)>& body) {
    if (n == 0) {
        return;
    }
    const std::size_t chunks = std::min<std::size_t>(std::max(1u, workers), n);
    if (chunks == 1) {
        body(0, n);
        return;
    }
    std::vector<std::exception_ptr> errors(chunks);
    {
        std::vector<std::jthread> pool;
        pool.reserve(chunks);
        for (std::size_t c = 0; c < chunks; ++c) {
            const std::size_t begin = n * c / chunks;
            const std::size_t end = n * (c + 1) / chunks;
            pool.emplace_back([&, c, begin, end] {
                try {
                    body(begin, end);
                } catch (...) {
                    errors[c] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace weakwave
