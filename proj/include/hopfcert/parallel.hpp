#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hopfcert::parallel {

/// Worker cap for every data-parallel loop; 0 means hardware concurrency.
void set_workers(unsigned n);
unsigned workers();

/// Runs body(begin, end, worker) over contiguous chunks of [0, n). Chunk
/// boundaries depend only on n and the worker count; callers combine
/// per-worker results with commutative reductions so the outcome does not
/// depend on either.
template <class Body>
void for_chunks(std::size_t n, Body&& body) {
    const std::size_t w = std::max<std::size_t>(1, std::min<std::size_t>(workers(), n));
    if (w == 1) {
        body(std::size_t{0}, n, 0U);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(w);
    const std::size_t step = (n + w - 1) / w;
    for (std::size_t k = 0; k < w; ++k) {
        const std::size_t begin = std::min(n, k * step);
        const std::size_t end = std::min(n, begin + step);
        threads.emplace_back([&, begin, end, k] {
            try {
                body(begin, end, static_cast<unsigned>(k));
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

/// Number of chunks for_chunks will use for n items.
inline unsigned chunk_count(std::size_t n) {
    return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(workers(), n)));
}

/// Sum of f(i) over [0, n) as an exact integer.
template <class F>
long long count_sum(std::size_t n, F&& f) {
    std::vector<long long> partial(chunk_count(n), 0);
    for_chunks(n, [&](std::size_t begin, std::size_t end, unsigned k) {
        long long s = 0;
        for (std::size_t i = begin; i < end; ++i) s += f(i);
        partial[k] = s;
    });
    long long total = 0;
    for (long long s : partial) total += s;
    return total;
}

}  // namespace hopfcert::parallel
