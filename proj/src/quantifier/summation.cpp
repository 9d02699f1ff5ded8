#include "latticeq/quantifier/summation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace latticeq::quant {

void CompensatedSum::merge(const CompensatedSum& other) noexcept {
    add_part(re_, cre_, other.re_);
    add_part(im_, cim_, other.im_);
    cre_ += other.cre_;
    cim_ += other.cim_;
    max_norm2_ = std::max({max_norm2_, other.max_norm2_, re_ * re_ + im_ * im_});
    terms_ += other.terms_;
}

void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& body, Exec exec) {
    int workers = static_cast<int>(std::min<std::int64_t>(std::max(exec.threads, 1), count));
    if (workers <= 1) {
        for (std::int64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            std::int64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = count;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

SumResult chunked_sum(std::int64_t first, std::int64_t count, const ChunkFn& fn, Exec exec) {
    SumResult out;
    if (count <= 0) return out;
    const std::int64_t chunks = (count + chunk_length - 1) / chunk_length;
    std::vector<CompensatedSum> parts(static_cast<std::size_t>(chunks));
    parallel_for(
        chunks,
        [&](std::int64_t c) {
            std::int64_t lo = c * chunk_length;
            std::int64_t len = std::min(chunk_length, count - lo);
            fn(first + lo, len, parts[static_cast<std::size_t>(c)]);
        },
        exec);
    // Pairwise tree: stride doubling over chunk index.
    for (std::size_t stride = 1; stride < parts.size(); stride *= 2) {
        for (std::size_t i = 0; i + stride < parts.size(); i += 2 * stride) parts[i].merge(parts[i + stride]);
    }
    const CompensatedSum& total = parts.front();
    out.value = total.value();
    out.terms = total.terms();
    out.max_partial = total.max_partial();
    out.fp_err = static_cast<double>(out.terms) * std::numeric_limits<double>::epsilon() * out.max_partial;
    return out;
}

SumResult chunked_sum_terms(std::int64_t first, std::int64_t count, const std::function<Complex(std::int64_t)>& term,
                            Exec exec) {
    return chunked_sum(
        first, count,
        [&](std::int64_t lo, std::int64_t len, CompensatedSum& acc) {
            for (std::int64_t k = lo; k < lo + len; ++k) acc.add(term(k));
        },
        exec);
}

}  // namespace latticeq::quant
