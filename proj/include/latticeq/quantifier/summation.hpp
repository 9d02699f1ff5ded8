#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>

namespace latticeq::quant {

using Complex = std::complex<double>;

/// Thread budget for a reduction. Results never depend on it.
struct Exec {
    int threads = 1;
};

/// Neumaier-compensated complex accumulator.
class CompensatedSum {
public:
    void add(Complex v) noexcept {
        add_part(re_, cre_, v.real());
        add_part(im_, cim_, v.imag());
        double mag2 = re_ * re_ + im_ * im_;
        if (mag2 > max_norm2_) max_norm2_ = mag2;
        ++terms_;
    }
    /// Folds another accumulator in (used by the fixed combine tree).
    void merge(const CompensatedSum& other) noexcept;
    Complex value() const noexcept { return {re_ + cre_, im_ + cim_}; }
    double max_partial() const noexcept { return std::sqrt(max_norm2_); }
    std::int64_t terms() const noexcept { return terms_; }

private:
    static void add_part(double& sum, double& comp, double x) noexcept {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) comp += (sum - t) + x;
        else comp += (x - t) + sum;
        sum = t;
    }
    double re_ = 0, cre_ = 0, im_ = 0, cim_ = 0;
    double max_norm2_ = 0;
    std::int64_t terms_ = 0;
};

struct SumResult {
    Complex value;
    std::int64_t terms = 0;
    double max_partial = 0;
    /// terms * eps * max partial magnitude, before any output scaling.
    double fp_err = 0;
};

/// Fills acc with the terms for indices [first, first + count).
using ChunkFn = std::function<void(std::int64_t first, std::int64_t count, CompensatedSum& acc)>;

/// Fixed chunk length; partitions and the pairwise combine order depend only on
/// the index range.
inline constexpr std::int64_t chunk_length = std::int64_t{1} << 15;

SumResult chunked_sum(std::int64_t first, std::int64_t count, const ChunkFn& fn, Exec exec = {});

/// Convenience form for a per-index term function.
SumResult chunked_sum_terms(std::int64_t first, std::int64_t count, const std::function<Complex(std::int64_t)>& term,
                            Exec exec = {});

/// Runs body(i) for i in [0, count) on up to exec.threads threads.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& body, Exec exec);

}  // namespace latticeq::quant
