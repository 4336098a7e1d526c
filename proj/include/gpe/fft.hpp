#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace gpe::fft {

using cdouble = std::complex<double>;

/// Precomputed tables for a fixed-length complex DFT.
///
/// Power-of-two lengths run an iterative radix-2 Cooley-Tukey; every other
/// length is handled by Bluestein's chirp-z algorithm on top of a
/// power-of-two inner transform, so all even grid sizes get an O(n log n)
/// path. Conventions:
///   forward:  X_k = sum_j x_j e^{-2*pi*i*j*k/n}
///   inverse:  x_j = (1/n) sum_k X_k e^{+2*pi*i*j*k/n}
class Plan {
public:
    explicit Plan(std::size_t n);

    std::size_t size() const { return n_; }
    void forward(cdouble* data) const;
    void inverse(cdouble* data) const;

private:
    void pow2_transform(cdouble* data, bool conj_twiddles) const;

    std::size_t n_ = 0;
    bool pow2_ = false;
    // radix-2 tables
    std::vector<std::size_t> bitrev_;
    std::vector<cdouble> twiddle_; // e^{-2 pi i k / n}, k = 0..n/2-1
    // Bluestein tables
    std::vector<cdouble> chirp_;     // e^{-i pi j^2 / n}
    std::vector<cdouble> kernel_fft_; // FFT of the chirp convolution kernel
    std::shared_ptr<Plan> inner_;     // power-of-two inner plan
};

/// Shared, mutex-guarded plan cache keyed by length.
const Plan& plan_for(std::size_t n);

/// Number of worker threads for line-parallel transform batches.
/// Controlled by the GPE_NUM_THREADS environment variable; defaults to 1,
/// and results are bitwise independent of the setting (workers write
/// disjoint lines, no shared reductions).
int worker_threads();

/// Runs fn(i) for i in [0, count) on the worker pool.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace gpe::fft
