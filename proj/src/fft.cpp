#include "gpe/fft.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#include "gpe/errors.hpp"

namespace gpe::fft {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace

Plan::Plan(std::size_t n) : n_(n), pow2_(is_pow2(n)) {
    if (n == 0) throw InvalidInput("fft: zero-length transform");
    const double pi = std::numbers::pi;
    if (pow2_) {
        bitrev_.resize(n);
        std::size_t log2n = 0;
        while ((std::size_t{1} << log2n) < n) ++log2n;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (std::size_t b = 0; b < log2n; ++b)
                if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
            bitrev_[i] = r;
        }
        twiddle_.resize(n / 2);
        for (std::size_t k = 0; k < n / 2; ++k) {
            double ang = -2.0 * pi * double(k) / double(n);
            twiddle_[k] = {std::cos(ang), std::sin(ang)};
        }
    } else {
        // Bluestein: x_j e^{-i pi j^2/n} convolved with e^{+i pi j^2/n}.
        const std::size_t m = next_pow2(2 * n - 1);
        inner_ = std::make_shared<Plan>(m);
        chirp_.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            // j^2 mod 2n keeps the angle argument small for large n
            std::size_t j2 = (j * j) % (2 * n);
            double ang = -pi * double(j2) / double(n);
            chirp_[j] = {std::cos(ang), std::sin(ang)};
        }
        std::vector<cdouble> b(m, cdouble{0.0, 0.0});
        b[0] = std::conj(chirp_[0]);
        for (std::size_t j = 1; j < n; ++j) {
            b[j] = std::conj(chirp_[j]);
            b[m - j] = std::conj(chirp_[j]);
        }
        inner_->forward(b.data());
        kernel_fft_ = std::move(b);
    }
}

void Plan::pow2_transform(cdouble* a, bool conj_twiddles) const {
    const std::size_t n = n_;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = bitrev_[i];
        if (r > i) std::swap(a[i], a[r]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t step = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                cdouble w = twiddle_[k * step];
                if (conj_twiddles) w = std::conj(w);
                cdouble u = a[start + k];
                cdouble t = a[start + k + half] * w;
                a[start + k] = u + t;
                a[start + k + half] = u - t;
            }
        }
    }
}

void Plan::forward(cdouble* data) const {
    if (pow2_) {
        pow2_transform(data, false);
        return;
    }
    const std::size_t n = n_;
    const std::size_t m = inner_->size();
    std::vector<cdouble> a(m, cdouble{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) a[j] = data[j] * chirp_[j];
    inner_->forward(a.data());
    for (std::size_t j = 0; j < m; ++j) a[j] *= kernel_fft_[j];
    inner_->inverse(a.data());
    for (std::size_t k = 0; k < n; ++k) data[k] = a[k] * chirp_[k];
}

void Plan::inverse(cdouble* data) const {
    const std::size_t n = n_;
    if (pow2_) {
        pow2_transform(data, true);
        const double inv = 1.0 / double(n);
        for (std::size_t i = 0; i < n; ++i) data[i] *= inv;
        return;
    }
    for (std::size_t i = 0; i < n; ++i) data[i] = std::conj(data[i]);
    forward(data);
    const double inv = 1.0 / double(n);
    for (std::size_t i = 0; i < n; ++i) data[i] = std::conj(data[i]) * inv;
}

const Plan& plan_for(std::size_t n) {
    static std::mutex mtx;
    static std::map<std::size_t, std::unique_ptr<Plan>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<Plan>(n)).first;
    return *it->second;
}

int worker_threads() {
    static int n = [] {
        const char* env = std::getenv("GPE_NUM_THREADS");
        if (!env) return 1;
        int v = std::atoi(env);
        return v > 0 ? v : 1;
    }();
    return n;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const int nt = worker_threads();
    if (nt <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const int workers = int(std::min<std::size_t>(std::size_t(nt), count));
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = std::size_t(w); i < count; i += std::size_t(workers)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace gpe::fft
