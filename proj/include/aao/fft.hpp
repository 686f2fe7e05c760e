#pragma once

#include <complex>
#include <cstddef>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <fftw3.h>

namespace aao::fft {

/// Smallest 5-smooth integer >= n (sizes FFTW handles at full speed).
inline std::size_t next_fast_size(std::size_t n) {
  if (n <= 1) return 1;
  for (std::size_t candidate = n;; ++candidate) {
    std::size_t r = candidate;
    while (r % 2 == 0) r /= 2;
    while (r % 3 == 0) r /= 3;
    while (r % 5 == 0) r /= 5;
    if (r == 1) return candidate;
  }
}

namespace detail {

// Plans are created once per (kind, length) under a lock and reused through
// the new-array execute interface, which is safe to call concurrently.
// FFTW_UNALIGNED lifts the SIMD alignment requirement so plans work with
// plain std::vector storage.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan complex_plan(std::size_t n, int sign) {
    const std::uint64_t key = (static_cast<std::uint64_t>(n) << 2) |
                              (sign == FFTW_FORWARD ? 0u : 1u);
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second.plan;
    Entry e;
    e.a = fftw_malloc(sizeof(fftw_complex) * n);
    e.b = fftw_malloc(sizeof(fftw_complex) * n);
    e.plan = fftw_plan_dft_1d(static_cast<int>(n),
                              static_cast<fftw_complex*>(e.a),
                              static_cast<fftw_complex*>(e.b),
                              sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    return plans_.emplace(key, e).first->second.plan;
  }

  fftw_plan r2c_plan(std::size_t n) {
    const std::uint64_t key = (static_cast<std::uint64_t>(n) << 2) | 2u;
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second.plan;
    Entry e;
    e.a = fftw_malloc(sizeof(double) * n);
    e.b = fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1));
    e.plan = fftw_plan_dft_r2c_1d(static_cast<int>(n),
                                  static_cast<double*>(e.a),
                                  static_cast<fftw_complex*>(e.b),
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
    return plans_.emplace(key, e).first->second.plan;
  }

  fftw_plan c2r_plan(std::size_t n) {
    const std::uint64_t key = (static_cast<std::uint64_t>(n) << 2) | 3u;
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second.plan;
    Entry e;
    e.a = fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1));
    e.b = fftw_malloc(sizeof(double) * n);
    e.plan = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                  static_cast<fftw_complex*>(e.a),
                                  static_cast<double*>(e.b),
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
    return plans_.emplace(key, e).first->second.plan;
  }

 private:
  struct Entry {
    fftw_plan plan = nullptr;
    void* a = nullptr;  // dummy buffers, kept alive with the plan
    void* b = nullptr;
  };

  PlanCache() = default;
  // Plans live for the whole process; freeing them at static destruction
  // races with late callers, so the cache is intentionally leaked.
  ~PlanCache() = default;

  std::mutex mutex_;
  std::unordered_map<std::uint64_t, Entry> plans_;
};

inline fftw_complex* as_fftw(std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(p);
}

}  // namespace detail

/// y = DFT(x), unnormalized. x and y must not alias.
inline void forward(const std::complex<double>* x, std::complex<double>* y,
                    std::size_t n) {
  if (n == 0) throw std::invalid_argument("fft: empty transform");
  fftw_plan plan = detail::PlanCache::instance().complex_plan(n, FFTW_FORWARD);
  fftw_execute_dft(plan,
                   detail::as_fftw(const_cast<std::complex<double>*>(x)),
                   detail::as_fftw(y));
}

/// y = IDFT(x) / n. x and y must not alias.
inline void inverse(const std::complex<double>* x, std::complex<double>* y,
                    std::size_t n) {
  if (n == 0) throw std::invalid_argument("fft: empty transform");
  fftw_plan plan = detail::PlanCache::instance().complex_plan(n, FFTW_BACKWARD);
  fftw_execute_dft(plan,
                   detail::as_fftw(const_cast<std::complex<double>*>(x)),
                   detail::as_fftw(y));
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) y[k] *= scale;
}

/// Half spectrum (n/2 + 1 entries) of a real signal, unnormalized.
inline void real_forward(const double* x, std::complex<double>* y,
                         std::size_t n) {
  if (n == 0) throw std::invalid_argument("fft: empty transform");
  fftw_plan plan = detail::PlanCache::instance().r2c_plan(n);
  fftw_execute_dft_r2c(plan, const_cast<double*>(x), detail::as_fftw(y));
}

/// Real signal from a half spectrum, scaled by 1/n. Clobbers x.
inline void real_inverse(std::complex<double>* x, double* y, std::size_t n) {
  if (n == 0) throw std::invalid_argument("fft: empty transform");
  fftw_plan plan = detail::PlanCache::instance().c2r_plan(n);
  fftw_execute_dft_c2r(plan, detail::as_fftw(x), y);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) y[k] *= scale;
}

}  // namespace aao::fft
