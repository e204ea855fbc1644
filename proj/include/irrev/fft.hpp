#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <span>

namespace irrev::detail {

// Unnormalized in-place DFT backed by FFTW. Plans are created once per
// (size, direction) under a lock; executing a plan on new arrays is
// thread-safe.
class FftPlans {
 public:
  static FftPlans& instance() {
    static FftPlans plans;
    return plans;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* buf = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans_.emplace(key, p);
    return p;
  }

  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

 private:
  FftPlans() = default;
  ~FftPlans() {
    for (auto& [key, p] : plans_) fftw_destroy_plan(p);
  }

  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

inline void fft_inplace(std::span<std::complex<double>> data, int sign) {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(FftPlans::instance().get(data.size(), sign), p, p);
}

/// x_k <- sum_j x_j exp(-2 pi i j k / n)
inline void fft_forward(std::span<std::complex<double>> data) { fft_inplace(data, FFTW_FORWARD); }

/// x_j <- sum_k x_k exp(+2 pi i j k / n)
inline void fft_backward(std::span<std::complex<double>> data) { fft_inplace(data, FFTW_BACKWARD); }

}  // namespace irrev::detail
