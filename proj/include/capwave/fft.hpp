#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace capwave::detail {

// Thin wrapper over FFTW with a global plan cache. Plans are created once per
// (N, direction) with FFTW_ESTIMATE so planning never touches the data and
// results are reproducible run to run. Execution goes through the new-array
// interface; FFTW_UNALIGNED keeps that legal for arbitrary buffers.
class FftCache {
 public:
  static FftCache& instance() {
    static FftCache cache;
    return cache;
  }

  // out-of-place transform, in and out must be distinct buffers of length n
  void execute(int n, int sign, const std::complex<double>* in, std::complex<double>* out) {
    fftw_plan p = plan(n, sign);
    // c2c out-of-place transforms leave the input untouched
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
  }

  FftCache(const FftCache&) = delete;
  FftCache& operator=(const FftCache&) = delete;

 private:
  FftCache() = default;
  ~FftCache() {
    for (auto& [key, p] : plans_) fftw_destroy_plan(p);
  }

  fftw_plan plan(int n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<std::complex<double>> a(n), b(n);
    fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                   reinterpret_cast<fftw_complex*>(b.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, p);
    return p;
  }

  std::mutex mu_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

inline void dft_forward(int n, const std::complex<double>* in, std::complex<double>* out) {
  FftCache::instance().execute(n, FFTW_FORWARD, in, out);
}

inline void dft_backward(int n, const std::complex<double>* in, std::complex<double>* out) {
  FftCache::instance().execute(n, FFTW_BACKWARD, in, out);
}

}  // namespace capwave::detail
