#include "latqmc/fft.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace latqmc {

namespace {

Complex unit_root(std::uint64_t num, std::uint64_t den) {
  // exp(-2 pi i num/den) with num reduced first to keep the angle small
  const double a = -2.0 * std::numbers::pi * static_cast<double>(num % den) / static_cast<double>(den);
  return {std::cos(a), std::sin(a)};
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("transform length must be >= 1");
  pow2_ = std::has_single_bit(n);
  if (pow2_) {
    twiddle_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) twiddle_[k] = unit_root(k, n);
    rev_.resize(n);
    const int bits = std::countr_zero(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
      rev_[i] = r;
    }
    return;
  }
  const std::size_t M = std::bit_ceil(2 * n - 1);
  inner_ = fft_plan(M);
  chirp_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the phase exact for large k
    const std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % (2 * n);
    chirp_[k] = unit_root(k2, 2 * n);
  }
  kernel_hat_ = ComplexVector::Zero(static_cast<Eigen::Index>(M));
  kernel_hat_(0) = std::conj(chirp_[0]);
  for (std::size_t k = 1; k < n; ++k) {
    kernel_hat_(static_cast<Eigen::Index>(k)) = std::conj(chirp_[k]);
    kernel_hat_(static_cast<Eigen::Index>(M - k)) = std::conj(chirp_[k]);
  }
  inner_->forward(kernel_hat_);
}

void FftPlan::radix2(Complex* x, OpCounter* ops) const {
  const std::size_t n = n_;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < rev_[i]) std::swap(x[i], x[rev_[i]]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const Complex t = twiddle_[j * step] * x[i + j + half];
        x[i + j + half] = x[i + j] - t;
        x[i + j] += t;
      }
    }
    count(ops, 4 * (n / 2));
  }
}

void FftPlan::bluestein(ComplexVector& x, OpCounter* ops) const {
  const std::size_t M = inner_->size();
  ComplexVector a = ComplexVector::Zero(static_cast<Eigen::Index>(M));
  for (std::size_t k = 0; k < n_; ++k) a(static_cast<Eigen::Index>(k)) = x(static_cast<Eigen::Index>(k)) * chirp_[k];
  count(ops, 4 * n_);
  inner_->forward(a, ops);
  a.array() *= kernel_hat_.array();
  count(ops, 4 * M);
  inner_->inverse(a, ops);
  for (std::size_t k = 0; k < n_; ++k) x(static_cast<Eigen::Index>(k)) = a(static_cast<Eigen::Index>(k)) * chirp_[k];
  count(ops, 4 * n_);
}

void FftPlan::forward(ComplexVector& x, OpCounter* ops) const {
  if (static_cast<std::size_t>(x.size()) != n_) throw std::invalid_argument("transform length mismatch");
  if (n_ == 1) return;
  if (pow2_) {
    radix2(x.data(), ops);
  } else {
    bluestein(x, ops);
  }
}

void FftPlan::inverse(ComplexVector& x, OpCounter* ops) const {
  x = x.conjugate();
  forward(x, ops);
  x = x.conjugate() / static_cast<double>(n_);
  count(ops, 2 * n_);
}

std::shared_ptr<const FftPlan> fft_plan(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::shared_ptr<const FftPlan>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // built outside the lock: Bluestein plans request their inner plan recursively
  auto plan = std::make_shared<const FftPlan>(n);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, plan).first->second;
}

ComplexVector forward_transform(const ComplexVector& x, OpCounter* ops) {
  ComplexVector y = x;
  fft_plan(static_cast<std::size_t>(x.size()))->forward(y, ops);
  return y;
}

ComplexVector inverse_transform(const ComplexVector& x, OpCounter* ops) {
  ComplexVector y = x;
  fft_plan(static_cast<std::size_t>(x.size()))->inverse(y, ops);
  return y;
}

}  // namespace latqmc
