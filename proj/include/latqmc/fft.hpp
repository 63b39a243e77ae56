#pragma once

// Arbitrary-length discrete Fourier transforms: iterative radix-2 for powers
// of two, Bluestein's chirp-z for everything else.

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace latqmc {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

/// Counts real multiplications (a complex product counts as 4).
struct OpCounter {
  std::uint64_t mults = 0;
  void add(std::uint64_t k) { mults += k; }
};

inline void count(OpCounter* ops, std::uint64_t k) {
  if (ops) ops->add(k);
}

class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }

  /// X_k = sum_j x_j exp(-2 pi i jk/n), in place.
  void forward(ComplexVector& x, OpCounter* ops = nullptr) const;
  /// x_j = (1/n) sum_k X_k exp(2 pi i jk/n), in place.
  void inverse(ComplexVector& x, OpCounter* ops = nullptr) const;

 private:
  void radix2(Complex* x, OpCounter* ops) const;
  void bluestein(ComplexVector& x, OpCounter* ops) const;

  std::size_t n_ = 1;
  bool pow2_ = true;
  std::vector<Complex> twiddle_;   // exp(-2 pi i k/n), k < n/2 (radix-2 only)
  std::vector<std::size_t> rev_;   // bit reversal (radix-2 only)
  std::vector<Complex> chirp_;     // exp(-pi i k^2/n) (Bluestein)
  ComplexVector kernel_hat_;       // transformed conjugate chirp, length inner_->size()
  std::shared_ptr<const FftPlan> inner_;
};

/// Shared plan for length n (plans are immutable; the cache is lock-protected).
std::shared_ptr<const FftPlan> fft_plan(std::size_t n);

ComplexVector forward_transform(const ComplexVector& x, OpCounter* ops = nullptr);
ComplexVector inverse_transform(const ComplexVector& x, OpCounter* ops = nullptr);

}  // namespace latqmc
