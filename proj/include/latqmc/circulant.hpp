#pragma once

// Circulant products through the FFT and the fast reduced matvec Omega_{b^m,w} q.

#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "latqmc/fft.hpp"
#include "latqmc/kernel.hpp"
#include "latqmc/unit_group.hpp"

namespace latqmc {

/// Circulant C with C[i][j] = first_row[(j - i) mod n].
class CirculantOperator {
 public:
  CirculantOperator() = default;
  explicit CirculantOperator(const Vector& first_row);

  std::size_t size() const { return static_cast<std::size_t>(first_row_.size()); }
  const Vector& first_row() const { return first_row_; }
  /// Forward transform of the first row.
  const ComplexVector& spectrum() const { return spectrum_; }

  /// C v; the largest discarded imaginary part is written to *imag_residue.
  Vector apply(const Vector& v, OpCounter* ops = nullptr, double* imag_residue = nullptr) const;

 private:
  Vector first_row_;
  ComplexVector spectrum_;
  std::shared_ptr<const FftPlan> plan_;
};

Vector circulant_matvec(const CirculantOperator& op, const Vector& v, OpCounter* ops = nullptr,
                        double* imag_residue = nullptr);

/// Block decomposition with the spectra of its circulant cores precomputed.
class ReducedOperator {
 public:
  explicit ReducedOperator(BlockDecomposition decomp);

  const BlockDecomposition& decomposition() const { return decomp_; }

  /// Omega q with q in natural column order; the result is indexed by
  /// Z_{N,w} in ascending order.
  Vector apply(const Vector& q, OpCounter* ops = nullptr) const;

 private:
  BlockDecomposition decomp_;
  std::vector<CirculantOperator> ops_;  // one per circulant block, in block order
};

Vector reduced_matvec(const BlockDecomposition& decomp, const Vector& q, OpCounter* ops = nullptr);

/// Also covers w >= m, where the only row is z = 1 and the result is omega(0) sum(q).
Vector reduced_matvec(unsigned b, unsigned m, unsigned w, const Vector& table, const Vector& q,
                      OpCounter* ops = nullptr);

/// Level-n operators Omega_{b^n,0} keyed by (b, n), built on first use.
/// A reduced product at (m, w) is the level m-w product of the folded vector.
class SpectraCache {
 public:
  std::shared_ptr<const ReducedOperator> get(unsigned b, unsigned n);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const ReducedOperator>> ops_;
};

/// q'[k] = sum_{i < b^w} q[k + i b^{m-w}], the length-b^{m-w} fold of q.
Vector fold(const Vector& q, std::uint64_t folded_size);

}  // namespace latqmc
