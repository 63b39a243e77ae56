#include "latqmc/circulant.hpp"

#include <cmath>
#include <stdexcept>

#include "latqmc/space.hpp"

namespace latqmc {

CirculantOperator::CirculantOperator(const Vector& first_row)
    : first_row_(first_row), plan_(fft_plan(static_cast<std::size_t>(first_row.size()))) {
  spectrum_ = first_row_.cast<Complex>();
  plan_->forward(spectrum_);
}

Vector CirculantOperator::apply(const Vector& v, OpCounter* ops, double* imag_residue) const {
  if (v.size() != first_row_.size()) throw ValidationError("circulant operand length mismatch");
  const auto n = v.size();
  if (n == 1) {
    count(ops, 1);
    if (imag_residue) *imag_residue = 0.0;
    return Vector::Constant(1, first_row_(0) * v(0));
  }
  // (C v)_i = sum_d r_d v_{i+d} is a correlation, hence the conjugate spectrum
  ComplexVector x = v.cast<Complex>();
  plan_->forward(x, ops);
  x.array() *= spectrum_.conjugate().array();
  count(ops, 4 * static_cast<std::uint64_t>(n));
  plan_->inverse(x, ops);
  if (imag_residue) *imag_residue = x.imag().cwiseAbs().maxCoeff();
  return x.real();
}

Vector circulant_matvec(const CirculantOperator& op, const Vector& v, OpCounter* ops, double* imag_residue) {
  return op.apply(v, ops, imag_residue);
}

ReducedOperator::ReducedOperator(BlockDecomposition decomp) : decomp_(std::move(decomp)) {
  for (const auto& block : decomp_.blocks) {
    if (const auto* c = std::get_if<CirculantBlock>(&block)) ops_.emplace_back(c->first_row);
  }
}

Vector ReducedOperator::apply(const Vector& q, OpCounter* ops) const {
  const auto& d = decomp_;
  if (static_cast<std::size_t>(q.size()) != d.cols()) throw ValidationError("reduced matvec operand length mismatch");
  const std::size_t rows = d.rows();
  Vector permuted = Vector::Zero(static_cast<Eigen::Index>(rows));
  std::size_t next_op = 0;
  for (const auto& block : d.blocks) {
    if (const auto* c = std::get_if<CirculantBlock>(&block)) {
      const std::size_t h = c->size();
      Vector v = Vector::Zero(static_cast<Eigen::Index>(h));
      for (std::size_t col = 0; col < c->width(); ++col) {
        v(static_cast<Eigen::Index>(col % h)) += q(static_cast<Eigen::Index>(d.col_perm[c->col_offset + col]));
      }
      const Vector y = ops_[next_op++].apply(v, ops);
      for (std::size_t p = 0; p < rows; ++p) permuted(static_cast<Eigen::Index>(p)) += y(static_cast<Eigen::Index>(p % h));
    } else {
      const auto& k = std::get<ConstantBlock>(block);
      double sum = 0.0;
      for (std::size_t col = 0; col < k.cols; ++col) sum += q(static_cast<Eigen::Index>(d.col_perm[k.col_offset + col]));
      permuted.array() += k.value * sum;
      count(ops, 1);
    }
  }
  Vector out(static_cast<Eigen::Index>(rows));
  for (std::size_t p = 0; p < rows; ++p) {
    out(static_cast<Eigen::Index>(unit_rank(d.row_perm[p], d.b))) = permuted(static_cast<Eigen::Index>(p));
  }
  return out;
}

Vector reduced_matvec(const BlockDecomposition& decomp, const Vector& q, OpCounter* ops) {
  return ReducedOperator(decomp).apply(q, ops);
}

Vector reduced_matvec(unsigned b, unsigned m, unsigned w, const Vector& table, const Vector& q, OpCounter* ops) {
  if (w >= m) {
    if (q.size() != table.size()) throw ValidationError("reduced matvec operand length mismatch");
    count(ops, 1);
    return Vector::Constant(1, table(0) * q.sum());
  }
  return reduced_matvec(reorder_decomposition(b, m, w, table), q, ops);
}

std::shared_ptr<const ReducedOperator> SpectraCache::get(unsigned b, unsigned n) {
  const auto key = std::make_pair(b, n);
  std::lock_guard<std::mutex> lock(mu_);
  auto it = ops_.find(key);
  if (it != ops_.end()) return it->second;
  const Vector table = omega_table(ipow(b, n));
  auto op = std::make_shared<const ReducedOperator>(reorder_decomposition(b, n, 0, table));
  ops_.emplace(key, op);
  return op;
}

std::size_t SpectraCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return ops_.size();
}

Vector fold(const Vector& q, std::uint64_t folded_size) {
  const auto n = static_cast<Eigen::Index>(folded_size);
  if (n == 0 || q.size() % n != 0) throw ValidationError("fold size must divide the vector length");
  return q.reshaped(n, q.size() / n).rowwise().sum();
}

}  // namespace latqmc
