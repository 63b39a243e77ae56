#pragma once

// Unit group U_{b^r}, half-group orderings by a generator, and the
// block-circulant reordering of the reduced matrix
//   Omega_{b^m,w} = [ omega((k b^w z mod b^m) / b^m) ]_{z in Z_{N,w}, k in Z_{b^m}}.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "latqmc/kernel.hpp"

namespace latqmc {

/// Smallest primitive root of U_{b^r} for odd b; 5 for b = 2.
std::uint64_t primitive_root(unsigned b, unsigned r);

struct HalfGroupOrdering {
  unsigned b = 2;
  unsigned r = 1;
  std::uint64_t g = 1;
  std::vector<std::uint64_t> forward;  // g^i mod b^r, 0 <= i < phi(b^r)/2
  std::vector<std::uint64_t> inverse;  // g^{-i} mod b^r
};

/// Ordered half groups. The degenerate U_2 yields the singleton [1].
HalfGroupOrdering half_group(std::uint64_t g, unsigned b, unsigned r);

/// Dense Omega_{b^m,w} built entry by entry from `table` (size b^m).
/// Reference path for tests; b^m is limited to 2^14.
Matrix assemble_reduced_matrix(unsigned b, unsigned m, unsigned w, const Vector& table);

/// Replicated circulant core M_{b^r}: entries M[i][j] = first_row[(j - i) mod size].
struct CirculantBlock {
  unsigned r = 0;
  Vector first_row;
  std::size_t vertical_copies = 0;    // stacked copies of M down the rows
  std::size_t horizontal_copies = 0;  // side-by-side copies of M across the columns
  std::size_t col_offset = 0;         // first column in the reordered layout

  std::size_t size() const { return static_cast<std::size_t>(first_row.size()); }
  std::size_t width() const { return size() * horizontal_copies; }
};

/// Column group in which every entry equals `value` (omega(0) or omega(1/2)).
struct ConstantBlock {
  double value = 0.0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t col_offset = 0;
};

using Block = std::variant<CirculantBlock, ConstantBlock>;

struct BlockDecomposition {
  unsigned b = 2;
  unsigned m = 1;
  unsigned w = 0;
  std::uint64_t g = 1;
  std::vector<std::uint64_t> row_perm;  // reordered row p holds z = row_perm[p]
  std::vector<std::uint64_t> col_perm;  // reordered column c holds k = col_perm[c]
  std::vector<Block> blocks;

  std::size_t rows() const { return row_perm.size(); }
  std::size_t cols() const { return col_perm.size(); }
};

/// Reorders Omega_{b^m,w} (w < m) into replicated circulant blocks with
/// respect to the generator of U_{b^{m-w}}, followed by the constant
/// columns (omega(1/2) then omega(0) for b = 2, omega(0) for odd b).
BlockDecomposition reorder_decomposition(unsigned b, unsigned m, unsigned w, const Vector& table);

/// Dense reordered layout assembled from the block descriptors only.
Matrix materialize(const BlockDecomposition& decomp);

/// Text listing of block shapes, one block per line.
std::string dump(const BlockDecomposition& decomp);

}  // namespace latqmc
