#include "latqmc/unit_group.hpp"

#include <sstream>

#include "latqmc/space.hpp"

namespace latqmc {

std::uint64_t primitive_root(unsigned b, unsigned r) {
  if (!is_prime(b)) throw ValidationError("base must be prime");
  if (r < 1) throw ValidationError("r must be >= 1");
  if (b == 2) return 5;
  const std::uint64_t n = ipow(b, r);
  const std::uint64_t ph = phi_prime_power(b, r);
  const auto factors = prime_factors(ph);
  for (std::uint64_t g = 2; g < n; ++g) {
    if (g % b == 0) continue;
    bool ok = true;
    for (auto p : factors) {
      if (powmod(g, ph / p, n) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

HalfGroupOrdering half_group(std::uint64_t g, unsigned b, unsigned r) {
  if (r < 1) throw ValidationError("r must be >= 1");
  const std::uint64_t n = ipow(b, r);
  HalfGroupOrdering h;
  h.b = b;
  h.r = r;
  h.g = g % n;
  const std::uint64_t ginv = inverse_mod(h.g, n);
  const std::uint64_t ph = phi_prime_power(b, r);
  const std::uint64_t half = ph == 1 ? 1 : ph / 2;
  h.forward.resize(half);
  h.inverse.resize(half);
  std::uint64_t a = 1, c = 1;
  for (std::uint64_t i = 0; i < half; ++i) {
    h.forward[i] = a;
    h.inverse[i] = c;
    a = mulmod(a, h.g, n);
    c = mulmod(c, ginv, n);
  }
  return h;
}

Matrix assemble_reduced_matrix(unsigned b, unsigned m, unsigned w, const Vector& table) {
  const std::uint64_t N = ipow(b, m);
  if (N > (1u << 14)) throw ScaleGuardError("dense reduced matrix limited to b^m <= 2^14");
  if (static_cast<std::uint64_t>(table.size()) != N) throw ValidationError("table size must equal b^m");
  const auto rows = reduced_search_space(b, m, w);
  Matrix A(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(N));
  const std::uint64_t Y = w >= m ? 0 : ipow(b, w);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::uint64_t k = 0; k < N; ++k) {
      const std::uint64_t idx = mulmod(mulmod(k, Y, N), rows[i], N);
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = table(static_cast<Eigen::Index>(idx));
    }
  }
  return A;
}

BlockDecomposition reorder_decomposition(unsigned b, unsigned m, unsigned w, const Vector& table) {
  if (w >= m) throw ValidationError("reorder_decomposition requires w < m");
  const std::uint64_t N = ipow(b, m);
  if (static_cast<std::uint64_t>(table.size()) != N) throw ValidationError("table size must equal b^m");
  const unsigned n = m - w;
  const std::uint64_t bn = ipow(b, n);
  const std::uint64_t bw = ipow(b, w);

  BlockDecomposition d;
  d.b = b;
  d.m = m;
  d.w = w;
  d.g = primitive_root(b, n) % bn;

  // rows: <<g>> followed by -<<g>>
  const std::uint64_t phin = phi_prime_power(b, n);
  if (phin == 1) {
    d.row_perm = {1};
  } else {
    const auto hg = half_group(d.g, b, n);
    d.row_perm.reserve(phin);
    for (auto z : hg.forward) d.row_perm.push_back(z);
    for (auto z : hg.forward) d.row_perm.push_back(bn - z);
  }
  const std::size_t nrows = d.row_perm.size();

  d.col_perm.reserve(N);
  const unsigned last_circ = b == 2 ? 2 : 1;  // smallest r carrying a circulant group
  for (unsigned t = 0; t < n; ++t) {
    const unsigned r = n - t;
    if (r < last_circ) break;
    const std::uint64_t br = ipow(b, r);
    const std::uint64_t bt = ipow(b, t);
    const std::uint64_t gr = d.g % br;
    const auto hg = half_group(gr, b, r);
    const std::size_t h = hg.forward.size();
    const std::uint64_t scale = ipow(b, m - r);

    CirculantBlock blk;
    blk.r = r;
    blk.first_row.resize(static_cast<Eigen::Index>(h));
    for (std::size_t j = 0; j < h; ++j) {
      const std::size_t e = (h - j) % h;
      blk.first_row(static_cast<Eigen::Index>(j)) = table(static_cast<Eigen::Index>(hg.forward[e] * scale));
    }
    blk.vertical_copies = nrows / h;
    blk.horizontal_copies = 2 * bw;
    blk.col_offset = d.col_perm.size();
    for (std::uint64_t j = 0; j < bw; ++j) {
      for (int sign = 0; sign < 2; ++sign) {
        for (std::size_t i = 0; i < h; ++i) {
          const std::uint64_t u = sign == 0 ? hg.inverse[i] : br - hg.inverse[i];
          d.col_perm.push_back(bt * u + j * bn);
        }
      }
    }
    d.blocks.emplace_back(std::move(blk));
  }
  if (b == 2) {
    ConstantBlock half{table(static_cast<Eigen::Index>(N / 2)), nrows, bw, d.col_perm.size()};
    for (std::uint64_t j = 0; j < bw; ++j) d.col_perm.push_back(bn / 2 + j * bn);
    d.blocks.emplace_back(half);
  }
  ConstantBlock zero{table(0), nrows, bw, d.col_perm.size()};
  for (std::uint64_t j = 0; j < bw; ++j) d.col_perm.push_back(j * bn);
  d.blocks.emplace_back(zero);
  return d;
}

Matrix materialize(const BlockDecomposition& d) {
  Matrix A(static_cast<Eigen::Index>(d.rows()), static_cast<Eigen::Index>(d.cols()));
  for (const auto& block : d.blocks) {
    if (const auto* c = std::get_if<CirculantBlock>(&block)) {
      const std::size_t h = c->size();
      for (std::size_t p = 0; p < d.rows(); ++p) {
        for (std::size_t col = 0; col < c->width(); ++col) {
          const std::size_t idx = (col % h + h - p % h) % h;
          A(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(c->col_offset + col)) =
              c->first_row(static_cast<Eigen::Index>(idx));
        }
      }
    } else {
      const auto& k = std::get<ConstantBlock>(block);
      A.block(0, static_cast<Eigen::Index>(k.col_offset), static_cast<Eigen::Index>(k.rows),
              static_cast<Eigen::Index>(k.cols))
          .setConstant(k.value);
    }
  }
  return A;
}

std::string dump(const BlockDecomposition& d) {
  std::ostringstream os;
  os.precision(17);
  os << "decomposition b=" << d.b << " m=" << d.m << " w=" << d.w << " g=" << d.g << " rows=" << d.rows()
     << " cols=" << d.cols() << '\n';
  for (const auto& block : d.blocks) {
    if (const auto* c = std::get_if<CirculantBlock>(&block)) {
      os << "circulant r=" << c->r << " size=" << c->size() << " vcopies=" << c->vertical_copies
         << " hcopies=" << c->horizontal_copies << " cols=[" << c->col_offset << ',' << c->col_offset + c->width()
         << ")\n";
    } else {
      const auto& k = std::get<ConstantBlock>(block);
      os << "constant value=" << k.value << " rows=" << k.rows << " cols=[" << k.col_offset << ','
         << k.col_offset + k.cols << ")\n";
    }
  }
  return os.str();
}

}  // namespace latqmc
