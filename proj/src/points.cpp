#include "latqmc/points.hpp"

namespace latqmc {

Matrix lattice_points(const GeneratingVector& z, bool tent) {
  const std::uint64_t N = z.N();
  Matrix pts(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(z.s()));
  for (std::size_t j = 0; j < z.s(); ++j) {
    std::uint64_t idx = 0;
    for (std::uint64_t n = 0; n < N; ++n) {
      const double x = static_cast<double>(idx) / static_cast<double>(N);
      pts(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j)) = tent ? latqmc::tent(x) : x;
      idx += z.effective[j];
      if (idx >= N) idx -= N;
    }
  }
  return pts;
}

}  // namespace latqmc
