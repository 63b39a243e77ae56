#include "latqmc/kernel.hpp"

#include <cmath>

namespace latqmc {

double omega(double x, double alpha) {
  if (alpha != 2.0) {
    throw ValidationError("closed-form kernel is only available for alpha = 2");
  }
  return omega<double>(x);
}

double zeta(double s) {
  if (!(s > 1.0)) throw ValidationError("zeta(s) requires s > 1");
  return std::riemann_zeta(s);
}

}  // namespace latqmc
