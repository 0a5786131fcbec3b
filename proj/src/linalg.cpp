#include "pressure_lab/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace pressure_lab {

SingularValues singular_values(const Mat& m) {
  const double frob2 = m.squaredNorm();
  const double det = std::abs(m.determinant());
  const double disc = std::sqrt(std::max(0.0, (frob2 - 2.0 * det) * (frob2 + 2.0 * det)));
  const double s1 = std::sqrt(0.5 * (frob2 + disc));
  SingularValues out;
  out.largest = s1;
  out.smallest = s1 > 0.0 ? det / s1 : 0.0;
  return out;
}

Eigen2 eigenvalues(const Mat& m) {
  const double tr = m.trace();
  const double det = m.determinant();
  const double disc = tr * tr - 4.0 * det;
  Eigen2 out;
  if (disc < 0.0) {
    const double re = 0.5 * tr;
    const double im = 0.5 * std::sqrt(-disc);
    out.complex_pair = true;
    out.values = {std::complex<double>(re, -im), std::complex<double>(re, im)};
    const double lm = 0.5 * std::log(std::abs(det));
    out.log_moduli = {lm, lm};
    return out;
  }
  // Stable quadratic roots of z^2 - tr z + det.
  const double root = std::sqrt(disc);
  const double big = 0.5 * (tr + (tr >= 0.0 ? root : -root));
  const double small = big != 0.0 ? det / big : 0.0;
  double a = small;
  double b = big;
  if (std::abs(a) > std::abs(b)) std::swap(a, b);
  out.values = {std::complex<double>(a, 0.0), std::complex<double>(b, 0.0)};
  out.log_moduli = {std::log(std::abs(a)), std::log(std::abs(b))};
  return out;
}

double ScaledMatrix::log_norm() const { return log_scale_ + std::log(spectral_norm(matrix_)); }

void ScaledMatrix::renormalise() {
  const double n = matrix_.cwiseAbs().maxCoeff();
  if (n > 1e100 || (n < 1e-100 && n > 0.0)) {
    matrix_ /= n;
    log_scale_ += std::log(n);
  }
}

}  // namespace pressure_lab
