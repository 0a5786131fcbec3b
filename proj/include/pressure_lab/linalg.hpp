#pragma once

#include "pressure_lab/torus.hpp"

#include <array>
#include <complex>

namespace pressure_lab {

struct SingularValues {
  double largest = 0.0;
  double smallest = 0.0;
};

/// Closed-form singular values of a 2x2 matrix: s1^2 + s2^2 = |M|_F^2, s1*s2 = |det M|.
SingularValues singular_values(const Mat& m);

/// Operator norm induced by the Euclidean norm.
inline double spectral_norm(const Mat& m) { return singular_values(m).largest; }

struct Eigen2 {
  // Ordered by ascending modulus; for a complex pair values[1] has positive imaginary part.
  std::array<std::complex<double>, 2> values;
  bool complex_pair = false;
  // log|eig|; for a complex pair both equal log(sqrt|det|).
  std::array<double, 2> log_moduli{};
};

Eigen2 eigenvalues(const Mat& m);

/// Product of matrices stored as exp(log_scale) * matrix, renormalised once
/// the stored matrix norm leaves [1e-100, 1e100].
class ScaledMatrix {
 public:
  ScaledMatrix() : matrix_(Mat::Identity()) {}
  explicit ScaledMatrix(const Mat& m)
      : matrix_(m), log_abs_det_(std::log(std::abs(m.determinant()))) {
    renormalise();
  }

  /// this <- left * this
  void left_multiply(const Mat& left) {
    matrix_ = left * matrix_;
    log_abs_det_ += std::log(std::abs(left.determinant()));
    renormalise();
  }

  const Mat& matrix() const { return matrix_; }
  double log_scale() const { return log_scale_; }

  double log_norm() const;
  /// log of the smallest singular value, taken from the accumulated
  /// determinant so that ill-conditioned products keep their accuracy.
  double log_conorm() const { return log_abs_det_ - log_norm(); }
  double log_abs_det() const { return log_abs_det_; }

 private:
  void renormalise();

  Mat matrix_;
  double log_scale_ = 0.0;
  double log_abs_det_ = 0.0;
};

/// log|M v| for a unit vector at angle theta.
inline double log_stretch(const Mat& m, double theta) {
  Vec v(std::cos(theta), std::sin(theta));
  return std::log((m * v).norm());
}

}  // namespace pressure_lab
