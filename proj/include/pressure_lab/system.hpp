#pragma once

#include "pressure_lab/torus.hpp"

#include <string>
#include <variant>
#include <vector>

namespace pressure_lab {

/// Hyperbolic-or-not toral automorphism x -> A x (mod 1), A integer with |det A| = 1.
struct LinearStep {
  Eigen::Matrix2i matrix;
};

/// Chirikov standard map on [0, 2pi)^2:
///   x' = x + p + K sin x,  p' = p + K sin x
/// or its exact inverse.
struct StandardStep {
  double k = 1.0;
  bool inverse = false;
};

/// Area-preserving shear on [0, L)^2.
/// axis 0: y' = y + a sin(2 pi x / L);  axis 1: x' = x + a sin(2 pi y / L).
struct ShearStep {
  double amplitude = 0.0;
  int axis = 0;
};

using MapStep = std::variant<LinearStep, StandardStep, ShearStep>;

/// An explicit conservative map of the 2-torus with exact Jacobian and exact
/// inverse. The map is the composition of its steps, applied in order.
/// Immutable value type.
class SystemDef {
 public:
  static SystemDef linear_torus(const Eigen::Matrix2i& matrix);
  static SystemDef cat_map();
  static SystemDef identity(double period = 1.0);
  static SystemDef standard_map(double k);
  static SystemDef shear(double amplitude, int axis, double period);

  /// Composition: first this map, then `next`. Both must share the fundamental domain.
  SystemDef then(const SystemDef& next) const;
  SystemDef inverse() const;

  Point eval(const Point& x) const { return wrap(lift(x), period_); }
  Point eval_inverse(const Point& x) const { return wrap(lift_inverse(x), period_); }

  /// The map on the universal cover R^2 (no reduction).
  Point lift(const Point& x) const;
  Point lift_inverse(const Point& x) const;

  Mat jacobian(const Point& x) const;
  /// Derivative of the inverse map at x.
  Mat inverse_jacobian(const Point& x) const;

  /// Side length of the fundamental domain [0, period)^2.
  double period() const { return period_; }
  int dimension() const { return kDim; }
  const std::vector<MapStep>& steps() const { return steps_; }
  const std::string& name() const { return name_; }

  /// Non-null when the whole map is a single toral automorphism.
  const LinearStep* as_linear() const;

 private:
  SystemDef(std::vector<MapStep> steps, double period, std::string name);

  std::vector<MapStep> steps_;
  double period_ = 1.0;
  std::string name_;
};

MapStep invert_step(const MapStep& step);

}  // namespace pressure_lab
