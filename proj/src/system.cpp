#include "pressure_lab/system.hpp"

#include "pressure_lab/errors.hpp"

#include <cmath>
#include <sstream>

namespace pressure_lab {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Point apply_lift(const MapStep& step, const Point& x, double period) {
  return std::visit(
      Overloaded{
          [&](const LinearStep& s) -> Point { return s.matrix.cast<double>() * x; },
          [&](const StandardStep& s) -> Point {
            if (!s.inverse) {
              const double kick = s.k * std::sin(x.x());
              const double p = x.y() + kick;
              return {x.x() + p, p};
            }
            const double xo = x.x() - x.y();
            return {xo, x.y() - s.k * std::sin(xo)};
          },
          [&](const ShearStep& s) -> Point {
            const double w = kTwoPi / period;
            if (s.axis == 0) return {x.x(), x.y() + s.amplitude * std::sin(w * x.x())};
            return {x.x() + s.amplitude * std::sin(w * x.y()), x.y()};
          },
      },
      step);
}

Mat step_jacobian(const MapStep& step, const Point& x, double period) {
  return std::visit(
      Overloaded{
          [&](const LinearStep& s) -> Mat { return s.matrix.cast<double>(); },
          [&](const StandardStep& s) -> Mat {
            Mat j;
            if (!s.inverse) {
              const double kc = s.k * std::cos(x.x());
              j << 1.0 + kc, 1.0, kc, 1.0;
            } else {
              const double kc = s.k * std::cos(x.x() - x.y());
              j << 1.0, -1.0, -kc, 1.0 + kc;
            }
            return j;
          },
          [&](const ShearStep& s) -> Mat {
            const double w = kTwoPi / period;
            Mat j = Mat::Identity();
            if (s.axis == 0) {
              j(1, 0) = s.amplitude * w * std::cos(w * x.x());
            } else {
              j(0, 1) = s.amplitude * w * std::cos(w * x.y());
            }
            return j;
          },
      },
      step);
}

std::string matrix_name(const Eigen::Matrix2i& m) {
  std::ostringstream os;
  os << "linear[[" << m(0, 0) << "," << m(0, 1) << "],[" << m(1, 0) << "," << m(1, 1) << "]]";
  return os.str();
}

}  // namespace

MapStep invert_step(const MapStep& step) {
  return std::visit(
      Overloaded{
          [](const LinearStep& s) -> MapStep {
            const auto& a = s.matrix;
            const int det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
            Eigen::Matrix2i inv;
            inv << a(1, 1), -a(0, 1), -a(1, 0), a(0, 0);
            return LinearStep{inv * det};  // det = +-1, so 1/det = det
          },
          [](const StandardStep& s) -> MapStep { return StandardStep{s.k, !s.inverse}; },
          [](const ShearStep& s) -> MapStep { return ShearStep{-s.amplitude, s.axis}; },
      },
      step);
}

SystemDef::SystemDef(std::vector<MapStep> steps, double period, std::string name)
    : steps_(std::move(steps)), period_(period), name_(std::move(name)) {}

SystemDef SystemDef::linear_torus(const Eigen::Matrix2i& matrix) {
  const int det = matrix(0, 0) * matrix(1, 1) - matrix(0, 1) * matrix(1, 0);
  if (det != 1 && det != -1) {
    throw InvalidArgument("linear-torus matrix must have determinant +-1");
  }
  return SystemDef({LinearStep{matrix}}, 1.0, matrix_name(matrix));
}

SystemDef SystemDef::cat_map() {
  Eigen::Matrix2i a;
  a << 2, 1, 1, 1;
  return linear_torus(a);
}

SystemDef SystemDef::identity(double period) {
  if (!(period > 0.0)) throw InvalidArgument("period must be positive");
  return SystemDef({LinearStep{Eigen::Matrix2i::Identity()}}, period, "identity");
}

SystemDef SystemDef::standard_map(double k) {
  if (!std::isfinite(k)) throw InvalidArgument("standard map parameter must be finite");
  std::ostringstream os;
  os.precision(17);
  os << "standard[K=" << k << "]";
  return SystemDef({StandardStep{k, false}}, kTwoPi, os.str());
}

SystemDef SystemDef::shear(double amplitude, int axis, double period) {
  if (axis != 0 && axis != 1) throw InvalidArgument("shear axis must be 0 or 1");
  if (!(period > 0.0)) throw InvalidArgument("period must be positive");
  std::ostringstream os;
  os.precision(17);
  os << "shear[a=" << amplitude << ",axis=" << axis << "]";
  return SystemDef({ShearStep{amplitude, axis}}, period, os.str());
}

SystemDef SystemDef::then(const SystemDef& next) const {
  if (std::abs(next.period_ - period_) > 1e-12 * period_) {
    throw InvalidArgument("composed systems must share the fundamental domain");
  }
  std::vector<MapStep> steps = steps_;
  steps.insert(steps.end(), next.steps_.begin(), next.steps_.end());
  return SystemDef(std::move(steps), period_, next.name_ + "*" + name_);
}

SystemDef SystemDef::inverse() const {
  std::vector<MapStep> steps;
  steps.reserve(steps_.size());
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) steps.push_back(invert_step(*it));
  return SystemDef(std::move(steps), period_, "inverse(" + name_ + ")");
}

Point SystemDef::lift(const Point& x) const {
  Point y = x;
  for (const auto& s : steps_) y = apply_lift(s, y, period_);
  return y;
}

Point SystemDef::lift_inverse(const Point& x) const {
  Point y = x;
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    y = apply_lift(invert_step(*it), y, period_);
  }
  return y;
}

Mat SystemDef::jacobian(const Point& x) const {
  Mat j = Mat::Identity();
  Point y = x;
  for (const auto& s : steps_) {
    j = step_jacobian(s, y, period_) * j;
    y = apply_lift(s, y, period_);
  }
  return j;
}

Mat SystemDef::inverse_jacobian(const Point& x) const {
  Mat j = Mat::Identity();
  Point y = x;
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    const MapStep inv = invert_step(*it);
    j = step_jacobian(inv, y, period_) * j;
    y = apply_lift(inv, y, period_);
  }
  return j;
}

const LinearStep* SystemDef::as_linear() const {
  if (steps_.size() != 1) return nullptr;
  return std::get_if<LinearStep>(&steps_.front());
}

}  // namespace pressure_lab
