#pragma once

#include "pressure_lab/system.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace pressure_lab {

/// Parsed closed-form potential: sums, products and constant quotients of
/// constants and sin/cos of affine forms in the coordinates x, y. Coordinates
/// may only appear inside trigonometric arguments, which keeps every
/// expression continuous and (after check_periodic) periodic on the torus.
class Expression {
 public:
  static Expression parse(std::string_view text);

  double eval(const Point& x) const;
  const std::string& text() const { return text_; }

  /// Throws InvalidArgument unless every trigonometric argument has
  /// frequencies that are integer multiples of 2 pi / period.
  void check_periodic(double period) const;

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

/// Continuous observable on the torus:  phi(x) = scale * base(x) + offset.
class Potential {
 public:
  enum class Kind { constant, expression, geometric };

  static Potential zero() { return constant(0.0); }
  static Potential constant(double c);
  static Potential expression(std::string_view text);
  /// phi_m(x) = -(1/m) log |D_x f^m|.
  static Potential geometric(int m);

  Potential scaled(double t) const;
  Potential shifted(double c) const;

  double operator()(const SystemDef& sys, const Point& x) const;

  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::constant || scale_ == 0.0; }
  /// Value of a constant potential.
  double constant_value() const { return offset_; }
  int geometric_order() const { return m_; }
  double scale() const { return scale_; }
  double offset() const { return offset_; }

  /// Throws InvalidArgument if the potential is not a well-defined continuous
  /// function on the torus of `sys`.
  void check_compatible(const SystemDef& sys) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::constant;
  std::optional<Expression> expr_;
  int m_ = 0;
  double scale_ = 1.0;
  double offset_ = 0.0;
};

}  // namespace pressure_lab
