#include "pressure_lab/potential.hpp"

#include "pressure_lab/errors.hpp"
#include "pressure_lab/linalg.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace pressure_lab {

struct Expression::Node {
  enum class Op { number, var, add, sub, mul, div, neg, sin, cos };
  Op op = Op::number;
  double value = 0.0;
  int var = 0;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;

  double eval(const Point& x) const {
    switch (op) {
      case Op::number: return value;
      case Op::var: return x[var];
      case Op::add: return a->eval(x) + b->eval(x);
      case Op::sub: return a->eval(x) - b->eval(x);
      case Op::mul: return a->eval(x) * b->eval(x);
      case Op::div: return a->eval(x) / b->eval(x);
      case Op::neg: return -a->eval(x);
      case Op::sin: return std::sin(a->eval(x));
      case Op::cos: return std::cos(a->eval(x));
    }
    return 0.0;
  }

  bool has_var() const {
    if (op == Op::var) return true;
    return (a && a->has_var()) || (b && b->has_var());
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Op = Expression::Node::Op;

struct Affine {
  double cx = 0.0;
  double cy = 0.0;
  double c = 0.0;
};

std::optional<Affine> as_affine(const Expression::Node& n) {
  switch (n.op) {
    case Op::number: return Affine{0, 0, n.value};
    case Op::var: return n.var == 0 ? Affine{1, 0, 0} : Affine{0, 1, 0};
    case Op::add:
    case Op::sub: {
      auto l = as_affine(*n.a);
      auto r = as_affine(*n.b);
      if (!l || !r) return std::nullopt;
      const double s = n.op == Op::add ? 1.0 : -1.0;
      return Affine{l->cx + s * r->cx, l->cy + s * r->cy, l->c + s * r->c};
    }
    case Op::neg: {
      auto l = as_affine(*n.a);
      if (!l) return std::nullopt;
      return Affine{-l->cx, -l->cy, -l->c};
    }
    case Op::mul: {
      auto l = as_affine(*n.a);
      auto r = as_affine(*n.b);
      if (!l || !r) return std::nullopt;
      const bool lc = l->cx == 0 && l->cy == 0;
      const bool rc = r->cx == 0 && r->cy == 0;
      if (lc) return Affine{l->c * r->cx, l->c * r->cy, l->c * r->c};
      if (rc) return Affine{r->c * l->cx, r->c * l->cy, r->c * l->c};
      return std::nullopt;
    }
    case Op::div: {
      auto l = as_affine(*n.a);
      if (!l || n.b->has_var()) return std::nullopt;
      const double d = n.b->eval(Point::Zero());
      return Affine{l->cx / d, l->cy / d, l->c / d};
    }
    default:
      if (!n.has_var()) return Affine{0, 0, n.eval(Point::Zero())};
      return std::nullopt;
  }
}

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr, double value = 0.0, int var = 0) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  n->value = value;
  n->var = var;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr(false);
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  // in_trig: coordinates are legal only inside sin/cos arguments.
  NodePtr expr(bool in_trig) {
    NodePtr lhs = term(in_trig);
    for (;;) {
      skip();
      if (eat('+')) {
        lhs = make(Op::add, lhs, term(in_trig));
      } else if (eat('-')) {
        lhs = make(Op::sub, lhs, term(in_trig));
      } else {
        return lhs;
      }
    }
  }

  NodePtr term(bool in_trig) {
    NodePtr lhs = factor(in_trig);
    for (;;) {
      skip();
      if (eat('*')) {
        lhs = make(Op::mul, lhs, factor(in_trig));
      } else if (eat('/')) {
        NodePtr rhs = factor(in_trig);
        if (rhs->has_var()) fail("division by a coordinate-dependent term");
        if (rhs->eval(Point::Zero()) == 0.0) fail("division by zero");
        lhs = make(Op::div, lhs, rhs);
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor(bool in_trig) {
    skip();
    if (eat('-')) return make(Op::neg, factor(in_trig));
    if (eat('+')) return factor(in_trig);
    if (eat('(')) {
      NodePtr e = expr(in_trig);
      skip();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      return number();
    }
    std::string id = ident();
    if (id.empty()) fail("expected a number, coordinate or function");
    if (id == "pi") return make(Op::number, nullptr, nullptr, kPi);
    if (id == "x" || id == "y") {
      if (!in_trig) fail("coordinate '" + id + "' must appear inside sin() or cos()");
      return make(Op::var, nullptr, nullptr, 0.0, id == "x" ? 0 : 1);
    }
    if (id == "sin" || id == "cos") {
      skip();
      if (!eat('(')) fail("expected '(' after " + id);
      NodePtr arg = expr(true);
      skip();
      if (!eat(')')) fail("expected ')'");
      if (!as_affine(*arg)) fail(id + "() argument must be affine in the coordinates");
      return make(id == "sin" ? Op::sin : Op::cos, arg);
    }
    fail("unknown identifier '" + id + "'");
  }

  NodePtr number() {
    const std::string rest(s_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("bad number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return make(Op::number, nullptr, nullptr, v);
  }

  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "potential expression: " << what << " at offset " << pos_ << " in \"" << s_ << "\"";
    throw ParseError(os.str());
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void check_node_periodic(const Expression::Node& n, double period) {
  if (n.op == Op::sin || n.op == Op::cos) {
    const Affine a = *as_affine(*n.a);
    for (double c : {a.cx, a.cy}) {
      const double cycles = c * period / kTwoPi;
      if (std::abs(cycles - std::nearbyint(cycles)) > 1e-9) {
        std::ostringstream os;
        os.precision(17);
        os << "trigonometric frequency " << c << " is not periodic on [0," << period << ")";
        throw InvalidArgument(os.str());
      }
    }
  }
  if (n.a) check_node_periodic(*n.a, period);
  if (n.b) check_node_periodic(*n.b, period);
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.root_ = Parser(text).parse();
  e.text_ = std::string(text);
  return e;
}

double Expression::eval(const Point& x) const { return root_->eval(x); }

void Expression::check_periodic(double period) const { check_node_periodic(*root_, period); }

Potential Potential::constant(double c) {
  if (!std::isfinite(c)) throw InvalidArgument("constant potential must be finite");
  Potential p;
  p.kind_ = Kind::constant;
  p.offset_ = c;
  return p;
}

Potential Potential::expression(std::string_view text) {
  Potential p;
  p.kind_ = Kind::expression;
  p.expr_ = Expression::parse(text);
  return p;
}

Potential Potential::geometric(int m) {
  if (m < 1) throw InvalidArgument("geometric potential order m must be >= 1");
  Potential p;
  p.kind_ = Kind::geometric;
  p.m_ = m;
  return p;
}

Potential Potential::scaled(double t) const {
  Potential p = *this;
  p.scale_ *= t;
  p.offset_ *= t;
  return p;
}

Potential Potential::shifted(double c) const {
  Potential p = *this;
  p.offset_ += c;
  return p;
}

double Potential::operator()(const SystemDef& sys, const Point& x) const {
  switch (kind_) {
    case Kind::constant:
      return offset_;
    case Kind::expression:
      return scale_ * expr_->eval(x) + offset_;
    case Kind::geometric: {
      if (scale_ == 0.0) return offset_;
      ScaledMatrix d;
      Point y = x;
      for (int i = 0; i < m_; ++i) {
        d.left_multiply(sys.jacobian(y));
        y = sys.eval(y);
      }
      return -scale_ * d.log_norm() / m_ + offset_;
    }
  }
  return offset_;
}

void Potential::check_compatible(const SystemDef& sys) const {
  if (kind_ == Kind::expression) expr_->check_periodic(sys.period());
}

std::string Potential::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::constant:
      os << "constant(" << offset_ << ")";
      return os.str();
    case Kind::expression:
      os << "expression(" << expr_->text() << ")";
      break;
    case Kind::geometric:
      os << "geometric(" << m_ << ")";
      break;
  }
  if (scale_ != 1.0) os << "*" << scale_;
  if (offset_ != 0.0) os << "+" << offset_;
  return os.str();
}

}  // namespace pressure_lab
