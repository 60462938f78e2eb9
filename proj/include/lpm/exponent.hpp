#pragma once

#include <stdexcept>

namespace lpm {

// Exponent in [1, inf]. Infinity carries its own tag so that duality at p = 1
// stays exact instead of leaning on a large float.
class Exponent {
public:
  static Exponent finite(double v) {
    if (!(v >= 1.0)) throw std::invalid_argument("Exponent::finite: value must be >= 1");
    return Exponent(v, false);
  }
  static Exponent infinite() { return Exponent(0.0, true); }

  bool is_infinite() const { return inf_; }
  double value() const {
    if (inf_) throw std::logic_error("Exponent::value: exponent is infinite");
    return v_;
  }
  double reciprocal() const { return inf_ ? 0.0 : 1.0 / v_; }

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }

private:
  Exponent(double v, bool inf) : v_(v), inf_(inf) {}
  double v_;
  bool inf_;
};

// q with 1/p + 1/q = 1; q = inf when p = 1. Rejects p < 1.
Exponent holder_conjugate(double p);

// A Holder pair (p, q). p is always finite; q may be infinite.
struct PExponent {
  double p;
  Exponent q;

  static PExponent from_p(double p) { return PExponent{p, holder_conjugate(p)}; }

  friend bool operator==(const PExponent& a, const PExponent& b) { return a.p == b.p; }
  friend bool operator!=(const PExponent& a, const PExponent& b) { return !(a == b); }
};

}  // namespace lpm
