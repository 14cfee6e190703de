#pragma once

#include "conefan/rational.hpp"

namespace conefan {

// Elements of Q(ζ_M), ζ_M a primitive M-th root of unity, as coordinate
// vectors in the power basis 1, ζ, ..., ζ^{φ(M)-1} modulo the M-th
// cyclotomic polynomial. Supports the ring operations; division is not
// needed by any caller.
class Cyc {
 public:
  Cyc() : order_(1), c_(1, Rat(0)) {}
  explicit Cyc(const Rat& r, unsigned order = 1);
  // ζ_order^k
  static Cyc root_power(unsigned order, long k);

  unsigned order() const { return order_; }
  const std::vector<Rat>& coords() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_part() const;  // throws unless is_rational()

  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator*(const Cyc& o) const;
  Cyc operator*(const Rat& r) const;
  bool operator==(const Cyc& o) const;

  std::string str() const;

 private:
  unsigned order_;
  std::vector<Rat> c_;
  static Cyc promote(const Cyc& x, unsigned order);
  void reduce_();
};

// Coefficients of the M-th cyclotomic polynomial (monic, ascending order).
const std::vector<Rat>& cyclotomic_poly(unsigned M);

unsigned euler_phi(unsigned M);

}  // namespace conefan
