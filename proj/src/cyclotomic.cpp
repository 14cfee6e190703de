#include "conefan/cyclotomic.hpp"

#include <map>
#include <numeric>
#include <sstream>

namespace conefan {

unsigned euler_phi(unsigned M) {
  unsigned r = M;
  for (unsigned p = 2; p * p <= M; ++p) {
    if (M % p == 0) {
      r -= r / p;
      while (M % p == 0) M /= p;
    }
  }
  if (M > 1) r -= r / M;
  return r;
}

namespace {

// polynomial long division, exact
std::vector<Rat> poly_div(const std::vector<Rat>& num, const std::vector<Rat>& den) {
  std::vector<Rat> r = num, q(num.size(), Rat(0));
  long dn = (long)num.size() - 1, dd = (long)den.size() - 1;
  for (long k = dn - dd; k >= 0; --k) {
    Rat f = r[k + dd] / den[dd];
    q[k] = f;
    if (f != 0)
      for (long j = 0; j <= dd; ++j) r[k + j] -= f * den[j];
  }
  for (const auto& x : r)
    if (x != 0) throw MathError("poly_div: nonzero remainder");
  q.resize(dn - dd + 1);
  return q;
}

}  // namespace

const std::vector<Rat>& cyclotomic_poly(unsigned M) {
  static std::map<unsigned, std::vector<Rat>> cache;
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  if (M == 0) throw MathError("cyclotomic order 0");
  // x^M - 1 divided by the product of Phi_d over proper divisors d
  std::vector<Rat> num(M + 1, Rat(0));
  num[0] = -1;
  num[M] = 1;
  for (unsigned d = 1; d < M; ++d)
    if (M % d == 0) num = poly_div(num, cyclotomic_poly(d));
  return cache.emplace(M, std::move(num)).first->second;
}

Cyc::Cyc(const Rat& r, unsigned order) : order_(order), c_(euler_phi(order), Rat(0)) {
  if (c_.empty()) c_.resize(1);
  c_[0] = r;
}

Cyc Cyc::root_power(unsigned order, long k) {
  if (order == 0) throw MathError("root of order 0");
  long m = ((k % (long)order) + order) % order;
  // x^m reduced mod Phi_order
  unsigned deg = euler_phi(order);
  std::vector<Rat> poly(m + 1, Rat(0));
  poly[m] = 1;
  const auto& phi = cyclotomic_poly(order);
  for (long j = (long)poly.size() - 1; j >= (long)deg; --j) {
    Rat f = poly[j];
    if (f == 0) continue;
    poly[j] = 0;
    for (unsigned i = 0; i < deg; ++i) poly[j - deg + i] -= f * phi[i];
  }
  Cyc r(Rat(0), order);
  for (unsigned i = 0; i < deg && i < poly.size(); ++i) r.c_[i] = poly[i];
  return r;
}

Cyc Cyc::promote(const Cyc& x, unsigned order) {
  if (x.order_ == order) return x;
  if (order % x.order_ != 0) throw MathError("incompatible cyclotomic orders");
  unsigned f = order / x.order_;
  // ζ_{x.order} = ζ_order^f ; re-expand the power basis
  Cyc r(Rat(0), order);
  for (unsigned i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i] == 0) continue;
    Cyc t = root_power(order, (long)i * f);
    for (size_t j = 0; j < r.c_.size(); ++j) r.c_[j] += x.c_[i] * t.c_[j];
  }
  return r;
}

bool Cyc::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat Cyc::rational_part() const {
  if (!is_rational()) throw MathError("cyclotomic value is not rational");
  return c_[0];
}

Cyc Cyc::operator+(const Cyc& o) const {
  unsigned M = std::lcm(order_, o.order_);
  Cyc a = promote(*this, M), b = promote(o, M);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

Cyc Cyc::operator-(const Cyc& o) const {
  unsigned M = std::lcm(order_, o.order_);
  Cyc a = promote(*this, M), b = promote(o, M);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
  return a;
}

Cyc Cyc::operator*(const Cyc& o) const {
  unsigned M = std::lcm(order_, o.order_);
  Cyc a = promote(*this, M), b = promote(o, M);
  unsigned deg = euler_phi(M);
  std::vector<Rat> prod(2 * deg, Rat(0));
  for (unsigned i = 0; i < deg; ++i) {
    if (a.c_[i] == 0) continue;
    for (unsigned j = 0; j < deg; ++j)
      if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
  }
  const auto& phi = cyclotomic_poly(M);
  for (long j = (long)prod.size() - 1; j >= (long)deg; --j) {
    Rat f = prod[j];
    if (f == 0) continue;
    prod[j] = 0;
    for (unsigned i = 0; i < deg; ++i) prod[j - deg + i] -= f * phi[i];
  }
  Cyc r(Rat(0), M);
  for (unsigned i = 0; i < deg; ++i) r.c_[i] = prod[i];
  return r;
}

Cyc Cyc::operator*(const Rat& r) const {
  Cyc a = *this;
  for (auto& x : a.c_) x *= r;
  return a;
}

bool Cyc::operator==(const Cyc& o) const {
  unsigned M = std::lcm(order_, o.order_);
  Cyc a = promote(*this, M), b = promote(o, M);
  return a.c_ == b.c_;
}

std::string Cyc::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ",";
    os << rat_str(c_[i]);
  }
  os << "]@" << order_;
  return os.str();
}

void Cyc::reduce_() {}

}  // namespace conefan
