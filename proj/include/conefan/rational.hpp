#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conefan {

using Rat = mpq_class;
using Int = mpz_class;
using QVec = std::vector<Rat>;

struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int sgn(const Rat& x) { return sgn(x.get_num()) ; }

inline Rat rat_of(long num, long den = 1) { Rat r(num, den); r.canonicalize(); return r; }

// Parses "p/q" or "p"; throws on malformed input or zero denominator.
Rat parse_rat(const std::string& s);
std::string rat_str(const Rat& x);

QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
QVec operator*(const Rat& c, const QVec& v);
QVec& operator+=(QVec& a, const QVec& b);
Rat dot(const QVec& a, const QVec& b);
bool is_zero(const QVec& v);
QVec zero_vec(size_t n);

// Dense rational matrix, row-major.
struct QMat {
  size_t rows = 0, cols = 0;
  std::vector<Rat> a;

  QMat() = default;
  QMat(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}
  Rat& at(size_t i, size_t j) { return a[i * cols + j]; }
  const Rat& at(size_t i, size_t j) const { return a[i * cols + j]; }
  static QMat identity(size_t n);
  QVec row(size_t i) const;
  QVec col(size_t j) const;
  QMat transposed() const;
  QVec apply(const QVec& v) const;          // A v
  QVec apply_t(const QVec& v) const;        // A^T v  (covector pullback)
  QMat mul(const QMat& other) const;
  bool operator==(const QMat& other) const = default;
};

QMat mat_from_rows(const std::vector<QVec>& rows, size_t cols);
QMat mat_from_cols(const std::vector<QVec>& cols, size_t rows);

// Reduced row echelon form in place; returns pivot column indices.
std::vector<size_t> rref(QMat& m);
size_t rank(QMat m);
Rat det(QMat m);
std::optional<QMat> inverse(const QMat& m);
// One solution of A x = b, if any.
std::optional<QVec> solve(const QMat& A, const QVec& b);
// Basis of { x : A x = 0 }.
std::vector<QVec> nullspace(const QMat& A);

// A linear subspace of Q^n presented by a canonical (RREF) basis.
struct Subspace {
  size_t ambient = 0;
  std::vector<QVec> basis;  // RREF rows, pivots scaled to 1

  static Subspace span(size_t ambient, const std::vector<QVec>& gens);
  static Subspace whole(size_t ambient);
  static Subspace zero(size_t ambient);
  size_t dim() const { return basis.size(); }
  bool contains(const QVec& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& other) const = default;
};

Subspace intersect(const Subspace& u, const Subspace& v);
Subspace sum(const Subspace& u, const Subspace& v);
// Common kernel of the given covectors.
Subspace kernel_of(size_t ambient, const std::vector<QVec>& covectors);

// Coordinates of v in the basis [cols]; throws if v is outside the span or
// the coordinates are not unique.
QVec coords_in(const std::vector<QVec>& basis, const QVec& v);

// Projection of v onto U along W (requires U ⊕ W = span(U)+span(W) ∋ v).
QVec project_along(const QVec& v, const std::vector<QVec>& U, const std::vector<QVec>& W);

// Integer matrices: Smith normal form kernel, used for lattice work.
using ZVec = std::vector<Int>;
// Basis of the integer kernel {x ∈ Z^n : M x = 0} for a rational matrix M.
std::vector<ZVec> integer_kernel(const QMat& M);

// Scale a rational vector by the positive rational making it a primitive
// integer vector (entries coprime). Zero vector stays zero.
QVec primitive_scale(const QVec& v);

}  // namespace conefan
