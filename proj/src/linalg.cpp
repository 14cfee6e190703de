#include "conefan/rational.hpp"

#include <algorithm>

namespace conefan {

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw MathError("empty rational literal");
  try {
    Rat r(s);
    if (r.get_den() == 0) throw MathError("zero denominator: " + s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw MathError("malformed rational: " + s);
  }
}

std::string rat_str(const Rat& x) { return x.get_str(); }

QVec operator+(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw MathError("vector size mismatch");
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec operator-(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw MathError("vector size mismatch");
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec operator*(const Rat& c, const QVec& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

QVec& operator+=(QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw MathError("vector size mismatch");
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Rat dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw MathError("vector size mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const QVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

QVec zero_vec(size_t n) { return QVec(n, Rat(0)); }

QMat QMat::identity(size_t n) {
  QMat m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QVec QMat::row(size_t i) const {
  QVec r(cols);
  for (size_t j = 0; j < cols; ++j) r[j] = at(i, j);
  return r;
}

QVec QMat::col(size_t j) const {
  QVec c(rows);
  for (size_t i = 0; i < rows; ++i) c[i] = at(i, j);
  return c;
}

QMat QMat::transposed() const {
  QMat t(cols, rows);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

QVec QMat::apply(const QVec& v) const {
  if (v.size() != cols) throw MathError("matrix apply: size mismatch");
  QVec r(rows, Rat(0));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j)
      if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
  return r;
}

QVec QMat::apply_t(const QVec& v) const {
  if (v.size() != rows) throw MathError("matrix apply_t: size mismatch");
  QVec r(cols, Rat(0));
  for (size_t i = 0; i < rows; ++i)
    if (v[i] != 0)
      for (size_t j = 0; j < cols; ++j)
        if (at(i, j) != 0) r[j] += at(i, j) * v[i];
  return r;
}

QMat QMat::mul(const QMat& other) const {
  if (cols != other.rows) throw MathError("matrix mul: size mismatch");
  QMat r(rows, other.cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < cols; ++k)
      if (at(i, k) != 0)
        for (size_t j = 0; j < other.cols; ++j)
          if (other.at(k, j) != 0) r.at(i, j) += at(i, k) * other.at(k, j);
  return r;
}

QMat mat_from_rows(const std::vector<QVec>& rows, size_t cols) {
  QMat m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw MathError("row size mismatch");
    for (size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

QMat mat_from_cols(const std::vector<QVec>& cols, size_t rows) {
  QMat m(rows, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw MathError("column size mismatch");
    for (size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

std::vector<size_t> rref(QMat& m) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
    size_t p = r;
    while (p < m.rows && m.at(p, c) == 0) ++p;
    if (p == m.rows) continue;
    for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    Rat inv = 1 / m.at(r, c);
    for (size_t j = c; j < m.cols; ++j) m.at(r, j) *= inv;
    for (size_t i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c);
      for (size_t j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

size_t rank(QMat m) { return rref(m).size(); }

Rat det(QMat m) {
  if (m.rows != m.cols) throw MathError("det of non-square matrix");
  Rat d = 1;
  size_t n = m.rows;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m.at(p, c) == 0) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    Rat inv = 1 / m.at(c, c);
    for (size_t i = c + 1; i < n; ++i) {
      if (m.at(i, c) == 0) continue;
      Rat f = m.at(i, c) * inv;
      for (size_t j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

std::optional<QMat> inverse(const QMat& m) {
  if (m.rows != m.cols) throw MathError("inverse of non-square matrix");
  size_t n = m.rows;
  QMat aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() != n || piv.back() != n - 1) return std::nullopt;
  QMat inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

std::optional<QVec> solve(const QMat& A, const QVec& b) {
  if (b.size() != A.rows) throw MathError("solve: size mismatch");
  QMat aug(A.rows, A.cols + 1);
  for (size_t i = 0; i < A.rows; ++i) {
    for (size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == A.cols) return std::nullopt;  // inconsistent
  QVec x(A.cols, Rat(0));
  for (size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug.at(k, A.cols);
  return x;
}

std::vector<QVec> nullspace(const QMat& A) {
  QMat m = A;
  auto piv = rref(m);
  std::vector<bool> is_piv(A.cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<QVec> basis;
  for (size_t f = 0; f < A.cols; ++f) {
    if (is_piv[f]) continue;
    QVec v(A.cols, Rat(0));
    v[f] = 1;
    for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m.at(k, f);
    basis.push_back(v);
  }
  return basis;
}

Subspace Subspace::span(size_t ambient, const std::vector<QVec>& gens) {
  Subspace s;
  s.ambient = ambient;
  if (gens.empty()) return s;
  QMat m = mat_from_rows(gens, ambient);
  auto piv = rref(m);
  for (size_t k = 0; k < piv.size(); ++k) s.basis.push_back(m.row(k));
  return s;
}

Subspace Subspace::whole(size_t ambient) {
  std::vector<QVec> e;
  for (size_t i = 0; i < ambient; ++i) {
    QVec v(ambient, Rat(0));
    v[i] = 1;
    e.push_back(v);
  }
  return span(ambient, e);
}

Subspace Subspace::zero(size_t ambient) { return span(ambient, {}); }

bool Subspace::contains(const QVec& v) const {
  if (v.size() != ambient) throw MathError("subspace contains: size mismatch");
  QVec w = v;
  for (const auto& b : basis) {
    size_t p = 0;
    while (p < ambient && b[p] == 0) ++p;
    if (p < ambient && w[p] != 0) {
      Rat f = w[p];  // pivot of b is 1
      for (size_t j = 0; j < ambient; ++j) w[j] -= f * b[j];
    }
  }
  return is_zero(w);
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& b : other.basis)
    if (!contains(b)) return false;
  return true;
}

Subspace sum(const Subspace& u, const Subspace& v) {
  std::vector<QVec> gens = u.basis;
  gens.insert(gens.end(), v.basis.begin(), v.basis.end());
  return Subspace::span(u.ambient, gens);
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  // x ∈ U∩V ⟺ x = B_u^T a = B_v^T b; solve for the combined coefficients.
  if (u.ambient != v.ambient) throw MathError("subspace intersect: ambient mismatch");
  size_t n = u.ambient, du = u.dim(), dv = v.dim();
  if (du == 0 || dv == 0) return Subspace::zero(n);
  QMat A(n, du + dv);
  for (size_t j = 0; j < du; ++j)
    for (size_t i = 0; i < n; ++i) A.at(i, j) = u.basis[j][i];
  for (size_t j = 0; j < dv; ++j)
    for (size_t i = 0; i < n; ++i) A.at(i, du + j) = -v.basis[j][i];
  std::vector<QVec> gens;
  for (const auto& k : nullspace(A)) {
    QVec x(n, Rat(0));
    for (size_t j = 0; j < du; ++j) x += k[j] * u.basis[j];
    gens.push_back(x);
  }
  return Subspace::span(n, gens);
}

Subspace kernel_of(size_t ambient, const std::vector<QVec>& covectors) {
  if (covectors.empty()) return Subspace::whole(ambient);
  QMat m = mat_from_rows(covectors, ambient);
  return Subspace::span(ambient, nullspace(m));
}

QVec coords_in(const std::vector<QVec>& basis, const QVec& v) {
  if (basis.empty()) {
    if (!is_zero(v)) throw MathError("coords_in: vector outside span");
    return {};
  }
  size_t n = v.size();
  QMat A = mat_from_cols(basis, n);
  if (rank(A) != basis.size()) throw MathError("coords_in: basis not independent");
  auto x = solve(A, v);
  if (!x) throw MathError("coords_in: vector outside span");
  return *x;
}

QVec project_along(const QVec& v, const std::vector<QVec>& U, const std::vector<QVec>& W) {
  size_t n = v.size();
  std::vector<QVec> all = U;
  all.insert(all.end(), W.begin(), W.end());
  QMat A = mat_from_cols(all, n);
  if (rank(A) != all.size()) throw MathError("project_along: U+W not a direct sum");
  auto x = solve(A, v);
  if (!x) throw MathError("project_along: vector outside U+W");
  QVec r(n, Rat(0));
  for (size_t j = 0; j < U.size(); ++j) r += (*x)[j] * U[j];
  return r;
}

namespace {

// Smith normal form over Z, tracking the right transform V (M V' = U D).
// Only the kernel columns of V are needed by callers.
void smith_kernel(std::vector<ZVec>& M, size_t rows, size_t cols, std::vector<ZVec>& V) {
  V.assign(cols, ZVec(cols, Int(0)));
  for (size_t j = 0; j < cols; ++j) V[j][j] = 1;

  auto col_swap = [&](size_t a, size_t b) {
    for (size_t i = 0; i < rows; ++i) std::swap(M[i][a], M[i][b]);
    std::swap(V[a], V[b]);
  };
  auto col_addmul = [&](size_t dst, size_t src, const Int& f) {
    for (size_t i = 0; i < rows; ++i) M[i][dst] += f * M[i][src];
    for (size_t i = 0; i < cols; ++i) V[dst][i] += f * V[src][i];
  };
  auto row_addmul = [&](size_t dst, size_t src, const Int& f) {
    for (size_t j = 0; j < cols; ++j) M[dst][j] += f * M[src][j];
  };

  size_t t = 0;
  while (t < rows && t < cols) {
    // find a nonzero pivot
    size_t pi = rows, pj = cols;
    for (size_t i = t; i < rows && pi == rows; ++i)
      for (size_t j = t; j < cols; ++j)
        if (M[i][j] != 0) { pi = i; pj = j; break; }
    if (pi == rows) break;
    if (pi != t) std::swap(M[pi], M[t]);
    if (pj != t) col_swap(pj, t);
    // eliminate row/column t, iterating until clean
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (size_t i = t + 1; i < rows; ++i) {
        if (M[i][t] == 0) continue;
        Int q = M[i][t] / M[t][t];
        row_addmul(i, t, -q);
        if (M[i][t] != 0) { std::swap(M[i], M[t]); dirty = true; }
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (M[t][j] == 0) continue;
        Int q = M[t][j] / M[t][t];
        col_addmul(j, t, -q);
        if (M[t][j] != 0) { col_swap(j, t); dirty = true; }
      }
    }
    ++t;
  }
}

}  // namespace

std::vector<ZVec> integer_kernel(const QMat& Mq) {
  size_t rows = Mq.rows, cols = Mq.cols;
  // clear denominators per row (does not change the kernel)
  std::vector<ZVec> M(rows, ZVec(cols, Int(0)));
  for (size_t i = 0; i < rows; ++i) {
    Int l = 1;
    for (size_t j = 0; j < cols; ++j) l = lcm(l, Mq.at(i, j).get_den());
    for (size_t j = 0; j < cols; ++j) {
      Rat x = Mq.at(i, j) * Rat(l);
      M[i][j] = x.get_num();
    }
  }
  std::vector<ZVec> V;
  smith_kernel(M, rows, cols, V);
  // kernel columns: those whose transformed column is zero
  std::vector<ZVec> ker;
  for (size_t j = 0; j < cols; ++j) {
    bool zero = true;
    for (size_t i = 0; i < rows && zero; ++i) zero = (M[i][j] == 0);
    if (zero) ker.push_back(V[j]);
  }
  return ker;
}

QVec primitive_scale(const QVec& v) {
  Int l = 1, g = 0;
  for (const auto& x : v) l = lcm(l, x.get_den());
  for (const auto& x : v) {
    Rat y = x * Rat(l);
    g = gcd(g, y.get_num());
  }
  if (g == 0) return v;
  QVec r(v.size());
  Rat f = Rat(l) / Rat(g);
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] * f;
  return r;
}

}  // namespace conefan
