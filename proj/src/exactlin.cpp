#include "piclat/exactlin.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace piclat {

int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

int64_t checked_sub(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
  return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

int64_t checked_neg(int64_t a) { return checked_sub(0, a); }

int64_t gcd64(int64_t a, int64_t b) {
  if (a < 0) a = checked_neg(a);
  if (b < 0) b = checked_neg(b);
  while (b != 0) {
    int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int64_t exact_div(int64_t a, int64_t b) {
  if (b == 0 || a % b != 0) throw std::logic_error("inexact integer division");
  return a / b;
}

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<int64_t>> rows) {
  rows_ = int(rows.size());
  cols_ = rows_ ? int(rows.begin()->size()) : 0;
  a_.reserve(size_t(rows_) * cols_);
  for (const auto& r : rows) {
    if (int(r.size()) != cols_) throw std::invalid_argument("ragged matrix initializer");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      int64_t aik = (*this)(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j)
        out(i, j) = checked_add(out(i, j), checked_mul(aik, rhs(k, j)));
    }
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
  IntMatrix out(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = checked_add(a_[i], rhs.a_[i]);
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix difference dimension mismatch");
  IntMatrix out(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = checked_sub(a_[i], rhs.a_[i]);
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

IntMatrix IntMatrix::pow(int64_t k) const {
  if (rows_ != cols_) throw std::invalid_argument("power of non-square matrix");
  if (k < 0) throw std::invalid_argument("negative matrix power");
  IntMatrix acc = identity(rows_);
  IntMatrix base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return acc;
}

int64_t IntMatrix::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
  int64_t t = 0;
  for (int i = 0; i < rows_; ++i) t = checked_add(t, (*this)(i, i));
  return t;
}

std::vector<int64_t> IntMatrix::apply(std::span<const int64_t> v) const {
  if (int(v.size()) != cols_) throw std::invalid_argument("matrix apply dimension mismatch");
  std::vector<int64_t> out(rows_, 0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0) out[i] = checked_add(out[i], checked_mul((*this)(i, j), v[j]));
  return out;
}

std::vector<int64_t> IntMatrix::row(int i) const {
  return std::vector<int64_t>(a_.begin() + size_t(i) * cols_, a_.begin() + size_t(i + 1) * cols_);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << (i ? "\n[" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
    os << "]";
  }
  return os.str();
}

uint64_t flat_hash(const std::vector<int64_t>& v) {
  uint64_t h = 1469598103934665603ull;
  for (int64_t x : v) {
    h ^= uint64_t(x);
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

void row_axpy(IntMatrix& m, int dst, int src, int64_t q) {
  // row dst -= q * row src
  if (q == 0) return;
  for (int j = 0; j < m.cols(); ++j) m(dst, j) = checked_sub(m(dst, j), checked_mul(q, m(src, j)));
}

void row_swap(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void row_negate(IntMatrix& m, int r) {
  for (int j = 0; j < m.cols(); ++j) m(r, j) = checked_neg(m(r, j));
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) {
  HermiteForm out;
  out.h = m;
  out.u = IntMatrix::identity(m.rows());
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  int pr = 0;
  for (int col = 0; col < m.cols() && pr < m.rows(); ++col) {
    // euclidean elimination below the pivot row
    for (;;) {
      int best = -1;
      for (int i = pr; i < m.rows(); ++i)
        if (h(i, col) != 0 && (best < 0 || std::abs(h(i, col)) < std::abs(h(best, col)))) best = i;
      if (best < 0) break;
      row_swap(h, pr, best);
      row_swap(u, pr, best);
      bool clean = true;
      for (int i = pr + 1; i < m.rows(); ++i) {
        if (h(i, col) == 0) continue;
        int64_t q = h(i, col) / h(pr, col);
        row_axpy(h, i, pr, q);
        row_axpy(u, i, pr, q);
        if (h(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(pr, col) == 0) continue;
    if (h(pr, col) < 0) {
      row_negate(h, pr);
      row_negate(u, pr);
    }
    for (int i = 0; i < pr; ++i) {
      int64_t q = floor_div(h(i, col), h(pr, col));
      row_axpy(h, i, pr, q);
      row_axpy(u, i, pr, q);
    }
    out.pivot_cols.push_back(col);
    ++pr;
  }
  return out;
}

namespace {

void col_axpy(IntMatrix& m, int dst, int src, int64_t q) {
  if (q == 0) return;
  for (int i = 0; i < m.rows(); ++i) m(i, dst) = checked_sub(m(i, dst), checked_mul(q, m(i, src)));
}

void col_swap(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void col_negate(IntMatrix& m, int c) {
  for (int i = 0; i < m.rows(); ++i) m(i, c) = checked_neg(m(i, c));
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm out;
  IntMatrix s = m;
  out.left = IntMatrix::identity(m.rows());
  out.right = IntMatrix::identity(m.cols());
  IntMatrix& l = out.left;
  IntMatrix& r = out.right;
  int t = 0;
  int nmin = std::min(m.rows(), m.cols());
  while (t < nmin) {
    int bi = -1, bj = -1;
    for (int i = t; i < m.rows(); ++i)
      for (int j = t; j < m.cols(); ++j)
        if (s(i, j) != 0 && (bi < 0 || std::abs(s(i, j)) < std::abs(s(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi < 0) break;
    row_swap(s, t, bi);
    row_swap(l, t, bi);
    col_swap(s, t, bj);
    col_swap(r, t, bj);
    bool stable = false;
    while (!stable) {
      stable = true;
      for (int i = t + 1; i < m.rows(); ++i) {
        if (s(i, t) == 0) continue;
        int64_t q = s(i, t) / s(t, t);
        row_axpy(s, i, t, q);
        row_axpy(l, i, t, q);
        if (s(i, t) != 0) {
          row_swap(s, t, i);
          row_swap(l, t, i);
          stable = false;
        }
      }
      for (int j = t + 1; j < m.cols(); ++j) {
        if (s(t, j) == 0) continue;
        int64_t q = s(t, j) / s(t, t);
        col_axpy(s, j, t, q);
        col_axpy(r, j, t, q);
        if (s(t, j) != 0) {
          col_swap(s, t, j);
          col_swap(r, t, j);
          stable = false;
        }
      }
      if (stable) {
        // pivot must divide the remaining submatrix for the divisibility chain
        for (int i = t + 1; i < m.rows() && stable; ++i)
          for (int j = t + 1; j < m.cols() && stable; ++j)
            if (s(i, j) % s(t, t) != 0) {
              row_axpy(s, t, i, -1);  // add row i to row t
              row_axpy(l, t, i, -1);
              stable = false;
            }
      }
    }
    if (s(t, t) < 0) {
      row_negate(s, t);
      row_negate(l, t);
    }
    out.invariants.push_back(s(t, t));
    ++t;
  }
  return out;
}

IntMatrix kernel_basis(const IntMatrix& m) {
  // {x : m x = 0} equals the left kernel of m^T; the HNF transform rows
  // matching zero rows of h are a saturated basis.
  HermiteForm hf = hermite_normal_form(m.transposed());
  int n = m.cols();
  int rank = hf.rank();
  IntMatrix out(n - rank, n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    bool zero = true;
    for (int j = 0; j < hf.h.cols() && zero; ++j) zero = hf.h(i, j) == 0;
    if (!zero) continue;
    for (int j = 0; j < n; ++j) out(k, j) = hf.u(i, j);
    ++k;
  }
  return out;
}

int rank_of(const IntMatrix& m) { return hermite_normal_form(m).rank(); }

IntMatrix inverse_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  HermiteForm hf = hermite_normal_form(m);
  if (hf.h != IntMatrix::identity(m.rows())) throw std::invalid_argument("matrix is not unimodular");
  return hf.u;
}

int64_t determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  int n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  int64_t sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      row_swap(a, k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a(i, j) = exact_div(checked_sub(checked_mul(a(k, k), a(i, j)), checked_mul(a(i, k), a(k, j))), prev);
    prev = a(k, k);
  }
  return checked_mul(sign, a(n - 1, n - 1));
}

RowSolver::RowSolver(IntMatrix basis) : basis_(std::move(basis)), hf_(hermite_normal_form(basis_)) {}

std::optional<std::vector<int64_t>> RowSolver::solve(std::span<const int64_t> v) const {
  if (int(v.size()) != basis_.cols()) throw std::invalid_argument("RowSolver dimension mismatch");
  int k = basis_.rows();
  std::vector<int64_t> y(k, 0);
  std::vector<int64_t> rem(v.begin(), v.end());
  for (int r = 0; r < hf_.rank(); ++r) {
    int col = hf_.pivot_cols[r];
    int64_t p = hf_.h(r, col);
    if (rem[col] % p != 0) return std::nullopt;
    int64_t q = rem[col] / p;
    y[r] = q;
    if (q != 0)
      for (int j = 0; j < basis_.cols(); ++j) rem[j] = checked_sub(rem[j], checked_mul(q, hf_.h(r, j)));
  }
  for (int64_t x : rem)
    if (x != 0) return std::nullopt;
  std::vector<int64_t> c(k, 0);
  for (int i = 0; i < k; ++i) {
    if (y[i] == 0) continue;
    for (int j = 0; j < k; ++j) c[j] = checked_add(c[j], checked_mul(y[i], hf_.u(i, j)));
  }
  return c;
}

std::vector<int64_t> finite_quotient_invariants(const IntMatrix& c, int k) {
  if (k == 0) return {};
  if (c.cols() != k) throw std::invalid_argument("quotient invariants: column count mismatch");
  SmithForm sf = smith_normal_form(c);
  if (int(sf.invariants.size()) != k) throw std::logic_error("internal error: quotient is not finite");
  std::vector<int64_t> out;
  for (int64_t d : sf.invariants)
    if (d > 1) out.push_back(d);
  return out;
}

IntPolynomial::IntPolynomial(std::vector<int64_t> c) : coeffs(std::move(c)) { normalize(); }

IntPolynomial IntPolynomial::one() { return IntPolynomial({1}); }

void IntPolynomial::normalize() {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

int64_t IntPolynomial::eval(int64_t x) const {
  int64_t acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = checked_add(checked_mul(acc, x), *it);
  return acc;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& rhs) const {
  std::vector<int64_t> c(std::max(coeffs.size(), rhs.coeffs.size()), 0);
  for (size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i];
  for (size_t i = 0; i < rhs.coeffs.size(); ++i) c[i] = checked_add(c[i], rhs.coeffs[i]);
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& rhs) const {
  std::vector<int64_t> c(std::max(coeffs.size(), rhs.coeffs.size()), 0);
  for (size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i];
  for (size_t i = 0; i < rhs.coeffs.size(); ++i) c[i] = checked_sub(c[i], rhs.coeffs[i]);
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& rhs) const {
  if (is_zero() || rhs.is_zero()) return {};
  std::vector<int64_t> c(coeffs.size() + rhs.coeffs.size() - 1, 0);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    for (size_t j = 0; j < rhs.coeffs.size(); ++j)
      c[i + j] = checked_add(c[i + j], checked_mul(coeffs[i], rhs.coeffs[j]));
  }
  return IntPolynomial(std::move(c));
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    int64_t c = coeffs[i];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    int64_t a = std::abs(c);
    if (a != 1 || i == 0) os << a;
    if (i >= 1) os << "t";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

PolyDivMod poly_divmod(const IntPolynomial& num, const IntPolynomial& den) {
  if (!den.is_monic()) throw std::invalid_argument("polynomial division requires a monic divisor");
  IntPolynomial rem = num;
  int dd = den.degree();
  if (num.degree() < dd) return {IntPolynomial{}, rem};
  std::vector<int64_t> q(num.degree() - dd + 1, 0);
  while (rem.degree() >= dd) {
    int shift = rem.degree() - dd;
    int64_t c = rem.coeffs.back();
    q[shift] = c;
    for (int i = 0; i <= dd; ++i)
      rem.coeffs[shift + i] = checked_sub(rem.coeffs[shift + i], checked_mul(c, den.coeffs[i]));
    rem.normalize();
  }
  return {IntPolynomial(std::move(q)), rem};
}

IntPolynomial char_poly(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
  int n = m.rows();
  std::vector<int64_t> c(n + 1, 0);
  c[n] = 1;
  IntMatrix mk = m;
  for (int k = 1; k <= n; ++k) {
    int64_t ck = exact_div(checked_neg(mk.trace()), k);
    c[n - k] = ck;
    if (k == n) break;
    for (int i = 0; i < n; ++i) mk(i, i) = checked_add(mk(i, i), ck);
    mk = m * mk;
  }
  return IntPolynomial(std::move(c));
}

int64_t euler_phi(int d) {
  int64_t result = d;
  int n = d;
  for (int p = 2; int64_t(p) * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<int> divisors(int n) {
  std::vector<int> out;
  for (int d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

IntPolynomial cyclotomic(int d) {
  if (d < 1) throw std::invalid_argument("cyclotomic index must be >= 1");
  std::vector<int64_t> x(d + 1, 0);
  x[0] = -1;
  x[d] = 1;
  IntPolynomial f(std::move(x));  // t^d - 1
  for (int e : divisors(d)) {
    if (e == d) continue;
    auto [q, r] = poly_divmod(f, cyclotomic(e));
    if (!r.is_zero()) throw std::logic_error("internal error: cyclotomic division not exact");
    f = q;
  }
  return f;
}

IntPolynomial CycloFactorization::expand() const {
  IntPolynomial p = remainder.is_zero() ? IntPolynomial{} : remainder;
  if (p.is_zero()) p = IntPolynomial::one();
  for (auto [d, m] : factors) {
    IntPolynomial phi = cyclotomic(d);
    for (int i = 0; i < m; ++i) p = p * phi;
  }
  return p;
}

int CycloFactorization::degree() const {
  int deg = remainder.is_zero() ? 0 : remainder.degree();
  for (auto [d, m] : factors) deg += int(euler_phi(d)) * m;
  return deg;
}

std::string CycloFactorization::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto [d, m] : factors) {
    if (!first) os << " * ";
    os << "Phi" << d;
    if (m > 1) os << "^" << m;
    first = false;
  }
  if (!clean()) {
    if (!first) os << " * ";
    os << "(" << remainder.to_string() << ")";
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

CycloFactorization cyclo_factorize(const IntPolynomial& p, const std::set<int>& candidates) {
  if (!p.is_monic()) throw std::invalid_argument("cyclotomic factorization requires a monic polynomial");
  CycloFactorization out;
  out.remainder = p;
  for (int d : candidates) {
    IntPolynomial phi = cyclotomic(d);
    for (;;) {
      if (out.remainder.degree() < phi.degree()) break;
      auto [q, r] = poly_divmod(out.remainder, phi);
      if (!r.is_zero()) break;
      out.factors[d] += 1;
      out.remainder = q;
    }
  }
  return out;
}

}  // namespace piclat
