#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace piclat {

// Checked 64-bit arithmetic. Every overflow throws std::overflow_error;
// results are exact or refused, never wrapped.
int64_t checked_add(int64_t a, int64_t b);
int64_t checked_sub(int64_t a, int64_t b);
int64_t checked_mul(int64_t a, int64_t b);
int64_t checked_neg(int64_t a);

int64_t gcd64(int64_t a, int64_t b);        // nonnegative
int64_t floor_div(int64_t a, int64_t b);    // b != 0
int64_t exact_div(int64_t a, int64_t b);    // throws std::logic_error unless b | a

// Dense integer matrix with checked arithmetic.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols);
  IntMatrix(std::initializer_list<std::initializer_list<int64_t>> rows);

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  int64_t& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  int64_t operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  bool operator==(const IntMatrix&) const = default;
  auto operator<=>(const IntMatrix&) const = default;

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix transposed() const;
  IntMatrix pow(int64_t k) const;                       // k >= 0, square only
  int64_t trace() const;
  std::vector<int64_t> apply(std::span<const int64_t> v) const;  // M * v
  std::vector<int64_t> row(int i) const;

  // raw row-major entries, usable as a canonical dedup/ordering key
  const std::vector<int64_t>& flat() const { return a_; }

  std::string to_string() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<int64_t> a_;
};

uint64_t flat_hash(const std::vector<int64_t>& v);

struct FlatVectorHash {
  size_t operator()(const std::vector<int64_t>& v) const { return size_t(flat_hash(v)); }
};

// Row-style Hermite normal form: u * input = h, u unimodular, h in row
// echelon form with positive pivots and the entries above each pivot
// reduced into [0, pivot).
struct HermiteForm {
  IntMatrix h;
  IntMatrix u;
  std::vector<int> pivot_cols;  // one per nonzero row of h
  int rank() const { return int(pivot_cols.size()); }
};
HermiteForm hermite_normal_form(const IntMatrix& m);

// left * input * right = diag(invariants, 0...), both transforms unimodular,
// invariants positive with d_i | d_{i+1}.
struct SmithForm {
  std::vector<int64_t> invariants;
  IntMatrix left;
  IntMatrix right;
};
SmithForm smith_normal_form(const IntMatrix& m);

// Rows form a saturated basis of {x : m x = 0} (x a column vector).
IntMatrix kernel_basis(const IntMatrix& m);

int rank_of(const IntMatrix& m);
IntMatrix inverse_unimodular(const IntMatrix& m);  // throws if |det| != 1

// Fraction-free determinant (Bareiss), independent of the HNF/SNF routines.
int64_t determinant(const IntMatrix& m);

// Integer coordinates with respect to a lattice basis given by rows.
// solve() returns c with c * basis = v, or nullopt when v is not in the
// row lattice.
class RowSolver {
 public:
  explicit RowSolver(IntMatrix basis);
  std::optional<std::vector<int64_t>> solve(std::span<const int64_t> v) const;
  const IntMatrix& basis() const { return basis_; }

 private:
  IntMatrix basis_;
  HermiteForm hf_;
};

// Invariant factors (> 1) of Z^k / rowlattice(c), where c has k columns.
// Throws std::logic_error if the quotient is infinite.
std::vector<int64_t> finite_quotient_invariants(const IntMatrix& c, int k);

// Polynomial with integer coefficients, constant term first.
// The zero polynomial has an empty coefficient list.
struct IntPolynomial {
  std::vector<int64_t> coeffs;

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<int64_t> c);

  static IntPolynomial one();

  int degree() const { return int(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }
  int64_t eval(int64_t x) const;

  bool operator==(const IntPolynomial&) const = default;
  IntPolynomial operator+(const IntPolynomial&) const;
  IntPolynomial operator-(const IntPolynomial&) const;
  IntPolynomial operator*(const IntPolynomial&) const;

  std::string to_string() const;  // "t^6 + t^3 + 1"
  void normalize();
};

// Division by a monic divisor; exact integer arithmetic.
struct PolyDivMod {
  IntPolynomial quotient;
  IntPolynomial remainder;
};
PolyDivMod poly_divmod(const IntPolynomial& num, const IntPolynomial& monic_den);

// Characteristic polynomial det(tI - m), computed fraction-free
// (Faddeev-LeVerrier; all interior divisions are exact).
IntPolynomial char_poly(const IntMatrix& m);

IntPolynomial cyclotomic(int d);  // d >= 1
int64_t euler_phi(int d);
std::vector<int> divisors(int n);

struct CycloFactorization {
  std::map<int, int> factors;  // index d -> multiplicity
  IntPolynomial remainder;

  bool clean() const { return remainder == IntPolynomial::one(); }
  IntPolynomial expand() const;  // product of the factors times remainder
  int degree() const;
  bool operator==(const CycloFactorization&) const = default;
  std::string to_string() const;  // "Phi5 * Phi1^2"
};

// Greedy exact division of a monic polynomial by the cyclotomics listed in
// candidate_indices; leftover goes to remainder.
CycloFactorization cyclo_factorize(const IntPolynomial& p, const std::set<int>& candidates);

}  // namespace piclat
