#include "piclat/cohomology.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace piclat {

uint64_t H1Result::order() const {
  uint64_t o = 1;
  for (int64_t d : invariant_factors) o *= uint64_t(d);
  return o;
}

std::string H1Result::to_string() const {
  if (trivial()) return "0";
  std::ostringstream os;
  size_t i = 0;
  while (i < invariant_factors.size()) {
    size_t j = i;
    while (j < invariant_factors.size() && invariant_factors[j] == invariant_factors[i]) ++j;
    if (i) os << " x ";
    if (j - i == 1)
      os << "Z/" << invariant_factors[i];
    else
      os << "(Z/" << invariant_factors[i] << ")^" << (j - i);
    i = j;
  }
  return os.str();
}

namespace {

// invariant factors of ker-lattice / lattice spanned by gens (rows)
H1Result quotient_by(const IntMatrix& kernel_rows, const std::vector<std::vector<int64_t>>& gens) {
  int k = kernel_rows.rows();
  if (k == 0) return {};
  RowSolver solver(kernel_rows);
  IntMatrix coeff(int(gens.size()), k);
  for (size_t i = 0; i < gens.size(); ++i) {
    auto c = solver.solve(gens[i]);
    if (!c) throw std::logic_error("internal error: coboundary outside the cocycle lattice");
    for (int j = 0; j < k; ++j) coeff(int(i), j) = (*c)[j];
  }
  return {finite_quotient_invariants(coeff, k)};
}

}  // namespace

H1Result h1_cyclic(const IntMatrix& x, int n) {
  if (x.rows() != x.cols()) throw std::invalid_argument("h1_cyclic needs a square matrix");
  int r = x.rows();
  IntMatrix id = IntMatrix::identity(r);
  // n must be the exact order: x^n = 1 and x^{n/p} != 1 for every prime p | n
  if (n < 1 || !(x.pow(n) == id)) throw std::invalid_argument("n is not the order of x");
  {
    int m = n;
    for (int p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        if (x.pow(n / p) == id) throw std::invalid_argument("n is not the exact order of x");
        while (m % p == 0) m /= p;
      }
    if (m > 1 && x.pow(n / m) == id) throw std::invalid_argument("n is not the exact order of x");
  }

  IntMatrix norm(r, r);
  IntMatrix p = id;
  for (int i = 0; i < n; ++i) {
    norm = norm + p;
    p = p * x;
  }
  IntMatrix kernel = kernel_basis(norm);
  IntMatrix d = x - id;
  std::vector<std::vector<int64_t>> gens;
  for (int j = 0; j < r; ++j) {
    std::vector<int64_t> col(r);
    for (int i = 0; i < r; ++i) col[i] = d(i, j);
    gens.push_back(std::move(col));
  }
  return quotient_by(kernel, gens);
}

H1Result h1(const MatrixGroup& g, size_t size_bound) {
  if (!g.enumerated()) throw std::logic_error("h1 requires an enumerated group");
  int r = g.lattice.rank();
  size_t n = g.elements.size();
  if (n * size_t(r) > size_bound) throw std::invalid_argument("h1 size bound exceeded");
  if (n == 1) return {};

  IntMatrix id = IntMatrix::identity(r);
  std::vector<const IntMatrix*> nonid;
  std::map<std::vector<int64_t>, int> var_block;  // element key -> block index
  for (const auto& e : g.elements) {
    if (e == id) continue;
    var_block[e.flat()] = int(nonid.size());
    nonid.push_back(&e);
  }
  const std::vector<IntMatrix>& gens = g.generators.empty() ? g.elements : g.generators;
  int nvars = int(nonid.size()) * r;

  // rows of the cocycle system f(gs) - f(g) - g f(s) = 0
  std::vector<std::vector<int64_t>> rows;
  for (const auto& e : g.elements) {
    for (const auto& s : gens) {
      IntMatrix prod = e * s;
      std::vector<std::vector<int64_t>> block(r, std::vector<int64_t>(nvars, 0));
      auto add_identity = [&](const std::vector<int64_t>& key, int64_t sign) {
        auto it = var_block.find(key);
        if (it == var_block.end()) return;  // f(identity) = 0
        int b = it->second * r;
        for (int i = 0; i < r; ++i) block[i][b + i] = checked_add(block[i][b + i], sign);
      };
      add_identity(prod.flat(), 1);
      add_identity(e.flat(), -1);
      auto it = var_block.find(s.flat());
      if (it != var_block.end()) {
        int b = it->second * r;
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j)
            block[i][b + j] = checked_sub(block[i][b + j], e(i, j));
      }
      for (auto& row : block) {
        bool nonzero = std::any_of(row.begin(), row.end(), [](int64_t v) { return v != 0; });
        if (nonzero) rows.push_back(std::move(row));
      }
    }
  }
  IntMatrix eqs(int(rows.size()), nvars);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < nvars; ++j) eqs(int(i), j) = rows[i][j];
  IntMatrix cocycles = kernel_basis(eqs);

  std::vector<std::vector<int64_t>> cob;
  for (int j = 0; j < r; ++j) {
    std::vector<int64_t> vec(nvars, 0);
    for (size_t b = 0; b < nonid.size(); ++b) {
      const IntMatrix& e = *nonid[b];
      for (int i = 0; i < r; ++i) vec[b * r + i] = checked_sub(e(i, j), i == j ? 1 : 0);
    }
    cob.push_back(std::move(vec));
  }
  return quotient_by(cocycles, cob);
}

H1Survey h1_trivial_all_subgroups(const MatrixGroup& g) {
  if (!g.enumerated()) throw std::logic_error("h1_trivial_all_subgroups requires an enumerated group");
  if (g.elements.size() > 2000) throw std::invalid_argument("group too large for subgroup survey");
  H1Survey out;
  auto subs = subgroups_up_to(g, g.elements.size());
  out.subgroups_checked = subs.size();
  for (const auto& h : subs) {  // sorted by order, so the first hit is minimal
    if (!h1(h).trivial()) {
      out.all_trivial = false;
      out.witness = h;
      return out;
    }
  }
  return out;
}

bool is_permutation_matrices(const MatrixGroup& g) {
  for (const auto& e : g.elements) {
    for (int j = 0; j < e.cols(); ++j) {
      int ones = 0;
      for (int i = 0; i < e.rows(); ++i) {
        if (e(i, j) == 1)
          ++ones;
        else if (e(i, j) != 0)
          return false;
      }
      if (ones != 1) return false;
    }
  }
  return true;
}

}  // namespace piclat
