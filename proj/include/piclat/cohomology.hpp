#pragma once

#include "piclat/weyl.hpp"

namespace piclat {

// A finite abelian group by its invariant factors, each > 1, each dividing
// the next. Empty list = trivial group.
struct H1Result {
  std::vector<int64_t> invariant_factors;

  bool trivial() const { return invariant_factors.empty(); }
  uint64_t order() const;
  std::string to_string() const;  // "0", "Z/2", "(Z/2)^6", "Z/2 x Z/4"
  bool operator==(const H1Result&) const = default;
};

// H^1(<x>, Z^n) = ker(1 + x + ... + x^{n-1}) / im(x - 1); n must be the
// exact order of x.
H1Result h1_cyclic(const IntMatrix& x, int n);

inline constexpr size_t kDefaultH1SizeBound = 5000;

// H^1(G, Z^rank) by the cocycle method: solve f(gs) = f(g) + g f(s) over all
// g in G and generators s, normalize f(1) = 0, quotient by coboundaries.
H1Result h1(const MatrixGroup& g, size_t size_bound = kDefaultH1SizeBound);

struct H1Survey {
  bool all_trivial = true;
  std::optional<MatrixGroup> witness;  // a minimal offending subgroup
  size_t subgroups_checked = 0;
};

H1Survey h1_trivial_all_subgroups(const MatrixGroup& g);

// True when every element matrix is a permutation matrix in the standard
// basis (then the module is a permutation module and H^1 vanishes).
bool is_permutation_matrices(const MatrixGroup& g);

}  // namespace piclat
