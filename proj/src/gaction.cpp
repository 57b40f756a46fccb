#include "piclat/gaction.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace piclat {

int64_t trace_on_q(const LatticeForm& l, const IntMatrix& x) {
  if (l.canonical_square() == 0)
    throw std::invalid_argument("trace on Q needs K^2 != 0");
  if (x.apply(l.canonical) != l.canonical)
    throw std::invalid_argument("element does not fix the canonical class");
  return checked_sub(x.trace(), 1);
}

int64_t predicted_euler(const LatticeForm& l, const IntMatrix& x) {
  return checked_add(trace_on_q(l, x), 3);
}

int invariant_rank(const MatrixGroup& g) {
  if (!g.enumerated()) throw std::logic_error("invariant_rank requires an enumerated group");
  int64_t n = int64_t(g.elements.size());
  int64_t sum = 0;
  for (const auto& e : g.elements) sum = checked_add(sum, trace_on_q(g.lattice, e));
  if (sum % n != 0) throw std::logic_error("internal error: character sum not divisible by group order");
  int by_character = int(1 + sum / n);

  const std::vector<IntMatrix>& gens = g.generators.empty() ? g.elements : g.generators;
  int r = g.lattice.rank();
  IntMatrix stacked(int(gens.size()) * r, r);
  IntMatrix id = IntMatrix::identity(r);
  for (size_t k = 0; k < gens.size(); ++k) {
    IntMatrix d = gens[k] - id;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) stacked(int(k) * r + i, j) = d(i, j);
  }
  int by_kernel = kernel_basis(stacked).rows();
  if (by_character != by_kernel)
    throw std::logic_error("invariant rank mismatch between character formula and kernel method");
  return by_character;
}

std::vector<std::vector<LatticeVector>> orbits_on(const MatrixGroup& g,
                                                  const std::vector<LatticeVector>& classes) {
  std::vector<LatticeVector> sorted = classes;
  std::sort(sorted.begin(), sorted.end());
  std::map<LatticeVector, int> index;
  for (size_t i = 0; i < sorted.size(); ++i) index[sorted[i]] = int(i);
  const std::vector<IntMatrix>& gens = g.generators.empty() ? g.elements : g.generators;
  std::vector<bool> seen(sorted.size(), false);
  std::vector<std::vector<LatticeVector>> out;
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> orbit{int(i)};
    seen[i] = true;
    for (size_t head = 0; head < orbit.size(); ++head) {
      for (const auto& m : gens) {
        LatticeVector img = m.apply(sorted[orbit[head]]);
        auto it = index.find(img);
        if (it == index.end()) throw std::invalid_argument("class image escapes the class set");
        if (!seen[it->second]) {
          seen[it->second] = true;
          orbit.push_back(it->second);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    std::vector<LatticeVector> members;
    for (int k : orbit) members.push_back(sorted[k]);
    out.push_back(std::move(members));
  }
  return out;
}

std::vector<size_t> orbit_sizes_on(const MatrixGroup& g, const std::vector<LatticeVector>& classes) {
  std::vector<size_t> sizes;
  for (const auto& o : orbits_on(g, classes)) sizes.push_back(o.size());
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

std::optional<bool> minimality_divisibility_check(const MatrixGroup& g, const DelPezzoLattice& l) {
  if (l.degree != 4 && l.degree != 5) return std::nullopt;
  if (invariant_rank(g) != 1) return std::nullopt;
  size_t divisor = l.degree;  // orbit sizes divisible by 4 (deg 4) resp. 5 (deg 5)
  for (size_t s : orbit_sizes_on(g, exceptional_classes(l).classes))
    if (s % divisor != 0) return false;
  return true;
}

CycloFactorization cyclo_profile(const LatticeForm& l, const IntMatrix& x) {
  if (x.apply(l.canonical) != l.canonical)
    throw std::invalid_argument("element does not fix the canonical class");
  if (l.canonical_square() == 0) throw std::invalid_argument("cyclo profile needs K^2 != 0");
  int n = element_order(x);
  IntPolynomial full = char_poly(x);
  auto [q, r] = poly_divmod(full, IntPolynomial({-1, 1}));  // strip the K-eigenvalue (t - 1)
  if (!r.is_zero()) throw std::logic_error("internal error: char poly not divisible by t - 1");
  std::set<int> cands;
  for (int d : divisors(n)) cands.insert(d);
  CycloFactorization f = cyclo_factorize(q, cands);
  if (!f.clean())
    throw std::logic_error("internal error: finite-order isometry with non-cyclotomic factor");
  return f;
}

CycloFactorization cyclo_power(const CycloFactorization& f, int k) {
  if (k < 1) throw std::invalid_argument("power must be positive");
  if (!f.clean()) throw std::invalid_argument("cyclo_power requires a clean factorization");
  CycloFactorization out;
  out.remainder = IntPolynomial::one();
  for (auto [d, m] : f.factors) {
    if (m == 0) continue;
    int dd = d / std::gcd(d, k);
    int mult = m * int(exact_div(euler_phi(d), euler_phi(dd)));
    out.factors[dd] += mult;
  }
  return out;
}

ActionReport analyze_action(const MatrixGroup& g, const std::vector<LatticeVector>& classes) {
  ActionReport rep;
  for (const auto& e : g.elements) {
    ElementReport er;
    er.order = element_order(e);
    er.trace_q = trace_on_q(g.lattice, e);
    er.euler = checked_add(er.trace_q, 3);
    er.profile = cyclo_profile(g.lattice, e);
    rep.per_element.push_back(std::move(er));
  }
  rep.invariant_rank = invariant_rank(g);
  rep.orbit_sizes = orbit_sizes_on(g, classes);
  return rep;
}

}  // namespace piclat
