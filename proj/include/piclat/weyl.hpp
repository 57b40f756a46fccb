#pragma once

#include <cstddef>
#include <map>
#include <set>

#include "piclat/picard.hpp"

namespace piclat {

// An isometry must preserve the gram form and fix the canonical class.
bool is_isometry(const LatticeForm& l, const IntMatrix& m);
void require_isometry(const LatticeForm& l, const IntMatrix& m);

// Reflection x -> x + (x.a) a in a root a (a^2 = -2, a.K = 0).
IntMatrix reflection(const DelPezzoLattice& l, const LatticeVector& root);

// One reflection per +-root pair, deduplicated.
std::vector<IntMatrix> root_reflections(const DelPezzoLattice& l);

inline constexpr size_t kDefaultEnumerationCap = 200000;

struct CapExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MatrixGroup {
  LatticeForm lattice;
  std::vector<IntMatrix> generators;
  std::vector<IntMatrix> elements;  // canonically sorted; nonempty iff enumerated

  bool enumerated() const { return !elements.empty(); }
  size_t order() const;
  bool contains(const IntMatrix& m) const;  // requires enumerated
  const IntMatrix& identity() const;
};

// Breadth-first closure of the generators; throws CapExceededError when the
// closure grows past cap. Every element is checked to be an isometry.
MatrixGroup generate(const LatticeForm& l, std::vector<IntMatrix> gens,
                     size_t cap = kDefaultEnumerationCap);

MatrixGroup trivial_group(const LatticeForm& l);
MatrixGroup group_from_elements(const LatticeForm& l, std::vector<IntMatrix> elements);

// Small generating set for an enumerated group (tries 1, 2, 3 elements).
std::vector<IntMatrix> small_generating_set(const MatrixGroup& g);

// Group order by recursive orbit-stabilizer on the faithful action on
// roots and exceptional classes; never stores the group.
uint64_t group_order_orbit_stabilizer(const DelPezzoLattice& l, const std::vector<IntMatrix>& gens,
                                      size_t schreier_cap = 200000);

int element_order(const IntMatrix& m, int cap = 4096);
std::map<int, size_t> element_orders(const MatrixGroup& g);  // order -> multiplicity

// All subgroups of order <= max_order, found by incremental closure over
// element extensions; complete for that bound. Parent must be enumerated.
std::vector<MatrixGroup> subgroups_up_to(const MatrixGroup& g, size_t max_order);

MatrixGroup centralizer(const MatrixGroup& g, const IntMatrix& x);

// Nontrivial proper normal subgroups of order <= max_order, via unions of
// conjugacy classes.
std::vector<MatrixGroup> normal_subgroups(const MatrixGroup& g, size_t max_order);

bool conjugacy_test(const MatrixGroup& g, const IntMatrix& a, const IntMatrix& b);
bool same_elements(const MatrixGroup& a, const MatrixGroup& b);
bool subgroup_conjugate_in(const MatrixGroup& g, const MatrixGroup& h1, const MatrixGroup& h2);

// Action on the antipodal root pairs, i.e. the quotient by -1 when -1 is the
// kernel of that action; used for the degree-2 simple-quotient checks.
struct PairActionSummary {
  uint64_t order = 0;
  std::set<int> element_orders;
};
PairActionSummary root_pair_quotient(const DelPezzoLattice& l, const std::vector<IntMatrix>& gens,
                                     size_t cap);

// Map each isometry to its permutation of a closed class list; throws if the
// list is not closed under the action.
std::vector<int> permutation_on(const std::vector<LatticeVector>& classes, const IntMatrix& m);

}  // namespace piclat
