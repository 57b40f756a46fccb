#pragma once

#include <optional>

#include "piclat/weyl.hpp"

namespace piclat {

// Trace on Q = K-perp: full-lattice trace minus the K-eigenvalue 1.
// Requires x to fix K and K^2 != 0.
int64_t trace_on_q(const LatticeForm& l, const IntMatrix& x);

// Lefschetz prediction Eu(fixed locus) = trace_on_q + 3.
int64_t predicted_euler(const LatticeForm& l, const IntMatrix& x);

// rk of the invariant sublattice, computed independently by the character
// formula and by an integer kernel; throws std::logic_error on mismatch.
int invariant_rank(const MatrixGroup& g);

// Partition of a closed class list into orbits; orbits ordered by their
// lexicographically smallest member, members sorted.
std::vector<std::vector<LatticeVector>> orbits_on(const MatrixGroup& g,
                                                  const std::vector<LatticeVector>& classes);
std::vector<size_t> orbit_sizes_on(const MatrixGroup& g, const std::vector<LatticeVector>& classes);

// Orbit-size divisibility forced by minimality; implemented for the degrees
// where the divisor is K^2-derived (4 and 5). nullopt = not applicable
// (other degree, or invariant rank != 1).
std::optional<bool> minimality_divisibility_check(const MatrixGroup& g, const DelPezzoLattice& l);

// Characteristic polynomial on Q factored over the cyclotomics Phi_d with
// d | ord(x); the remainder is asserted to be 1.
CycloFactorization cyclo_profile(const LatticeForm& l, const IntMatrix& x);

// Profile of x^k from the profile of x:
// Phi_d^m -> Phi_{d/gcd(d,k)}^{m phi(d)/phi(d/gcd(d,k))}.
CycloFactorization cyclo_power(const CycloFactorization& f, int k);

struct ElementReport {
  int order = 0;
  int64_t trace_q = 0;
  int64_t euler = 0;
  CycloFactorization profile;
};

struct ActionReport {
  std::vector<ElementReport> per_element;  // in canonical element order
  int invariant_rank = 0;
  std::vector<size_t> orbit_sizes;  // ascending
};

ActionReport analyze_action(const MatrixGroup& g, const std::vector<LatticeVector>& classes);

}  // namespace piclat
