#pragma once

#include "piclat/exactlin.hpp"

namespace piclat {

using LatticeVector = std::vector<int64_t>;

// Intersection form together with the canonical class: exactly the data an
// isometry check needs, shared by the del Pezzo and conic bundle models.
struct LatticeForm {
  IntMatrix gram;
  LatticeVector canonical;

  int rank() const { return gram.rows(); }
  int64_t pair(std::span<const int64_t> x, std::span<const int64_t> y) const;
  int64_t square(std::span<const int64_t> x) const { return pair(x, x); }
  int64_t canonical_square() const { return pair(canonical, canonical); }
  bool operator==(const LatticeForm&) const = default;
};

int64_t pairing(const LatticeForm& l, const LatticeVector& x, const LatticeVector& y);

// Pic of a del Pezzo surface of degree d in [1,7]: basis (h, e_1..e_r) with
// r = 9-d, gram diag(1,-1,...,-1), K = (-3,1,...,1), K^2 = d.
struct DelPezzoLattice {
  int degree = 0;
  LatticeForm form;
  int rank() const { return form.rank(); }
};

DelPezzoLattice del_pezzo(int degree);

struct RootSystem {
  std::vector<LatticeVector> roots;  // complete, lexicographically sorted
  std::string type_label;
};

// Complete enumeration of {x : x^2 = -2, x.K = 0}.
RootSystem roots(const DelPezzoLattice& l);

struct ExceptionalSet {
  std::vector<LatticeVector> classes;  // complete, lexicographically sorted
};

// Complete enumeration of {x : x^2 = -1, x.K = -1}.
ExceptionalSet exceptional_classes(const DelPezzoLattice& l);

// All x with x^2 = self and x.K = kdot, found by exhaustive search inside the
// box forced by negative-definiteness of K-perp.
std::vector<LatticeVector> enumerate_classes(const DelPezzoLattice& l, int64_t self, int64_t kdot);

// Pic of a conic bundle with m degenerate fibers in the Hirzebruch-blowup
// basis (f, s, e_1..e_m): f^2 = 0, f.s = 1, s^2 = -e, e_i^2 = -1,
// K = -2s - (2+e)f + sum e_i, K^2 = 8 - m. Components of degenerate fiber i
// are e_i and f - e_i.
struct ConicBundleLattice {
  int fiber_count = 0;   // m
  int section_param = 0; // e
  LatticeForm form;

  int rank() const { return form.rank(); }
  LatticeVector fiber_class() const;
  LatticeVector section_class() const;
  LatticeVector component_class(int i) const;           // e_i, 0-based
  LatticeVector opposite_component_class(int i) const;  // f - e_i
  std::vector<LatticeVector> all_component_classes() const;
};

ConicBundleLattice conic_bundle(int m, int e);

// The second disjoint section s + e*f - sum e_i; requires m = 2e.
LatticeVector second_section(const ConicBundleLattice& l);

}  // namespace piclat
