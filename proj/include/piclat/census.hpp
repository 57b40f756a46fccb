#pragma once

#include "piclat/cohomology.hpp"
#include "piclat/gaction.hpp"

namespace piclat {

// ---- named constructions ---------------------------------------------------

// The sign subgroup of the degree-4 Weyl group: its unique normal subgroup
// of order 16, elementary abelian, with the five trace -3 involutions
// labeled tau[0..4].
struct QuarticSignGroup {
  DelPezzoLattice lattice;
  MatrixGroup weyl;   // full degree-4 Weyl group, order 1920
  MatrixGroup sign;   // the order-16 normal subgroup
  std::vector<IntMatrix> tau;
};
QuarticSignGroup quartic_sign_subgroup();

// The minimal order-12 group on the degree-4 lattice: generated by x of
// order 3 and y of order 4 with y x y^-1 = x^-1, y^2 in the sign subgroup
// with trace 1, containing no trace -3 involution, invariant rank 1.
struct QuarticMinimalGroup {
  DelPezzoLattice lattice;
  MatrixGroup group;
  IntMatrix gen3, gen4;
  int groups_found = 0;
  int conjugacy_classes = 0;
};
QuarticMinimalGroup quartic_minimal_group();

// x -> -x + (2/K^2)(x.K) K on the degree-2 resp. degree-1 lattice: acts as
// -1 on Q and fixes K.
struct CentralInvolution {
  DelPezzoLattice lattice;
  IntMatrix involution;
};
CentralInvolution geiser();
CentralInvolution bertini();

// Fiber isometry of a conic bundle lattice: permutes the degenerate fibers
// by perm, crossing components over the fibers in swaps (even cardinality);
// f is fixed and the section image is forced.
IntMatrix cb_swap_isometry(const ConicBundleLattice& l, const std::vector<int>& perm,
                           const std::set<int>& swaps);

// Decompose a fiber isometry back into (perm, swaps); throws if the matrix
// is not of that shape.
struct FiberAction {
  std::vector<int> perm;
  std::set<int> swaps;
  // fibers fixed by perm whose components are crossed (the canonical count)
  int fixed_fiber_swap_count() const;
};
FiberAction fiber_action_of(const ConicBundleLattice& l, const IntMatrix& m);

// Binary dihedral group of order 4n on the conic bundle with m = n+2
// degenerate fibers (n odd >= 3): r cycles fibers 1..n, s reverses the cycle
// and exchanges the two special fibers, r^n = s^2 = the central involution
// switching components of exactly the two special fibers.
struct DihedralBundle {
  int n = 0;
  ConicBundleLattice lattice;
  MatrixGroup group;
  IntMatrix gen_r, gen_s, central;
  int schedules_found = 0;  // number of valid swap-schedule pairs
};
DihedralBundle binary_dihedral_bundle(int n);

// Klein four-group of fiber isometries on the (m=4, e=2) lattice modeling
// the abelian group Z/4+Z/2 acting through its faithful base quotient:
// base image (Z/2)^2, invariant rank 2, sections in one orbit, fixed-fiber
// swap counts in {0, 2}.
struct IskovskikhBundle {
  ConicBundleLattice lattice;
  MatrixGroup group;  // the faithful lattice image, Klein of order 4
  int candidates_found = 0;
  int conjugacy_classes = 0;
};
IskovskikhBundle iskovskikh_bundle();

// Octahedral (S4) conic bundle actions with 2g+2 degenerate fibers for
// g in {2, 5, 8}: fibers labeled by octahedron vertices (g=2), edges (g=5)
// or both (g=8); odd elements cross every fiber, even elements none.
struct OctahedralBundle {
  int genus = 0;
  ConicBundleLattice lattice;
  MatrixGroup group;  // order 24
};
OctahedralBundle octahedral_bundle(int g);

bool node_cusp_validator(int64_t nodes, int64_t cusps);

// ---- census registry --------------------------------------------------------

struct CensusEntry {
  std::string id;
  std::string description;
  std::string lattice_kind;  // "del_pezzo" or "conic_bundle"
  int degree = 0;            // K^2
  int fibers = -1;           // conic bundle only
  int section_param = -1;    // conic bundle only
  MatrixGroup group;
  std::vector<LatticeVector> marked_classes;  // orbit-report class set
  std::map<std::string, std::string> metadata;
};

std::vector<std::string> census_ids(bool heavy = false);
CensusEntry census_entry(const std::string& id);

// ---- claim registry ---------------------------------------------------------

enum class ClaimStatus { pass, fail, partially_checkable, not_run };
std::string to_string(ClaimStatus s);

struct ClaimResult {
  std::string id;
  ClaimStatus status = ClaimStatus::not_run;
  std::string statement;  // the checked property, self-contained
  std::string expected;
  std::string actual;
  int criterion = 0;  // acceptance criterion this claim belongs to
  bool heavy = false;
  double seconds = 0.0;
};

struct VerifyOptions {
  bool heavy = false;
  std::vector<std::string> claim_filter;  // empty = all
  int threads = 0;                        // 0 = PICLAT_THREADS or 1
};

std::vector<std::string> claim_ids(bool heavy = false);
std::vector<ClaimResult> verify_all(const VerifyOptions& opts = {});

}  // namespace piclat
