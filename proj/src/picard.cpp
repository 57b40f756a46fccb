#include "piclat/picard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace piclat {

int64_t LatticeForm::pair(std::span<const int64_t> x, std::span<const int64_t> y) const {
  if (int(x.size()) != rank() || int(y.size()) != rank())
    throw std::invalid_argument("pairing dimension mismatch");
  int64_t acc = 0;
  for (int i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < rank(); ++j) {
      int64_t g = gram(i, j);
      if (g == 0 || y[j] == 0) continue;
      acc = checked_add(acc, checked_mul(x[i], checked_mul(g, y[j])));
    }
  }
  return acc;
}

int64_t pairing(const LatticeForm& l, const LatticeVector& x, const LatticeVector& y) {
  return l.pair(x, y);
}

DelPezzoLattice del_pezzo(int degree) {
  if (degree < 1 || degree > 7) throw std::invalid_argument("del Pezzo degree must be in [1,7]");
  int r = 9 - degree;
  DelPezzoLattice l;
  l.degree = degree;
  l.form.gram = IntMatrix(r + 1, r + 1);
  l.form.gram(0, 0) = 1;
  for (int i = 1; i <= r; ++i) l.form.gram(i, i) = -1;
  l.form.canonical.assign(r + 1, 1);
  l.form.canonical[0] = -3;
  return l;
}

namespace {

// x = (x0, x1..xr) with x^2 = self, x.K = kdot translates to
// sum xi = -3 x0 - kdot and sum xi^2 = x0^2 - self; Cauchy-Schwarz on the
// negative-definite part bounds everything.
void enumerate_rest(int64_t rem_sum, int64_t rem_sq, int left, LatticeVector& cur,
                    std::vector<LatticeVector>& out) {
  if (left == 0) {
    if (rem_sum == 0 && rem_sq == 0) out.push_back(cur);
    return;
  }
  int64_t bound = int64_t(std::sqrt(double(rem_sq))) + 1;
  for (int64_t v = -bound; v <= bound; ++v) {
    int64_t v2 = v * v;
    if (v2 > rem_sq) continue;
    int64_t ns = rem_sum - v, nq = rem_sq - v2;
    if (left > 1 && ns * ns > int64_t(left - 1) * nq) continue;
    if (left == 1 && (ns != 0 || nq != 0)) continue;
    cur.push_back(v);
    enumerate_rest(ns, nq, left - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<LatticeVector> enumerate_classes(const DelPezzoLattice& l, int64_t self, int64_t kdot) {
  int r = 9 - l.degree;
  std::vector<LatticeVector> out;
  // (3 x0 + kdot)^2 <= r (x0^2 - self)
  for (int64_t x0 = -64; x0 <= 64; ++x0) {
    int64_t s = -3 * x0 - kdot;
    int64_t q = x0 * x0 - self;
    if (q < 0 || s * s > int64_t(r) * q) continue;
    LatticeVector cur{x0};
    enumerate_rest(s, q, r, cur, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

RootSystem roots(const DelPezzoLattice& l) {
  static const char* labels[8] = {nullptr, "E8", "E7", "E6", "D5", "A4", "A1xA2", "A1"};
  RootSystem rs;
  rs.roots = enumerate_classes(l, -2, 0);
  rs.type_label = labels[l.degree];
  return rs;
}

ExceptionalSet exceptional_classes(const DelPezzoLattice& l) {
  return {enumerate_classes(l, -1, -1)};
}

ConicBundleLattice conic_bundle(int m, int e) {
  if (m < 0 || e < 0) throw std::invalid_argument("conic bundle parameters must be nonnegative");
  ConicBundleLattice l;
  l.fiber_count = m;
  l.section_param = e;
  int n = m + 2;
  l.form.gram = IntMatrix(n, n);
  l.form.gram(0, 1) = 1;
  l.form.gram(1, 0) = 1;
  l.form.gram(1, 1) = -e;
  for (int i = 0; i < m; ++i) l.form.gram(2 + i, 2 + i) = -1;
  l.form.canonical.assign(n, 1);
  l.form.canonical[0] = -(2 + e);
  l.form.canonical[1] = -2;
  return l;
}

LatticeVector ConicBundleLattice::fiber_class() const {
  LatticeVector v(rank(), 0);
  v[0] = 1;
  return v;
}

LatticeVector ConicBundleLattice::section_class() const {
  LatticeVector v(rank(), 0);
  v[1] = 1;
  return v;
}

LatticeVector ConicBundleLattice::component_class(int i) const {
  if (i < 0 || i >= fiber_count) throw std::invalid_argument("fiber index out of range");
  LatticeVector v(rank(), 0);
  v[2 + i] = 1;
  return v;
}

LatticeVector ConicBundleLattice::opposite_component_class(int i) const {
  if (i < 0 || i >= fiber_count) throw std::invalid_argument("fiber index out of range");
  LatticeVector v(rank(), 0);
  v[0] = 1;
  v[2 + i] = -1;
  return v;
}

std::vector<LatticeVector> ConicBundleLattice::all_component_classes() const {
  std::vector<LatticeVector> out;
  for (int i = 0; i < fiber_count; ++i) out.push_back(component_class(i));
  for (int i = 0; i < fiber_count; ++i) out.push_back(opposite_component_class(i));
  std::sort(out.begin(), out.end());
  return out;
}

LatticeVector second_section(const ConicBundleLattice& l) {
  if (l.fiber_count != 2 * l.section_param)
    throw std::invalid_argument("second section requires m = 2e");
  LatticeVector v(l.rank(), 0);
  v[0] = l.section_param;
  v[1] = 1;
  for (int i = 0; i < l.fiber_count; ++i) v[2 + i] = -1;
  return v;
}

}  // namespace piclat
