#include "piclat/census.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace piclat {

QuarticSignGroup quartic_sign_subgroup() {
  QuarticSignGroup out;
  out.lattice = del_pezzo(4);
  out.weyl = generate(out.lattice.form, root_reflections(out.lattice));
  if (out.weyl.order() != 1920) throw std::logic_error("degree-4 Weyl group has unexpected order");
  std::vector<MatrixGroup> normals;
  for (auto& n : normal_subgroups(out.weyl, 16))
    if (n.order() == 16) normals.push_back(std::move(n));
  if (normals.size() != 1)
    throw std::runtime_error("sign subgroup not unique: found " + std::to_string(normals.size()));
  out.sign = std::move(normals.front());
  for (const auto& e : out.sign.elements) {
    if (!(e == IntMatrix::identity(out.lattice.rank())) && element_order(e) != 2)
      throw std::runtime_error("sign subgroup is not elementary abelian");
    if (trace_on_q(out.lattice.form, e) == -3) out.tau.push_back(e);
  }
  if (out.tau.size() != 5) throw std::runtime_error("expected exactly five trace -3 involutions");
  return out;
}

QuarticMinimalGroup quartic_minimal_group() {
  QuarticSignGroup base = quartic_sign_subgroup();
  const MatrixGroup& w = base.weyl;
  const DelPezzoLattice& dp = base.lattice;

  std::vector<IntMatrix> order3, order4;
  for (const auto& e : w.elements) {
    int o = element_order(e);
    if (o == 3) order3.push_back(e);
    if (o == 4) order4.push_back(e);
  }

  auto has_bad_involution = [&](const std::vector<IntMatrix>& els) {
    for (const auto& e : els)
      if (element_order(e) == 2 && trace_on_q(dp.form, e) == -3) return true;
    return false;
  };

  std::set<std::vector<std::vector<int64_t>>> seen;
  std::vector<MatrixGroup> found;
  IntMatrix id = IntMatrix::identity(dp.rank());
  for (const auto& y : order4) {
    IntMatrix y2 = y * y;
    if (!base.sign.contains(y2) || trace_on_q(dp.form, y2) != 1) continue;
    IntMatrix yinv = inverse_unimodular(y);
    for (const auto& x : order3) {
      if (!(y * x * yinv == x.pow(2))) continue;  // y x y^-1 = x^-1 = x^2
      MatrixGroup h = generate(dp.form, {x, y}, 64);
      if (h.order() != 12) continue;
      if (has_bad_involution(h.elements)) continue;
      if (invariant_rank(h) != 1) continue;
      std::vector<std::vector<int64_t>> key;
      for (const auto& e : h.elements) key.push_back(e.flat());
      if (!seen.insert(key).second) continue;
      h.generators = {x, y};
      found.push_back(std::move(h));
    }
  }
  if (found.empty()) throw std::runtime_error("no minimal order-12 group found on the degree-4 lattice");

  std::sort(found.begin(), found.end(),
            [](const MatrixGroup& a, const MatrixGroup& b) { return a.elements < b.elements; });
  std::vector<int> cls(found.size(), -1);
  int ncls = 0;
  for (size_t i = 0; i < found.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = ncls++;
    for (size_t j = i + 1; j < found.size(); ++j)
      if (cls[j] < 0 && subgroup_conjugate_in(w, found[i], found[j])) cls[j] = cls[i];
  }

  QuarticMinimalGroup out;
  out.lattice = dp;
  out.group = found.front();
  out.gen3 = out.group.generators[0];
  out.gen4 = out.group.generators[1];
  out.groups_found = int(found.size());
  out.conjugacy_classes = ncls;
  return out;
}

namespace {

CentralInvolution central_involution(int degree) {
  CentralInvolution out;
  out.lattice = del_pezzo(degree);
  const LatticeForm& f = out.lattice.form;
  int n = out.lattice.rank();
  int64_t c = exact_div(2, degree);  // integral only for K^2 in {1, 2}
  IntMatrix m(n, n);
  LatticeVector e(n, 0);
  for (int j = 0; j < n; ++j) {
    e[j] = 1;
    int64_t w = checked_mul(c, f.pair(e, f.canonical));
    for (int i = 0; i < n; ++i)
      m(i, j) = checked_add(i == j ? -1 : 0, checked_mul(w, f.canonical[i]));
    e[j] = 0;
  }
  require_isometry(f, m);
  out.involution = m;
  return out;
}

}  // namespace

CentralInvolution geiser() { return central_involution(2); }
CentralInvolution bertini() { return central_involution(1); }

IntMatrix cb_swap_isometry(const ConicBundleLattice& l, const std::vector<int>& perm,
                           const std::set<int>& swaps) {
  int m = l.fiber_count;
  if (int(perm.size()) != m) throw std::invalid_argument("fiber permutation has wrong length");
  {
    std::vector<bool> hit(m, false);
    for (int p : perm) {
      if (p < 0 || p >= m || hit[p]) throw std::invalid_argument("not a fiber permutation");
      hit[p] = true;
    }
  }
  for (int i : swaps)
    if (i < 0 || i >= m) throw std::invalid_argument("swap index out of range");
  if (swaps.size() % 2 != 0)
    throw std::invalid_argument("component swaps must involve an even number of fibers");

  int n = l.rank();
  IntMatrix out(n, n);
  out(0, 0) = 1;                            // f -> f
  out(0, 1) = int64_t(swaps.size()) / 2;    // s -> s + (|swaps|/2) f - sum_{perm(swaps)} e
  out(1, 1) = 1;
  for (int i : swaps) out(2 + perm[i], 1) -= 1;
  for (int i = 0; i < m; ++i) {
    if (swaps.count(i)) {
      out(0, 2 + i) = 1;
      out(2 + perm[i], 2 + i) = -1;  // e_i -> f - e_perm(i)
    } else {
      out(2 + perm[i], 2 + i) = 1;  // e_i -> e_perm(i)
    }
  }
  require_isometry(l.form, out);
  return out;
}

FiberAction fiber_action_of(const ConicBundleLattice& l, const IntMatrix& m) {
  int mm = l.fiber_count;
  int n = l.rank();
  if (m.rows() != n || m.cols() != n) throw std::invalid_argument("wrong matrix size");
  FiberAction fa;
  fa.perm.assign(mm, -1);
  for (int i = 0; i < mm; ++i) {
    int target = -1;
    bool crossed = false;
    // column 2+i is either e_j or f - e_j
    if (m(0, 2 + i) == 0) {
      for (int r = 0; r < n; ++r) {
        int64_t v = m(r, 2 + i);
        if (v == 0) continue;
        if (v == 1 && r >= 2 && target < 0)
          target = r - 2;
        else
          throw std::invalid_argument("not a fiber isometry");
      }
    } else if (m(0, 2 + i) == 1) {
      crossed = true;
      for (int r = 1; r < n; ++r) {
        int64_t v = m(r, 2 + i);
        if (v == 0) continue;
        if (v == -1 && r >= 2 && target < 0)
          target = r - 2;
        else
          throw std::invalid_argument("not a fiber isometry");
      }
    } else {
      throw std::invalid_argument("not a fiber isometry");
    }
    if (target < 0) throw std::invalid_argument("not a fiber isometry");
    fa.perm[i] = target;
    if (crossed) fa.swaps.insert(i);
  }
  if (cb_swap_isometry(l, fa.perm, fa.swaps) != m)
    throw std::invalid_argument("not a fiber isometry");
  return fa;
}

int FiberAction::fixed_fiber_swap_count() const {
  int c = 0;
  for (int i : swaps)
    if (perm[i] == i) ++c;
  return c;
}

namespace {

std::set<int> bits_to_set(unsigned bits, int m) {
  std::set<int> s;
  for (int i = 0; i < m; ++i)
    if (bits >> i & 1u) s.insert(i);
  return s;
}

}  // namespace

DihedralBundle binary_dihedral_bundle(int n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("n must be odd and >= 3");
  DihedralBundle out;
  out.n = n;
  int m = n + 2;
  out.lattice = conic_bundle(m, 1);
  const ConicBundleLattice& l = out.lattice;

  std::vector<int> rho(m), sigma(m);
  for (int i = 0; i < n; ++i) rho[i] = (i + 1) % n;  // cycle fibers 0..n-1
  rho[n] = n;
  rho[n + 1] = n + 1;
  for (int i = 0; i < n; ++i) sigma[i] = n - 1 - i;  // reverse the cycle
  sigma[n] = n + 1;                                  // exchange the special fibers
  sigma[n + 1] = n;

  IntMatrix tau = cb_swap_isometry(l, [&] {
        std::vector<int> idp(m);
        std::iota(idp.begin(), idp.end(), 0);
        return idp;
      }(), {n, n + 1});

  bool have = false;
  for (unsigned sr = 0; sr < (1u << m); ++sr) {
    if (__builtin_popcount(sr) % 2) continue;
    IntMatrix r = cb_swap_isometry(l, rho, bits_to_set(sr, m));
    if (!(r.pow(n) == tau)) continue;
    IntMatrix rinv = r.pow(2 * n - 1);
    for (unsigned ss = 0; ss < (1u << m); ++ss) {
      if (__builtin_popcount(ss) % 2) continue;
      IntMatrix s = cb_swap_isometry(l, sigma, bits_to_set(ss, m));
      if (!(s * s == tau)) continue;
      if (!(s * r == rinv * s)) continue;
      MatrixGroup g = generate(l.form, {r, s}, 16 * size_t(n));
      if (g.order() != 4 * size_t(n)) continue;
      int involutions = 0;
      for (const auto& e : g.elements)
        if (element_order(e) == 2) ++involutions;
      if (involutions != 1) continue;
      ++out.schedules_found;
      if (!have) {
        out.group = std::move(g);
        out.gen_r = r;
        out.gen_s = s;
        out.central = tau;
        have = true;
      }
    }
  }
  if (!have) throw std::runtime_error("no binary dihedral swap schedule found");
  out.group.generators = {out.gen_r, out.gen_s};
  return out;
}

IskovskikhBundle iskovskikh_bundle() {
  IskovskikhBundle out;
  out.lattice = conic_bundle(4, 2);
  const ConicBundleLattice& l = out.lattice;
  const int m = 4;

  // the full group of fiber isometries: S_4 on fibers times the even swap sets
  std::vector<std::vector<int>> perms;
  {
    std::vector<int> p{0, 1, 2, 3};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }
  std::vector<IntMatrix> all;
  for (const auto& p : perms)
    for (unsigned b = 0; b < 16; ++b) {
      if (__builtin_popcount(b) % 2) continue;
      all.push_back(cb_swap_isometry(l, p, bits_to_set(b, m)));
    }
  MatrixGroup fiber_group;
  fiber_group.lattice = l.form;
  std::sort(all.begin(), all.end());
  fiber_group.elements = std::move(all);

  IntMatrix id = IntMatrix::identity(l.rank());
  std::vector<IntMatrix> involutions;
  for (const auto& e : fiber_group.elements)
    if (!(e == id) && e * e == id) involutions.push_back(e);

  LatticeVector c2 = second_section(l);
  auto admissible = [&](const MatrixGroup& g) {
    bool hits_second_section = false;
    for (const auto& e : g.elements) {
      FiberAction fa = fiber_action_of(l, e);
      int c = fa.fixed_fiber_swap_count();
      if (c != 0 && c != 2) return false;
      if (!(e == id) && fa.perm == std::vector<int>{0, 1, 2, 3}) return false;  // base-faithful
      if (e.apply(l.section_class()) == c2) hits_second_section = true;
    }
    if (!hits_second_section) return false;
    return invariant_rank(g) == 2;
  };

  std::set<std::vector<std::vector<int64_t>>> seen;
  std::vector<MatrixGroup> found;
  for (size_t i = 0; i < involutions.size(); ++i)
    for (size_t j = i + 1; j < involutions.size(); ++j) {
      const IntMatrix &a = involutions[i], &b = involutions[j];
      if (!(a * b == b * a)) continue;
      MatrixGroup g = generate(l.form, {a, b}, 8);
      if (g.order() != 4) continue;
      std::vector<std::vector<int64_t>> key;
      for (const auto& e : g.elements) key.push_back(e.flat());
      if (!seen.insert(key).second) continue;
      if (!admissible(g)) continue;
      found.push_back(std::move(g));
    }
  if (found.empty()) throw std::runtime_error("no Klein fiber action with the required data found");

  std::sort(found.begin(), found.end(),
            [](const MatrixGroup& a, const MatrixGroup& b) { return a.elements < b.elements; });
  std::vector<int> cls(found.size(), -1);
  int ncls = 0;
  for (size_t i = 0; i < found.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = ncls++;
    for (size_t j = i + 1; j < found.size(); ++j)
      if (cls[j] < 0 && subgroup_conjugate_in(fiber_group, found[i], found[j])) cls[j] = cls[i];
  }
  out.group = found.front();
  out.candidates_found = int(found.size());
  out.conjugacy_classes = ncls;
  return out;
}

namespace {

// octahedron on vertex labels 0..5, antipodal pairs (0,1), (2,4), (3,5)
constexpr int kAntipode[6] = {1, 0, 4, 5, 2, 3};

std::vector<std::vector<int>> octahedral_vertex_group() {
  std::vector<int> a{0, 1, 3, 4, 5, 2};  // 4-cycle (2 3 4 5), fixes 0 and 1
  std::vector<int> b{2, 4, 3, 0, 5, 1};  // (0 2 3)(1 4 5)
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> els;
  std::vector<int> id{0, 1, 2, 3, 4, 5};
  els.push_back(id);
  seen.insert(id);
  for (size_t head = 0; head < els.size(); ++head) {
    for (const auto& g : {a, b}) {
      std::vector<int> p(6);
      for (int i = 0; i < 6; ++i) p[i] = g[els[head][i]];
      if (seen.insert(p).second) els.push_back(p);
    }
  }
  if (els.size() != 24) throw std::logic_error("octahedral vertex group has wrong order");
  return els;
}

bool perm_is_odd(const std::vector<int>& p) {
  std::vector<bool> vis(p.size(), false);
  int transpositions = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (vis[i]) continue;
    int len = 0, j = int(i);
    while (!vis[j]) {
      vis[j] = true;
      j = p[j];
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 1;
}

}  // namespace

OctahedralBundle octahedral_bundle(int g) {
  if (g != 2 && g != 5 && g != 8) throw std::invalid_argument("octahedral genus must be 2, 5 or 8");
  OctahedralBundle out;
  out.genus = g;
  int m = 2 * g + 2;
  out.lattice = conic_bundle(m, g + 1);

  // fiber labels: vertices (g=2), edges (g=5), vertices then edges (g=8)
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v)
      if (kAntipode[u] != v) edges.push_back({u, v});
  auto vgroup = octahedral_vertex_group();

  std::vector<IntMatrix> mats;
  for (const auto& vp : vgroup) {
    std::vector<int> fiber_perm;
    if (g == 2 || g == 8)
      for (int v = 0; v < 6; ++v) fiber_perm.push_back(vp[v]);
    if (g == 5 || g == 8) {
      int offset = (g == 8) ? 6 : 0;
      for (const auto& [u, v] : edges) {
        std::pair<int, int> img{std::min(vp[u], vp[v]), std::max(vp[u], vp[v])};
        auto it = std::find(edges.begin(), edges.end(), img);
        if (it == edges.end()) throw std::logic_error("edge image is not an edge");
        fiber_perm.push_back(offset + int(it - edges.begin()));
      }
    }
    std::set<int> swaps;
    if (perm_is_odd(vp))
      for (int i = 0; i < m; ++i) swaps.insert(i);
    mats.push_back(cb_swap_isometry(out.lattice, fiber_perm, swaps));
  }
  std::sort(mats.begin(), mats.end());
  mats.erase(std::unique(mats.begin(), mats.end()), mats.end());
  if (mats.size() != 24) throw std::logic_error("octahedral bundle action has wrong order");
  MatrixGroup grp = generate(out.lattice.form, mats, 48);
  if (grp.order() != 24) throw std::logic_error("octahedral bundle closure has wrong order");
  out.group = std::move(grp);
  return out;
}

bool node_cusp_validator(int64_t nodes, int64_t cusps) {
  if (nodes < 0 || cusps < 0) throw std::invalid_argument("counts must be nonnegative");
  return nodes + 2 * cusps == 12;
}

// ---- census registry --------------------------------------------------------

std::vector<std::string> census_ids(bool heavy) {
  std::vector<std::string> ids{"quartic-sign", "quartic-minimal", "geiser",      "bertini",
                               "dihedral-3",   "dihedral-5",      "iskovskikh", "octahedral-2"};
  if (heavy) {
    ids.push_back("octahedral-5");
    ids.push_back("octahedral-8");
  }
  return ids;
}

namespace {

CensusEntry del_pezzo_entry(std::string id, std::string desc, const DelPezzoLattice& l,
                            MatrixGroup grp) {
  CensusEntry e;
  e.id = std::move(id);
  e.description = std::move(desc);
  e.lattice_kind = "del_pezzo";
  e.degree = l.degree;
  e.group = std::move(grp);
  e.marked_classes = exceptional_classes(l).classes;
  return e;
}

CensusEntry conic_entry(std::string id, std::string desc, const ConicBundleLattice& l,
                        MatrixGroup grp) {
  CensusEntry e;
  e.id = std::move(id);
  e.description = std::move(desc);
  e.lattice_kind = "conic_bundle";
  e.degree = 8 - l.fiber_count;
  e.fibers = l.fiber_count;
  e.section_param = l.section_param;
  e.group = std::move(grp);
  e.marked_classes = l.all_component_classes();
  return e;
}

}  // namespace

CensusEntry census_entry(const std::string& id) {
  if (id == "quartic-sign") {
    auto q = quartic_sign_subgroup();
    auto e = del_pezzo_entry(id, "sign subgroup (Z/2)^4 of the degree-4 Weyl group", q.lattice,
                             q.sign);
    e.metadata["tau_count"] = "5";
    e.metadata["trace_multiset_on_Q"] = "{5:1, -3:5, 1:10}";
    return e;
  }
  if (id == "quartic-minimal") {
    auto q = quartic_minimal_group();
    auto e = del_pezzo_entry(id, "minimal (Z/3 : Z/4) action on the degree-4 lattice", q.lattice,
                             q.group);
    e.metadata["groups_found"] = std::to_string(q.groups_found);
    e.metadata["conjugacy_classes"] = std::to_string(q.conjugacy_classes);
    return e;
  }
  if (id == "geiser" || id == "bertini") {
    auto c = id == "geiser" ? geiser() : bertini();
    MatrixGroup g = generate(c.lattice.form, {c.involution});
    auto e = del_pezzo_entry(id, id == "geiser" ? "central involution on the degree-2 lattice"
                                                : "central involution on the degree-1 lattice",
                             c.lattice, std::move(g));
    e.metadata["trace_on_Q"] = std::to_string(trace_on_q(c.lattice.form, c.involution));
    return e;
  }
  if (id.rfind("dihedral-", 0) == 0) {
    int n = std::stoi(id.substr(9));
    auto d = binary_dihedral_bundle(n);
    auto e = conic_entry(id, "binary dihedral group of order " + std::to_string(4 * n) +
                                 " on a conic bundle with " + std::to_string(n + 2) + " fibers",
                         d.lattice, d.group);
    e.metadata["schedules_found"] = std::to_string(d.schedules_found);
    e.metadata["order"] = std::to_string(4 * n);
    return e;
  }
  if (id == "iskovskikh") {
    auto k = iskovskikh_bundle();
    auto e = conic_entry(id, "faithful lattice image of the Z/4+Z/2 conic bundle action (m=4, e=2)",
                         k.lattice, k.group);
    e.metadata["candidates_found"] = std::to_string(k.candidates_found);
    e.metadata["conjugacy_classes"] = std::to_string(k.conjugacy_classes);
    e.metadata["abstract_group"] = "Z/4 + Z/2 acting through its faithful Klein quotient";
    return e;
  }
  if (id.rfind("octahedral-", 0) == 0) {
    int g = std::stoi(id.substr(11));
    auto o = octahedral_bundle(g);
    auto e = conic_entry(id, "S4 conic bundle action with " + std::to_string(2 * g + 2) +
                                 " degenerate fibers; odd elements cross every fiber",
                         o.lattice, o.group);
    // degree of the branch data matches 2g+2 and the base orbits involved
    e.metadata["semi_invariant"] = g == 2   ? "psi6 = y1 y2 (y1^4 - y2^4), base orbit sizes {2,4} in O6"
                                   : g == 5 ? "psi12 = y1^12 - 33 y1^8 y2^4 - 33 y1^4 y2^8 + y2^12, base orbit O12"
                                            : "psi6 * psi12, base orbits O6 and O12";
    e.metadata["semi_invariant_degree"] = std::to_string(2 * g + 2);
    return e;
  }
  throw std::invalid_argument("unknown census id: " + id);
}

std::string to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::pass: return "pass";
    case ClaimStatus::fail: return "fail";
    case ClaimStatus::partially_checkable: return "partially-checkable";
    case ClaimStatus::not_run: return "not-run";
  }
  return "?";
}

}  // namespace piclat
