#include "piclat/weyl.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace piclat {

bool is_isometry(const LatticeForm& l, const IntMatrix& m) {
  if (m.rows() != l.rank() || m.cols() != l.rank()) return false;
  if (m.transposed() * l.gram * m != l.gram) return false;
  return m.apply(l.canonical) == l.canonical;
}

void require_isometry(const LatticeForm& l, const IntMatrix& m) {
  if (!is_isometry(l, m)) throw std::invalid_argument("matrix is not an isometry of the lattice");
}

IntMatrix reflection(const DelPezzoLattice& l, const LatticeVector& root) {
  if (int(root.size()) != l.rank()) throw std::invalid_argument("root has wrong length");
  if (l.form.square(root) != -2 || l.form.pair(root, l.form.canonical) != 0)
    throw std::invalid_argument("vector is not a root");
  int n = l.rank();
  IntMatrix m(n, n);
  LatticeVector e(n, 0);
  for (int j = 0; j < n; ++j) {
    e[j] = 1;
    int64_t c = l.form.pair(e, root);
    for (int i = 0; i < n; ++i) m(i, j) = checked_add(i == j ? 1 : 0, checked_mul(c, root[i]));
    e[j] = 0;
  }
  return m;
}

std::vector<IntMatrix> root_reflections(const DelPezzoLattice& l) {
  std::vector<IntMatrix> out;
  std::set<std::vector<int64_t>> seen;
  for (const auto& a : roots(l).roots) {
    IntMatrix r = reflection(l, a);
    if (seen.insert(r.flat()).second) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

size_t MatrixGroup::order() const {
  if (!enumerated()) throw std::logic_error("group is not enumerated");
  return elements.size();
}

bool MatrixGroup::contains(const IntMatrix& m) const {
  return std::binary_search(elements.begin(), elements.end(), m);
}

const IntMatrix& MatrixGroup::identity() const {
  static thread_local IntMatrix id;
  id = IntMatrix::identity(lattice.rank());
  return id;
}

MatrixGroup generate(const LatticeForm& l, std::vector<IntMatrix> gens, size_t cap) {
  for (const auto& g : gens)
    if (!is_isometry(l, g)) throw std::invalid_argument("invalid generator: not a lattice isometry");
  // dedup generators, drop identity
  IntMatrix id = IntMatrix::identity(l.rank());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::erase(gens, id);

  std::unordered_set<std::vector<int64_t>, FlatVectorHash> seen;
  std::vector<IntMatrix> elements;
  elements.push_back(id);
  seen.insert(id.flat());
  for (size_t head = 0; head < elements.size(); ++head) {
    IntMatrix cur = elements[head];
    for (const auto& g : gens) {
      IntMatrix p = cur * g;
      if (seen.insert(p.flat()).second) {
        if (elements.size() >= cap) throw CapExceededError("group enumeration cap exceeded");
        elements.push_back(std::move(p));
      }
    }
  }
  std::sort(elements.begin(), elements.end());
  MatrixGroup out;
  out.lattice = l;
  out.generators = std::move(gens);
  out.elements = std::move(elements);
  return out;
}

MatrixGroup trivial_group(const LatticeForm& l) {
  MatrixGroup g;
  g.lattice = l;
  g.elements.push_back(IntMatrix::identity(l.rank()));
  return g;
}

MatrixGroup group_from_elements(const LatticeForm& l, std::vector<IntMatrix> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  MatrixGroup g;
  g.lattice = l;
  g.elements = std::move(elements);
  g.generators = small_generating_set(g);
  return g;
}

std::vector<IntMatrix> small_generating_set(const MatrixGroup& g) {
  size_t n = g.elements.size();
  if (n <= 1) return {};
  IntMatrix id = IntMatrix::identity(g.lattice.rank());
  auto closes = [&](const std::vector<IntMatrix>& gens) {
    std::set<std::vector<int64_t>> seen{id.flat()};
    std::vector<IntMatrix> frontier{id};
    while (!frontier.empty()) {
      std::vector<IntMatrix> next;
      for (const auto& a : frontier)
        for (const auto& b : gens) {
          IntMatrix p = a * b;
          if (seen.insert(p.flat()).second) next.push_back(std::move(p));
        }
      frontier = std::move(next);
    }
    return seen.size() == n;
  };
  std::vector<IntMatrix> nonid;
  for (const auto& e : g.elements)
    if (!(e == id)) nonid.push_back(e);
  for (const auto& a : nonid)
    if (closes({a})) return {a};
  for (size_t i = 0; i < nonid.size(); ++i)
    for (size_t j = i + 1; j < nonid.size(); ++j)
      if (closes({nonid[i], nonid[j]})) return {nonid[i], nonid[j]};
  for (size_t i = 0; i < nonid.size(); ++i)
    for (size_t j = i + 1; j < nonid.size(); ++j)
      for (size_t k = j + 1; k < nonid.size(); ++k)
        if (closes({nonid[i], nonid[j], nonid[k]})) return {nonid[i], nonid[j], nonid[k]};
  return nonid;
}

std::vector<int> permutation_on(const std::vector<LatticeVector>& classes, const IntMatrix& m) {
  std::map<LatticeVector, int> index;
  for (size_t i = 0; i < classes.size(); ++i) index[classes[i]] = int(i);
  std::vector<int> perm(classes.size());
  for (size_t i = 0; i < classes.size(); ++i) {
    auto it = index.find(m.apply(classes[i]));
    if (it == index.end()) throw std::invalid_argument("class list is not closed under the action");
    perm[i] = it->second;
  }
  return perm;
}

namespace {

using Perm = std::vector<int>;

Perm perm_mul(const Perm& a, const Perm& b) {  // apply a, then b
  Perm c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
  return c;
}

Perm perm_inverse(const Perm& a) {
  Perm c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[a[i]] = int(i);
  return c;
}

bool perm_is_identity(const Perm& a) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != int(i)) return false;
  return true;
}

struct PermHash {
  size_t operator()(const Perm& p) const {
    uint64_t h = 1469598103934665603ull;
    for (int x : p) {
      h ^= uint64_t(x);
      h *= 1099511628211ull;
    }
    return size_t(h);
  }
};

// order = |orbit| * |stabilizer|, stabilizer generated by Schreier
// generators (deduplicated). Faithfulness of the point action is assumed.
uint64_t perm_group_order(std::vector<Perm> gens, size_t cap) {
  std::erase_if(gens, perm_is_identity);
  if (gens.empty()) return 1;
  size_t npoints = gens[0].size();
  int base = -1;
  for (size_t p = 0; p < npoints && base < 0; ++p)
    for (const auto& g : gens)
      if (g[p] != int(p)) {
        base = int(p);
        break;
      }
  if (base < 0) return 1;
  std::unordered_map<int, Perm> transversal;
  transversal[base] = Perm();
  {
    Perm id(npoints);
    for (size_t i = 0; i < npoints; ++i) id[i] = int(i);
    transversal[base] = id;
  }
  std::vector<int> orbit{base};
  for (size_t head = 0; head < orbit.size(); ++head) {
    int p = orbit[head];
    for (const auto& g : gens) {
      int q = g[p];
      if (!transversal.count(q)) {
        transversal[q] = perm_mul(transversal[p], g);
        orbit.push_back(q);
      }
    }
  }
  std::unordered_set<Perm, PermHash> schreier;
  for (int p : orbit)
    for (const auto& g : gens) {
      Perm s = perm_mul(perm_mul(transversal[p], g), perm_inverse(transversal[g[p]]));
      if (!perm_is_identity(s)) {
        schreier.insert(std::move(s));
        if (schreier.size() > cap)
          throw CapExceededError("orbit-stabilizer: Schreier generator cap exceeded");
      }
    }
  std::vector<Perm> sub(schreier.begin(), schreier.end());
  return uint64_t(orbit.size()) * perm_group_order(std::move(sub), cap);
}

}  // namespace

uint64_t group_order_orbit_stabilizer(const DelPezzoLattice& l, const std::vector<IntMatrix>& gens,
                                      size_t schreier_cap) {
  for (const auto& g : gens) require_isometry(l.form, g);
  // roots and exceptional classes together span the lattice, so the
  // permutation action is faithful
  std::vector<LatticeVector> points = roots(l).roots;
  for (auto& c : exceptional_classes(l).classes) points.push_back(c);
  std::vector<Perm> perms;
  for (const auto& g : gens) perms.push_back(permutation_on(points, g));
  return perm_group_order(std::move(perms), schreier_cap);
}

int element_order(const IntMatrix& m, int cap) {
  if (m.rows() != m.cols()) throw std::invalid_argument("order of non-square matrix");
  IntMatrix id = IntMatrix::identity(m.rows());
  IntMatrix p = m;
  for (int k = 1; k <= cap; ++k) {
    if (p == id) return k;
    p = p * m;
  }
  throw std::runtime_error("element order exceeds cap");
}

std::map<int, size_t> element_orders(const MatrixGroup& g) {
  if (!g.enumerated()) throw std::logic_error("element_orders requires an enumerated group");
  std::map<int, size_t> out;
  for (const auto& e : g.elements) out[element_order(e)]++;
  return out;
}

namespace {

// index-space machinery for subgroup searches in small enumerated groups
struct IndexedGroup {
  const MatrixGroup* g;
  std::unordered_map<std::vector<int64_t>, int, FlatVectorHash> index;
  std::vector<std::vector<int>> mul;  // full multiplication table
  std::vector<int> inv;
  int id = -1;

  explicit IndexedGroup(const MatrixGroup& grp) : g(&grp) {
    int n = int(grp.elements.size());
    if (n > 4000) throw std::invalid_argument("group too large for subgroup machinery");
    for (int i = 0; i < n; ++i) index[grp.elements[i].flat()] = i;
    IntMatrix idm = IntMatrix::identity(grp.lattice.rank());
    id = index.at(idm.flat());
    mul.assign(n, std::vector<int>(n));
    inv.assign(n, -1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto it = index.find((grp.elements[i] * grp.elements[j]).flat());
        if (it == index.end()) throw std::logic_error("internal error: group not closed");
        mul[i][j] = it->second;
        if (it->second == id) inv[i] = j;
      }
  }

  std::vector<int> closure(std::vector<int> seed) const {
    std::set<int> s(seed.begin(), seed.end());
    s.insert(id);
    std::vector<int> frontier(s.begin(), s.end());
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int a : frontier)
        for (int b : s) {
          for (int p : {mul[a][b], mul[b][a]})
            if (s.insert(p).second) next.push_back(p);
        }
      frontier = std::move(next);
    }
    return {s.begin(), s.end()};
  }
};

MatrixGroup subgroup_from_indices(const MatrixGroup& g, const std::vector<int>& idx) {
  std::vector<IntMatrix> els;
  for (int i : idx) els.push_back(g.elements[i]);
  return group_from_elements(g.lattice, std::move(els));
}

}  // namespace

std::vector<MatrixGroup> subgroups_up_to(const MatrixGroup& g, size_t max_order) {
  if (!g.enumerated()) throw std::logic_error("subgroups_up_to requires an enumerated group");
  IndexedGroup ig(g);
  int n = int(g.elements.size());
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> work{{ig.id}};
  found.insert({ig.id});
  while (!work.empty()) {
    std::vector<int> h = std::move(work.back());
    work.pop_back();
    if (h.size() >= max_order) continue;
    std::set<int> hset(h.begin(), h.end());
    for (int x = 0; x < n; ++x) {
      if (hset.count(x)) continue;
      std::vector<int> seed = h;
      seed.push_back(x);
      std::vector<int> ext = ig.closure(std::move(seed));
      if (ext.size() > max_order) continue;
      if (found.insert(ext).second) work.push_back(std::move(ext));
    }
  }
  std::vector<MatrixGroup> out;
  for (const auto& idx : found) out.push_back(subgroup_from_indices(g, idx));
  std::sort(out.begin(), out.end(), [](const MatrixGroup& a, const MatrixGroup& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    return a.elements < b.elements;
  });
  return out;
}

MatrixGroup centralizer(const MatrixGroup& g, const IntMatrix& x) {
  if (!g.enumerated()) throw std::logic_error("centralizer requires an enumerated group");
  std::vector<IntMatrix> els;
  for (const auto& e : g.elements)
    if (e * x == x * e) els.push_back(e);
  return group_from_elements(g.lattice, std::move(els));
}

namespace {

std::vector<std::vector<int>> conjugacy_classes(const IndexedGroup& ig) {
  int n = int(ig.mul.size());
  std::vector<int> cls(n, -1);
  std::vector<std::vector<int>> classes;
  for (int x = 0; x < n; ++x) {
    if (cls[x] >= 0) continue;
    int c = int(classes.size());
    std::vector<int> members{x};
    cls[x] = c;
    for (size_t head = 0; head < members.size(); ++head) {
      int y = members[head];
      for (int u = 0; u < n; ++u) {
        int z = ig.mul[ig.mul[u][y]][ig.inv[u]];
        if (cls[z] < 0) {
          cls[z] = c;
          members.push_back(z);
        }
      }
    }
    std::sort(members.begin(), members.end());
    classes.push_back(std::move(members));
  }
  return classes;
}

}  // namespace

std::vector<MatrixGroup> normal_subgroups(const MatrixGroup& g, size_t max_order) {
  if (!g.enumerated()) throw std::logic_error("normal_subgroups requires an enumerated group");
  IndexedGroup ig(g);
  auto classes = conjugacy_classes(ig);
  // the identity class comes first after sorting by smallest member
  std::sort(classes.begin(), classes.end());
  std::vector<std::vector<int>> results;
  // depth-first over unions of nonidentity classes with bounded total size
  std::vector<int> chosen;
  auto rec = [&](auto&& self, size_t from, size_t total) -> void {
    if (total > 1 && total <= max_order) {
      std::set<int> u{ig.id};
      for (int ci : chosen) u.insert(classes[ci].begin(), classes[ci].end());
      bool closed = true;
      for (int a : u)
        for (int b : u) {
          if (!u.count(ig.mul[a][b])) {
            closed = false;
            break;
          }
        }
      if (closed && u.size() < g.elements.size()) results.emplace_back(u.begin(), u.end());
    }
    for (size_t ci = from; ci < classes.size(); ++ci) {
      if (classes[ci].size() == 1 && classes[ci][0] == ig.id) continue;
      if (total + classes[ci].size() > max_order) continue;
      chosen.push_back(int(ci));
      self(self, ci + 1, total + classes[ci].size());
      chosen.pop_back();
    }
  };
  rec(rec, 0, 1);
  std::sort(results.begin(), results.end());
  results.erase(std::unique(results.begin(), results.end()), results.end());
  std::vector<MatrixGroup> out;
  for (const auto& idx : results) out.push_back(subgroup_from_indices(g, idx));
  return out;
}

bool conjugacy_test(const MatrixGroup& g, const IntMatrix& a, const IntMatrix& b) {
  if (!g.enumerated()) throw std::logic_error("conjugacy_test requires an enumerated group");
  for (const auto& u : g.elements) {
    if (u * a == b * u) return true;
  }
  return false;
}

bool same_elements(const MatrixGroup& a, const MatrixGroup& b) {
  return a.elements == b.elements;
}

bool subgroup_conjugate_in(const MatrixGroup& g, const MatrixGroup& h1, const MatrixGroup& h2) {
  if (h1.elements.size() != h2.elements.size()) return false;
  for (const auto& u : g.elements) {
    IntMatrix uinv = inverse_unimodular(u);
    std::vector<IntMatrix> conj;
    conj.reserve(h1.elements.size());
    for (const auto& x : h1.elements) conj.push_back(u * x * uinv);
    std::sort(conj.begin(), conj.end());
    if (conj == h2.elements) return true;
  }
  return false;
}

PairActionSummary root_pair_quotient(const DelPezzoLattice& l, const std::vector<IntMatrix>& gens,
                                     size_t cap) {
  auto rs = roots(l).roots;
  // antipodal pairs, represented by the lexicographically larger member
  std::vector<LatticeVector> reps;
  std::map<LatticeVector, int> pair_index;
  for (const auto& r : rs) {
    LatticeVector neg(r.size());
    for (size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
    LatticeVector rep = std::max(r, neg);
    if (!pair_index.count(rep)) {
      pair_index[rep] = int(reps.size());
      reps.push_back(rep);
    }
  }
  int np = int(reps.size());
  auto to_perm = [&](const IntMatrix& m) {
    std::vector<uint8_t> p(np);
    for (int i = 0; i < np; ++i) {
      LatticeVector img = m.apply(reps[i]);
      LatticeVector neg(img.size());
      for (size_t k = 0; k < img.size(); ++k) neg[k] = -img[k];
      auto it = pair_index.find(std::max(img, neg));
      if (it == pair_index.end()) throw std::logic_error("root pair escapes the root set");
      p[i] = uint8_t(it->second);
    }
    return p;
  };
  std::vector<std::vector<uint8_t>> pgens;
  for (const auto& g : gens) {
    require_isometry(l.form, g);
    pgens.push_back(to_perm(g));
  }
  struct VecHash {
    size_t operator()(const std::vector<uint8_t>& v) const {
      uint64_t h = 1469598103934665603ull;
      for (uint8_t x : v) {
        h ^= x;
        h *= 1099511628211ull;
      }
      return size_t(h);
    }
  };
  std::vector<uint8_t> id(np);
  for (int i = 0; i < np; ++i) id[i] = uint8_t(i);
  std::unordered_set<std::vector<uint8_t>, VecHash> seen{id};
  std::vector<std::vector<uint8_t>> frontier{id};
  PairActionSummary out;
  auto perm_order = [&](const std::vector<uint8_t>& p) {
    std::vector<bool> vis(np, false);
    int64_t ord = 1;
    for (int i = 0; i < np; ++i) {
      if (vis[i]) continue;
      int len = 0, j = i;
      while (!vis[j]) {
        vis[j] = true;
        j = p[j];
        ++len;
      }
      ord = std::lcm<int64_t>(ord, len);
    }
    return int(ord);
  };
  out.element_orders.insert(1);
  while (!frontier.empty()) {
    std::vector<std::vector<uint8_t>> next;
    for (const auto& a : frontier)
      for (const auto& g : pgens) {
        std::vector<uint8_t> p(np);
        for (int i = 0; i < np; ++i) p[i] = g[a[i]];
        if (seen.insert(p).second) {
          if (seen.size() > cap) throw CapExceededError("pair action enumeration cap exceeded");
          out.element_orders.insert(perm_order(p));
          next.push_back(std::move(p));
        }
      }
    frontier = std::move(next);
  }
  out.order = seen.size();
  return out;
}

}  // namespace piclat
