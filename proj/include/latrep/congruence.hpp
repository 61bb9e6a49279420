#pragma once

#include <latrep/lattice.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace latrep {

// A congruence as a canonical partition: classOf[x] is the block id of x,
// blocks numbered by first occurrence, so equality of partitions is equality
// of vectors and refinement is a pointwise block check.
struct Congruence {
  std::vector<int> classOf;

  int n() const { return static_cast<int>(classOf.size()); }
  bool same(int x, int y) const { return classOf[x] == classOf[y]; }
  int blocks() const {
    int m = 0;
    for (int c : classOf) m = std::max(m, c + 1);
    return m;
  }
  bool operator==(const Congruence& o) const { return classOf == o.classOf; }
  bool operator<(const Congruence& o) const { return classOf < o.classOf; }

  bool is_identity() const { return blocks() == n(); }
  bool is_all() const { return blocks() == 1; }

  // theta refines other: every block of theta sits inside a block of other.
  bool refines(const Congruence& o) const {
    for (int x = 0; x < n(); ++x)
      for (int y = x + 1; y < n(); ++y)
        if (classOf[x] == classOf[y] && o.classOf[x] != o.classOf[y]) return false;
    return true;
  }

  std::vector<std::vector<int>> block_lists() const {
    std::vector<std::vector<int>> out(blocks());
    for (int x = 0; x < n(); ++x) out[classOf[x]].push_back(x);
    return out;
  }
};

namespace detail {

inline Congruence canonicalize(std::vector<int> classOf) {
  std::vector<int> relabel(classOf.size() + 1, -1);
  int next = 0;
  for (int& c : classOf) {
    if (relabel[c] < 0) relabel[c] = next++;
    c = relabel[c];
  }
  return Congruence{std::move(classOf)};
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (x > y) std::swap(x, y);
    parent[y] = x;
    return true;
  }
};

inline Congruence from_union_find(UnionFind& uf) {
  std::vector<int> classOf(uf.parent.size());
  for (size_t i = 0; i < uf.parent.size(); ++i) classOf[i] = uf.find(static_cast<int>(i));
  return canonicalize(std::move(classOf));
}

} // namespace detail

inline Congruence identity_congruence(const FiniteLattice& L) {
  std::vector<int> classOf(L.n());
  for (int i = 0; i < L.n(); ++i) classOf[i] = i;
  return Congruence{std::move(classOf)};
}

inline Congruence all_congruence(const FiniteLattice& L) {
  return Congruence{std::vector<int>(L.n(), 0)};
}

inline bool is_congruence(const FiniteLattice& L, const Congruence& theta) {
  int n = L.n();
  if (theta.n() != n) return false;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (!theta.same(x, y)) continue;
      for (int z = 0; z < n; ++z) {
        if (!theta.same(L.join(x, z), L.join(y, z))) return false;
        if (!theta.same(L.meet(x, z), L.meet(y, z))) return false;
      }
    }
  return true;
}

// Smallest congruence collapsing (a,b): substitution closure to a fixpoint,
// propagating every newly merged pair through joins and meets with all z.
inline Congruence principal_congruence(const FiniteLattice& L, int a, int b) {
  int n = L.n();
  if (a < 0 || a >= n || b < 0 || b >= n)
    fail(ErrorKind::UnknownElement, "principal congruence pair out of range");
  detail::UnionFind uf(n);
  std::vector<std::pair<int, int>> work;
  if (uf.unite(a, b)) work.emplace_back(a, b);
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    for (int z = 0; z < n; ++z) {
      int jx = L.join(x, z), jy = L.join(y, z);
      if (uf.unite(jx, jy)) work.emplace_back(jx, jy);
      int mx = L.meet(x, z), my = L.meet(y, z);
      if (uf.unite(mx, my)) work.emplace_back(mx, my);
    }
  }
  return detail::from_union_find(uf);
}

// Join in Con L: transitive closure of the union of the two partitions.
inline Congruence congruence_join(const Congruence& s, const Congruence& t) {
  detail::UnionFind uf(s.n());
  auto merge_blocks = [&](const Congruence& c) {
    std::vector<int> firstOf(c.n(), -1);
    for (int x = 0; x < c.n(); ++x) {
      int b = c.classOf[x];
      if (firstOf[b] < 0)
        firstOf[b] = x;
      else
        uf.unite(firstOf[b], x);
    }
  };
  merge_blocks(s);
  merge_blocks(t);
  return detail::from_union_find(uf);
}

// Meet in Con L: common refinement.
inline Congruence congruence_meet(const Congruence& s, const Congruence& t) {
  std::map<std::pair<int, int>, int> seen;
  std::vector<int> classOf(s.n());
  for (int x = 0; x < s.n(); ++x) {
    auto key = std::make_pair(s.classOf[x], t.classOf[x]);
    auto [it, inserted] = seen.emplace(key, static_cast<int>(seen.size()));
    classOf[x] = it->second;
  }
  return detail::canonicalize(std::move(classOf));
}

// The congruence lattice: all joins of principal congruences plus the identity,
// ordered by refinement. congruenceOf runs parallel to lattice elements;
// principal flags the image of principal_congruence.
struct ConLattice {
  FiniteLattice lattice;
  std::vector<Congruence> congruenceOf;
  std::vector<uint8_t> principal;

  int element_of(const Congruence& c) const {
    for (int i = 0; i < static_cast<int>(congruenceOf.size()); ++i)
      if (congruenceOf[i] == c) return i;
    fail(ErrorKind::UnknownElement, "congruence is not in the computed lattice");
  }
};

namespace detail {

// con(a,b) for a < b is the join of the cover congruences along any maximal
// chain of [a,b], so the per-cover congruences determine every principal one.
inline Congruence principal_from_covers(const FiniteLattice& L,
                                        const std::map<std::pair<int, int>, Congruence>& coverCon,
                                        int a, int b) {
  Congruence acc = identity_congruence(L);
  int z = a;
  while (z != b) {
    int next = -1;
    for (int w : L.upperCovers[z])
      if (L.le(w, b)) {
        next = w;
        break;
      }
    if (next < 0) fail(ErrorKind::PreconditionViolated, "broken cover walk");
    acc = congruence_join(acc, coverCon.at({z, next}));
    z = next;
  }
  return acc;
}

} // namespace detail

inline ConLattice con_lattice(const FiniteLattice& L) {
  int n = L.n();
  std::map<std::pair<int, int>, Congruence> coverCon;
  for (auto& [lo, hi] : L.poset.covers) coverCon.emplace(std::make_pair(lo, hi), principal_congruence(L, lo, hi));
  std::set<Congruence> principals;
  principals.insert(identity_congruence(L));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (L.le(a, b)) principals.insert(detail::principal_from_covers(L, coverCon, a, b));
  std::vector<Congruence> all(principals.begin(), principals.end());
  std::set<Congruence> seen(principals.begin(), principals.end());
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      Congruence jn = congruence_join(all[i], all[j]);
      if (seen.insert(jn).second) all.push_back(jn);
    }
  // stable order: coarser congruences later; ties by partition content
  std::sort(all.begin(), all.end(), [](const Congruence& x, const Congruence& y) {
    int bx = x.blocks(), by = y.blocks();
    if (bx != by) return bx > by;
    return x.classOf < y.classOf;
  });
  int m = static_cast<int>(all.size());
  int width = 1;
  for (int t = m; t >= 10; t /= 10) ++width;
  std::vector<std::string> names(m);
  for (int i = 0; i < m; ++i) {
    std::string num = std::to_string(i);
    names[i] = "t" + std::string(width - num.size(), '0') + num;
  }
  std::vector<std::vector<uint8_t>> leq(m, std::vector<uint8_t>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) leq[i][j] = all[i].refines(all[j]) ? 1 : 0;
  ConLattice CL;
  CL.lattice = lattice_from_leq(names, leq);
  std::map<std::vector<int>, int> slot;
  for (int i = 0; i < m; ++i) slot[all[i].classOf] = i;
  CL.congruenceOf = std::move(all);
  CL.principal.assign(m, 0);
  CL.principal[0] = 1; // identity = con(x,x)
  for (const auto& c : principals) CL.principal[slot.at(c.classOf)] = 1;
  return CL;
}

// Join-irreducible congruences; each must be generated by a prime interval.
inline std::vector<Congruence> ji_congruences(const ConLattice& CL, const FiniteLattice& L) {
  std::vector<Congruence> out;
  for (int x : join_irreducibles(CL.lattice)) out.push_back(CL.congruenceOf[x]);
  for (const auto& c : out) {
    bool fromPrime = false;
    for (auto& [lo, hi] : L.poset.covers)
      if (principal_congruence(L, lo, hi) == c) {
        fromPrime = true;
        break;
      }
    if (!fromPrime)
      fail(ErrorKind::PreconditionViolated,
           "join-irreducible congruence not generated by any prime interval");
  }
  return out;
}

// J+(Con L) inside Princ L inside Con L, as sets of partitions.
inline bool check_containment_chain(const FiniteLattice& L) {
  ConLattice CL = con_lattice(L);
  std::set<Congruence> princ;
  for (int i = 0; i < static_cast<int>(CL.congruenceOf.size()); ++i)
    if (CL.principal[i]) princ.insert(CL.congruenceOf[i]);
  for (int x : j_plus(CL.lattice))
    if (princ.count(CL.congruenceOf[x]) == 0) return false;
  // Princ inside Con holds by construction; re-check against the element list.
  std::set<Congruence> all(CL.congruenceOf.begin(), CL.congruenceOf.end());
  for (const auto& c : princ)
    if (all.count(c) == 0) return false;
  return true;
}

// Restriction of a congruence to a sublattice given by element indices;
// the result is a partition of 0..|S|-1 in the order given.
inline Congruence restrict_congruence(const FiniteLattice& L, const Congruence& theta,
                                      const std::vector<int>& sub) {
  if (!is_subuniverse(L, sub))
    fail(ErrorKind::NotASublattice, "restriction target is not meet/join closed");
  std::vector<int> classOf(sub.size());
  for (size_t i = 0; i < sub.size(); ++i) classOf[i] = theta.classOf[sub[i]];
  return detail::canonicalize(std::move(classOf));
}

// Internal congruence: nonzero, with {o} and {i} as singleton blocks.
inline bool is_internal(const FiniteLattice& L, const Congruence& theta) {
  if (theta.is_identity())
    fail(ErrorKind::PreconditionViolated, "internality is defined for nonzero congruences");
  for (int x = 0; x < L.n(); ++x) {
    if (x == L.zero || x == L.one) continue;
    if (theta.same(x, L.zero) || theta.same(x, L.one)) return false;
  }
  return true;
}

} // namespace latrep
