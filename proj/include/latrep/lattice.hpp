#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace latrep {

enum class ErrorKind {
  CycleDetected,
  NotALattice,
  EmptyUniverse,
  UnknownElement,
  NotComparable,
  ColorNotInD,
  NotDistributive,
  UnitColorMissing,
  IndexOutOfRange,
  PreconditionViolated,
  Incompatible,
  SubstitutionFailure,
  NotASublattice,
  UnitColor,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::EmptyUniverse: return "EmptyUniverse";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::NotComparable: return "NotComparable";
    case ErrorKind::ColorNotInD: return "ColorNotInD";
    case ErrorKind::NotDistributive: return "NotDistributive";
    case ErrorKind::UnitColorMissing: return "UnitColorMissing";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::Incompatible: return "Incompatible";
    case ErrorKind::SubstitutionFailure: return "SubstitutionFailure";
    case ErrorKind::NotASublattice: return "NotASublattice";
    case ErrorKind::UnitColor: return "UnitColor";
  }
  return "Unknown";
}

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(k)) + ": " + msg), kind(k) {}
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

// Elements are dense indices 0..n-1; names carry external identity.
struct FinitePoset {
  std::vector<std::string> names;
  std::vector<std::vector<uint8_t>> leq;   // leq[a][b] != 0 iff a <= b
  std::vector<std::pair<int, int>> covers; // (lower, upper), transitively reduced, sorted

  int n() const { return static_cast<int>(names.size()); }
  bool le(int a, int b) const { return leq[a][b] != 0; }
  bool lt(int a, int b) const { return a != b && leq[a][b] != 0; }

  int find(const std::string& name) const {
    for (int i = 0; i < n(); ++i)
      if (names[i] == name) return i;
    return -1;
  }
  int index(const std::string& name) const {
    int i = find(name);
    if (i < 0) fail(ErrorKind::UnknownElement, "no element named '" + name + "'");
    return i;
  }
};

namespace detail {

inline std::map<std::string, int> name_index_map(const std::vector<std::string>& names) {
  std::map<std::string, int> m;
  for (int i = 0; i < static_cast<int>(names.size()); ++i) {
    if (!m.emplace(names[i], i).second)
      fail(ErrorKind::PreconditionViolated, "duplicate element name '" + names[i] + "'");
  }
  return m;
}

inline std::vector<std::pair<int, int>> covers_from_leq(
    const std::vector<std::vector<uint8_t>>& leq) {
  int n = static_cast<int>(leq.size());
  std::vector<std::pair<int, int>> covers;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !leq[a][b]) continue;
      bool direct = true;
      for (int c = 0; c < n && direct; ++c)
        if (c != a && c != b && leq[a][c] && leq[c][b]) direct = false;
      if (direct) covers.emplace_back(a, b);
    }
  std::sort(covers.begin(), covers.end());
  return covers;
}

// Bit rows for fast up-set/down-set intersections.
struct BitRows {
  int n = 0, words = 0;
  std::vector<uint64_t> bits;
  BitRows(int n_) : n(n_), words((n_ + 63) / 64), bits(static_cast<size_t>(n_) * words, 0) {}
  uint64_t* row(int i) { return bits.data() + static_cast<size_t>(i) * words; }
  const uint64_t* row(int i) const { return bits.data() + static_cast<size_t>(i) * words; }
  void set(int i, int j) { row(i)[j / 64] |= (uint64_t(1) << (j % 64)); }
  bool subset(const uint64_t* a, const uint64_t* b) const { // a subseteq b
    for (int w = 0; w < words; ++w)
      if (a[w] & ~b[w]) return false;
    return true;
  }
};

} // namespace detail

inline FinitePoset poset_from_covers(const std::vector<std::string>& names,
                                     const std::vector<std::pair<std::string, std::string>>& covers) {
  if (names.empty()) fail(ErrorKind::EmptyUniverse, "poset needs at least one element");
  auto idx = detail::name_index_map(names);
  int n = static_cast<int>(names.size());
  std::vector<std::vector<uint8_t>> rel(n, std::vector<uint8_t>(n, 0));
  for (const auto& [lo, hi] : covers) {
    auto il = idx.find(lo), ih = idx.find(hi);
    if (il == idx.end()) fail(ErrorKind::UnknownElement, "cover refers to '" + lo + "'");
    if (ih == idx.end()) fail(ErrorKind::UnknownElement, "cover refers to '" + hi + "'");
    rel[il->second][ih->second] = 1;
  }
  // Warshall closure of the strict relation; a cycle shows up on the diagonal.
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a) {
      if (!rel[a][k]) continue;
      for (int b = 0; b < n; ++b)
        if (rel[k][b]) rel[a][b] = 1;
    }
  for (int a = 0; a < n; ++a)
    if (rel[a][a]) fail(ErrorKind::CycleDetected, "cover cycle through '" + names[a] + "'");
  for (int a = 0; a < n; ++a) rel[a][a] = 1;
  FinitePoset P;
  P.names = names;
  P.leq = std::move(rel);
  P.covers = detail::covers_from_leq(P.leq);
  return P;
}

struct FiniteLattice {
  FinitePoset poset;
  std::vector<int32_t> joinTable, meetTable; // n*n row-major
  int zero = 0, one = 0;
  std::vector<std::vector<int>> upperCovers, lowerCovers;
  std::vector<int> height; // longest chain from zero

  int n() const { return poset.n(); }
  const std::string& name(int i) const { return poset.names[i]; }
  int find(const std::string& s) const { return poset.find(s); }
  int index(const std::string& s) const { return poset.index(s); }
  bool le(int a, int b) const { return poset.le(a, b); }
  bool lt(int a, int b) const { return poset.lt(a, b); }
  int join(int a, int b) const { return joinTable[static_cast<size_t>(a) * n() + b]; }
  int meet(int a, int b) const { return meetTable[static_cast<size_t>(a) * n() + b]; }
};

namespace detail {

inline void finish_lattice(FiniteLattice& L) {
  int n = L.n();
  L.upperCovers.assign(n, {});
  L.lowerCovers.assign(n, {});
  for (auto& [lo, hi] : L.poset.covers) {
    L.upperCovers[lo].push_back(hi);
    L.lowerCovers[hi].push_back(lo);
  }
  L.height.assign(n, 0);
  // Covers are a DAG; process by in-order over a topological sweep.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int ca = 0, cb = 0;
    for (int x = 0; x < n; ++x) {
      ca += L.poset.lt(x, a);
      cb += L.poset.lt(x, b);
    }
    return ca < cb;
  });
  for (int v : order)
    for (int u : L.lowerCovers[v]) L.height[v] = std::max(L.height[v], L.height[u] + 1);
}

inline FiniteLattice lattice_from_poset(FinitePoset P) {
  int n = P.n();
  detail::BitRows up(n), down(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (P.le(a, b)) {
        up.set(a, b);
        down.set(b, a);
      }
  // Elements sorted by height make bound search return the least/greatest first.
  FiniteLattice L;
  L.poset = std::move(P);
  detail::finish_lattice(L); // fills covers adjacency + height (needs poset only)
  const auto& leq = L.poset.leq;
  std::vector<int> byHeight(n), byDepth(n);
  for (int i = 0; i < n; ++i) byHeight[i] = byDepth[i] = i;
  std::sort(byHeight.begin(), byHeight.end(),
            [&](int a, int b) { return L.height[a] != L.height[b] ? L.height[a] < L.height[b] : a < b; });
  byDepth = byHeight;
  std::reverse(byDepth.begin(), byDepth.end());

  L.joinTable.assign(static_cast<size_t>(n) * n, -1);
  L.meetTable.assign(static_cast<size_t>(n) * n, -1);
  std::vector<uint64_t> common(up.words);
  auto tableAt = [&](std::vector<int32_t>& t, int a, int b) -> int32_t& {
    return t[static_cast<size_t>(a) * n + b];
  };
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      // join: least element of up(a) & up(b)
      int j = -1;
      for (int w = 0; w < up.words; ++w) common[w] = up.row(a)[w] & up.row(b)[w];
      for (int x : byHeight) {
        if (!(common[x / 64] >> (x % 64) & 1)) continue;
        if (up.subset(common.data(), up.row(x))) { j = x; }
        break; // lowest candidate must dominate all others, else no lub
      }
      if (j < 0) {
        // retry without the early break: distinct minimal candidates may tie in height
        for (int x : byHeight) {
          if (!(common[x / 64] >> (x % 64) & 1)) continue;
          if (up.subset(common.data(), up.row(x))) { j = x; break; }
        }
      }
      if (j < 0)
        fail(ErrorKind::NotALattice, "no join for (" + L.poset.names[a] + ", " + L.poset.names[b] + ")");
      tableAt(L.joinTable, a, b) = tableAt(L.joinTable, b, a) = j;
      int m = -1;
      for (int w = 0; w < up.words; ++w) common[w] = down.row(a)[w] & down.row(b)[w];
      for (int x : byDepth) {
        if (!(common[x / 64] >> (x % 64) & 1)) continue;
        if (down.subset(common.data(), down.row(x))) { m = x; }
        break;
      }
      if (m < 0) {
        for (int x : byDepth) {
          if (!(common[x / 64] >> (x % 64) & 1)) continue;
          if (down.subset(common.data(), down.row(x))) { m = x; break; }
        }
      }
      if (m < 0)
        fail(ErrorKind::NotALattice, "no meet for (" + L.poset.names[a] + ", " + L.poset.names[b] + ")");
      tableAt(L.meetTable, a, b) = tableAt(L.meetTable, b, a) = m;
      (void)leq;
    }
  L.zero = 0;
  L.one = 0;
  for (int i = 1; i < n; ++i) {
    L.zero = L.meet(L.zero, i);
    L.one = L.join(L.one, i);
  }
  return L;
}

} // namespace detail

inline FiniteLattice lattice_from_covers(const std::vector<std::string>& names,
                                         const std::vector<std::pair<std::string, std::string>>& covers) {
  return detail::lattice_from_poset(poset_from_covers(names, covers));
}

// Builds a lattice from a full order relation; validates the order axioms.
inline FiniteLattice lattice_from_leq(const std::vector<std::string>& names,
                                      const std::vector<std::vector<uint8_t>>& leq) {
  if (names.empty()) fail(ErrorKind::EmptyUniverse, "lattice needs at least one element");
  detail::name_index_map(names); // duplicate check
  int n = static_cast<int>(names.size());
  for (int a = 0; a < n; ++a) {
    if (!leq[a][a]) fail(ErrorKind::PreconditionViolated, "relation not reflexive at '" + names[a] + "'");
    for (int b = 0; b < n; ++b) {
      if (a != b && leq[a][b] && leq[b][a])
        fail(ErrorKind::PreconditionViolated,
             "relation not antisymmetric on ('" + names[a] + "', '" + names[b] + "')");
      if (!leq[a][b]) continue;
      for (int c = 0; c < n; ++c)
        if (leq[b][c] && !leq[a][c])
          fail(ErrorKind::PreconditionViolated,
               "relation not transitive via ('" + names[a] + "', '" + names[b] + "', '" + names[c] + "')");
    }
  }
  FinitePoset P;
  P.names = names;
  P.leq = leq;
  P.covers = detail::covers_from_leq(P.leq);
  return detail::lattice_from_poset(std::move(P));
}

// Join-irreducibles: nonzero elements with a unique lower cover, in element order.
inline std::vector<int> join_irreducibles(const FiniteLattice& L) {
  std::vector<int> out;
  for (int x = 0; x < L.n(); ++x)
    if (x != L.zero && L.lowerCovers[x].size() == 1) out.push_back(x);
  return out;
}

inline std::vector<int> meet_irreducibles(const FiniteLattice& L) {
  std::vector<int> out;
  for (int x = 0; x < L.n(); ++x)
    if (x != L.one && L.upperCovers[x].size() == 1) out.push_back(x);
  return out;
}

inline std::vector<int> j_plus(const FiniteLattice& L) {
  std::vector<int> out = join_irreducibles(L);
  out.push_back(L.zero);
  out.push_back(L.one);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool is_distributive(const FiniteLattice& L) {
  int n = L.n();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (L.meet(a, L.join(b, c)) != L.join(L.meet(a, b), L.meet(a, c))) return false;
  return true;
}

// Down-set lattice of a poset, with the map p -> principal down-set of p.
struct Birkhoff {
  FiniteLattice lattice;
  std::vector<int> jmap; // poset element -> lattice element
};

inline Birkhoff birkhoff_lattice(const FinitePoset& P) {
  int n = P.n();
  if (n == 0) fail(ErrorKind::EmptyUniverse, "down-set lattice needs a nonempty poset");
  if (n > 20) fail(ErrorKind::PreconditionViolated, "down-set enumeration capped at 20 elements");
  std::vector<uint32_t> downsets;
  for (uint32_t mask = 0; mask < (uint32_t(1) << n); ++mask) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) {
      if (!(mask >> b & 1)) continue;
      for (int a = 0; a < n; ++a)
        if (P.lt(a, b) && !(mask >> a & 1)) { ok = false; break; }
    }
    if (ok) downsets.push_back(mask);
  }
  auto setName = [&](uint32_t mask) {
    std::vector<std::string> members;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) members.push_back(P.names[i]);
    std::sort(members.begin(), members.end());
    std::string s = "{";
    for (size_t i = 0; i < members.size(); ++i) {
      if (i) s += ",";
      s += members[i];
    }
    return s + "}";
  };
  std::stable_sort(downsets.begin(), downsets.end(), [&](uint32_t a, uint32_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb) return pa < pb;
    return setName(a) < setName(b);
  });
  std::vector<std::string> names;
  names.reserve(downsets.size());
  for (uint32_t m : downsets) names.push_back(setName(m));
  std::vector<std::pair<std::string, std::string>> covers;
  for (size_t i = 0; i < downsets.size(); ++i)
    for (size_t j = 0; j < downsets.size(); ++j) {
      uint32_t s = downsets[i], t = downsets[j];
      if (s != t && (s & ~t) == 0 && __builtin_popcount(t) == __builtin_popcount(s) + 1)
        covers.emplace_back(names[i], names[j]);
    }
  Birkhoff B;
  B.lattice = lattice_from_covers(names, covers);
  B.jmap.assign(n, -1);
  for (int p = 0; p < n; ++p) {
    uint32_t principal = 0;
    for (int a = 0; a < n; ++a)
      if (P.le(a, p)) principal |= uint32_t(1) << a;
    B.jmap[p] = B.lattice.index(setName(principal));
  }
  return B;
}

inline FiniteLattice dual(const FiniteLattice& L) {
  std::vector<std::pair<std::string, std::string>> covers;
  covers.reserve(L.poset.covers.size());
  for (auto& [lo, hi] : L.poset.covers) covers.emplace_back(L.name(hi), L.name(lo));
  return lattice_from_covers(L.poset.names, covers);
}

struct Chain {
  FiniteLattice lattice;
  std::vector<int> elementsInOrder; // bottom to top
  int length() const { return static_cast<int>(elementsInOrder.size()) - 1; }
};

// Direct chain construction; avoids the generic bound search.
inline Chain chain_from_names(const std::vector<std::string>& names) {
  if (names.empty()) fail(ErrorKind::EmptyUniverse, "chain needs at least one element");
  detail::name_index_map(names);
  int n = static_cast<int>(names.size());
  FiniteLattice L;
  L.poset.names = names;
  L.poset.leq.assign(n, std::vector<uint8_t>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) L.poset.leq[a][b] = 1;
  for (int a = 0; a + 1 < n; ++a) L.poset.covers.emplace_back(a, a + 1);
  L.joinTable.assign(static_cast<size_t>(n) * n, 0);
  L.meetTable.assign(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      L.joinTable[static_cast<size_t>(a) * n + b] = std::max(a, b);
      L.meetTable[static_cast<size_t>(a) * n + b] = std::min(a, b);
    }
  L.zero = 0;
  L.one = n - 1;
  detail::finish_lattice(L);
  Chain C;
  C.lattice = std::move(L);
  C.elementsInOrder.resize(n);
  for (int i = 0; i < n; ++i) C.elementsInOrder[i] = i;
  return C;
}

inline Chain as_chain(const FiniteLattice& L) {
  int n = L.n();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!L.le(a, b) && !L.le(b, a))
        fail(ErrorKind::PreconditionViolated,
             "not a chain: '" + L.name(a) + "' and '" + L.name(b) + "' are incomparable");
  Chain C;
  C.lattice = L;
  C.elementsInOrder.resize(n);
  for (int i = 0; i < n; ++i) C.elementsInOrder[i] = i;
  std::sort(C.elementsInOrder.begin(), C.elementsInOrder.end(),
            [&](int a, int b) { return L.lt(a, b); });
  return C;
}

// Stacks C2 on C1, identifying top of C1 with bottom of C2 (the shared element
// keeps its C1 name); colliding C2 names are primed until fresh.
inline Chain glued_sum(const Chain& C1, const Chain& C2) {
  std::vector<std::string> names;
  for (int i : C1.elementsInOrder) names.push_back(C1.lattice.name(i));
  for (size_t k = 1; k < C2.elementsInOrder.size(); ++k) {
    std::string cand = C2.lattice.name(C2.elementsInOrder[k]);
    while (std::find(names.begin(), names.end(), cand) != names.end()) cand += "'";
    names.push_back(cand);
  }
  return chain_from_names(names);
}

// All maximal chains from zero to one, in DFS order over upper covers.
inline std::vector<Chain> maximal_chains(const FiniteLattice& L) {
  std::vector<Chain> out;
  std::vector<std::string> path;
  std::vector<std::pair<int, size_t>> stack; // (element, next cover slot)
  path.push_back(L.name(L.zero));
  stack.emplace_back(L.zero, 0);
  while (!stack.empty()) {
    auto& [x, slot] = stack.back();
    if (L.upperCovers[x].empty()) {
      out.push_back(chain_from_names(path));
      stack.pop_back();
      path.pop_back();
      continue;
    }
    if (slot >= L.upperCovers[x].size()) {
      stack.pop_back();
      path.pop_back();
      continue;
    }
    int next = L.upperCovers[x][slot++];
    path.push_back(L.name(next));
    stack.emplace_back(next, 0);
  }
  return out;
}

// Order-preserving bijection search with invariant pruning. An order isomorphism
// of lattices preserves joins and meets, so leq agreement suffices.
inline std::optional<std::vector<int>> find_isomorphism(const FiniteLattice& L1,
                                                        const FiniteLattice& L2) {
  int n = L1.n();
  if (n != L2.n()) return std::nullopt;
  if (L1.poset.covers.size() != L2.poset.covers.size()) return std::nullopt;
  auto depths = [](const FiniteLattice& L) {
    std::vector<int> d(L.n(), 0);
    std::vector<int> order(L.n());
    for (int i = 0; i < L.n(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return L.height[a] > L.height[b]; });
    for (int v : order)
      for (int u : L.upperCovers[v]) d[v] = std::max(d[v], d[u] + 1);
    return d;
  };
  std::vector<int> d1 = depths(L1), d2 = depths(L2);
  auto sig = [&](const FiniteLattice& L, const std::vector<int>& d, int x) {
    return std::array<int, 4>{L.height[x], d[x], static_cast<int>(L.lowerCovers[x].size()),
                              static_cast<int>(L.upperCovers[x].size())};
  };
  std::vector<std::vector<int>> cand(n);
  for (int x = 0; x < n; ++x) {
    auto sx = sig(L1, d1, x);
    for (int y = 0; y < n; ++y)
      if (sx == sig(L2, d2, y)) cand[x].push_back(y);
    if (cand[x].empty()) return std::nullopt;
  }
  std::vector<int> vars(n);
  for (int i = 0; i < n; ++i) vars[i] = i;
  std::sort(vars.begin(), vars.end(),
            [&](int a, int b) { return cand[a].size() < cand[b].size(); });
  std::vector<int> map(n, -1);
  std::vector<uint8_t> used(n, 0);
  std::vector<size_t> slot(n, 0);
  int pos = 0;
  while (pos >= 0) {
    if (pos == n) {
      return map;
    }
    int x = vars[pos];
    bool advanced = false;
    while (slot[pos] < cand[x].size()) {
      int y = cand[x][slot[pos]++];
      if (used[y]) continue;
      bool ok = true;
      for (int k = 0; k < pos && ok; ++k) {
        int a = vars[k];
        if (L1.le(x, a) != L2.le(y, map[a]) || L1.le(a, x) != L2.le(map[a], y)) ok = false;
      }
      if (ok) {
        map[x] = y;
        used[y] = 1;
        ++pos;
        if (pos < n) slot[pos] = 0;
        advanced = true;
        break;
      }
    }
    if (!advanced && pos < n) {
      --pos;
      if (pos >= 0) {
        used[map[vars[pos]]] = 0;
        map[vars[pos]] = -1;
      }
    } else if (pos == n) {
      return map;
    }
  }
  return std::nullopt;
}

inline FinitePoset induced_poset(const FiniteLattice& L, const std::vector<int>& elems) {
  FinitePoset P;
  for (int x : elems) P.names.push_back(L.name(x));
  int m = static_cast<int>(elems.size());
  P.leq.assign(m, std::vector<uint8_t>(m, 0));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) P.leq[a][b] = L.le(elems[a], elems[b]) ? 1 : 0;
  P.covers = detail::covers_from_leq(P.leq);
  return P;
}

inline bool is_subuniverse(const FiniteLattice& L, const std::vector<int>& elems) {
  std::vector<uint8_t> in(L.n(), 0);
  for (int x : elems) in[x] = 1;
  for (int a : elems)
    for (int b : elems)
      if (!in[L.join(a, b)] || !in[L.meet(a, b)]) return false;
  return true;
}

} // namespace latrep
