#pragma once

// Small named lattices shared across the test suites.

#include <latrep/lattice.hpp>

#include <string>
#include <vector>

namespace fixtures {

inline latrep::FiniteLattice chain_n(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(names[i], names[i + 1]);
  return latrep::lattice_from_covers(names, covers);
}

inline latrep::FiniteLattice pentagon() { // 0 < a < b < 1, 0 < c < 1
  return latrep::lattice_from_covers(
      {"0", "a", "b", "c", "1"},
      {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}});
}

inline latrep::FiniteLattice diamond() { // three atoms, all coatoms
  return latrep::lattice_from_covers(
      {"0", "x", "y", "z", "1"},
      {{"0", "x"}, {"0", "y"}, {"0", "z"}, {"x", "1"}, {"y", "1"}, {"z", "1"}});
}

inline latrep::FiniteLattice boolean2() {
  return latrep::lattice_from_covers(
      {"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}});
}

// Down-set lattice of a two-element chain a < b plus an incomparable point d:
// six elements {}, {a}, {d}, {a,b}, {a,d}, {a,b,d}, unit join-reducible.
inline latrep::Birkhoff chain2_plus_point_downsets() {
  auto P = latrep::poset_from_covers({"a", "b", "d"}, {{"a", "b"}});
  return latrep::birkhoff_lattice(P);
}

// Down-set lattice of {p, q, r, top} with q < r < top and p < top only:
// seven elements, unit join-irreducible, {p} v {q} = {p,q} below nothing new.
inline latrep::Birkhoff near_chain_downsets() {
  auto P = latrep::poset_from_covers({"p", "q", "r", "t"}, {{"q", "r"}, {"r", "t"}, {"p", "t"}});
  return latrep::birkhoff_lattice(P);
}

inline latrep::FiniteLattice boolean3() {
  std::vector<std::string> names = {"0", "a1", "a2", "a3", "b12", "b13", "b23", "1"};
  std::vector<std::pair<std::string, std::string>> covers = {
      {"0", "a1"},  {"0", "a2"},  {"0", "a3"},  {"a1", "b12"}, {"a1", "b13"},
      {"a2", "b12"}, {"a2", "b23"}, {"a3", "b13"}, {"a3", "b23"}, {"b12", "1"},
      {"b13", "1"}, {"b23", "1"}};
  return latrep::lattice_from_covers(names, covers);
}

} // namespace fixtures
