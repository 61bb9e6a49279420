#include <catch2/catch_amalgamated.hpp>

#include <latrep/lattice.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <set>

using namespace latrep;

namespace {

std::vector<std::string> names_of(const FiniteLattice& L, const std::vector<int>& idx) {
  std::vector<std::string> out;
  for (int i : idx) out.push_back(L.name(i));
  return out;
}

void check_lattice_axioms(const FiniteLattice& L) {
  int n = L.n();
  for (int a = 0; a < n; ++a) {
    REQUIRE(L.join(a, a) == a);
    REQUIRE(L.meet(a, a) == a);
    REQUIRE(L.le(L.zero, a));
    REQUIRE(L.le(a, L.one));
    for (int b = 0; b < n; ++b) {
      REQUIRE(L.join(a, b) == L.join(b, a));
      REQUIRE(L.meet(a, b) == L.meet(b, a));
      REQUIRE(L.meet(a, L.join(a, b)) == a);
      REQUIRE(L.join(a, L.meet(a, b)) == a);
      REQUIRE(oracle::lub_brute(L.poset, a, b) == L.join(a, b));
      REQUIRE(oracle::glb_brute(L.poset, a, b) == L.meet(a, b));
      for (int c = 0; c < n; ++c) {
        REQUIRE(L.join(L.join(a, b), c) == L.join(a, L.join(b, c)));
        REQUIRE(L.meet(L.meet(a, b), c) == L.meet(a, L.meet(b, c)));
      }
    }
  }
}

} // namespace

TEST_CASE("two element chain from covers") {
  auto L = lattice_from_covers({"0", "1"}, {{"0", "1"}});
  REQUIRE(L.n() == 2);
  REQUIRE(L.join(L.index("0"), L.index("1")) == L.index("1"));
  REQUIRE(L.zero == L.index("0"));
  REQUIRE(L.one == L.index("1"));
  check_lattice_axioms(L);
}

TEST_CASE("pentagon is a valid lattice") {
  auto L = fixtures::pentagon();
  REQUIRE(L.n() == 5);
  check_lattice_axioms(L);
  REQUIRE(L.join(L.index("a"), L.index("c")) == L.index("1"));
  REQUIRE(L.meet(L.index("b"), L.index("c")) == L.index("0"));
}

TEST_CASE("missing top is rejected with the offending pair") {
  try {
    lattice_from_covers({"0", "a", "b"}, {{"0", "a"}, {"0", "b"}});
    FAIL("expected NotALattice");
  } catch (const Error& e) {
    REQUIRE(e.kind == ErrorKind::NotALattice);
    REQUIRE(std::string(e.what()).find("a") != std::string::npos);
    REQUIRE(std::string(e.what()).find("b") != std::string::npos);
  }
}

TEST_CASE("cover cycles are rejected") {
  REQUIRE_THROWS_AS(poset_from_covers({"a", "b"}, {{"a", "b"}, {"b", "a"}}), Error);
  try {
    poset_from_covers({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
    FAIL("expected CycleDetected");
  } catch (const Error& e) {
    REQUIRE(e.kind == ErrorKind::CycleDetected);
  }
}

TEST_CASE("empty universe is rejected") {
  try {
    lattice_from_covers({}, {});
    FAIL("expected EmptyUniverse");
  } catch (const Error& e) {
    REQUIRE(e.kind == ErrorKind::EmptyUniverse);
  }
}

TEST_CASE("redundant cover pairs are reduced away") {
  auto P = poset_from_covers({"0", "a", "1"}, {{"0", "a"}, {"a", "1"}, {"0", "1"}});
  REQUIRE(P.covers.size() == 2);
}

TEST_CASE("join irreducibles of the two element chain") {
  auto L = lattice_from_covers({"0", "1"}, {{"0", "1"}});
  REQUIRE(names_of(L, join_irreducibles(L)) == std::vector<std::string>{"1"});
}

TEST_CASE("join irreducibles of boolean3 are its atoms") {
  auto L = fixtures::boolean3();
  REQUIRE(names_of(L, join_irreducibles(L)) == std::vector<std::string>{"a1", "a2", "a3"});
}

TEST_CASE("join irreducibles of the pentagon") {
  auto L = fixtures::pentagon();
  REQUIRE(names_of(L, join_irreducibles(L)) == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("j_plus adds the bounds") {
  auto two = lattice_from_covers({"0", "1"}, {{"0", "1"}});
  REQUIRE(names_of(two, j_plus(two)) == std::vector<std::string>{"0", "1"});
  auto b3 = fixtures::boolean3();
  REQUIRE(names_of(b3, j_plus(b3)) ==
          std::vector<std::string>{"0", "a1", "a2", "a3", "1"});
  auto three = lattice_from_covers({"0", "m", "1"}, {{"0", "m"}, {"m", "1"}});
  REQUIRE(j_plus(three).size() == 3);
}

TEST_CASE("distributivity check") {
  REQUIRE(is_distributive(fixtures::boolean3()));
  REQUIRE_FALSE(is_distributive(fixtures::pentagon()));
  REQUIRE_FALSE(is_distributive(fixtures::diamond()));
  REQUIRE(is_distributive(fixtures::chain_n(6)));
}

TEST_CASE("down-set lattice of a single point is the two element chain") {
  auto P = poset_from_covers({"p"}, {});
  auto B = birkhoff_lattice(P);
  REQUIRE(B.lattice.n() == 2);
  REQUIRE(B.lattice.name(B.jmap[0]) == "{p}");
}

TEST_CASE("down-set lattice of a three element antichain is boolean3") {
  auto P = poset_from_covers({"x", "y", "z"}, {});
  auto B = birkhoff_lattice(P);
  REQUIRE(B.lattice.n() == 8);
  REQUIRE(is_distributive(B.lattice));
  REQUIRE(find_isomorphism(B.lattice, fixtures::boolean3()).has_value());
  REQUIRE(oracle::count_downsets_brute(P) == 8);
}

TEST_CASE("down-set lattice maps the base poset onto the join irreducibles") {
  auto P = poset_from_covers({"p", "q", "r", "t"}, {{"p", "t"}, {"q", "r"}, {"r", "t"}});
  auto B = birkhoff_lattice(P);
  REQUIRE(oracle::count_downsets_brute(P) == B.lattice.n());
  auto ji = join_irreducibles(B.lattice);
  REQUIRE(ji.size() == 4);
  std::set<int> jiSet(ji.begin(), ji.end());
  for (int p = 0; p < P.n(); ++p) {
    REQUIRE(jiSet.count(B.jmap[p]) == 1);
    for (int q = 0; q < P.n(); ++q)
      REQUIRE(P.le(p, q) == B.lattice.le(B.jmap[p], B.jmap[q]));
  }
  // unit above everything in the base makes the unit join-irreducible
  REQUIRE(jiSet.count(B.lattice.one) == 1);
}

TEST_CASE("dual is an involution") {
  for (const auto& L : {fixtures::pentagon(), fixtures::boolean3(), fixtures::chain_n(4)}) {
    auto DD = dual(dual(L));
    REQUIRE(DD.poset.names == L.poset.names);
    REQUIRE(DD.poset.leq == L.poset.leq);
    REQUIRE(DD.joinTable == L.joinTable);
    REQUIRE(DD.meetTable == L.meetTable);
  }
}

TEST_CASE("dual of a chain reverses it") {
  auto L = fixtures::chain_n(3);
  auto D = dual(L);
  REQUIRE(D.zero == L.one);
  REQUIRE(D.one == L.zero);
  REQUIRE(D.le(D.index("e2"), D.index("e0")));
}

TEST_CASE("dual of the pentagon is isomorphic to the pentagon") {
  auto L = fixtures::pentagon();
  REQUIRE(find_isomorphism(dual(L), L).has_value());
}

TEST_CASE("glued sum lengths add") {
  auto c2 = chain_from_names({"x", "y"});
  auto g = glued_sum(c2, c2);
  REQUIRE(g.length() == 2);
  REQUIRE(g.lattice.n() == 3);
  auto c3 = chain_from_names({"a", "b", "c"});
  auto g2 = glued_sum(c3, c2);
  REQUIRE(g2.length() == 3);
  // cover sequences of both arguments survive, with collisions primed
  REQUIRE(g2.lattice.name(g2.elementsInOrder[0]) == "a");
  REQUIRE(g2.lattice.name(g2.elementsInOrder[2]) == "c");
  REQUIRE(g2.lattice.name(g2.elementsInOrder[3]) == "y");
  auto g3 = glued_sum(c2, c2);
  REQUIRE(g3.lattice.name(g3.elementsInOrder[2]) == "y'");
}

TEST_CASE("maximal chains of a chain") {
  auto chains = maximal_chains(fixtures::chain_n(5));
  REQUIRE(chains.size() == 1);
  REQUIRE(chains[0].length() == 4);
}

TEST_CASE("maximal chains of boolean2") {
  auto chains = maximal_chains(fixtures::boolean2());
  REQUIRE(chains.size() == 2);
}

TEST_CASE("maximal chains of the pentagon") {
  auto chains = maximal_chains(fixtures::pentagon());
  REQUIRE(chains.size() == 2);
  std::set<int> lengths;
  for (const auto& c : chains) lengths.insert(c.length());
  REQUIRE(lengths == std::set<int>{2, 3});
}

TEST_CASE("every prime interval lies in some maximal chain") {
  for (const auto& L : {fixtures::pentagon(), fixtures::boolean3(), fixtures::diamond()}) {
    std::set<std::pair<std::string, std::string>> inChains;
    for (const auto& c : maximal_chains(L))
      for (size_t k = 0; k + 1 < c.elementsInOrder.size(); ++k)
        inChains.emplace(c.lattice.name(c.elementsInOrder[k]),
                         c.lattice.name(c.elementsInOrder[k + 1]));
    for (auto& [lo, hi] : L.poset.covers)
      REQUIRE(inChains.count({L.name(lo), L.name(hi)}) == 1);
  }
}

TEST_CASE("isomorphism finds identity and rejects mismatches") {
  auto L = fixtures::boolean3();
  auto iso = find_isomorphism(L, L);
  REQUIRE(iso.has_value());
  for (int a = 0; a < L.n(); ++a)
    for (int b = 0; b < L.n(); ++b) {
      REQUIRE((*iso)[L.join(a, b)] == L.join((*iso)[a], (*iso)[b]));
      REQUIRE((*iso)[L.meet(a, b)] == L.meet((*iso)[a], (*iso)[b]));
    }
  REQUIRE_FALSE(find_isomorphism(fixtures::boolean3(), fixtures::chain_n(8)).has_value());
  REQUIRE_FALSE(find_isomorphism(fixtures::pentagon(), fixtures::diamond()).has_value());
}

TEST_CASE("birkhoff round-trip on small distributive lattices") {
  std::vector<FiniteLattice> catalog = {fixtures::chain_n(2), fixtures::chain_n(5),
                                        fixtures::boolean2(), fixtures::boolean3()};
  for (const auto& D : catalog) {
    REQUIRE(is_distributive(D));
    auto P = induced_poset(D, join_irreducibles(D));
    auto B = birkhoff_lattice(P);
    REQUIRE(find_isomorphism(B.lattice, D).has_value());
  }
}

TEST_CASE("lattice_from_leq validates order axioms") {
  std::vector<std::vector<uint8_t>> bad = {{1, 1}, {1, 1}};
  REQUIRE_THROWS_AS(lattice_from_leq({"a", "b"}, bad), Error);
  std::vector<std::vector<uint8_t>> good = {{1, 1}, {0, 1}};
  auto L = lattice_from_leq({"a", "b"}, good);
  REQUIRE(L.n() == 2);
  REQUIRE(L.poset.covers.size() == 1);
}

TEST_CASE("as_chain accepts chains and rejects non-chains") {
  auto C = as_chain(fixtures::chain_n(4));
  REQUIRE(C.length() == 3);
  REQUIRE_THROWS_AS(as_chain(fixtures::boolean2()), Error);
}

TEST_CASE("induced poset and subuniverse checks") {
  auto L = fixtures::pentagon();
  std::vector<int> sub = {L.index("0"), L.index("a"), L.index("b"), L.index("1")};
  REQUIRE(is_subuniverse(L, sub));
  std::vector<int> notSub = {L.index("b"), L.index("c")};
  REQUIRE_FALSE(is_subuniverse(L, notSub));
  auto P = induced_poset(L, {L.index("a"), L.index("c")});
  REQUIRE_FALSE(P.le(0, 1));
  REQUIRE_FALSE(P.le(1, 0));
}
