#include <catch2/catch_amalgamated.hpp>

#include <latrep/pipeline.hpp>

#include "fixtures.hpp"

using namespace latrep;

namespace {

std::vector<int> all_elements(const FiniteLattice& D) {
  std::vector<int> Q(D.n());
  std::iota(Q.begin(), Q.end(), 0);
  return Q;
}

std::vector<int> bounds_plus_ji(const FiniteLattice& D) {
  std::vector<int> Q = join_irreducibles(D);
  Q.push_back(D.zero);
  Q.push_back(D.one);
  std::sort(Q.begin(), Q.end());
  Q.erase(std::unique(Q.begin(), Q.end()), Q.end());
  return Q;
}

int color_position(const FinitePoset& P, const std::string& name) {
  for (int k = 0; k < P.n(); ++k)
    if (P.names[k] == name) return k;
  FAIL("color " << name << " not in poset");
  return -1;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind;
  }
  FAIL("expected a latrep error");
  return ErrorKind::PreconditionViolated;
}

} // namespace

TEST_CASE("three-chain runs the full pipeline") {
  FiniteLattice D = fixtures::chain_n(3);
  PipelineReport R = verify_theorem15(D, all_elements(D));
  CHECK(R.pass());
  REQUIRE(R.stages.size() == 4);
  for (const auto& s : R.stages) CHECK(s.status == StageStatus::Pass);
  REQUIRE(R.decision.has_value());
  CHECK(R.decision->status == RepStatus::Witness);
  REQUIRE(R.assembly.has_value());
  CHECK(R.stages[0].detail.find("witness") != std::string::npos);
}

TEST_CASE("two-element lattice degenerates cleanly") {
  FiniteLattice D = fixtures::chain_n(2);
  PipelineReport R = verify_theorem15(D, all_elements(D));
  CHECK(R.pass());
  REQUIRE(R.assembly.has_value());
  CHECK(R.assembly->degenerate);
  CHECK(R.assembly->L.n() == 2);
}

TEST_CASE("flagship instance passes end to end") {
  FiniteLattice D = fixtures::near_chain_downsets().lattice;
  std::vector<int> Q;
  for (int x = 0; x < D.n(); ++x)
    if (D.name(x) != "{p,q}") Q.push_back(x);
  PipelineReport R = verify_theorem15(D, Q);
  CHECK(R.pass());
  REQUIRE(R.assembly.has_value());
  CHECK(R.assembly->L.n() == 75);
  CHECK(R.input.find("Q = {") != std::string::npos);
  for (const auto& s : R.stages) CHECK(s.millis >= 0.0);
}

TEST_CASE("joining two pair congruences matches the chain interval") {
  // the colored chain of the worked example: colors q, 1, p, r on the four
  // prime intervals, so p v r is realized by [c3, c5] and p v q by nothing
  FiniteLattice D = fixtures::near_chain_downsets().lattice;
  FinitePoset P = induced_poset(D, join_irreducibles(D));
  int p = color_position(P, "{p}"), q = color_position(P, "{q}");
  int r = color_position(P, "{q,r}"), top = color_position(P, "{p,q,r,t}");
  ColoredChain C = colored_chain(chain_from_names({"x1", "x2", "x3", "x4", "x5"}), P,
                                 {q, top, p, r});
  std::vector<int> reps = rep_set(C, D);
  std::vector<int> expectQ;
  for (int x = 0; x < D.n(); ++x)
    if (D.name(x) != "{p,q}") expectQ.push_back(x);
  REQUIRE(reps == expectQ);

  Assembly A = assemble(C, D);
  const FiniteLattice& L = A.L;
  auto pairCon = [&](int color) {
    return principal_congruence(L, L.index(gadget::pair_a(color)),
                                L.index(gadget::pair_b(color)));
  };
  Congruence pr = congruence_join(pairCon(p), pairCon(r));
  CHECK(pr == principal_congruence(L, L.index("c3"), L.index("c5")));

  ConLattice CL = con_lattice(L);
  CHECK(CL.principal[CL.element_of(pr)]);
  Congruence pq = congruence_join(pairCon(p), pairCon(q));
  CHECK_FALSE(CL.principal[CL.element_of(pq)]);
}

TEST_CASE("necessity pipeline passes on the named lattices") {
  CHECK(verify_theorem13(fixtures::pentagon()).pass());
  CHECK(verify_theorem13(fixtures::diamond()).pass());
  CHECK(verify_theorem13(fixtures::boolean2()).pass());
  CHECK(verify_theorem13(fixtures::boolean3()).pass());
}

TEST_CASE("necessity pipeline passes on an assembled lattice") {
  FiniteLattice D = fixtures::near_chain_downsets().lattice;
  PipelineReport R = verify_theorem15(D, all_elements(D));
  REQUIRE(R.pass());
  PipelineReport back = verify_theorem13(R.assembly->L);
  CHECK(back.pass());
}

TEST_CASE("topped poset catalog covers the small shapes once each") {
  std::vector<FinitePoset> posets = topped_posets(4);
  REQUIRE(posets.size() == 9);
  for (const FinitePoset& P : posets) {
    int tops = 0;
    for (int t = 0; t < P.n(); ++t) {
      bool isTop = true;
      for (int x = 0; x < P.n(); ++x)
        if (!P.leq[x][t]) isTop = false;
      if (isTop) ++tops;
    }
    CHECK(tops == 1);
  }

  std::vector<int> sizes;
  for (const Birkhoff& B : ji_unit_catalog(4)) {
    CHECK(unit_join_irreducible(B.lattice));
    CHECK(is_distributive(B.lattice));
    sizes.push_back(B.lattice.n());
  }
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<int>({2, 3, 4, 5, 5, 6, 6, 7, 9}));
}

TEST_CASE("regression list reproduces the known results") {
  std::vector<PipelineReport> reports = regression_known_results();
  REQUIRE(reports.size() == 20);
  for (const PipelineReport& R : reports) {
    INFO(R.input);
    CHECK(R.as_expected());
  }

  const PipelineReport& b3 = reports[18];
  CHECK(b3.input.find("boolean3.atoms") == 0);
  CHECK(b3.outcome == PipelineOutcome::Unsat);
  CHECK(b3.decision->certificate.find("join") != std::string::npos);

  const PipelineReport& fig1 = reports[19];
  CHECK(fig1.input.find("chain2-plus-point.minus-join") == 0);
  CHECK(fig1.outcome == PipelineOutcome::Pass);
  CHECK_FALSE(fig1.assembly.has_value());
  REQUIRE_FALSE(fig1.notes.empty());
  CHECK(fig1.notes[0].find("construction skipped") != std::string::npos);

  CHECK(reports[0].stages.size() == 4); // catalog.0.full runs every stage
}

TEST_CASE("random sample is deterministic and sized") {
  std::vector<FiniteLattice> a = random_lattice_sample(60, 8, 20250817);
  std::vector<FiniteLattice> b = random_lattice_sample(60, 8, 20250817);
  REQUIRE(a.size() == 60);
  REQUIRE(b.size() == 60);
  bool sawNonDistributive = false, sawDistributive = false;
  for (size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].n() <= 8);
    CHECK(a[k].n() >= 1);
    CHECK(a[k].poset.names == b[k].poset.names);
    CHECK(a[k].poset.covers == b[k].poset.covers);
    (is_distributive(a[k]) ? sawDistributive : sawNonDistributive) = true;
  }
  CHECK(sawDistributive);
  CHECK(sawNonDistributive);
}

TEST_CASE("pipeline rejects inputs outside the hypotheses") {
  CHECK(kind_of([] {
          FiniteLattice D = fixtures::pentagon();
          verify_theorem15(D, {0, 1, 2, 3, 4});
        }) == ErrorKind::NotDistributive);
  CHECK(kind_of([] {
          FiniteLattice D = fixtures::boolean2();
          verify_theorem15(D, {0, 1, 2, 3});
        }) == ErrorKind::PreconditionViolated);
  CHECK(kind_of([] {
          FiniteLattice D = fixtures::chain_n(3);
          verify_theorem15(D, {0, 2}); // misses the join-irreducible middle
        }) == ErrorKind::PreconditionViolated);
  CHECK(kind_of([] {
          FiniteLattice D = fixtures::chain_n(3);
          verify_theorem15(D, {0, 1, 9});
        }) == ErrorKind::UnknownElement);
  CHECK(kind_of([] { verify_theorem13(fixtures::chain_n(1)); }) ==
        ErrorKind::PreconditionViolated);
}

TEST_CASE("catalog pipelines pass for both canonical Q choices") {
  // the full regression run exercises all of these; spot-check the largest
  // catalog entry directly so a failure points at the instance
  std::vector<Birkhoff> catalog = ji_unit_catalog(4);
  const Birkhoff* big = nullptr;
  for (const Birkhoff& B : catalog)
    if (!big || B.lattice.n() > big->lattice.n()) big = &B;
  const FiniteLattice& biggest = big->lattice;
  REQUIRE(biggest.n() == 9);
  CHECK(verify_theorem15(biggest, all_elements(biggest)).pass());
  CHECK(verify_theorem15(biggest, bounds_plus_ji(biggest)).pass());
}
