#pragma once

#include <latrep/construction.hpp>

#include <chrono>
#include <functional>
#include <future>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace latrep {

enum class StageStatus { Pass, Fail };

inline const char* stage_status_name(StageStatus s) {
  return s == StageStatus::Pass ? "PASS" : "FAIL";
}

struct PipelineStage {
  std::string name;
  StageStatus status = StageStatus::Fail;
  std::string detail;
  double millis = 0.0;
};

enum class PipelineOutcome { Pass, Unsat, Bound, Fail };

inline const char* pipeline_outcome_name(PipelineOutcome o) {
  switch (o) {
    case PipelineOutcome::Pass: return "PASS";
    case PipelineOutcome::Unsat: return "CertifiedUnsat";
    case PipelineOutcome::Bound: return "BoundExhausted";
    case PipelineOutcome::Fail: return "FAIL";
  }
  return "FAIL";
}

// One end-to-end run: which stages executed, what each saw, and the artifacts
// (decision with witness or certificate, assembled lattice) needed to replay
// the verdict offline. outcome is Pass only when every recorded stage passed.
struct PipelineReport {
  std::string input;
  PipelineOutcome outcome = PipelineOutcome::Fail;
  std::vector<PipelineStage> stages;
  std::optional<RepresentabilityVerdict> decision;
  std::optional<Assembly> assembly;
  std::vector<std::string> notes;
  std::optional<PipelineOutcome> expected; // regression entries record the known result

  bool pass() const { return outcome == PipelineOutcome::Pass; }
  bool as_expected() const { return !expected || *expected == outcome; }
};

namespace detail {

template <typename F>
PipelineStage timed_stage(const std::string& name, F&& body) {
  PipelineStage s;
  s.name = name;
  auto t0 = std::chrono::steady_clock::now();
  auto [ok, text] = body();
  auto t1 = std::chrono::steady_clock::now();
  s.status = ok ? StageStatus::Pass : StageStatus::Fail;
  s.detail = std::move(text);
  s.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return s;
}

inline std::string element_set_names(const FiniteLattice& D, const std::vector<int>& xs) {
  std::string s = "{";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += D.name(xs[i]);
  }
  return s + "}";
}

inline std::string color_word(const ColoredChain& C) {
  std::string s = "[";
  for (size_t i = 0; i < C.primeColors.size(); ++i) {
    if (i) s += ", ";
    s += C.colorPoset.names[C.primeColors[i]];
  }
  return s + "]";
}

} // namespace detail

inline bool unit_join_irreducible(const FiniteLattice& D) {
  return D.n() >= 2 && D.lowerCovers[D.one].size() == 1;
}

// Full run of the construction direction: decide chain representability, and
// on a witness assemble L, check that d -> join of con(a_r,b_r) over
// join-irreducible r <= d is an order isomorphism from D onto Con L, and that
// its preimage of the principal congruences is exactly Q.
inline PipelineReport verify_theorem15(const FiniteLattice& D, std::vector<int> Q,
                                       int maxLen = 0) {
  for (int q : Q)
    if (q < 0 || q >= D.n()) fail(ErrorKind::UnknownElement, "Q contains an unknown element");
  std::sort(Q.begin(), Q.end());
  Q.erase(std::unique(Q.begin(), Q.end()), Q.end());
  if (!is_distributive(D))
    fail(ErrorKind::NotDistributive, "verify_theorem15: D must be distributive");
  if (!unit_join_irreducible(D))
    fail(ErrorKind::PreconditionViolated,
         "verify_theorem15: the unit of D must be join-irreducible");
  std::vector<int> jis = join_irreducibles(D);
  {
    std::vector<uint8_t> inQ(D.n(), 0);
    for (int q : Q) inQ[q] = 1;
    std::vector<std::string> missing;
    if (!inQ[D.zero]) missing.push_back(D.name(D.zero));
    if (!inQ[D.one]) missing.push_back(D.name(D.one));
    for (int j : jis)
      if (!inQ[j]) missing.push_back(D.name(j));
    if (!missing.empty()) {
      std::string what;
      for (const auto& m : missing) what += (what.empty() ? "" : ", ") + m;
      fail(ErrorKind::PreconditionViolated,
           "verify_theorem15: Q must contain 0, 1, and every join-irreducible of D; "
           "missing " + what);
    }
  }

  PipelineReport R;
  R.input = "D: " + std::to_string(D.n()) + " elements, unit " + D.name(D.one) +
            "; Q = " + detail::element_set_names(D, Q);

  R.stages.push_back(detail::timed_stage("chain decision", [&]() {
    R.decision = decide_chain_representable(D, Q, maxLen);
    const RepresentabilityVerdict& v = *R.decision;
    if (v.status == RepStatus::Witness) {
      bool replay = rep_set(*v.witness, D) == Q;
      std::string d = "witness of length " + std::to_string(v.witness->length()) +
                      " with colors " + detail::color_word(*v.witness) +
                      (replay ? "; rep set replayed" : "; rep set replay FAILED");
      return std::make_pair(replay, d);
    }
    return std::make_pair(true, std::string(rep_status_name(v.status)) + ": " + v.certificate);
  }));
  if (R.stages.back().status == StageStatus::Fail) return R;
  if (R.decision->status == RepStatus::CertifiedUnsat) {
    R.outcome = PipelineOutcome::Unsat;
    return R;
  }
  if (R.decision->status == RepStatus::BoundExhausted) {
    R.outcome = PipelineOutcome::Bound;
    return R;
  }

  R.stages.push_back(detail::timed_stage("assembly", [&]() {
    R.assembly = assemble(*R.decision->witness, D);
    const Assembly& A = *R.assembly;
    int ws = 0, flags = 0;
    for (const auto& c : A.components) {
      if (c.kind == ComponentKind::W) ++ws;
      if (c.kind == ComponentKind::Flag) ++flags;
    }
    std::string d = "|L| = " + std::to_string(A.L.n()) + ", " +
                    std::to_string(A.components.size()) + " components (" +
                    std::to_string(ws) + " W, " + std::to_string(flags) + " flags)";
    return std::make_pair(true, d);
  }));

  const FiniteLattice& L = R.assembly->L;
  ConLattice CL = con_lattice(L);
  std::vector<Congruence> phi(D.n(), identity_congruence(L));
  {
    std::vector<Congruence> conPair;
    for (size_t k = 0; k < jis.size(); ++k) {
      if (R.assembly->degenerate)
        conPair.push_back(principal_congruence(L, L.zero, L.one));
      else
        conPair.push_back(principal_congruence(L, L.index(gadget::pair_a(static_cast<int>(k))),
                                               L.index(gadget::pair_b(static_cast<int>(k)))));
    }
    for (int d = 0; d < D.n(); ++d)
      for (size_t k = 0; k < jis.size(); ++k)
        if (D.le(jis[k], d)) phi[d] = congruence_join(phi[d], conPair[k]);
  }

  R.stages.push_back(detail::timed_stage("congruence lattice isomorphism", [&]() {
    if (CL.lattice.n() != D.n())
      return std::make_pair(false, "|Con L| = " + std::to_string(CL.lattice.n()) +
                                       " but |D| = " + std::to_string(D.n()));
    std::map<Congruence, int> at;
    for (int i = 0; i < CL.lattice.n(); ++i) at[CL.congruenceOf[i]] = i;
    for (int d = 0; d < D.n(); ++d)
      if (!at.count(phi[d]))
        return std::make_pair(false, "phi(" + D.name(d) + ") is not a congruence of L");
    for (int d = 0; d < D.n(); ++d)
      for (int e = 0; e < D.n(); ++e)
        if (D.le(d, e) != phi[d].refines(phi[e]))
          return std::make_pair(false, "phi does not match the order on (" + D.name(d) +
                                           ", " + D.name(e) + ")");
    // order-embedding of equal finite size is a bijection; spell the check out
    std::set<Congruence> image(phi.begin(), phi.end());
    if (static_cast<int>(image.size()) != D.n())
      return std::make_pair(false, std::string("phi is not injective"));
    return std::make_pair(true, "phi is an order isomorphism onto Con L (" +
                                    std::to_string(D.n()) + " congruences)");
  }));
  if (R.stages.back().status == StageStatus::Fail) return R;

  R.stages.push_back(detail::timed_stage("principal congruence image", [&]() {
    std::map<Congruence, int> at;
    for (int i = 0; i < CL.lattice.n(); ++i) at[CL.congruenceOf[i]] = i;
    std::vector<int> princ;
    for (int d = 0; d < D.n(); ++d)
      if (CL.principal[at.at(phi[d])]) princ.push_back(d);
    if (princ == Q)
      return std::make_pair(true, "principal congruences of L correspond to " +
                                      detail::element_set_names(D, princ));
    return std::make_pair(false, "principal image is " + detail::element_set_names(D, princ) +
                                     ", expected " + detail::element_set_names(D, Q));
  }));
  if (R.stages.back().status == StageStatus::Fail) return R;

  R.outcome = PipelineOutcome::Pass;
  return R;
}

// Necessity direction: the principal congruences of any finite lattice are
// recovered as the rep set of a colored chain extracted from it.
inline PipelineReport verify_theorem13(const FiniteLattice& L) {
  if (L.n() < 2)
    fail(ErrorKind::PreconditionViolated, "verify_theorem13 needs at least two elements");
  PipelineReport R;
  R.input = "L: " + std::to_string(L.n()) + " elements";
  std::optional<ExtractedChain> E;

  R.stages.push_back(detail::timed_stage("extract colored chain", [&]() {
    E = extract_colored_chain(L);
    std::string d = "glued chain of length " + std::to_string(E->colored.length()) + " over " +
                    std::to_string(E->colored.colorPoset.n()) + " colors";
    return std::make_pair(true, d);
  }));

  R.stages.push_back(detail::timed_stage("rep set equals principal image", [&]() {
    std::vector<int> Q;
    for (int i = 0; i < E->con.lattice.n(); ++i)
      if (E->con.principal[i]) Q.push_back(i);
    std::vector<int> reps = rep_set(E->colored, E->con.lattice);
    if (reps == Q)
      return std::make_pair(true, "rep set matches the " + std::to_string(Q.size()) +
                                      " principal congruences");
    return std::make_pair(false,
                          "rep set " + detail::element_set_names(E->con.lattice, reps) +
                              " differs from " + detail::element_set_names(E->con.lattice, Q));
  }));

  if (R.stages[0].status == StageStatus::Pass && R.stages[1].status == StageStatus::Pass)
    R.outcome = PipelineOutcome::Pass;
  return R;
}

// All partial orders with a greatest element on at most maxN points, one
// representative per isomorphism class, in a deterministic order.
inline std::vector<FinitePoset> topped_posets(int maxN) {
  if (maxN < 1 || maxN > 5)
    fail(ErrorKind::PreconditionViolated, "topped_posets enumerates 1 to 5 points");
  std::vector<FinitePoset> out;
  for (int n = 1; n <= maxN; ++n) {
    int pairs = n * (n - 1);
    auto bit = [&](int i, int j) { return i * (n - 1) + (j > i ? j - 1 : j); };
    std::set<std::vector<uint8_t>> seen;
    std::vector<int> perm(n);
    for (uint32_t mask = 0; mask < (uint32_t(1) << pairs); ++mask) {
      std::vector<std::vector<uint8_t>> lt(n, std::vector<uint8_t>(n, 0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) lt[i][j] = (mask >> bit(i, j)) & 1;
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        for (int j = 0; j < n && ok; ++j) {
          if (lt[i][j] && lt[j][i]) ok = false;
          if (!lt[i][j]) continue;
          for (int k = 0; k < n; ++k)
            if (lt[j][k] && !lt[i][k]) { ok = false; break; }
        }
      if (!ok) continue;
      bool topped = false;
      for (int t = 0; t < n && !topped; ++t) {
        topped = true;
        for (int i = 0; i < n; ++i)
          if (i != t && !lt[i][t]) { topped = false; break; }
      }
      if (!topped) continue;
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<uint8_t> canon;
      do {
        std::vector<uint8_t> flat;
        flat.reserve(n * n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) flat.push_back(lt[perm[i]][perm[j]]);
        if (canon.empty() || flat < canon) canon = std::move(flat);
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (!seen.insert(canon).second) continue;

      std::vector<std::string> names;
      for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
      std::vector<std::pair<std::string, std::string>> covers;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (!(canon[i * n + j])) continue;
          bool between = false;
          for (int k = 0; k < n && !between; ++k)
            if (canon[i * n + k] && canon[k * n + j]) between = true;
          if (!between) covers.push_back({names[i], names[j]});
        }
      out.push_back(poset_from_covers(names, covers));
    }
  }
  return out;
}

// Down-set lattices over the topped posets: every small distributive lattice
// with join-irreducible unit, up to isomorphism, by Birkhoff duality.
inline std::vector<Birkhoff> ji_unit_catalog(int maxBase = 4) {
  std::vector<Birkhoff> out;
  for (const FinitePoset& P : topped_posets(maxBase)) out.push_back(birkhoff_lattice(P));
  return out;
}

namespace detail {

// Partitions of {0..m-1} ordered by refinement; a standard non-distributive
// source for sampling sublattices.
inline FiniteLattice partition_lattice(int m) {
  std::vector<std::vector<int>> parts;
  std::vector<int> rgs(m, 0);
  while (true) {
    parts.push_back(rgs);
    int i = m - 1;
    for (; i > 0; --i) {
      int cap = *std::max_element(rgs.begin(), rgs.begin() + i) + 1;
      if (rgs[i] < cap) { ++rgs[i]; break; }
      rgs[i] = 0;
    }
    if (i == 0) break;
  }
  auto refines = [&](const std::vector<int>& a, const std::vector<int>& b) {
    for (int x = 0; x < m; ++x)
      for (int y = x + 1; y < m; ++y)
        if (a[x] == a[y] && b[x] != b[y]) return false;
    return true;
  };
  std::vector<std::string> names;
  for (const auto& p : parts) {
    std::string s;
    for (int v : p) s += static_cast<char>('0' + v);
    names.push_back(s);
  }
  int n = static_cast<int>(parts.size());
  std::vector<std::vector<uint8_t>> leq(n, std::vector<uint8_t>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) leq[a][b] = refines(parts[a], parts[b]);
  return lattice_from_leq(names, leq);
}

} // namespace detail

// Seeded sample of small lattices: random subsets of the partition lattice on
// four points and of the boolean lattice on four atoms, closed under meet and
// join, kept when the closure stays within maxSize elements.
inline std::vector<FiniteLattice> random_lattice_sample(int count, int maxSize, uint32_t seed) {
  std::vector<FiniteLattice> sources = {
      detail::partition_lattice(4),
      birkhoff_lattice(poset_from_covers({"a", "b", "c", "d"}, {})).lattice};
  std::mt19937 rng(seed);
  std::vector<FiniteLattice> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count && attempts < count * 100) {
    const FiniteLattice& S = sources[attempts++ % sources.size()];
    std::uniform_int_distribution<int> pickCount(2, 5), pickElem(0, S.n() - 1);
    std::set<int> elems = {S.zero, S.one};
    for (int k = pickCount(rng); k > 0; --k) elems.insert(pickElem(rng));
    bool grew = true;
    while (grew && static_cast<int>(elems.size()) <= maxSize) {
      grew = false;
      std::vector<int> now(elems.begin(), elems.end());
      for (size_t i = 0; i < now.size() && !grew; ++i)
        for (size_t j = i + 1; j < now.size() && !grew; ++j) {
          if (elems.insert(S.join(now[i], now[j])).second) grew = true;
          if (elems.insert(S.meet(now[i], now[j])).second) grew = true;
        }
    }
    if (static_cast<int>(elems.size()) > maxSize) continue;
    std::vector<int> universe(elems.begin(), elems.end());
    FinitePoset sub = induced_poset(S, universe);
    std::vector<std::pair<std::string, std::string>> covers;
    for (auto& [lo, hi] : sub.covers) covers.push_back({sub.names[lo], sub.names[hi]});
    out.push_back(lattice_from_covers(sub.names, covers));
  }
  return out;
}

// Known results at desk scale: Q = D and Q = bounds-plus-join-irreducibles
// succeed across the catalog; the boolean lattice on three atoms rejects
// Q = {0, atoms, 1}; a join-reducible-unit D still gets its witness chain.
inline std::vector<PipelineReport> regression_known_results(int maxLen = 0) {
  std::vector<std::function<PipelineReport()>> jobs;
  std::vector<Birkhoff> catalog = ji_unit_catalog(4);

  auto fullQ = [](const FiniteLattice& D) {
    std::vector<int> Q(D.n());
    std::iota(Q.begin(), Q.end(), 0);
    return Q;
  };
  auto boundsPlusJi = [](const FiniteLattice& D) {
    std::vector<int> Q = join_irreducibles(D);
    Q.push_back(D.zero);
    Q.push_back(D.one);
    std::sort(Q.begin(), Q.end());
    Q.erase(std::unique(Q.begin(), Q.end()), Q.end());
    return Q;
  };
  for (size_t k = 0; k < catalog.size(); ++k) {
    const FiniteLattice& D = catalog[k].lattice;
    jobs.push_back([&D, k, maxLen, fullQ]() {
      PipelineReport R = verify_theorem15(D, fullQ(D), maxLen);
      R.input = "catalog." + std::to_string(k) + ".full: " + R.input;
      R.expected = PipelineOutcome::Pass;
      return R;
    });
    jobs.push_back([&D, k, maxLen, boundsPlusJi]() {
      PipelineReport R = verify_theorem15(D, boundsPlusJi(D), maxLen);
      R.input = "catalog." + std::to_string(k) + ".bounds+ji: " + R.input;
      R.expected = PipelineOutcome::Pass;
      return R;
    });
  }

  jobs.push_back([maxLen]() {
    FiniteLattice B3 =
        birkhoff_lattice(poset_from_covers({"a1", "a2", "a3"}, {})).lattice;
    std::vector<int> Q = join_irreducibles(B3);
    Q.push_back(B3.zero);
    Q.push_back(B3.one);
    std::sort(Q.begin(), Q.end());
    PipelineReport R;
    R.input = "boolean3.atoms: |D| = 8, Q = " + detail::element_set_names(B3, Q);
    R.expected = PipelineOutcome::Unsat;
    R.notes.push_back("the unit of D is join-reducible, so only the chain decision applies");
    R.stages.push_back(detail::timed_stage("chain decision", [&]() {
      R.decision = decide_chain_representable(B3, Q, maxLen);
      return std::make_pair(true, std::string(rep_status_name(R.decision->status)) + ": " +
                                      R.decision->certificate);
    }));
    switch (R.decision->status) {
      case RepStatus::Witness: R.outcome = PipelineOutcome::Pass; break;
      case RepStatus::CertifiedUnsat: R.outcome = PipelineOutcome::Unsat; break;
      case RepStatus::BoundExhausted: R.outcome = PipelineOutcome::Bound; break;
    }
    return R;
  });

  jobs.push_back([maxLen]() {
    Birkhoff B = birkhoff_lattice(poset_from_covers({"a", "b", "d"}, {{"a", "b"}}));
    const FiniteLattice& D = B.lattice;
    int v = D.join(B.jmap[0], B.jmap[2]); // the one join left out of Q
    std::vector<int> Q;
    for (int x = 0; x < D.n(); ++x)
      if (x != v) Q.push_back(x);
    PipelineReport R;
    R.input = "chain2-plus-point.minus-join: |D| = " + std::to_string(D.n()) +
              ", Q = " + detail::element_set_names(D, Q);
    R.expected = PipelineOutcome::Pass;
    R.notes.push_back("construction skipped: the unit of D is join-reducible");
    R.stages.push_back(detail::timed_stage("chain decision", [&]() {
      R.decision = decide_chain_representable(D, Q, maxLen);
      if (R.decision->status != RepStatus::Witness)
        return std::make_pair(false, std::string(rep_status_name(R.decision->status)) + ": " +
                                         R.decision->certificate);
      bool replay = rep_set(*R.decision->witness, D) == Q;
      std::string d = "witness of length " + std::to_string(R.decision->witness->length()) +
                      " with colors " + detail::color_word(*R.decision->witness) +
                      (replay ? "; rep set replayed" : "; rep set replay FAILED");
      return std::make_pair(replay, d);
    }));
    if (R.stages.back().status == StageStatus::Pass) R.outcome = PipelineOutcome::Pass;
    return R;
  });

  std::vector<std::future<PipelineReport>> futures;
  for (auto& job : jobs) futures.push_back(std::async(std::launch::async, job));
  std::vector<PipelineReport> out;
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

} // namespace latrep
