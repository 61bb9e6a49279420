#include <latrep/io.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace latrep;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::PreconditionViolated, "cannot open '" + path + "'");
  return json::parse(in);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::PreconditionViolated, "cannot write '" + path + "'");
  out << text;
}

// Splits on commas outside braces, so names like {p,q} survive.
std::vector<std::string> split_outside_braces(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  out.push_back(cur);
  std::vector<std::string> trimmed;
  for (std::string& t : out) {
    size_t a = t.find_first_not_of(" \t");
    size_t b = t.find_last_not_of(" \t");
    if (a != std::string::npos) trimmed.push_back(t.substr(a, b - a + 1));
  }
  return trimmed;
}

std::vector<int> parse_elements(const FiniteLattice& D, const std::string& spec) {
  std::vector<int> out;
  if (spec == "all") {
    for (int x = 0; x < D.n(); ++x) out.push_back(x);
    return out;
  }
  for (const std::string& tok : split_outside_braces(spec)) {
    int at = -1;
    for (int x = 0; x < D.n(); ++x)
      if (D.name(x) == tok) at = x;
    if (at < 0 && !tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos) {
      int k = std::atoi(tok.c_str());
      if (k >= 0 && k < D.n()) at = k;
    }
    if (at < 0) fail(ErrorKind::UnknownElement, "'" + tok + "' is not an element of the lattice");
    out.push_back(at);
  }
  return out;
}

int resolve_max_len(int cli) {
  if (cli > 0) return cli;
  if (const char* env = std::getenv("LATREP_MAX_LEN")) return std::atoi(env);
  return 0;
}

int outcome_exit(PipelineOutcome o) {
  switch (o) {
    case PipelineOutcome::Pass: return 0;
    case PipelineOutcome::Bound: return 2;
    default: return 1;
  }
}

int status_exit(RepStatus s) {
  switch (s) {
    case RepStatus::Witness: return 0;
    case RepStatus::BoundExhausted: return 2;
    default: return 1;
  }
}

std::string fmt_ms(double m) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", m);
  return buf;
}

// Data goes to stdout, the summary to stderr in machine mode and to stdout
// otherwise.
void deliver(bool machine, const json& data, const std::string& summary) {
  if (machine) {
    std::cout << data.dump(2) << "\n";
    std::cerr << summary;
  } else {
    std::cout << summary;
  }
}

std::string element_list(const FiniteLattice& D, const std::vector<int>& xs) {
  std::string out;
  for (int x : xs) out += (out.empty() ? "" : ", ") + D.name(x);
  return out;
}

std::string word_of(const ColoredChain& C) {
  std::string out;
  for (int c : C.primeColors) out += (out.empty() ? "" : ", ") + C.colorPoset.names[c];
  return "[" + out + "]";
}

std::string human_report(const PipelineReport& R) {
  std::string out = "input: " + R.input + "\n";
  for (const PipelineStage& s : R.stages)
    out += "  [" + std::string(stage_status_name(s.status)) + "] " + s.name + " (" +
           fmt_ms(s.millis) + " ms): " + s.detail + "\n";
  for (const std::string& n : R.notes) out += "  note: " + n + "\n";
  out += "outcome: " + std::string(pipeline_outcome_name(R.outcome));
  if (R.expected)
    out += std::string(" (expected ") + pipeline_outcome_name(*R.expected) + ")";
  return out + "\n";
}

std::string human_verdict(const RepresentabilityVerdict& v) {
  std::string out = "status: " + std::string(rep_status_name(v.status)) + "\n";
  if (v.witness)
    out += "witness: length " + std::to_string(v.witness->length()) + ", colors " +
           word_of(*v.witness) + "\n";
  if (!v.certificate.empty()) out += "certificate: " + v.certificate + "\n";
  out += "search bound: " + std::to_string(v.bound) + "\n";
  return out;
}

json nontrivial_blocks(const FiniteLattice& L, const Congruence& t) {
  json out = json::array();
  for (const std::vector<int>& b : t.block_lists()) {
    if (b.size() < 2) continue;
    json names = json::array();
    for (int x : b) names.push_back(L.name(x));
    out.push_back(std::move(names));
  }
  return out;
}

std::string blocks_string(const FiniteLattice& L, const Congruence& t) {
  if (t.is_identity()) return "identity";
  if (t.is_all()) return "all";
  std::string out;
  for (const std::vector<int>& b : t.block_lists()) {
    if (b.size() < 2) continue;
    std::string blk;
    for (int x : b) blk += (blk.empty() ? "" : ",") + L.name(x);
    out += (out.empty() ? "" : " ") + ("{" + blk + "}");
  }
  return out;
}

int run_analyze(const std::string& path, bool dot, bool machine) {
  FiniteLattice L = lattice_from_json(read_json_file(path));
  ConLattice CL = con_lattice(L);
  const FiniteLattice& K = CL.lattice;
  std::vector<bool> jiPlus(K.n(), false);
  jiPlus[K.zero] = true;
  jiPlus[K.one] = true;
  for (int c : join_irreducibles(K)) jiPlus[c] = true;

  int princCount = 0;
  bool holds = true;
  for (int c = 0; c < K.n(); ++c) {
    if (CL.principal[c]) ++princCount;
    if (jiPlus[c] && !CL.principal[c]) holds = false;
  }

  json table = json::array();
  size_t width = 0;
  for (int c = 0; c < K.n(); ++c) width = std::max(width, K.name(c).size());
  std::string summary = "L: " + std::to_string(L.n()) + " elements, " +
                        std::to_string(L.poset.covers.size()) + " covers\n" +
                        "|Con L| = " + std::to_string(K.n()) +
                        ", |Princ L| = " + std::to_string(princCount) + "\n";
  for (int c = 0; c < K.n(); ++c) {
    const Congruence& t = CL.congruenceOf[c];
    table.push_back({{"name", K.name(c)},
                     {"principal", static_cast<bool>(CL.principal[c])},
                     {"jiPlus", static_cast<bool>(jiPlus[c])},
                     {"blocks", nontrivial_blocks(L, t)}});
    summary += "  " + K.name(c) + std::string(width - K.name(c).size() + 2, ' ') +
               (jiPlus[c] ? "ji+ " : "    ") + (CL.principal[c] ? "principal  " : "join only  ") +
               blocks_string(L, t) + "\n";
  }
  summary += std::string("containment J+(Con L) <= Princ L <= Con L: ") +
             (holds ? "holds" : "FAILS") + "\n";

  if (dot) {
    std::cout << export_dot(K);
    std::cerr << summary;
  } else {
    deliver(machine,
            json{{"lattice", {{"elements", L.n()}, {"covers", L.poset.covers.size()}}},
                 {"conSize", K.n()},
                 {"princSize", princCount},
                 {"congruences", table},
                 {"containmentHolds", holds}},
            summary);
  }
  return holds ? 0 : 1;
}

int run_chainrep(const std::string& path, const std::string& qspec, int maxLen, bool machine) {
  FiniteLattice D = lattice_from_json(read_json_file(path));
  std::vector<int> Q = parse_elements(D, qspec);
  RepresentabilityVerdict v = decide_chain_representable(D, Q, resolve_max_len(maxLen));
  deliver(machine, verdict_to_json(v), human_verdict(v));
  return status_exit(v.status);
}

int run_extract(const std::string& path, bool machine) {
  FiniteLattice L = lattice_from_json(read_json_file(path));
  ExtractedChain X = extract_colored_chain(L);
  json out = colored_chain_to_json(X.colored);
  out["sourceNames"] = X.sourceNames;
  std::string summary = "extracted chain: length " + std::to_string(X.colored.length()) +
                        ", colors " + word_of(X.colored) + "\n" + "color poset: " +
                        std::to_string(X.colored.colorPoset.n()) + " join irreducibles\n";
  deliver(machine, out, summary);
  return 0;
}

int run_construct(const std::string& path, const std::string& qspec, const std::string& chainPath,
                  bool dot, const std::string& outPath, const std::string& provPath, int maxLen,
                  bool machine) {
  FiniteLattice D = lattice_from_json(read_json_file(path));
  std::optional<ColoredChain> C;
  std::string summary;

  if (!chainPath.empty()) {
    FinitePoset P = induced_poset(D, join_irreducibles(D));
    C = colored_chain_from_json(read_json_file(chainPath), P);
    std::vector<int> got = rep_set(*C, D);
    if (!qspec.empty()) {
      std::vector<int> Q = parse_elements(D, qspec);
      std::sort(Q.begin(), Q.end());
      Q.erase(std::unique(Q.begin(), Q.end()), Q.end());
      if (got != Q)
        fail(ErrorKind::PreconditionViolated,
             "the supplied chain represents {" + element_list(D, got) + "}, not the requested Q");
    }
    summary += "chain from file: length " + std::to_string(C->length()) + ", colors " +
               word_of(*C) + "\n";
    summary += "represented set: {" + element_list(D, got) + "}\n";
  } else {
    if (qspec.empty())
      fail(ErrorKind::PreconditionViolated, "construct needs --q or --chain");
    std::vector<int> Q = parse_elements(D, qspec);
    RepresentabilityVerdict v = decide_chain_representable(D, Q, resolve_max_len(maxLen));
    if (v.status != RepStatus::Witness) {
      deliver(machine, verdict_to_json(v), human_verdict(v));
      return status_exit(v.status);
    }
    C = *v.witness;
    summary += "witness chain: length " + std::to_string(C->length()) + ", colors " +
               word_of(*C) + "\n";
  }

  Assembly A = assemble(*C, D);
  int wCount = 0, flagCount = 0;
  for (const ComponentLattice& c : A.components) {
    wCount += c.kind == ComponentKind::W;
    flagCount += c.kind == ComponentKind::Flag;
  }
  summary += "assembled L: " + std::to_string(A.L.n()) + " elements, " +
             std::to_string(A.L.poset.covers.size()) + " covers\n";
  if (!A.degenerate)
    summary += "components: " + std::to_string(A.components.size()) + " (" +
               std::to_string(wCount) + " W, " + std::to_string(flagCount) + " flags)\n";

  json lj = lattice_to_json(A.L);
  json pj = provenance_to_json(A);
  std::string payload;
  if (dot)
    payload = export_dot(A.L, &A);
  else if (machine)
    payload = json{{"lattice", lj}, {"provenance", pj}}.dump(2) + "\n";
  else
    payload = lj.dump(2) + "\n";

  if (!provPath.empty()) {
    write_text_file(provPath, pj.dump(2) + "\n");
    summary += "provenance written to " + provPath + "\n";
  }
  if (!outPath.empty()) {
    write_text_file(outPath, payload);
    summary += "output written to " + outPath + "\n";
    std::cout << summary;
  } else {
    std::cout << payload;
    std::cerr << summary;
  }
  return 0;
}

int run_verify13(const std::string& path, bool machine) {
  FiniteLattice L = lattice_from_json(read_json_file(path));
  PipelineReport R = verify_theorem13(L);
  deliver(machine, report_to_json(R), human_report(R));
  return outcome_exit(R.outcome);
}

int run_verify15(const std::string& path, const std::string& qspec, int maxLen, bool machine) {
  FiniteLattice D = lattice_from_json(read_json_file(path));
  std::vector<int> Q = parse_elements(D, qspec);
  PipelineReport R = verify_theorem15(D, Q, resolve_max_len(maxLen));
  deliver(machine, report_to_json(R), human_report(R));
  return outcome_exit(R.outcome);
}

int run_regression(int maxLen, bool machine) {
  std::vector<PipelineReport> reports = regression_known_results(resolve_max_len(maxLen));
  json out = json::array();
  std::string summary;
  int good = 0;
  for (const PipelineReport& R : reports) {
    out.push_back(report_to_json(R));
    good += R.as_expected();
    summary += std::string(R.as_expected() ? "[ok]   " : "[FAIL] ") + R.input + ": " +
               pipeline_outcome_name(R.outcome) + "\n";
  }
  summary += std::to_string(good) + "/" + std::to_string(reports.size()) + " as expected\n";
  deliver(machine, out, summary);
  return good == static_cast<int>(reports.size()) ? 0 : 1;
}

int run_export_dot(const std::string& path, const std::string& outPath) {
  FiniteLattice L = lattice_from_json(read_json_file(path));
  std::string dot = export_dot(L);
  if (!outPath.empty()) {
    write_text_file(outPath, dot);
    std::cout << "dot written to " << outPath << "\n";
  } else {
    std::cout << dot;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"colored chains and congruence lattices of finite distributive lattices"};
  app.require_subcommand(1);
  bool machine = false;
  app.add_flag("--json", machine, "JSON on stdout, human summary on stderr");

  std::string path, qspec, chainPath, outPath, provPath;
  int maxLen = 0;
  bool dot = false;

  auto add_max_len = [&](CLI::App* sub) {
    sub->add_option("--max-len", maxLen,
                    "search bound on chain length (default from LATREP_MAX_LEN or automatic)");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "congruence lattice of a lattice");
  analyze->add_option("lattice", path, "lattice JSON file")->required();
  analyze->add_flag("--dot", dot, "emit the congruence lattice as DOT on stdout");

  CLI::App* chainrep = app.add_subcommand("chainrep", "decide colored-chain representability");
  chainrep->add_option("lattice", path, "distributive lattice JSON file")->required();
  chainrep->add_option("--q", qspec, "target subset: comma separated names, or 'all'")->required();
  add_max_len(chainrep);

  CLI::App* extract = app.add_subcommand("extract", "colored chain of a finite lattice");
  extract->add_option("lattice", path, "lattice JSON file")->required();

  CLI::App* construct =
      app.add_subcommand("construct", "build L with Con L isomorphic to D and Princ L = Q");
  construct->add_option("lattice", path, "distributive lattice JSON file")->required();
  construct->add_option("--q", qspec, "target subset: comma separated names, or 'all'");
  construct->add_option("--chain", chainPath, "witness chain JSON file ({\"colors\": [...]})");
  construct->add_flag("--dot", dot, "emit L as DOT with components color grouped");
  construct->add_option("-o,--out", outPath, "write the main output to a file");
  construct->add_option("--provenance", provPath, "write the provenance sidecar to a file");
  add_max_len(construct);

  CLI::App* verify13 = app.add_subcommand("verify13", "necessity check on a finite lattice");
  verify13->add_option("lattice", path, "lattice JSON file")->required();

  CLI::App* verify15 = app.add_subcommand("verify15", "full pipeline on a distributive lattice");
  verify15->add_option("lattice", path, "distributive lattice JSON file")->required();
  verify15->add_option("--q", qspec, "target subset: comma separated names, or 'all'")->required();
  add_max_len(verify15);

  CLI::App* regression = app.add_subcommand("regression", "replay the known-result suite");
  add_max_len(regression);

  CLI::App* exportDot = app.add_subcommand("export-dot", "lattice diagram as DOT");
  exportDot->add_option("lattice", path, "lattice JSON file")->required();
  exportDot->add_option("-o,--out", outPath, "write the DOT text to a file");

  for (CLI::App* sub :
       {analyze, chainrep, extract, construct, verify13, verify15, regression, exportDot})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    if (analyze->parsed()) return run_analyze(path, dot, machine);
    if (chainrep->parsed()) return run_chainrep(path, qspec, maxLen, machine);
    if (extract->parsed()) return run_extract(path, machine);
    if (construct->parsed())
      return run_construct(path, qspec, chainPath, dot, outPath, provPath, maxLen, machine);
    if (verify13->parsed()) return run_verify13(path, machine);
    if (verify15->parsed()) return run_verify15(path, qspec, maxLen, machine);
    if (regression->parsed()) return run_regression(maxLen, machine);
    if (exportDot->parsed()) return run_export_dot(path, outPath);
  } catch (const latrep::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const latrep::json::exception& e) {
    std::cerr << "error: invalid JSON: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
