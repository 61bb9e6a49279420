#pragma once

#include <latrep/pipeline.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace latrep {

using nlohmann::json;

inline json poset_to_json(const FinitePoset& P) {
  json covers = json::array();
  for (auto& [lo, hi] : P.covers) covers.push_back({P.names[lo], P.names[hi]});
  return {{"elements", P.names}, {"covers", covers}};
}

inline json lattice_to_json(const FiniteLattice& L) { return poset_to_json(L.poset); }

// Accepts {"elements": [names], "covers": [[lower, upper], ...]} with cover
// endpoints given as names or as indices into the element array.
inline FiniteLattice lattice_from_json(const json& j) {
  if (!j.is_object() || !j.contains("elements") || !j.contains("covers"))
    fail(ErrorKind::PreconditionViolated,
         "lattice JSON needs an object with \"elements\" and \"covers\"");
  std::vector<std::string> names;
  for (const json& e : j.at("elements")) {
    if (!e.is_string()) fail(ErrorKind::PreconditionViolated, "element names must be strings");
    names.push_back(e.get<std::string>());
  }
  auto side = [&](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) {
      int k = v.get<int>();
      if (k < 0 || k >= static_cast<int>(names.size()))
        fail(ErrorKind::IndexOutOfRange, "cover index " + std::to_string(k) + " out of range");
      return names[k];
    }
    fail(ErrorKind::PreconditionViolated, "cover endpoints must be names or indices");
  };
  std::vector<std::pair<std::string, std::string>> covers;
  for (const json& c : j.at("covers")) {
    if (!c.is_array() || c.size() != 2)
      fail(ErrorKind::PreconditionViolated, "each cover must be a [lower, upper] pair");
    covers.push_back({side(c[0]), side(c[1])});
  }
  return lattice_from_covers(names, covers);
}

inline json colored_chain_to_json(const ColoredChain& C) {
  std::vector<std::string> chainNames;
  for (int x : C.chain.elementsInOrder) chainNames.push_back(C.chain.lattice.name(x));
  json colors = json::array();
  for (int c : C.primeColors) colors.push_back(C.colorPoset.names[c]);
  return {{"chain", chainNames}, {"colors", colors}, {"colorPoset", poset_to_json(C.colorPoset)}};
}

// Reads {"colors": [...]} with entries given as positions into P or as color
// names; chain element names are generated, the construction renames anyway.
inline ColoredChain colored_chain_from_json(const json& j, const FinitePoset& P) {
  if (!j.is_object() || !j.contains("colors"))
    fail(ErrorKind::PreconditionViolated, "chain JSON needs an object with \"colors\"");
  std::vector<int> word;
  for (const json& c : j.at("colors")) {
    if (c.is_number_integer()) {
      word.push_back(c.get<int>());
      continue;
    }
    if (c.is_string()) {
      std::string name = c.get<std::string>();
      int at = -1;
      for (int k = 0; k < P.n(); ++k)
        if (P.names[k] == name) at = k;
      if (at < 0) fail(ErrorKind::ColorNotInD, "color '" + name + "' is not a color of D");
      word.push_back(at);
      continue;
    }
    fail(ErrorKind::PreconditionViolated, "colors must be positions or color names");
  }
  std::vector<std::string> names;
  for (size_t k = 0; k < word.size() + 1; ++k) names.push_back("x" + std::to_string(k + 1));
  return colored_chain(chain_from_names(names), P, word);
}

inline json verdict_to_json(const RepresentabilityVerdict& v) {
  json out = {{"status", rep_status_name(v.status)},
              {"certificate", v.certificate},
              {"bound", v.bound},
              {"witness", nullptr}};
  if (v.witness) {
    json w = colored_chain_to_json(*v.witness);
    w["length"] = v.witness->length();
    out["witness"] = std::move(w);
  }
  return out;
}

inline json provenance_to_json(const Assembly& A) {
  json comps = json::array();
  for (size_t k = 0; k < A.components.size(); ++k) {
    const ComponentLattice& c = A.components[k];
    json e = {{"index", k},
              {"kind", component_kind_name(c.kind)},
              {"describe", c.describe()},
              {"elements", c.local.poset.names}};
    if (c.kind == ComponentKind::W) e["colors"] = {c.p, c.q};
    if (c.kind == ComponentKind::Flag) {
      e["color"] = c.p;
      e["chainIndex"] = c.flagIndex;
    }
    comps.push_back(std::move(e));
  }
  json origin = json::object();
  for (const auto& [name, where] : A.elementOrigin) origin[name] = where;
  json colorNames = json::array();
  for (const std::string& n : A.colorPoset.names) colorNames.push_back(n);
  json chainColors = json::array();
  for (int c : A.chainColors) chainColors.push_back(c);
  return {{"components", comps},
          {"elementOrigin", origin},
          {"colorNames", colorNames},
          {"chainColors", chainColors},
          {"unitColor", A.unitColor},
          {"degenerate", A.degenerate},
          {"notes",
           json::array({"colors are positions into colorNames",
                        "flag <k> carries primed copies prime.1..prime.<k+1> of the lower "
                        "chain, so it owns k+5 private elements"})}};
}

inline json report_to_json(const PipelineReport& R) {
  json stages = json::array();
  for (const PipelineStage& s : R.stages)
    stages.push_back({{"name", s.name},
                      {"status", stage_status_name(s.status)},
                      {"millis", s.millis},
                      {"detail", s.detail}});
  json out = {{"input", R.input},
              {"outcome", pipeline_outcome_name(R.outcome)},
              {"stages", std::move(stages)},
              {"notes", R.notes},
              {"expected", nullptr},
              {"decision", nullptr},
              {"lattice", nullptr},
              {"provenance", nullptr}};
  if (R.expected) out["expected"] = pipeline_outcome_name(*R.expected);
  if (R.decision) out["decision"] = verdict_to_json(*R.decision);
  if (R.assembly) {
    out["lattice"] = lattice_to_json(R.assembly->L);
    out["provenance"] = provenance_to_json(*R.assembly);
  }
  return out;
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

} // namespace detail

// Deterministic DOT text: nodes in element order, one rank group per height,
// cover edges bottom-up. With an assembly, privately owned elements are
// filled with their component's palette color; shared elements stay white.
inline std::string export_dot(const FiniteLattice& L, const Assembly* provenance = nullptr) {
  std::string out = "digraph lattice {\n  rankdir=BT;\n"
                    "  node [shape=box, style=\"rounded,filled\", fillcolor=white"
                    ", colorscheme=set312];\n";
  for (int x = 0; x < L.n(); ++x) {
    out += "  " + detail::dot_quote(L.name(x));
    if (provenance && !provenance->degenerate) {
      const std::vector<int>& where = provenance->origin_of(x);
      if (where.size() == 1)
        out += " [fillcolor=" + std::to_string(where[0] % 12 + 1) + "]";
    }
    out += ";\n";
  }
  int maxHeight = 0;
  for (int x = 0; x < L.n(); ++x) maxHeight = std::max(maxHeight, L.height[x]);
  for (int h = 0; h <= maxHeight; ++h) {
    std::string row;
    for (int x = 0; x < L.n(); ++x)
      if (L.height[x] == h) row += " " + detail::dot_quote(L.name(x)) + ";";
    if (!row.empty()) out += "  { rank=same;" + row + " }\n";
  }
  for (auto& [lo, hi] : L.poset.covers)
    out += "  " + detail::dot_quote(L.name(lo)) + " -> " + detail::dot_quote(L.name(hi)) + ";\n";
  return out + "}\n";
}

} // namespace latrep
