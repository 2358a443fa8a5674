#pragma once

// JSON import and export for every object the command line handles.  Uses
// insertion-ordered JSON so that identical inputs always serialize to
// byte-identical output; coefficients travel as strings to keep arbitrary
// precision exact.

#include <lkrep/faithcheck.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace lkrep {

using Json = nlohmann::ordered_json;

inline Json graph_to_json(const CoxeterGraph& g) {
  Json j;
  j["n"] = g.n;
  if (!g.label.empty()) j["label"] = g.label;
  j["m"] = g.m;
  return j;
}

inline CoxeterGraph graph_from_json(const Json& j) {
  if (j.contains("type")) return named_graph(j.at("type").get<std::string>(), j.at("rank").get<int>());
  if (!j.contains("m")) fail(Err::BadInput, "graph JSON needs either \"type\"/\"rank\" or \"m\"");
  return build_graph(j.at("m").get<std::vector<std::vector<int>>>(), j.value("label", ""));
}

// Term list [[xe, ye, coeff], ...] in canonical term order; the coefficient
// is a decimal string.
inline Json poly_to_json(const LaurentPoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({m.xe, m.ye, c.str()});
  return terms;
}

inline Json params_to_json(const LKParams& p) {
  Json j;
  j["b"] = p.b.str();
  j["c"] = p.c.str();
  j["d"] = p.d.str();
  j["a"] = p.a.str();
  j["f"] = p.f.str();
  if (p.pqr) j["pqr"] = *p.pqr;
  return j;
}

inline Json table_to_json(const RootTable& t) {
  Json j;
  j["graph"] = graph_to_json(t.graph);
  j["complete"] = t.complete;
  j["depth_bound"] = t.depth_bound;
  bool affine = false;
  try {
    delta(t.graph);
    affine = true;
  } catch (const Error&) {
  }
  Json roots = Json::array();
  for (uint32_t r = 0; r < t.size(); ++r) {
    Json row;
    row["index"] = r;
    row["root"] = root_str(t.roots[r]);
    row["depth"] = t.depth[r];
    if (affine) {
      try {
        row["level"] = affine_decompose(t.graph, t.roots[r]).p;
      } catch (const Error&) {
      }
    }
    roots.push_back(std::move(row));
  }
  j["count"] = t.size();
  j["roots"] = std::move(roots);
  return j;
}

template <class Scalar>
inline Json endo_to_json(const Endo<Scalar>& e, const RootTable& t) {
  Json j;
  Json basis = Json::array();
  for (uint32_t r = 0; r < t.size() && r < e.dim; ++r) basis.push_back(root_str(t.roots[r]));
  j["dim"] = e.dim;
  j["basis"] = std::move(basis);
  Json cols;
  for (uint32_t c = 0; c < e.dim; ++c) {
    Json entries = Json::array();
    for (const auto& [row, v] : e.columns[c]) entries.push_back({row, v.str()});
    cols[std::to_string(c)] = std::move(entries);
  }
  j["columns"] = std::move(cols);
  if (!e.all_safe()) {
    Json unsafe = Json::array();
    for (uint32_t c = 0; c < e.dim; ++c)
      if (!e.safe[c]) unsafe.push_back(c);
    j["unsafe_columns"] = std::move(unsafe);
  }
  return j;
}

// Orbit-labelled variant for matrices on a fixed-subspace basis.
template <class Scalar>
inline Json endo_to_json(const Endo<Scalar>& e, const std::vector<std::string>& labels) {
  Json j;
  j["dim"] = e.dim;
  j["basis"] = labels;
  Json cols;
  for (uint32_t c = 0; c < e.dim; ++c) {
    Json entries = Json::array();
    for (const auto& [row, v] : e.columns[c]) entries.push_back({row, v.str()});
    cols[std::to_string(c)] = std::move(entries);
  }
  j["columns"] = std::move(cols);
  if (!e.all_safe()) {
    Json unsafe = Json::array();
    for (uint32_t c = 0; c < e.dim; ++c)
      if (!e.safe[c]) unsafe.push_back(c);
    j["unsafe_columns"] = std::move(unsafe);
  }
  return j;
}

// Dense comma-separated form, rows by columns; only sensible for small
// complete tables, the caller enforces the column limit.
template <class Scalar>
inline std::string endo_to_csv(const Endo<Scalar>& e) {
  std::string out;
  for (uint32_t row = 0; row < e.dim; ++row) {
    for (uint32_t col = 0; col < e.dim; ++col) {
      if (col) out += ',';
      out += '"' + e.at(row, col).str() + '"';
    }
    out += '\n';
  }
  return out;
}

inline Json family_to_json(const LKFamily& fam) {
  Json j;
  j["params"] = params_to_json(fam.params);
  const RootTable& t = *fam.table;
  Json values;
  for (int i = 0; i < t.graph.n; ++i)
    for (uint32_t r = 0; r < t.size(); ++r) {
      const LaurentPoly& v = fam.value(i, r);
      if (v.is_zero()) continue;
      values[std::to_string(i) + "," + root_str(t.roots[r])] = v.str();
    }
  j["values"] = std::move(values);
  return j;
}

inline std::vector<LaurentPoly> seed_from_json(const Json& j) {
  if (!j.is_array()) fail(Err::BadInput, "seed JSON must be a list of polynomial strings");
  std::vector<LaurentPoly> out;
  for (const auto& item : j) out.push_back(LaurentPoly::parse(item.get<std::string>()));
  return out;
}

// The orbit label format used by every fixed-subspace export.
inline std::string orbit_label(const OrbitBasis& basis, uint32_t k) {
  std::string s = "Θ" + std::to_string(k) + ": {";
  bool first = true;
  for (uint32_t member : basis.orbits[k]) {
    if (!first) s += ", ";
    s += root_str(basis.table->roots[member]);
    first = false;
  }
  s += "}";
  return s;
}

inline std::vector<std::string> orbit_labels(const OrbitBasis& basis) {
  std::vector<std::string> out;
  out.reserve(basis.dim());
  for (uint32_t k = 0; k < basis.dim(); ++k) out.push_back(orbit_label(basis, k));
  return out;
}

inline Json criterion_to_json(const CriterionReport& rep) {
  Json j;
  j["params_positive"] = rep.params_positive;
  if (!rep.params_note.empty()) j["params_note"] = rep.params_note;
  j["values_in_x_ideal"] = rep.values_in_x_ideal;
  if (rep.ideal_witness)
    j["ideal_witness"] = {rep.ideal_witness->first, rep.ideal_witness->second};
  j["seeds_nonzero"] = rep.seeds_nonzero;
  if (rep.seed_witness) j["seed_witness"] = *rep.seed_witness;
  j["pass"] = rep.pass();
  return j;
}

inline Json generator_relations_to_json(const GeneratorRelationReport& rep) {
  Json j;
  j["own_root_dropped"] = rep.own_root_dropped;
  j["other_roots_kept"] = rep.other_roots_kept;
  j["adjacent_chain"] = rep.adjacent_chain;
  if (rep.truncated) j["caveat"] = "checked on a truncated root table";
  j["pass"] = rep.pass();
  return j;
}

inline Json experiment_to_json(const ExperimentReport& rep) {
  Json j;
  j["max_length"] = rep.max_length;
  j["classes"] = rep.classes;
  j["distinct_matrices"] = rep.matrix_keys;
  j["matrix_collisions"] = rep.classes - rep.matrix_keys;
  if (rep.twisted) {
    j["orbit_range_checks"] = rep.range_groups;
  } else {
    j["initial_set_checks"] = rep.initial_checks;
    j["range_groups"] = rep.range_groups;
    j["prefix_checks"] = rep.prefix_checks;
  }
  j["scope"] = "exhaustive up to the stated length bound; not evidence beyond it";
  return j;
}

}  // namespace lkrep
