// Copyright (c) pag contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pag/balanced.hpp"
#include "pag/generators.hpp"
#include "pag/model.hpp"

// File formats (all 0-based country indices):
//   instance      {"powers":[...], "friends":[[i,j],...], "adversaries":[[i,j],...]}
//   allocation    {"matrix":[[...],...]}
//   edge vector   {"ordering":[[i,j],...], "v":[...]}
//   solution      {"method":"complete|bipartite-flow|lp", "v":[...], "matrix":[[...],...]}
//   lineage       JSON lines, one construction step per line
// Serialization is canonical (sorted keys, shortest float form), so equal
// values produce byte-identical files.

namespace pag {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

inline json instance_to_json(const EnvironmentGraph& g) {
  json j;
  j["powers"] = g.powers();
  auto pairs = [](const std::vector<IndexPair>& edges) {
    json out = json::array();
    for (const auto& [a, b] : edges) out.push_back(json::array({a, b}));
    return out;
  };
  j["friends"] = pairs(g.friend_edges());
  j["adversaries"] = pairs(g.adversary_edges());
  return j;
}

inline std::vector<IndexPair> pairs_from_json(const json& j,
                                              const char* field) {
  std::vector<IndexPair> edges;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) {
      throw std::invalid_argument(std::string(field) +
                                  " must contain [i,j] pairs");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return edges;
}

inline EnvironmentGraph instance_from_json(const json& j) {
  return EnvironmentGraph(j.at("powers").get<std::vector<double>>(),
                          pairs_from_json(j.at("friends"), "friends"),
                          pairs_from_json(j.at("adversaries"), "adversaries"));
}

// ---------------------------------------------------------------------------
// Allocation matrices
// ---------------------------------------------------------------------------

inline json allocation_to_json(const AllocationMatrix& u) {
  json j;
  j["matrix"] = u.to_dense();
  return j;
}

inline AllocationMatrix allocation_from_json(const json& j) {
  return AllocationMatrix::from_dense(
      j.at("matrix").get<std::vector<std::vector<double>>>());
}

// ---------------------------------------------------------------------------
// Edge vectors
// ---------------------------------------------------------------------------

struct EdgeVectorFile {
  std::vector<IndexPair> ordering;
  EdgeVector v;
};

inline json edge_vector_to_json(const EnvironmentGraph& g,
                                const EdgeVector& v) {
  if (v.size() != g.adversary_edges().size()) {
    throw std::invalid_argument("edge vector length mismatch");
  }
  json j;
  json ordering = json::array();
  for (const auto& [a, b] : g.adversary_edges()) {
    ordering.push_back(json::array({a, b}));
  }
  j["ordering"] = std::move(ordering);
  j["v"] = v;
  return j;
}

inline EdgeVectorFile edge_vector_from_json(const json& j) {
  EdgeVectorFile f;
  f.ordering = pairs_from_json(j.at("ordering"), "ordering");
  f.v = j.at("v").get<std::vector<double>>();
  if (f.ordering.size() != f.v.size()) {
    throw std::invalid_argument("ordering and v differ in length");
  }
  return f;
}

// ---------------------------------------------------------------------------
// Solutions
// ---------------------------------------------------------------------------

struct SolutionFile {
  std::string method;
  EdgeVector v;
  AllocationMatrix matrix;
};

inline json solution_to_json(const SolutionFile& s) {
  json j;
  j["method"] = s.method;
  j["v"] = s.v;
  j["matrix"] = s.matrix.to_dense();
  return j;
}

inline SolutionFile solution_from_json(const json& j) {
  SolutionFile s;
  s.method = j.at("method").get<std::string>();
  s.v = j.at("v").get<std::vector<double>>();
  s.matrix = AllocationMatrix::from_dense(
      j.at("matrix").get<std::vector<std::vector<double>>>());
  return s;
}

// ---------------------------------------------------------------------------
// Lineage logs (JSON lines)
// ---------------------------------------------------------------------------

inline json lineage_step_to_json(const LineageStep& s) {
  json j;
  switch (s.op) {
    case LineageStep::Op::seed:
      j["op"] = "seed";
      j["power"] = s.power;
      break;
    case LineageStep::Op::raise_pair:
      j["op"] = "raise-pair";
      j["i"] = s.i;
      j["j"] = s.j;
      j["delta"] = s.delta;
      break;
    case LineageStep::Op::attach_node:
      j["op"] = "attach-node";
      j["attach"] = s.i;
      break;
  }
  return j;
}

inline LineageStep lineage_step_from_json(const json& j) {
  LineageStep s;
  const std::string op = j.at("op").get<std::string>();
  if (op == "seed") {
    s.op = LineageStep::Op::seed;
    s.power = j.at("power").get<double>();
  } else if (op == "raise-pair") {
    s.op = LineageStep::Op::raise_pair;
    s.i = j.at("i").get<int>();
    s.j = j.at("j").get<int>();
    s.delta = j.at("delta").get<double>();
  } else if (op == "attach-node") {
    s.op = LineageStep::Op::attach_node;
    s.i = j.at("attach").get<int>();
  } else {
    throw std::invalid_argument("unknown lineage op '" + op + "'");
  }
  return s;
}

inline std::string lineage_to_jsonl(const std::vector<LineageStep>& steps) {
  std::string out;
  for (const auto& s : steps) {
    out += lineage_step_to_json(s).dump();
    out += '\n';
  }
  return out;
}

inline std::vector<LineageStep> lineage_from_jsonl(const std::string& text) {
  std::vector<LineageStep> steps;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    steps.push_back(lineage_step_from_json(json::parse(line)));
  }
  return steps;
}

// ---------------------------------------------------------------------------
// File helpers
// ---------------------------------------------------------------------------

inline std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline EnvironmentGraph load_instance(const std::string& path) {
  return instance_from_json(json::parse(load_text(path)));
}

inline void save_instance(const std::string& path, const EnvironmentGraph& g) {
  save_text(path, instance_to_json(g).dump(2) + "\n");
}

inline AllocationMatrix load_allocation(const std::string& path) {
  return allocation_from_json(json::parse(load_text(path)));
}

inline void save_allocation(const std::string& path,
                            const AllocationMatrix& u) {
  save_text(path, allocation_to_json(u).dump(2) + "\n");
}

inline SolutionFile load_solution(const std::string& path) {
  return solution_from_json(json::parse(load_text(path)));
}

inline void save_solution(const std::string& path, const SolutionFile& s) {
  save_text(path, solution_to_json(s).dump(2) + "\n");
}

inline std::vector<LineageStep> load_lineage(const std::string& path) {
  return lineage_from_jsonl(load_text(path));
}

inline void save_lineage(const std::string& path,
                         const std::vector<LineageStep>& steps) {
  save_text(path, lineage_to_jsonl(steps));
}

}  // namespace pag
