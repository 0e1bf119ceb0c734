#pragma once

// JSON forms of reports, graphs and graph combinations. All numeric payload
// stays exact: rational coefficients are emitted as "p/q" strings.

#include <json.hpp>

#include "weylhom/beg.hpp"
#include "weylhom/graphs.hpp"

namespace weylhom {

inline nlohmann::json to_json(const SolutionReport& r) {
  nlohmann::json degrees = nlohmann::json::array();
  for (const auto& d : r.degrees) {
    degrees.push_back({{"degree", d.degree},
                       {"candidates", d.candidates},
                       {"solutions", d.solutions},
                       {"basis", d.basis}});
  }
  return nlohmann::json{{"group", r.group},
                        {"max_degree", r.max_degree},
                        {"degrees", degrees},
                        {"hp0", r.hp0},
                        {"hh0", r.hh0},
                        {"degrees_searched", r.degrees_searched},
                        {"elapsed_ms", r.elapsed_ms}};
}

inline SolutionReport solution_report_from_json(const nlohmann::json& j) {
  SolutionReport r;
  r.group = j.at("group").get<std::string>();
  r.max_degree = j.at("max_degree").get<int>();
  r.hp0 = j.at("hp0").get<long long>();
  r.hh0 = j.at("hh0").get<long long>();
  r.degrees_searched = j.at("degrees_searched").get<std::vector<int>>();
  r.elapsed_ms = j.value("elapsed_ms", 0LL);
  for (const auto& dj : j.at("degrees")) {
    DegreeReport d;
    d.degree = dj.at("degree").get<int>();
    d.candidates = dj.at("candidates").get<long long>();
    d.solutions = dj.at("solutions").get<long long>();
    d.basis = dj.at("basis").get<std::vector<std::string>>();
    r.degrees.push_back(std::move(d));
  }
  return r;
}

inline nlohmann::json to_json(const GraphSpec& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"i", e.i}, {"j", e.j}, {"exp", e.exp}});
  }
  return nlohmann::json{{"edges", edges}};
}

inline GraphSpec graph_from_json(const nlohmann::json& j) {
  std::vector<GraphEdge> edges;
  for (const auto& e : j.at("edges")) {
    edges.push_back(GraphEdge{e.at("i").get<int>(), e.at("j").get<int>(), e.at("exp").get<int>()});
  }
  return GraphSpec(std::move(edges));
}

inline nlohmann::json to_json(const GraphCombination& c) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [coeff, g] : c.terms) {
    nlohmann::json t = to_json(g);
    t["coeff"] = to_string(coeff);
    terms.push_back(std::move(t));
  }
  return terms;
}

inline GraphCombination graph_combination_from_json(const nlohmann::json& j) {
  GraphCombination c;
  for (const auto& t : j) {
    c.terms.emplace_back(parse_rational(t.at("coeff").get<std::string>()), graph_from_json(t));
  }
  return c;
}

}  // namespace weylhom
