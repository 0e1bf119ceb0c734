#pragma once

// Multigraph encoding of pfaffian words: vertices are the indices that occur
// in a word, edges carry the raw X-exponent. The Reynolds image of a word
// depends only on its graph up to relabeling, so graphs index solutions
// rank-independently: linear graphs correspond to integer partitions, and
// disjoint unions of solutions are again solutions.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "weylhom/beg.hpp"
#include "weylhom/sl2.hpp"

namespace weylhom {

struct GraphEdge {
  int i = 0, j = 0;  // i < j
  int exp = 0;       // raw X-exponent b_{i,j} > 0

  bool operator==(const GraphEdge& o) const { return i == o.i && j == o.j && exp == o.exp; }
  bool operator<(const GraphEdge& o) const {
    return std::tuple(i, j, exp) < std::tuple(o.i, o.j, o.exp);
  }
};

class GraphSpec {
 public:
  GraphSpec() = default;

  explicit GraphSpec(std::vector<GraphEdge> edges) : edges_(std::move(edges)) {
    for (auto& e : edges_) {
      if (e.i == e.j || e.i < 1 || e.j < 1 || e.exp <= 0)
        throw std::invalid_argument("GraphSpec: bad edge");
      if (e.i > e.j) std::swap(e.i, e.j);
    }
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t k = 1; k < edges_.size(); ++k) {
      if (edges_[k].i == edges_[k - 1].i && edges_[k].j == edges_[k - 1].j)
        throw std::invalid_argument("GraphSpec: duplicate edge");
    }
  }

  const std::vector<GraphEdge>& edges() const { return edges_; }
  bool empty() const { return edges_.empty(); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  std::set<int> vertices() const {
    std::set<int> v;
    for (const auto& e : edges_) {
      v.insert(e.i);
      v.insert(e.j);
    }
    return v;
  }

  int vertex_count() const { return static_cast<int>(vertices().size()); }

  // Degree of the expanded polynomial: twice the exponent sum.
  int degree() const {
    int s = 0;
    for (const auto& e : edges_) s += e.exp;
    return 2 * s;
  }

  // True when every raw exponent is even; only such graphs render
  // identically in B and D.
  bool all_even() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const GraphEdge& e) { return e.exp % 2 == 0; });
  }

  // Per Def: an even exponent b renders as an edge labeled b/2, an odd one as
  // (b+1)/2.
  int rendered_label(const GraphEdge& e) const { return (e.exp + 1) / 2; }

  // Canonical form under vertex relabeling: vertices are compacted to 1..k
  // and the edge list is minimized lexicographically over all k! relabelings.
  // Graphs here never exceed a handful of vertices, so exhaustive
  // minimization is exact and cheap.
  GraphSpec canonical() const {
    const std::set<int> vs = vertices();
    const int k = static_cast<int>(vs.size());
    std::map<int, int> compact;
    int next = 1;
    for (int v : vs) compact[v] = next++;
    std::vector<int> relabel(static_cast<std::size_t>(k));
    std::iota(relabel.begin(), relabel.end(), 1);
    std::optional<std::vector<GraphEdge>> best;
    do {
      std::vector<GraphEdge> cand;
      cand.reserve(edges_.size());
      for (const auto& e : edges_) {
        int a = relabel[static_cast<std::size_t>(compact[e.i] - 1)];
        int b = relabel[static_cast<std::size_t>(compact[e.j] - 1)];
        if (a > b) std::swap(a, b);
        cand.push_back(GraphEdge{a, b, e.exp});
      }
      std::sort(cand.begin(), cand.end());
      if (!best || cand < *best) best = std::move(cand);
    } while (std::next_permutation(relabel.begin(), relabel.end()));
    GraphSpec g;
    if (best) g.edges_ = std::move(*best);
    return g;
  }

  bool isomorphic_to(const GraphSpec& o) const { return canonical() == o.canonical(); }

  PfaffianWord to_word(int rank) const {
    PfaffianWord w(rank);
    for (const auto& e : edges_) {
      if (e.j > rank) throw std::invalid_argument("GraphSpec: vertex exceeds rank");
      w.set_exponent(e.i, e.j, e.exp);
    }
    return w;
  }

  // Shifts every vertex label by a fixed offset (placement on fresh indices).
  GraphSpec shifted(int offset) const {
    GraphSpec g;
    g.edges_ = edges_;
    for (auto& e : g.edges_) {
      e.i += offset;
      e.j += offset;
    }
    return g;
  }

  std::string str() const {
    if (edges_.empty()) return "1";
    std::string out;
    for (const auto& e : edges_) {
      if (!out.empty()) out += "*";
      out += "X[" + std::to_string(e.i) + "," + std::to_string(e.j) + "]";
      if (e.exp != 1) out += "^" + std::to_string(e.exp);
    }
    return out;
  }

  bool operator==(const GraphSpec& o) const { return edges_ == o.edges_; }
  bool operator<(const GraphSpec& o) const { return edges_ < o.edges_; }

 private:
  std::vector<GraphEdge> edges_;
};

inline GraphSpec graph_of(const PfaffianWord& w) {
  std::vector<GraphEdge> edges;
  for (const auto& [pr, b] : w.exponents()) edges.push_back(GraphEdge{pr.first, pr.second, b});
  return GraphSpec(std::move(edges));
}

// The Reynolds image of any concrete labeling; constant on relabeling orbits
// (checked in tests), possibly zero.
inline Polynomial polynomial_of(const GraphSpec& g, const WeylGroup& w) {
  if (g.vertex_count() > w.rank())
    throw std::invalid_argument("polynomial_of: graph has more vertices than the rank");
  return reynolds(w, g.to_word(w.rank()).expand());
}

struct GraphCombination {
  std::vector<std::pair<Rational, GraphSpec>> terms;

  bool empty() const { return terms.empty(); }

  int max_vertex_count() const {
    int m = 0;
    for (const auto& [c, g] : terms) m = std::max(m, g.vertex_count());
    return m;
  }

  Polynomial evaluate(const WeylGroup& w) const {
    Polynomial out(w.rank());
    for (const auto& [c, g] : terms) out += polynomial_of(g, w) * c;
    return out;
  }

  std::string str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [c, g] : terms) {
      const bool neg = c < 0;
      Rational a = neg ? Rational(-c) : c;
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      const std::string gs = g.str();
      if (gs == "1") {
        out += to_string(a);
      } else if (a == 1) {
        out += gs;
      } else {
        out += to_string(a) + "*" + gs;
      }
    }
    return out;
  }
};

// The pi(n) linear graphs: each partition of n maps parts of size j >= 2 to a
// path with j vertices and j-1 edges of raw exponent 2; size-1 parts
// contribute no vertices, so the empty graph (the constant 1) represents the
// all-ones partition.
inline std::vector<GraphCombination> partition_graphs(int n) {
  if (n < 1) throw std::invalid_argument("partition_graphs: n must be positive");
  std::vector<GraphCombination> out;
  for (const auto& part : partitions(n)) {
    std::vector<GraphEdge> edges;
    int base = 0;
    for (int p : part) {
      for (int v = 1; v < p; ++v) edges.push_back(GraphEdge{base + v, base + v + 1, 2});
      if (p >= 2) base += p;
    }
    GraphCombination comb;
    comb.terms.emplace_back(Rational(1), GraphSpec(std::move(edges)));
    out.push_back(std::move(comb));
  }
  return out;
}

// Product of solutions on disjoint index sets, re-projected at the joint
// rank: R(a) R(b) with disjoint indices gives R(ab) up to the projection, and
// the result solves the functional equation whenever both factors do.
inline Polynomial compose(const Polynomial& a, const Polynomial& b, const WeylGroup& w) {
  if (a.rank() != w.rank() || b.rank() != w.rank())
    throw std::invalid_argument("compose: rank mismatch");
  const std::set<int> sa = a.support_indices(), sb = b.support_indices();
  for (int i : sa) {
    if (sb.count(i)) throw std::invalid_argument("compose: index sets overlap at " + std::to_string(i));
  }
  return reynolds(w, a * b);
}

struct SimpleGraphSearchResult {
  int degree = 0;
  int dimension = 0;  // solution-space dimension at degree 4(n-1)
  std::optional<GraphCombination> combination;  // present when dimension == 1
  DegreeSolveResult detail;
};

// Searches for the unique degree-4(n-1) solution among graphs on at most n
// non-isolated vertices (at rank n every word qualifies; the guard protects
// hypothetical callers at larger rank).
inline SimpleGraphSearchResult simple_graph_search(const WeylGroup& w, int threads = 1) {
  SimpleGraphSearchResult res;
  res.degree = 4 * (w.rank() - 1);
  res.detail = solve_degree(w, res.degree, threads);
  for (const auto& word : res.detail.basis.words) {
    if (static_cast<int>(word.vertices().size()) > w.rank())
      throw internal_check_error("simple_graph_search: candidate exceeds vertex bound");
  }
  res.dimension = static_cast<int>(res.detail.solutions.size());
  if (res.dimension == 1) {
    GraphCombination comb;
    const auto& row = res.detail.solution_rows.front();
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) comb.terms.emplace_back(row[j], graph_of(res.detail.basis.words[j]));
    }
    res.combination = std::move(comb);
  }
  return res;
}

struct CatalogEntry {
  std::vector<int> partition;
  GraphCombination combination;
  int degree = 0;
  bool constructed = false;  // all needed simple graphs were available
  bool verified = false;     // the combination passes the full operator
};

// Builds the pi(n) candidate solutions of type B_n: one per partition,
// composing the simple graphs of the parts on disjoint vertices (size-1 parts
// contribute the constant 1), then verifies each against the full operator.
inline std::vector<CatalogEntry> catalog(const WeylGroup& w,
                                         std::map<int, GraphCombination> simple_graphs = {},
                                         int threads = 1) {
  const int n = w.rank();
  std::set<int> needed;
  for (const auto& part : partitions(n)) {
    for (int p : part) {
      if (p >= 2) needed.insert(p);
    }
  }
  for (int p : needed) {
    if (simple_graphs.count(p)) continue;
    SimpleGraphSearchResult r = simple_graph_search(WeylGroup(w.family(), p), threads);
    if (r.combination) simple_graphs[p] = *r.combination;
  }

  std::vector<CatalogEntry> out;
  for (const auto& part : partitions(n)) {
    CatalogEntry entry;
    entry.partition = part;
    entry.constructed = true;
    GraphCombination comb;
    comb.terms.emplace_back(Rational(1), GraphSpec());
    int base = 0;
    for (int p : part) {
      if (p < 2) continue;
      entry.degree += 4 * (p - 1);
      auto it = simple_graphs.find(p);
      if (it == simple_graphs.end()) {
        entry.constructed = false;
        break;
      }
      GraphCombination next;
      for (const auto& [ca, ga] : comb.terms) {
        for (const auto& [cb, gb] : it->second.terms) {
          std::vector<GraphEdge> edges = ga.edges();
          for (const auto& e : gb.shifted(base).edges()) edges.push_back(e);
          next.terms.emplace_back(ca * cb, GraphSpec(std::move(edges)));
        }
      }
      comb = std::move(next);
      base += p;
    }
    if (entry.constructed) {
      entry.combination = std::move(comb);
      const Polynomial v = entry.combination.evaluate(w);
      entry.verified = beg_apply_compressed(w, v, threads).is_zero();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace weylhom
