// Copyright 2026 The mlsum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Multilayer sentence network: one layer per document, undirected cosine
// edges tagged intra- or inter-layer.

#ifndef MLSUM_GRAPH_HPP_
#define MLSUM_GRAPH_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <ostream>
#include <set>
#include <tuple>
#include <vector>

#include "mlsum/errors.hpp"
#include "mlsum/vectorizer.hpp"

namespace mlsum {

enum class EdgeKind { kIntra, kInter };

inline const char* to_string(EdgeKind k) { return k == EdgeKind::kIntra ? "intra" : "inter"; }

struct Edge {
  std::size_t i = 0;  // i < j
  std::size_t j = 0;
  double weight = 0.0;
  EdgeKind kind = EdgeKind::kIntra;

  bool operator==(const Edge&) const = default;
};

struct GraphParams {
  double alpha = 1.0;
  double r = 0.0;
};

inline void validate(const GraphParams& p) {
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) {
    throw InvalidParameter("alpha must be a positive finite number");
  }
  if (!(p.r >= 0.0 && p.r < 1.0)) throw InvalidParameter("r must lie in [0,1)");
}

class MultilayerGraph {
 public:
  struct Neighbor {
    std::size_t node;
    double weight;
  };

  MultilayerGraph() = default;

  /// Takes ownership of an edge list. Throws InvalidParameter on self-loops,
  /// duplicate pairs, non-positive weights or a kind that disagrees with
  /// the layers.
  MultilayerGraph(std::vector<std::size_t> layer_of, std::vector<Edge> edges, bool weighted = true)
      : layer_of_(std::move(layer_of)), edges_(std::move(edges)), weighted_(weighted) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto& e : edges_) {
      if (e.i > e.j) std::swap(e.i, e.j);
      if (e.i == e.j) throw InvalidParameter("self-loop on node " + std::to_string(e.i));
      if (e.j >= layer_of_.size()) throw InvalidParameter("edge endpoint out of range");
      if (!(e.weight > 0.0)) throw InvalidParameter("edge weights must be > 0");
      const EdgeKind expected =
          layer_of_[e.i] == layer_of_[e.j] ? EdgeKind::kIntra : EdgeKind::kInter;
      if (e.kind != expected) throw InvalidParameter("edge kind disagrees with layers");
      if (!seen.emplace(e.i, e.j).second) throw InvalidParameter("duplicate edge");
    }
    rebuild_adjacency();
  }

  /// Convenience for tests and fixtures: edge kinds are derived from layers.
  static MultilayerGraph from_pairs(std::vector<std::size_t> layer_of,
                                    const std::vector<std::tuple<std::size_t, std::size_t, double>>& pairs,
                                    bool weighted = true) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [a, b, w] : pairs) {
      const auto ia = std::min(a, b);
      const auto ib = std::max(a, b);
      const EdgeKind kind = layer_of.at(ia) == layer_of.at(ib) ? EdgeKind::kIntra : EdgeKind::kInter;
      edges.push_back({ia, ib, w, kind});
    }
    return MultilayerGraph(std::move(layer_of), std::move(edges), weighted);
  }

  /// Single-layer unweighted graph (every edge intra, weight 1).
  static MultilayerGraph unweighted(std::size_t n,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::vector<std::tuple<std::size_t, std::size_t, double>> w;
    for (auto [a, b] : pairs) w.emplace_back(a, b, 1.0);
    return from_pairs(std::vector<std::size_t>(n, 0), w, false);
  }

  std::size_t n_nodes() const noexcept { return layer_of_.size(); }
  std::size_t n_edges() const noexcept { return edges_.size(); }
  const std::vector<std::size_t>& layer_of() const noexcept { return layer_of_; }
  std::size_t layer_of(std::size_t node) const { return layer_of_.at(node); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool weighted() const noexcept { return weighted_; }
  const std::vector<Neighbor>& neighbors(std::size_t node) const { return adjacency_.at(node); }
  std::size_t degree(std::size_t node) const { return adjacency_.at(node).size(); }

 private:
  void rebuild_adjacency() {
    adjacency_.assign(layer_of_.size(), {});
    for (const auto& e : edges_) {
      adjacency_[e.i].push_back({e.j, e.weight});
      adjacency_[e.j].push_back({e.i, e.weight});
    }
    for (auto& list : adjacency_) {
      std::sort(list.begin(), list.end(),
                [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    }
  }

  std::vector<std::size_t> layer_of_;
  std::vector<Edge> edges_;
  bool weighted_ = true;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// Edge (i, j) for every pair with cosine > 0. `layers[k]` is the layer of
/// vectors[k]. Requires >= 2 sentences over >= 2 layers.
inline MultilayerGraph build(const std::vector<SentenceVector>& vectors,
                             const std::vector<std::size_t>& layers) {
  if (vectors.size() != layers.size()) throw InvalidParameter("build: vectors/layers size mismatch");
  if (vectors.size() < 2) throw InvalidParameter("build: need at least 2 sentences");
  if (std::set<std::size_t>(layers.begin(), layers.end()).size() < 2) {
    throw InvalidParameter("build: sentences must span at least 2 layers");
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      const double w = cosine(vectors[i], vectors[j]);
      if (w > 0.0) {
        edges.push_back({i, j, w, layers[i] == layers[j] ? EdgeKind::kIntra : EdgeKind::kInter});
      }
    }
  }
  if (edges.empty()) throw EmptyGraph("build: no pair of sentences shares a content word");
  return MultilayerGraph(layers, std::move(edges), true);
}

/// Multiplies every inter-layer weight by alpha. Intra weights are copied
/// untouched.
inline MultilayerGraph apply_alpha(const MultilayerGraph& g, double alpha) {
  if (!g.weighted()) throw InvalidParameter("apply_alpha: graph must be weighted");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidParameter("apply_alpha: alpha must be > 0");
  }
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) {
    if (e.kind == EdgeKind::kInter) e.weight *= alpha;
  }
  return MultilayerGraph(g.layer_of(), std::move(edges), true);
}

/// Number of edges remove_weakest drops for a given r. A 1e-9 slack absorbs
/// representation error in products such as 0.29 * 100.
inline std::size_t removal_count(std::size_t n_edges, double r) {
  return static_cast<std::size_t>(std::floor(r * static_cast<double>(n_edges) + 1e-9));
}

/// Drops the floor(r |E|) lightest edges (ties by (i, j)) and flags the
/// result unweighted. Surviving weights are kept for weighted variants.
inline MultilayerGraph remove_weakest(const MultilayerGraph& g, double r) {
  if (!(r >= 0.0 && r < 1.0)) throw InvalidParameter("remove_weakest: r must lie in [0,1)");
  const auto& edges = g.edges();
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ea = edges[a];
    const auto& eb = edges[b];
    return std::tie(ea.weight, ea.i, ea.j) < std::tie(eb.weight, eb.i, eb.j);
  });
  const std::size_t cut = removal_count(edges.size(), r);
  std::vector<char> keep(edges.size(), 1);
  for (std::size_t k = 0; k < cut; ++k) keep[order[k]] = 0;
  std::vector<Edge> survivors;
  survivors.reserve(edges.size() - cut);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (keep[k]) survivors.push_back(edges[k]);
  }
  return MultilayerGraph(g.layer_of(), std::move(survivors), false);
}

/// `i,j,weight,kind` CSV with a header row.
inline void write_edge_csv(std::ostream& os, const MultilayerGraph& g) {
  os << "i,j,weight,kind\n";
  const auto old_precision = os.precision(17);
  for (const auto& e : g.edges()) {
    os << e.i << ',' << e.j << ',' << e.weight << ',' << to_string(e.kind) << '\n';
  }
  os.precision(old_precision);
}

}  // namespace mlsum

#endif  // MLSUM_GRAPH_HPP_
