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

// Node centrality measures used to rank sentences.
//
//   dg       degree                              highest first
//   stg      strength                            highest first
//   pr/pr_w  PageRank (unweighted / weighted)    highest first
//   sp/sp_w  average shortest path length        lowest first
//   access   accessibility, self-avoiding walks  highest first
//   gAccess  generalized accessibility           highest first
//   sym      symmetry                            highest and lowest first
//   absT     mean absorption time                lowest first
//
// Every function returns one score per node. Nodes a measure cannot rank
// meaningfully (isolated nodes, singleton components) are flagged in
// CentralityResult::unranked and always sort last.

#ifndef MLSUM_CENTRALITY_HPP_
#define MLSUM_CENTRALITY_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "mlsum/errors.hpp"
#include "mlsum/graph.hpp"

namespace mlsum {

enum class Direction { kHighestFirst, kLowestFirst };

inline const char* to_string(Direction d) {
  return d == Direction::kHighestFirst ? "highest-first" : "lowest-first";
}

/// Whether a measure reads edge weights or only edge presence.
enum class Weighting { kUnweighted, kWeighted };

struct CentralityResult {
  std::string measure;
  std::vector<double> scores;
  Direction direction = Direction::kHighestFirst;
  std::vector<char> unranked;  // 1 = rank last regardless of score

  std::size_t size() const noexcept { return scores.size(); }
};

/// How self-avoiding walks that get stuck before h steps are treated.
enum class DeadEndPolicy {
  kRenormalize,     // drop the walk, renormalize over completed walks
  kCreditTerminal,  // credit the mass to the node where the walk stopped
};

/// Which node plays the absorbing role in the mean absorption time.
enum class AbsorptionReading {
  kAbsorbAtNode,  // tau_i: node i absorbing, averaged over every start k != i
  kStartAtNode,   // tau_i: walker starts at i, averaged over every absorbing j != i
};

struct WalkParams {
  std::size_t h = 2;
  double pagerank_gamma = 0.85;
  std::optional<double> pagerank_beta;  // default (1 - gamma) / n
  double series_tolerance = 1e-15;
  double power_iter_tolerance = 1e-12;
  std::size_t max_iterations = 100000;
  DeadEndPolicy dead_ends = DeadEndPolicy::kRenormalize;
  AbsorptionReading absorption = AbsorptionReading::kAbsorbAtNode;
  // Components up to this size use one absorbing solve per node; larger
  // ones use the fundamental matrix of the ergodic chain.
  std::size_t absorption_direct_limit = 64;
};

inline void validate(const WalkParams& p) {
  if (p.h < 1) throw InvalidParameter("h must be >= 1");
  if (!(p.pagerank_gamma > 0.0 && p.pagerank_gamma < 1.0)) {
    throw InvalidParameter("pagerank gamma must lie in (0,1)");
  }
  if (p.pagerank_beta && !(*p.pagerank_beta > 0.0 && *p.pagerank_beta < 1.0)) {
    throw InvalidParameter("pagerank beta must lie in (0,1)");
  }
  if (!(p.series_tolerance > 0.0) || !(p.power_iter_tolerance > 0.0)) {
    throw InvalidParameter("tolerances must be > 0");
  }
}

namespace detail {

inline double edge_weight(const MultilayerGraph::Neighbor& nb, Weighting w) {
  return w == Weighting::kWeighted ? nb.weight : 1.0;
}

inline std::vector<char> isolated_nodes(const MultilayerGraph& g) {
  std::vector<char> out(g.n_nodes(), 0);
  for (std::size_t i = 0; i < g.n_nodes(); ++i) out[i] = g.degree(i) == 0;
  return out;
}

/// exp(Shannon entropy) of a distribution, with 0 log 0 = 0.
template <typename Range>
double true_diversity(const Range& probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return std::exp(h);
}

}  // namespace detail

/// Number of incident edges.
inline CentralityResult degree(const MultilayerGraph& g) {
  CentralityResult res{"dg", {}, Direction::kHighestFirst, std::vector<char>(g.n_nodes(), 0)};
  res.scores.resize(g.n_nodes());
  for (std::size_t i = 0; i < g.n_nodes(); ++i) res.scores[i] = static_cast<double>(g.degree(i));
  return res;
}

/// Sum of incident weights; every edge counts 1 on a graph flagged unweighted.
inline CentralityResult strength(const MultilayerGraph& g) {
  const Weighting w = g.weighted() ? Weighting::kWeighted : Weighting::kUnweighted;
  CentralityResult res{"stg", {}, Direction::kHighestFirst, std::vector<char>(g.n_nodes(), 0)};
  res.scores.assign(g.n_nodes(), 0.0);
  for (std::size_t i = 0; i < g.n_nodes(); ++i) {
    for (const auto& nb : g.neighbors(i)) res.scores[i] += detail::edge_weight(nb, w);
  }
  return res;
}

/// All-pairs distances: BFS hop counts or Dijkstra on length 1/weight.
/// Unreachable pairs hold +inf.
inline std::vector<std::vector<double>> distance_matrix(const MultilayerGraph& g,
                                                        Weighting weighting) {
  const std::size_t n = g.n_nodes();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, kInf));
  for (std::size_t s = 0; s < n; ++s) {
    auto& d = dist[s];
    d[s] = 0.0;
    if (weighting == Weighting::kUnweighted) {
      std::queue<std::size_t> q;
      q.push(s);
      while (!q.empty()) {
        const auto u = q.front();
        q.pop();
        for (const auto& nb : g.neighbors(u)) {
          if (d[nb.node] == kInf) {
            d[nb.node] = d[u] + 1.0;
            q.push(nb.node);
          }
        }
      }
    } else {
      using Item = std::pair<double, std::size_t>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      pq.emplace(0.0, s);
      while (!pq.empty()) {
        const auto [du, u] = pq.top();
        pq.pop();
        if (du > d[u]) continue;
        for (const auto& nb : g.neighbors(u)) {
          const double cand = du + 1.0 / nb.weight;
          if (cand < d[nb.node]) {
            d[nb.node] = cand;
            pq.emplace(cand, nb.node);
          }
        }
      }
    }
  }
  return dist;
}

/// l_i = sum_{j != i} d_ij / (N - 1). An unreachable pair counts as
/// D_max + 1, where D_max is the largest finite distance in the graph.
inline CentralityResult avg_shortest_path(const MultilayerGraph& g, Weighting weighting) {
  const std::size_t n = g.n_nodes();
  const auto dist = distance_matrix(g, weighting);
  double d_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && std::isfinite(dist[i][j])) d_max = std::max(d_max, dist[i][j]);
    }
  }
  const double penalty = d_max + 1.0;
  CentralityResult res{weighting == Weighting::kWeighted ? "sp_w" : "sp", {},
                       Direction::kLowestFirst, detail::isolated_nodes(g)};
  res.scores.assign(n, 0.0);
  if (n < 2) return res;
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) total += std::isfinite(dist[i][j]) ? dist[i][j] : penalty;
    }
    res.scores[i] = total / static_cast<double>(n - 1);
  }
  return res;
}

/// Fixed point of pi_i = gamma * sum_j a_ij pi_j / k_j + beta by power
/// iteration, stopping when the L1 change drops below the tolerance.
/// The weighted variant uses w_ij / s_j.
inline CentralityResult pagerank(const MultilayerGraph& g, Weighting weighting,
                                 const WalkParams& params = {}) {
  validate(params);
  const std::size_t n = g.n_nodes();
  CentralityResult res{weighting == Weighting::kWeighted ? "pr_w" : "pr", {},
                       Direction::kHighestFirst, detail::isolated_nodes(g)};
  if (n == 0) return res;
  const double gamma = params.pagerank_gamma;
  const double beta = params.pagerank_beta.value_or((1.0 - gamma) / static_cast<double>(n));

  std::vector<double> out_weight(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& nb : g.neighbors(j)) out_weight[j] += detail::edge_weight(nb, weighting);
  }
  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (std::size_t iter = 1; iter <= params.max_iterations; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (const auto& nb : g.neighbors(i)) {
        acc += detail::edge_weight(nb, weighting) * pi[nb.node] / out_weight[nb.node];
      }
      next[i] = gamma * acc + beta;
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change += std::abs(next[i] - pi[i]);
    pi.swap(next);
    if (change < params.power_iter_tolerance) {
      res.scores = std::move(pi);
      return res;
    }
  }
  throw ConvergenceError("pagerank did not converge after " +
                             std::to_string(params.max_iterations) + " iterations",
                         params.max_iterations);
}

/// Endpoint distribution of self-avoiding random walks of length h from
/// `start`. At each step the walker moves uniformly to an unvisited
/// neighbor. Returns an empty map when no walk completes.
inline std::map<std::size_t, double> saw_probabilities(
    const MultilayerGraph& g, std::size_t start, std::size_t h,
    DeadEndPolicy policy = DeadEndPolicy::kRenormalize) {
  if (h < 1) throw InvalidParameter("saw_probabilities: h must be >= 1");
  if (start >= g.n_nodes()) throw InvalidParameter("saw_probabilities: start out of range");
  std::map<std::size_t, double> mass;
  std::vector<char> visited(g.n_nodes(), 0);
  visited[start] = 1;

  std::function<void(std::size_t, double, std::size_t)> walk = [&](std::size_t node, double p,
                                                                   std::size_t step) {
    if (step == h) {
      mass[node] += p;
      return;
    }
    std::size_t open = 0;
    for (const auto& nb : g.neighbors(node)) open += !visited[nb.node];
    if (open == 0) {
      if (policy == DeadEndPolicy::kCreditTerminal && step > 0) mass[node] += p;
      return;
    }
    const double share = p / static_cast<double>(open);
    for (const auto& nb : g.neighbors(node)) {
      if (visited[nb.node]) continue;
      visited[nb.node] = 1;
      walk(nb.node, share, step + 1);
      visited[nb.node] = 0;
    }
  };
  walk(start, 1.0, 0);

  double total = 0.0;
  for (const auto& [node, p] : mass) total += p;
  if (total <= 0.0) return {};
  for (auto& [node, p] : mass) p /= total;
  return mass;
}

/// a_i = exp(-sum_j p log p) over the h-step self-avoiding walk
/// distribution; 0 when no walk of length h exists.
inline CentralityResult accessibility(const MultilayerGraph& g, std::size_t h,
                                      DeadEndPolicy policy = DeadEndPolicy::kRenormalize) {
  CentralityResult res{"access", {}, Direction::kHighestFirst, detail::isolated_nodes(g)};
  res.scores.assign(g.n_nodes(), 0.0);
  for (std::size_t i = 0; i < g.n_nodes(); ++i) {
    const auto p = saw_probabilities(g, i, h, policy);
    if (p.empty()) continue;
    std::vector<double> values;
    values.reserve(p.size());
    for (const auto& [node, prob] : p) values.push_back(prob);
    res.scores[i] = detail::true_diversity(values);
  }
  return res;
}

using StochasticMatrix = Eigen::MatrixXd;

/// p(i,j) = w_ij / s_i (weighted) or 1 / k_i (unweighted). Isolated nodes
/// get the uniform row.
inline StochasticMatrix stochastic_matrix(const MultilayerGraph& g, Weighting weighting) {
  const auto n = static_cast<Eigen::Index>(g.n_nodes());
  StochasticMatrix p = StochasticMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& nbs = g.neighbors(static_cast<std::size_t>(i));
    if (nbs.empty()) {
      p.row(i).setConstant(1.0 / static_cast<double>(n));
      continue;
    }
    double total = 0.0;
    for (const auto& nb : nbs) total += detail::edge_weight(nb, weighting);
    for (const auto& nb : nbs) {
      p(i, static_cast<Eigen::Index>(nb.node)) = detail::edge_weight(nb, weighting) / total;
    }
  }
  return p;
}

/// P_inf = e^{-1} sum_{j>=0} P^j / j!, truncated once the added term's
/// largest entry falls below `tol`.
inline StochasticMatrix all_lengths_matrix(const StochasticMatrix& p, double tol = 1e-15) {
  if (p.rows() != p.cols()) throw InvalidParameter("all_lengths_matrix: matrix must be square");
  if (!(tol > 0.0)) throw InvalidParameter("all_lengths_matrix: tol must be > 0");
  const auto n = p.rows();
  StochasticMatrix term = StochasticMatrix::Identity(n, n);
  StochasticMatrix sum = term;
  for (int j = 1; j < 1000; ++j) {
    term = (term * p) / static_cast<double>(j);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < tol) break;
  }
  return sum * std::exp(-1.0);
}

/// True diversity of each row of P_inf.
inline CentralityResult generalized_accessibility(const MultilayerGraph& g, Weighting weighting,
                                                  const WalkParams& params = {}) {
  CentralityResult res{"gAccess", {}, Direction::kHighestFirst, detail::isolated_nodes(g)};
  const auto n = g.n_nodes();
  res.scores.assign(n, 0.0);
  if (n == 0) return res;
  const StochasticMatrix pinf = all_lengths_matrix(stochastic_matrix(g, weighting),
                                                   params.series_tolerance);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = pinf.row(static_cast<Eigen::Index>(i));
    res.scores[i] = detail::true_diversity(std::vector<double>(row.begin(), row.end()));
  }
  return res;
}

/// Hop distance of every node from `source` (SIZE_MAX when unreachable).
inline std::vector<std::size_t> bfs_levels(const MultilayerGraph& g, std::size_t source) {
  constexpr auto kUnreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> level(g.n_nodes(), kUnreached);
  std::queue<std::size_t> q;
  level[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const auto u = q.front();
    q.pop();
    for (const auto& nb : g.neighbors(u)) {
      if (level[nb.node] == kUnreached) {
        level[nb.node] = level[u] + 1;
        q.push(nb.node);
      }
    }
  }
  return level;
}

/// Distribution over the h-th concentric level of `source` for a walker
/// that always steps from level k to level k+1. Edges inside a level (and
/// backwards) are ignored. Walkers that reach a node with no forward edge
/// are dropped and the rest renormalized.
inline std::map<std::size_t, double> concentric_probabilities(const MultilayerGraph& g,
                                                              std::size_t source, std::size_t h,
                                                              Weighting weighting) {
  const auto level = bfs_levels(g, source);
  std::map<std::size_t, double> frontier{{source, 1.0}};
  for (std::size_t k = 0; k < h && !frontier.empty(); ++k) {
    std::map<std::size_t, double> next;
    for (const auto& [node, p] : frontier) {
      double total = 0.0;
      for (const auto& nb : g.neighbors(node)) {
        if (level[nb.node] == k + 1) total += detail::edge_weight(nb, weighting);
      }
      if (total <= 0.0) continue;
      for (const auto& nb : g.neighbors(node)) {
        if (level[nb.node] == k + 1) next[nb.node] += p * detail::edge_weight(nb, weighting) / total;
      }
    }
    frontier = std::move(next);
  }
  double total = 0.0;
  for (const auto& [node, p] : frontier) total += p;
  if (total <= 0.0) return {};
  for (auto& [node, p] : frontier) p /= total;
  return frontier;
}

/// S_i = exp(H(p_h)) / |xi_h|, with xi_h the nodes at distance h from i;
/// 0 when that level is empty.
inline CentralityResult symmetry(const MultilayerGraph& g, std::size_t h, Weighting weighting,
                                 Direction direction = Direction::kHighestFirst) {
  if (h < 1) throw InvalidParameter("symmetry: h must be >= 1");
  CentralityResult res{direction == Direction::kHighestFirst ? "sym" : "sym_low", {}, direction,
                       detail::isolated_nodes(g)};
  res.scores.assign(g.n_nodes(), 0.0);
  for (std::size_t i = 0; i < g.n_nodes(); ++i) {
    const auto level = bfs_levels(g, i);
    const auto ring = static_cast<double>(std::count(level.begin(), level.end(), h));
    if (ring == 0.0) continue;
    const auto p = concentric_probabilities(g, i, h, weighting);
    std::vector<double> values;
    for (const auto& [node, prob] : p) values.push_back(prob);
    res.scores[i] = values.empty() ? 0.0 : detail::true_diversity(values) / ring;
  }
  return res;
}

/// Connected components as sorted node lists, ordered by smallest node.
inline std::vector<std::vector<std::size_t>> connected_components(const MultilayerGraph& g) {
  std::vector<std::vector<std::size_t>> comps;
  std::vector<char> seen(g.n_nodes(), 0);
  for (std::size_t s = 0; s < g.n_nodes(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      comp.push_back(u);
      for (const auto& nb : g.neighbors(u)) {
        if (!seen[nb.node]) {
          seen[nb.node] = 1;
          q.push(nb.node);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

/// Mean first-passage matrix M(k, j): expected steps for a walker starting
/// at k to be absorbed at j, within one connected component (P rows
/// already restricted to the component). Diagonal is 0.
///
/// Direct route: for each j, t = (I - Theta_j)^{-1} 1, where Theta_j is P
/// without row and column j.
inline Eigen::MatrixXd first_passage_direct(const Eigen::MatrixXd& p) {
  const auto m = p.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    Eigen::MatrixXd theta(m - 1, m - 1);
    for (Eigen::Index a = 0, ra = 0; a < m; ++a) {
      if (a == j) continue;
      for (Eigen::Index b = 0, cb = 0; b < m; ++b) {
        if (b == j) continue;
        theta(ra, cb++) = p(a, b);
      }
      ++ra;
    }
    const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(m - 1, m - 1) - theta;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
    if (!lu.isInvertible()) {
      throw SingularMatrix("I - Theta is singular for absorbing node " + std::to_string(j));
    }
    const Eigen::VectorXd t = lu.solve(Eigen::VectorXd::Ones(m - 1));
    for (Eigen::Index a = 0, ra = 0; a < m; ++a) {
      if (a == j) continue;
      out(a, j) = t(ra++);
    }
  }
  return out;
}

/// Same matrix from the fundamental matrix Z = (I - P + 1 pi^T)^{-1} of the
/// ergodic chain: M(k, j) = (Z_jj - Z_kj) / pi_j.
inline Eigen::MatrixXd first_passage_fundamental(const Eigen::MatrixXd& p,
                                                 const Eigen::VectorXd& stationary) {
  const auto m = p.rows();
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m) - p +
                            Eigen::VectorXd::Ones(m) * stationary.transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw SingularMatrix("fundamental matrix is singular");
  const Eigen::MatrixXd z = lu.inverse();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (k != j) out(k, j) = (z(j, j) - z(k, j)) / stationary(j);
    }
  }
  return out;
}

/// Mean absorption time per node, computed separately in each connected
/// component. Nodes in singleton components score +inf and are unranked.
inline CentralityResult absorption_time(const MultilayerGraph& g, Weighting weighting,
                                        const WalkParams& params = {}) {
  const auto n = g.n_nodes();
  CentralityResult res{"absT", {}, Direction::kLowestFirst, std::vector<char>(n, 0)};
  res.scores.assign(n, std::numeric_limits<double>::infinity());
  const StochasticMatrix full = stochastic_matrix(g, weighting);

  for (const auto& comp : connected_components(g)) {
    const auto m = static_cast<Eigen::Index>(comp.size());
    if (m < 2) {
      res.unranked[comp.front()] = 1;
      continue;
    }
    Eigen::MatrixXd p(m, m);
    Eigen::VectorXd stationary(m);
    for (Eigen::Index a = 0; a < m; ++a) {
      double s = 0.0;
      for (const auto& nb : g.neighbors(comp[a])) s += detail::edge_weight(nb, weighting);
      stationary(a) = s;
      for (Eigen::Index b = 0; b < m; ++b) {
        p(a, b) = full(static_cast<Eigen::Index>(comp[a]), static_cast<Eigen::Index>(comp[b]));
      }
    }
    stationary /= stationary.sum();

    const Eigen::MatrixXd passage = comp.size() <= params.absorption_direct_limit
                                        ? first_passage_direct(p)
                                        : first_passage_fundamental(p, stationary);
    const double denom = static_cast<double>(m - 1);
    for (Eigen::Index a = 0; a < m; ++a) {
      const double total = params.absorption == AbsorptionReading::kAbsorbAtNode
                               ? passage.col(a).sum()
                               : passage.row(a).sum();
      res.scores[comp[a]] = total / denom;
    }
  }
  return res;
}

/// Node order for summary selection: by score in the result's direction,
/// ties by node id (which follows document order), unranked nodes last.
inline std::vector<std::size_t> rank_order(const CentralityResult& r) {
  std::vector<std::size_t> order(r.scores.size());
  std::iota(order.begin(), order.end(), 0);
  const auto excluded = [&r](std::size_t i) {
    return (i < r.unranked.size() && r.unranked[i]) || std::isnan(r.scores[i]);
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const bool xa = excluded(a);
    const bool xb = excluded(b);
    if (xa != xb) return xb;
    if (xa) return a < b;
    if (r.scores[a] != r.scores[b]) {
      return r.direction == Direction::kHighestFirst ? r.scores[a] > r.scores[b]
                                                     : r.scores[a] < r.scores[b];
    }
    return a < b;
  });
  return order;
}

}  // namespace mlsum

#endif  // MLSUM_CENTRALITY_HPP_
