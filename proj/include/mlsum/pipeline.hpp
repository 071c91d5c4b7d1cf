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

#ifndef MLSUM_PIPELINE_HPP_
#define MLSUM_PIPELINE_HPP_

#include <algorithm>
#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mlsum/centrality.hpp"
#include "mlsum/corpus_io.hpp"
#include "mlsum/graph.hpp"
#include "mlsum/summarizer.hpp"
#include "mlsum/text_pipeline.hpp"
#include "mlsum/vectorizer.hpp"

namespace mlsum {

/// One ranking measure and the graph it reads. Measures with needs_r run
/// on the r-thresholded unweighted graph; the rest on the weighted
/// alpha-graph and ignore r.
struct MeasureSpec {
  std::string_view id;
  Direction direction;
  bool needs_r;
};

inline constexpr std::array<MeasureSpec, 11> kMeasures = {{
    {"dg", Direction::kHighestFirst, true},
    {"stg", Direction::kHighestFirst, false},
    {"pr", Direction::kHighestFirst, true},
    {"pr_w", Direction::kHighestFirst, false},
    {"sp", Direction::kLowestFirst, true},
    {"sp_w", Direction::kLowestFirst, false},
    {"access", Direction::kHighestFirst, true},
    {"gAccess", Direction::kHighestFirst, true},
    {"sym", Direction::kHighestFirst, false},
    {"sym_low", Direction::kLowestFirst, false},
    {"absT", Direction::kLowestFirst, true},
}};

inline const MeasureSpec& measure_spec(std::string_view id) {
  for (const auto& m : kMeasures) {
    if (m.id == id) return m;
  }
  throw InvalidParameter("unknown measure '" + std::string(id) + "'");
}

inline std::vector<std::string> all_measure_ids() {
  std::vector<std::string> out;
  for (const auto& m : kMeasures) out.emplace_back(m.id);
  return out;
}

/// Scores one measure. `r_graph` may be null for measures that ignore r.
inline CentralityResult score_measure(std::string_view id, const MultilayerGraph& alpha_graph,
                                      const MultilayerGraph* r_graph, const WalkParams& params) {
  const MeasureSpec& spec = measure_spec(id);
  if (spec.needs_r && r_graph == nullptr) {
    throw InvalidParameter("measure " + std::string(id) + " needs an r-thresholded graph");
  }
  const auto& ug = spec.needs_r ? *r_graph : alpha_graph;
  if (id == "dg") return degree(ug);
  if (id == "stg") return strength(alpha_graph);
  if (id == "pr") return pagerank(ug, Weighting::kUnweighted, params);
  if (id == "pr_w") return pagerank(alpha_graph, Weighting::kWeighted, params);
  if (id == "sp") return avg_shortest_path(ug, Weighting::kUnweighted);
  if (id == "sp_w") return avg_shortest_path(alpha_graph, Weighting::kWeighted);
  if (id == "access") return accessibility(ug, params.h, params.dead_ends);
  if (id == "gAccess") return generalized_accessibility(ug, Weighting::kUnweighted, params);
  if (id == "sym") return symmetry(alpha_graph, params.h, Weighting::kWeighted, Direction::kHighestFirst);
  if (id == "sym_low") return symmetry(alpha_graph, params.h, Weighting::kWeighted, Direction::kLowestFirst);
  return absorption_time(ug, Weighting::kUnweighted, params);
}

/// Everything about a cluster that does not depend on (alpha, r).
struct PreparedCluster {
  Cluster cluster;
  std::vector<SentenceRecord> sentences;
  TfIdfModel model;
  std::vector<SentenceVector> vectors;
  SimilarityMatrix similarity;
  MultilayerGraph base_graph;  // alpha = 1

  SelectionContext selection_context() const { return {sentences, similarity}; }
};

inline PreparedCluster prepare_cluster(Cluster cluster, const LanguageResources& resources) {
  PreparedCluster pc;
  pc.sentences = build_sentences(cluster, resources);
  pc.model = fit(pc.sentences, cluster.documents.size());
  pc.vectors = vectorize_all(pc.sentences, pc.model);
  pc.similarity = SimilarityMatrix(pc.vectors);
  std::vector<std::size_t> layers;
  layers.reserve(pc.sentences.size());
  for (const auto& s : pc.sentences) layers.push_back(s.layer_index);
  pc.base_graph = build(pc.vectors, layers);
  pc.cluster = std::move(cluster);
  return pc;
}

/// Writes the cosine matrix as CSV with a header of sentence ids.
inline void write_similarity_csv(std::ostream& os, const SimilarityMatrix& sims) {
  os << "id";
  for (std::size_t j = 0; j < sims.size(); ++j) os << ',' << j;
  os << '\n';
  const auto old_precision = os.precision(17);
  for (std::size_t i = 0; i < sims.size(); ++i) {
    os << i;
    for (std::size_t j = 0; j < sims.size(); ++j) os << ',' << sims(i, j);
    os << '\n';
  }
  os.precision(old_precision);
}

inline void write_scores_csv(std::ostream& os, const CentralityResult& r) {
  os << "node,score\n";
  const auto old_precision = os.precision(17);
  for (std::size_t i = 0; i < r.scores.size(); ++i) os << i << ',' << r.scores[i] << '\n';
  os.precision(old_precision);
}

}  // namespace mlsum

#endif  // MLSUM_PIPELINE_HPP_
