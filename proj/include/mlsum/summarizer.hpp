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

// Extract generation under a length budget with optional anti-redundancy.
//
// AR1 rejects a candidate whose cosine similarity to an already selected
// sentence exceeds L1 = (max - min) / 2 over all sentence pairs. AR2 uses a
// weighted n-gram Jaccard similarity with threshold L2.

#ifndef MLSUM_SUMMARIZER_HPP_
#define MLSUM_SUMMARIZER_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mlsum/centrality.hpp"
#include "mlsum/corpus_io.hpp"
#include "mlsum/errors.hpp"
#include "mlsum/text_pipeline.hpp"
#include "mlsum/vectorizer.hpp"

namespace mlsum {

enum class RedundancyMethod { kNone, kAR1, kAR2 };

inline const char* to_string(RedundancyMethod m) {
  switch (m) {
    case RedundancyMethod::kNone: return "none";
    case RedundancyMethod::kAR1: return "AR1";
    case RedundancyMethod::kAR2: return "AR2";
  }
  return "?";
}

inline RedundancyMethod parse_redundancy(std::string_view s) {
  if (s == "none") return RedundancyMethod::kNone;
  if (s == "AR1" || s == "ar1") return RedundancyMethod::kAR1;
  if (s == "AR2" || s == "ar2") return RedundancyMethod::kAR2;
  throw InvalidParameter("unknown anti-redundancy method '" + std::string(s) + "'");
}

struct RedundancyConfig {
  RedundancyMethod method = RedundancyMethod::kNone;
  double l2 = 0.1;
  std::size_t n = 4;
  std::vector<double> gamma = {0.25, 0.25, 0.25, 0.25};

  static RedundancyConfig ar1() { return {RedundancyMethod::kAR1}; }
  static RedundancyConfig ar2() { return {RedundancyMethod::kAR2}; }
};

inline void validate(const RedundancyConfig& c) {
  if (c.method != RedundancyMethod::kAR2) return;
  if (!(c.l2 > 0.0 && c.l2 < 1.0)) throw InvalidParameter("L2 must lie in (0,1)");
  if (c.n < 1 || c.gamma.size() != c.n) throw InvalidParameter("gamma must hold n weights");
  for (double g : c.gamma) {
    if (!(g >= 0.0)) throw InvalidParameter("gamma weights must be >= 0");
  }
}

/// How selection order is presented in the final text.
enum class SummaryOrder { kSelection, kDocument };

struct Summary {
  std::string cluster_id;
  std::vector<std::size_t> selected;
  std::string text;
  std::size_t budget_used = 0;  // words or characters, per the budget kind
};

/// L1 = (max sigma - min sigma) / 2 over the given pairwise similarities.
inline double ar1_threshold(std::span<const double> sims) {
  if (sims.empty()) throw InvalidInput("ar1_threshold needs at least one sentence pair");
  const auto [lo, hi] = std::minmax_element(sims.begin(), sims.end());
  return (*hi - *lo) / 2.0;
}

/// AR1 threshold over every distinct pair of a similarity matrix.
inline double ar1_threshold(const SimilarityMatrix& sims) {
  if (sims.size() < 2) throw InvalidInput("ar1_threshold needs at least 2 sentences");
  std::vector<double> values;
  values.reserve(sims.size() * (sims.size() - 1) / 2);
  for (std::size_t i = 0; i < sims.size(); ++i) {
    for (std::size_t j = i + 1; j < sims.size(); ++j) values.push_back(sims(i, j));
  }
  return ar1_threshold(values);
}

namespace detail {

inline std::set<std::vector<std::string>> kgrams(const std::vector<std::string>& tokens,
                                                 std::size_t k) {
  std::set<std::vector<std::string>> out;
  if (tokens.size() < k) return out;
  for (std::size_t i = 0; i + k <= tokens.size(); ++i) {
    out.emplace(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                tokens.begin() + static_cast<std::ptrdiff_t>(i + k));
  }
  return out;
}

}  // namespace detail

/// sum_k gamma_k |g(a,k) ∩ g(b,k)| / |g(a,k) ∪ g(b,k)|; empty unions add 0.
inline double ngram_similarity(const SentenceRecord& a, const SentenceRecord& b,
                               const RedundancyConfig& cfg) {
  if (cfg.gamma.size() != cfg.n) throw InvalidParameter("gamma must hold n weights");
  double sim = 0.0;
  for (std::size_t k = 1; k <= cfg.n; ++k) {
    const auto ga = detail::kgrams(a.tokens, k);
    const auto gb = detail::kgrams(b.tokens, k);
    std::size_t common = 0;
    for (const auto& g : ga) common += gb.count(g);
    const std::size_t uni = ga.size() + gb.size() - common;
    if (uni == 0) continue;
    sim += cfg.gamma[k - 1] * static_cast<double>(common) / static_cast<double>(uni);
  }
  return sim;
}

/// Whitespace-separated word count.
inline std::size_t word_count(std::string_view text) {
  std::size_t n = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    const bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

/// Budget in words or characters. Compression rates become a word budget
/// of ceil((1 - rate) * total words).
struct BudgetLimit {
  bool chars = false;
  std::size_t limit = 0;
};

inline BudgetLimit resolve_budget(const SummaryBudget& budget,
                                  const std::vector<SentenceRecord>& sentences) {
  validate(budget);
  switch (budget.kind) {
    case SummaryBudget::Kind::kWords:
      return {false, static_cast<std::size_t>(std::floor(budget.value))};
    case SummaryBudget::Kind::kChars:
      return {true, static_cast<std::size_t>(std::floor(budget.value))};
    case SummaryBudget::Kind::kCompression: {
      std::size_t total = 0;
      for (const auto& s : sentences) total += word_count(s.raw_text);
      return {false, static_cast<std::size_t>(
                         std::ceil((1.0 - budget.value) * static_cast<double>(total) - 1e-9))};
    }
  }
  return {};
}

/// Inputs shared by every selection over one cluster.
struct SelectionContext {
  const std::vector<SentenceRecord>& sentences;
  const SimilarityMatrix& similarity;  // cosine, indexed by global id
};

/// Greedy extraction in ranking order. A candidate is skipped when it has
/// no content words, when it is redundant with a selected sentence, or when
/// it does not fit the remaining budget (later shorter candidates are still
/// tried). Sentences are joined with single spaces.
inline Summary select(const SelectionContext& ctx, const CentralityResult& ranking,
                      const SummaryBudget& budget, const RedundancyConfig& red,
                      std::string cluster_id = {}, SummaryOrder order = SummaryOrder::kSelection) {
  const auto& sentences = ctx.sentences;
  if (ranking.scores.size() != sentences.size()) {
    throw InvalidInput("ranking does not cover every sentence");
  }
  validate(red);
  const BudgetLimit limit = resolve_budget(budget, sentences);
  const double l1 =
      red.method == RedundancyMethod::kAR1 && sentences.size() >= 2 ? ar1_threshold(ctx.similarity) : 0.0;

  Summary summary;
  summary.cluster_id = std::move(cluster_id);
  std::size_t used = 0;
  for (std::size_t id : rank_order(ranking)) {
    const auto& cand = sentences[id];
    if (cand.tokens.empty()) continue;
    const std::size_t cost =
        limit.chars ? utf8::length(cand.raw_text) + (summary.selected.empty() ? 0 : 1)
                    : word_count(cand.raw_text);
    if (used + cost > limit.limit) continue;
    bool redundant = false;
    for (std::size_t prev : summary.selected) {
      if (red.method == RedundancyMethod::kAR1) {
        redundant = ctx.similarity(id, prev) > l1;
      } else if (red.method == RedundancyMethod::kAR2) {
        redundant = ngram_similarity(cand, sentences[prev], red) > red.l2;
      }
      if (redundant) break;
    }
    if (redundant) continue;
    summary.selected.push_back(id);
    used += cost;
  }
  if (summary.selected.empty()) {
    throw EmptySummary("no sentence fits the budget " + to_string(budget));
  }
  summary.budget_used = used;

  std::vector<std::size_t> shown = summary.selected;
  if (order == SummaryOrder::kDocument) std::sort(shown.begin(), shown.end());
  for (std::size_t k = 0; k < shown.size(); ++k) {
    if (k) summary.text += ' ';
    summary.text += sentences[shown[k]].raw_text;
  }
  return summary;
}

}  // namespace mlsum

#endif  // MLSUM_SUMMARIZER_HPP_
