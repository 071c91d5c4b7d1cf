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

// tf-idf sentence vectors.
//
//   tf(t, s)  = count(t in s) / |s|          (within the sentence)
//   idf(t, D) = ln(|D| / DF(t)) + 1          (over the cluster's documents)
//   w(t, s)   = tf(t, s) * idf(t, D)

#ifndef MLSUM_VECTORIZER_HPP_
#define MLSUM_VECTORIZER_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mlsum/errors.hpp"
#include "mlsum/text_pipeline.hpp"

namespace mlsum {

struct TfIdfModel {
  std::map<std::string, std::size_t> vocabulary;  // term -> column
  std::vector<std::size_t> doc_freq;              // by column
  std::size_t n_docs = 0;

  double idf(std::size_t column) const {
    return std::log(static_cast<double>(n_docs) / static_cast<double>(doc_freq.at(column))) + 1.0;
  }
  double idf(const std::string& term) const { return idf(vocabulary.at(term)); }
  std::size_t df(const std::string& term) const { return doc_freq.at(vocabulary.at(term)); }
};

struct SentenceVector {
  std::size_t sentence_id = 0;
  std::vector<std::pair<std::size_t, double>> weights;  // sorted by column
  double norm = 0.0;

  double weight(std::size_t column) const {
    auto it = std::lower_bound(weights.begin(), weights.end(), column,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    return (it != weights.end() && it->first == column) ? it->second : 0.0;
  }
};

/// Vocabulary and document frequencies of one cluster. DF counts distinct
/// doc_ids containing the term.
inline TfIdfModel fit(const std::vector<SentenceRecord>& sentences, std::size_t n_docs) {
  if (n_docs == 0) throw InvalidParameter("fit: n_docs must be >= 1");
  std::map<std::string, std::set<std::string>> docs_of;
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) docs_of[t].insert(s.doc_id);
  }
  if (docs_of.empty()) throw DegenerateCluster("fit: empty vocabulary");
  TfIdfModel model;
  model.n_docs = n_docs;
  for (const auto& [term, docs] : docs_of) {
    if (docs.size() > n_docs) {
      throw InvalidParameter("fit: term '" + term + "' occurs in more documents than n_docs");
    }
    model.vocabulary.emplace(term, model.doc_freq.size());
    model.doc_freq.push_back(docs.size());
  }
  return model;
}

/// Sentences with no tokens map to the zero vector.
inline SentenceVector vectorize(const SentenceRecord& sentence, const TfIdfModel& model) {
  SentenceVector v;
  v.sentence_id = sentence.global_id;
  if (sentence.tokens.empty()) return v;
  std::map<std::size_t, std::size_t> counts;
  for (const auto& t : sentence.tokens) {
    auto it = model.vocabulary.find(t);
    if (it == model.vocabulary.end()) {
      throw InvalidParameter("vectorize: term '" + t + "' not in the fitted vocabulary");
    }
    ++counts[it->second];
  }
  const double len = static_cast<double>(sentence.tokens.size());
  double sq = 0.0;
  v.weights.reserve(counts.size());
  for (const auto& [col, c] : counts) {
    const double w = (static_cast<double>(c) / len) * model.idf(col);
    v.weights.emplace_back(col, w);
    sq += w * w;
  }
  v.norm = std::sqrt(sq);
  return v;
}

inline std::vector<SentenceVector> vectorize_all(const std::vector<SentenceRecord>& sentences,
                                                 const TfIdfModel& model) {
  std::vector<SentenceVector> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(vectorize(s, model));
  return out;
}

/// Cosine similarity; 0 when either vector is zero. Symmetric by
/// construction (the merge visits both operands in column order).
inline double cosine(const SentenceVector& a, const SentenceVector& b) {
  if (a.norm == 0.0 || b.norm == 0.0) return 0.0;
  double dot = 0.0;
  auto ia = a.weights.begin();
  auto ib = b.weights.begin();
  while (ia != a.weights.end() && ib != b.weights.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  const double c = dot / (a.norm * b.norm);
  return std::clamp(c, 0.0, 1.0);
}

/// Dense n x n cosine matrix (diagonal = cosine(v, v)).
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  explicit SimilarityMatrix(const std::vector<SentenceVector>& vectors)
      : n_(vectors.size()), data_(n_ * n_, 0.0) {
    for (std::size_t i = 0; i < n_; ++i) {
      data_[i * n_ + i] = cosine(vectors[i], vectors[i]);
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double c = cosine(vectors[i], vectors[j]);
        data_[i * n_ + j] = c;
        data_[j * n_ + i] = c;
      }
    }
  }
  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

}  // namespace mlsum

#endif  // MLSUM_VECTORIZER_HPP_
