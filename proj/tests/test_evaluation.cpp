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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "mlsum/evaluation.hpp"
#include "test_util.hpp"

using mlsum::rouge1_recall;

namespace {

std::vector<mlsum::PreparedCluster> toy_clusters() {
  std::vector<mlsum::PreparedCluster> out;
  for (auto& c : mlsum::load_corpus(testutil::fixture("toy"))) {
    out.push_back(mlsum::prepare_cluster(std::move(c), mlsum::LanguageResources::builtin("en")));
  }
  return out;
}

}  // namespace

TEST(Rouge, Identities) {
  EXPECT_DOUBLE_EQ(rouge1_recall("the cat sat", {"the cat sat"}), 1.0);
  EXPECT_DOUBLE_EQ(rouge1_recall("dogs bark", {"the cat sat"}), 0.0);
  EXPECT_DOUBLE_EQ(rouge1_recall("the cat sat", {"the cat ran fast"}), 0.5);
  EXPECT_DOUBLE_EQ(rouge1_recall("The CAT, sat!", {"the cat ran fast"}), 0.5);
}

TEST(Rouge, ClippingAndAggregation) {
  EXPECT_DOUBLE_EQ(rouge1_recall("the the the", {"the cat"}), 0.5);
  EXPECT_DOUBLE_EQ(rouge1_recall("cat", {"cat", "dog"}), 0.5);
  EXPECT_DOUBLE_EQ(rouge1_recall("cat", {"cat", "dog"}, mlsum::ReferenceAggregation::kMax), 1.0);
  EXPECT_THROW(rouge1_recall("cat", {}), mlsum::InvalidReference);
  EXPECT_THROW(rouge1_recall("cat", {" ... "}), mlsum::InvalidReference);
}

TEST(Rouge, MonotoneUnderAddedWords) {
  std::mt19937 rng(13);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f"};
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::string cand;
    std::string ref;
    for (int k = 0; k < 5; ++k) cand += vocab[pick(rng)] + " ";
    for (int k = 0; k < 6; ++k) ref += vocab[pick(rng)] + " ";
    const double before = rouge1_recall(cand, {ref});
    EXPECT_DOUBLE_EQ(rouge1_recall(ref, {ref}), 1.0);
    EXPECT_GE(rouge1_recall(cand + vocab[pick(rng)], {ref}), before);
  }
}

TEST(Spearman, HandValues) {
  EXPECT_DOUBLE_EQ(*mlsum::spearman({1, 2, 3, 4}, {1, 2, 3, 4}), 1.0);
  EXPECT_DOUBLE_EQ(*mlsum::spearman({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0);
  EXPECT_NEAR(*mlsum::spearman({1, 2, 3}, {3, 1, 2}), -0.5, 1e-15);
  EXPECT_FALSE(mlsum::spearman({1, 1, 1}, {1, 2, 3}).has_value());
}

TEST(Spearman, TiesUseAverageRanks) {
  EXPECT_EQ(mlsum::average_ranks({10, 20, 10, 30}), (std::vector<double>{1.5, 3, 1.5, 4}));
}

TEST(Spearman, MatrixSymmetricUnitDiagonal) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<mlsum::CentralityResult> rs;
  for (const char* id : {"a", "b", "c", "d"}) {
    mlsum::CentralityResult r{id, {}, mlsum::Direction::kHighestFirst, {}};
    for (int k = 0; k < 12; ++k) r.scores.push_back(u(rng));
    rs.push_back(r);
  }
  const auto m = mlsum::spearman_matrix(rs);
  for (std::size_t a = 0; a < 4; ++a) {
    EXPECT_EQ(*m.rho[a][a], 1.0);
    for (std::size_t b = 0; b < 4; ++b) EXPECT_EQ(*m.rho[a][b], *m.rho[b][a]);
  }
}

TEST(Sweep, SingleCellTwoClusters) {
  const auto clusters = toy_clusters();
  mlsum::SweepGrid g;
  g.alphas = {1.0};
  g.rs = {0.2};
  g.measures = {"dg"};
  g.ards = {mlsum::RedundancyMethod::kAR1};
  const auto rep = mlsum::run_sweep(clusters, g, {});
  ASSERT_EQ(rep.rows.size(), 1u);
  const auto& row = rep.rows[0];
  ASSERT_EQ(row.per_cluster.size(), 2u);
  EXPECT_DOUBLE_EQ(row.mean, (row.per_cluster[0] + row.per_cluster[1]) / 2.0);
  // Recompute one cell by hand.
  const auto& pc = clusters[0];
  const auto rg = mlsum::remove_weakest(mlsum::apply_alpha(pc.base_graph, 1.0), 0.2);
  const auto s = mlsum::select(pc.selection_context(), mlsum::degree(rg), pc.cluster.budget,
                               mlsum::RedundancyConfig::ar1());
  EXPECT_DOUBLE_EQ(row.per_cluster[0], rouge1_recall(s.text, pc.cluster.references));
}

TEST(Sweep, DefaultGridShapeRangeAndDeterminism) {
  const auto clusters = toy_clusters();
  const auto g = mlsum::SweepGrid::defaults();
  EXPECT_EQ(g.alphas, (std::vector<double>{0.5, 0.7, 0.9, 1.1, 1.3, 1.5, 1.7, 1.9}));
  mlsum::SweepOptions one;
  mlsum::SweepOptions many;
  many.jobs = 4;
  const auto a = mlsum::run_sweep(clusters, g, {}, one);
  const auto b = mlsum::run_sweep(clusters, g, {}, many);
  // 6 r-measures x 8 alphas x 5 r + 5 weighted x 8 alphas, times 2 ARDs.
  EXPECT_EQ(a.rows.size(), (6u * 8 * 5 + 5u * 8) * 2);
  for (const auto& row : a.rows) {
    for (double v : row.per_cluster) {
      if (!std::isnan(v)) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
    EXPECT_EQ(row.r.has_value(), mlsum::measure_spec(row.measure).needs_r);
  }
  std::ostringstream ra;
  std::ostringstream rb;
  mlsum::write_report_csv(ra, a);
  mlsum::write_report_csv(rb, b);
  EXPECT_EQ(ra.str(), rb.str());
}

TEST(Sweep, MissingReferencesRejected) {
  auto clusters = toy_clusters();
  clusters[1].cluster.references.clear();
  EXPECT_THROW(mlsum::run_sweep(clusters, mlsum::SweepGrid::defaults(), {}), mlsum::InvalidReference);
}

TEST(Sweep, FailingCellsAreRecorded) {
  auto clusters = toy_clusters();
  for (auto& pc : clusters) pc.cluster.budget = mlsum::SummaryBudget::words(1);
  mlsum::SweepGrid g = mlsum::SweepGrid::defaults();
  g.measures = {"dg"};
  const auto rep = mlsum::run_sweep(clusters, g, {});
  for (const auto& row : rep.rows) {
    EXPECT_TRUE(std::isnan(row.mean));
    EXPECT_EQ(row.errors.size(), 2u);
  }
}

TEST(BestTable, SchemaAndRowCount) {
  const auto clusters = toy_clusters();
  auto g = mlsum::SweepGrid::defaults();
  g.measures = {"dg", "pr_w", "sym"};
  const auto rep = mlsum::run_sweep(clusters, g, {});
  std::ostringstream os;
  mlsum::write_best_csv(os, rep);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header, "rank,measure,alpha,r,ard,rg1");
  std::size_t rows = 0;
  for (std::string line; std::getline(is, line);) {
    ++rows;
    if (line.find(",pr_w,") != std::string::npos || line.find(",sym,") != std::string::npos) {
      EXPECT_NE(line.find(",--,"), std::string::npos) << line;
    }
  }
  EXPECT_EQ(rows, 3u);
}

TEST(Curves, OneRowPerAlphaAndR) {
  const auto clusters = toy_clusters();
  auto g = mlsum::SweepGrid::defaults();
  g.measures = {"pr", "stg"};
  const auto rep = mlsum::run_sweep(clusters, g, {});
  std::ostringstream pr;
  std::ostringstream stg;
  mlsum::write_curve_csv(pr, rep, "pr");
  mlsum::write_curve_csv(stg, rep, "stg");
  const std::string a = pr.str();
  const std::string b = stg.str();
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 1 + 8 * 5);
  EXPECT_EQ(std::count(b.begin(), b.end(), '\n'), 1 + 8);
}
