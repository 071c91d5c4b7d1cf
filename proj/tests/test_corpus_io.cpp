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

#include "mlsum/corpus_io.hpp"
#include "test_util.hpp"

using mlsum::SummaryBudget;
using testutil::TempDir;
using testutil::write;

namespace {

void write_cluster(const std::filesystem::path& dir, int n_docs, const std::string& budget = "words:200") {
  write(dir / "manifest", "budget = " + budget + "\n");
  for (int i = 1; i <= n_docs; ++i) {
    write(dir / "docs" / ("d" + std::to_string(i) + ".txt"), "Document number " + std::to_string(i) + ".");
  }
}

}  // namespace

TEST(CorpusIo, TwoDocsOneReference) {
  TempDir tmp;
  write_cluster(tmp.path() / "x", 2);
  write(tmp.path() / "x" / "refs" / "r1.txt", "A reference.");
  const auto c = mlsum::load_cluster(tmp.path() / "x");
  EXPECT_EQ(c.id, "x");
  ASSERT_EQ(c.documents.size(), 2u);
  EXPECT_EQ(c.documents[0].id, "d1");
  EXPECT_EQ(c.documents[1].id, "d2");
  ASSERT_EQ(c.references.size(), 1u);
  EXPECT_EQ(c.budget.kind, SummaryBudget::Kind::kWords);
  EXPECT_DOUBLE_EQ(c.budget.value, 200.0);
  EXPECT_EQ(c.language, "en");
}

TEST(CorpusIo, SingleDocumentIsTooSmall) {
  TempDir tmp;
  write_cluster(tmp.path() / "x", 1);
  EXPECT_THROW(mlsum::load_cluster(tmp.path() / "x"), mlsum::ClusterTooSmall);
}

TEST(CorpusIo, ToyClusterLayersFollowFileNames) {
  const auto c = mlsum::load_cluster(testutil::fixture("toy/c01"));
  ASSERT_EQ(c.documents.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(c.documents[i].layer_index, i);
    EXPECT_EQ(c.documents[i].id, "d" + std::to_string(i + 1));
  }
  EXPECT_EQ(c.references.size(), 2u);
  EXPECT_DOUBLE_EQ(c.budget.value, 45.0);
}

TEST(CorpusIo, CorpusSortedById) {
  TempDir tmp;
  for (const char* id : {"zeta", "alpha", "mid"}) write_cluster(tmp.path() / id, 2);
  const auto cs = mlsum::load_corpus(tmp.path());
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_EQ(cs[0].id, "alpha");
  EXPECT_EQ(cs[1].id, "mid");
  EXPECT_EQ(cs[2].id, "zeta");
}

TEST(CorpusIo, EmptyDirectoryIsEmptyCorpus) {
  TempDir tmp;
  EXPECT_THROW(mlsum::load_corpus(tmp.path()), mlsum::EmptyCorpus);
}

TEST(CorpusIo, MissingDirectoryIsIoError) {
  EXPECT_THROW(mlsum::load_corpus("/nonexistent/mlsum/corpus"), mlsum::IoError);
  EXPECT_THROW(mlsum::load_cluster("/nonexistent/mlsum/cluster"), mlsum::IoError);
}

TEST(CorpusIo, ToyCorpusIds) {
  const auto cs = mlsum::load_corpus(testutil::fixture("toy"));
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0].id, "c01");
  EXPECT_EQ(cs[1].id, "c02");
}

TEST(CorpusIo, LoadingIsDeterministic) {
  EXPECT_EQ(mlsum::load_cluster(testutil::fixture("toy/c01")), mlsum::load_cluster(testutil::fixture("toy/c01")));
}

TEST(CorpusIo, LayerIndicesAreContiguous) {
  TempDir tmp;
  write_cluster(tmp.path() / "x", 7);
  const auto c = mlsum::load_cluster(tmp.path() / "x");
  for (std::size_t i = 0; i < c.documents.size(); ++i) EXPECT_EQ(c.documents[i].layer_index, i);
}

TEST(CorpusIo, InvalidUtf8IsRejected) {
  TempDir tmp;
  write_cluster(tmp.path() / "x", 2);
  write(tmp.path() / "x" / "docs" / "d3.txt", std::string("bad \xC3\x28 byte"));
  EXPECT_THROW(mlsum::load_cluster(tmp.path() / "x"), mlsum::CorpusFormatError);
}

TEST(CorpusIo, MalformedManifests) {
  TempDir tmp;
  write_cluster(tmp.path() / "nobudget", 2);
  write(tmp.path() / "nobudget" / "manifest", "# nothing here\n");
  EXPECT_THROW(mlsum::load_cluster(tmp.path() / "nobudget"), mlsum::CorpusFormatError);

  write_cluster(tmp.path() / "badbudget", 2, "pages:3");
  EXPECT_THROW(mlsum::load_cluster(tmp.path() / "badbudget"), mlsum::CorpusFormatError);

  write(tmp.path() / "nodocs" / "manifest", "budget = words:10\n");
  EXPECT_THROW(mlsum::load_cluster(tmp.path() / "nodocs"), mlsum::CorpusFormatError);
}

TEST(CorpusIo, BudgetParsing) {
  EXPECT_EQ(mlsum::parse_budget("words:200").kind, SummaryBudget::Kind::kWords);
  EXPECT_EQ(mlsum::parse_budget("chars:665").kind, SummaryBudget::Kind::kChars);
  const auto c = mlsum::parse_budget(" compression : 0.70 ");
  EXPECT_EQ(c.kind, SummaryBudget::Kind::kCompression);
  EXPECT_DOUBLE_EQ(c.value, 0.70);
  EXPECT_THROW(mlsum::parse_budget("words"), mlsum::InvalidParameter);
  EXPECT_THROW(mlsum::parse_budget("words:0"), mlsum::InvalidParameter);
  EXPECT_THROW(mlsum::parse_budget("compression:1.0"), mlsum::InvalidParameter);
  EXPECT_THROW(mlsum::parse_budget("words:abc"), mlsum::InvalidParameter);
  EXPECT_EQ(mlsum::parse_budget(mlsum::to_string(c)).value, c.value);
}
