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

// Corpus layout on disk:
//
//   <corpus>/<cluster-id>/manifest      key = value lines
//   <corpus>/<cluster-id>/docs/*.txt    source documents (>= 2)
//   <corpus>/<cluster-id>/refs/*.txt    reference summaries (optional)
//
// The manifest must declare `budget = words:N | chars:N | compression:R`
// and may declare `language = en | pt`.

#ifndef MLSUM_CORPUS_IO_HPP_
#define MLSUM_CORPUS_IO_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "mlsum/errors.hpp"
#include "mlsum/utf8.hpp"

namespace mlsum {

struct SummaryBudget {
  enum class Kind { kWords, kChars, kCompression };

  Kind kind = Kind::kWords;
  double value = 0.0;

  static SummaryBudget words(double n) { return {Kind::kWords, n}; }
  static SummaryBudget chars(double n) { return {Kind::kChars, n}; }
  static SummaryBudget compression(double rate) { return {Kind::kCompression, rate}; }

  bool operator==(const SummaryBudget&) const = default;
};

/// Throws InvalidParameter when the value is out of range for its kind.
inline void validate(const SummaryBudget& b) {
  if (!std::isfinite(b.value)) throw InvalidParameter("budget value must be finite");
  if (b.kind == SummaryBudget::Kind::kCompression) {
    if (!(b.value > 0.0 && b.value < 1.0)) {
      throw InvalidParameter("compression rate must lie in (0,1)");
    }
  } else if (b.value < 1.0) {
    throw InvalidParameter("word/char budget must be >= 1");
  }
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view text, const std::string& what) {
  // std::from_chars for double is available in libstdc++ 11.
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidParameter("cannot parse number '" + std::string(text) + "' in " + what);
  }
  return v;
}

}  // namespace detail

/// Parses `words:200`, `chars:665` or `compression:0.70`.
inline SummaryBudget parse_budget(std::string_view text) {
  text = detail::trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidParameter("budget must look like kind:value, got '" + std::string(text) + "'");
  }
  const auto kind = detail::trim(text.substr(0, colon));
  const double value = detail::parse_double(detail::trim(text.substr(colon + 1)), "budget");
  SummaryBudget b;
  if (kind == "words") {
    b = SummaryBudget::words(value);
  } else if (kind == "chars") {
    b = SummaryBudget::chars(value);
  } else if (kind == "compression") {
    b = SummaryBudget::compression(value);
  } else {
    throw InvalidParameter("unknown budget kind '" + std::string(kind) + "'");
  }
  validate(b);
  return b;
}

inline std::string to_string(const SummaryBudget& b) {
  std::ostringstream os;
  switch (b.kind) {
    case SummaryBudget::Kind::kWords: os << "words:" << b.value; break;
    case SummaryBudget::Kind::kChars: os << "chars:" << b.value; break;
    case SummaryBudget::Kind::kCompression: os << "compression:" << b.value; break;
  }
  return os.str();
}

struct Document {
  std::string id;
  std::string raw_text;
  std::size_t layer_index = 0;

  bool operator==(const Document&) const = default;
};

struct Cluster {
  std::string id;
  std::vector<Document> documents;
  std::vector<std::string> references;
  SummaryBudget budget;
  std::string language = "en";

  bool operator==(const Cluster&) const = default;
};

/// Reads a whole file and rejects invalid UTF-8.
inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  std::string text = buf.str();
  if (!utf8::is_valid(text)) throw CorpusFormatError("invalid UTF-8 in " + path.string());
  return text;
}

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
inline std::map<std::string, std::string> parse_key_values(std::string_view text,
                                                           const std::string& source) {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto line = detail::trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw CorpusFormatError(source + ":" + std::to_string(line_no) + ": expected key = value");
    }
    out[std::string(detail::trim(line.substr(0, eq)))] =
        std::string(detail::trim(line.substr(eq + 1)));
  }
  return out;
}

namespace detail {

inline std::vector<std::filesystem::path> sorted_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (std::filesystem::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
    if (it->is_regular_file()) files.push_back(it->path());
  }
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
  return files;
}

}  // namespace detail

/// Loads one cluster directory. Documents are ordered by file name and
/// receive layer indices 0..n-1 in that order.
inline Cluster load_cluster(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a directory: " + dir.string());
  const fs::path docs_dir = dir / "docs";
  if (!fs::is_directory(docs_dir, ec)) {
    throw CorpusFormatError("missing docs/ in " + dir.string());
  }
  const fs::path manifest_path = dir / "manifest";
  if (!fs::is_regular_file(manifest_path, ec)) {
    throw CorpusFormatError("missing manifest in " + dir.string());
  }

  Cluster cluster;
  cluster.id = dir.filename().string();
  if (cluster.id.empty()) cluster.id = dir.parent_path().filename().string();

  const auto manifest = parse_key_values(read_text_file(manifest_path), manifest_path.string());
  const auto budget = manifest.find("budget");
  if (budget == manifest.end()) {
    throw CorpusFormatError(manifest_path.string() + ": no budget declared");
  }
  try {
    cluster.budget = parse_budget(budget->second);
  } catch (const InvalidParameter& e) {
    throw CorpusFormatError(manifest_path.string() + ": " + e.what());
  }
  if (auto lang = manifest.find("language"); lang != manifest.end()) {
    cluster.language = lang->second;
  }

  for (const auto& file : detail::sorted_files(docs_dir)) {
    Document doc;
    doc.id = file.stem().string();
    doc.raw_text = read_text_file(file);
    if (detail::trim(doc.raw_text).empty()) {
      throw CorpusFormatError("empty document " + file.string());
    }
    doc.layer_index = cluster.documents.size();
    cluster.documents.push_back(std::move(doc));
  }
  if (cluster.documents.size() < 2) {
    throw ClusterTooSmall("cluster " + cluster.id + " has " +
                          std::to_string(cluster.documents.size()) +
                          " document(s); at least 2 are required");
  }

  const fs::path refs_dir = dir / "refs";
  if (fs::is_directory(refs_dir, ec)) {
    for (const auto& file : detail::sorted_files(refs_dir)) {
      cluster.references.push_back(read_text_file(file));
    }
  }
  return cluster;
}

/// Loads every cluster subdirectory of `dir`, sorted by cluster id.
inline std::vector<Cluster> load_corpus(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("corpus directory not found: " + dir.string());
  std::vector<fs::path> subdirs;
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
    if (it->is_directory()) subdirs.push_back(it->path());
  }
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  if (subdirs.empty()) throw EmptyCorpus("no cluster directories in " + dir.string());
  std::sort(subdirs.begin(), subdirs.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
  std::vector<Cluster> clusters;
  clusters.reserve(subdirs.size());
  for (const auto& sub : subdirs) clusters.push_back(load_cluster(sub));
  return clusters;
}

}  // namespace mlsum

#endif  // MLSUM_CORPUS_IO_HPP_
