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

// Sentence segmentation and token normalization.
//
// A sentence is any span terminated by '.', '!' or '?'. Periods inside
// numbers ("3.5") and after a short list of known abbreviations ("Dr.",
// "U.S.") do not terminate a sentence; every other case splits.
//
// normalize() lowercases, strips punctuation and possessive "'s", removes
// stopwords and purely numeric tokens, then maps each surviving token
// through the lemma dictionary, falling back to a plural-stripping stemmer.

#ifndef MLSUM_TEXT_PIPELINE_HPP_
#define MLSUM_TEXT_PIPELINE_HPP_

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mlsum/corpus_io.hpp"
#include "mlsum/errors.hpp"
#include "mlsum/resources.hpp"
#include "mlsum/utf8.hpp"

namespace mlsum {

struct SentenceRecord {
  std::size_t global_id = 0;
  std::string doc_id;
  std::size_t layer_index = 0;
  std::size_t position_in_doc = 0;
  std::string raw_text;
  std::vector<std::string> tokens;

  bool operator==(const SentenceRecord&) const = default;
};

/// Stopwords and lemma dictionary for one language. Lemma lookups are
/// resolved to a fixed point when entries are added, so normalize() stays
/// idempotent.
class LanguageResources {
 public:
  explicit LanguageResources(std::string language) : language_(std::move(language)) {}

  /// Built-in resources for "en" or "pt".
  static LanguageResources builtin(std::string_view language) {
    LanguageResources res{std::string(language)};
    if (language == "en") {
      for (auto w : builtin::kEnglishStopwords) res.add_stopword(w);
      for (auto [surface, lemma] : builtin::kEnglishLemmas) res.add_lemma(surface, lemma);
    } else if (language == "pt") {
      for (auto w : builtin::kPortugueseStopwords) res.add_stopword(w);
    } else {
      throw InvalidParameter("unsupported language '" + std::string(language) + "'");
    }
    return res;
  }

  const std::string& language() const noexcept { return language_; }
  const std::unordered_set<std::string>& stopwords() const noexcept { return stopwords_; }
  const std::unordered_map<std::string, std::string>& lemma_map() const noexcept {
    return lemma_map_;
  }

  bool is_stopword(std::string_view w) const { return stopwords_.count(std::string(w)) > 0; }
  bool is_lemma(std::string_view w) const { return lemma_values_.count(std::string(w)) > 0; }

  /// Dictionary lemma of `w`, or nullptr when `w` has no entry.
  const std::string* lemma_of(std::string_view w) const {
    auto it = lemma_map_.find(std::string(w));
    return it == lemma_map_.end() ? nullptr : &it->second;
  }

  void add_stopword(std::string_view w) { stopwords_.insert(utf8::lower(w)); }

  void add_lemma(std::string_view surface, std::string_view lemma) {
    std::string s = utf8::lower(surface);
    std::string l = utf8::lower(lemma);
    if (s == l) return;
    // Chase chains (a->b, b->c) so every stored value is terminal.
    for (int hop = 0; hop < 16; ++hop) {
      auto it = lemma_map_.find(l);
      if (it == lemma_map_.end() || it->second == s) break;
      l = it->second;
    }
    if (l == s) return;
    for (auto& [key, value] : lemma_map_) {
      if (value == s) value = l;
    }
    lemma_map_[s] = l;
    lemma_values_.clear();
    for (const auto& [key, value] : lemma_map_) lemma_values_.insert(value);
  }

  /// One word per line; blank lines and `#` comments ignored.
  void load_stopwords(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    std::size_t start = 0;
    while (start < text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string::npos) end = text.size();
      auto line = detail::trim(std::string_view(text).substr(start, end - start));
      start = end + 1;
      if (!line.empty() && line.front() != '#') add_stopword(line);
    }
  }

  /// `surface<TAB>lemma` per line.
  void load_lemmas(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start < text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string::npos) end = text.size();
      ++line_no;
      auto line = detail::trim(std::string_view(text).substr(start, end - start));
      start = end + 1;
      if (line.empty() || line.front() == '#') continue;
      const auto tab = line.find('\t');
      if (tab == std::string_view::npos) {
        throw CorpusFormatError(path.string() + ":" + std::to_string(line_no) +
                                ": expected surface<TAB>lemma");
      }
      add_lemma(detail::trim(line.substr(0, tab)), detail::trim(line.substr(tab + 1)));
    }
  }

 private:
  std::string language_;
  std::unordered_set<std::string> stopwords_;
  std::unordered_map<std::string, std::string> lemma_map_;
  std::unordered_set<std::string> lemma_values_;
};

namespace detail {

inline bool ends_with(std::u32string_view w, std::u32string_view suffix) {
  return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

// Harman's S-stemmer: ies -> y, es -> e, s -> "" with the usual exceptions.
// Words shorter than four letters are left alone.
inline std::u32string stem_english(std::u32string w) {
  if (w.size() < 4 || w.back() != U's') return w;
  const char32_t before_es = w.size() >= 3 ? w[w.size() - 3] : 0;
  if (w.size() > 4 && ends_with(w, U"ies") && before_es != U'e' && before_es != U'a') {
    w.resize(w.size() - 3);
    w.push_back(U'y');
  } else if (ends_with(w, U"es") && before_es != U'a' && before_es != U'e' &&
             before_es != U'o') {
    w.pop_back();
  } else if (!ends_with(w, U"us") && !ends_with(w, U"ss")) {
    w.pop_back();
  }
  return w;
}

// Portuguese plural reduction (a subset of the RSLP plural step).
inline std::u32string stem_portuguese(std::u32string w) {
  if (w.size() < 4 || w.back() != U's') return w;
  const auto replace = [&w](std::size_t n, std::u32string_view with) {
    w.resize(w.size() - n);
    w.append(with);
  };
  if (ends_with(w, U"ões") || ends_with(w, U"ães")) {
    replace(3, U"ão");
  } else if (w.size() >= 5 && ends_with(w, U"ais")) {
    replace(3, U"al");
  } else if (ends_with(w, U"éis")) {
    replace(3, U"el");
  } else if (ends_with(w, U"óis")) {
    replace(3, U"ol");
  } else if (w.size() >= 5 && ends_with(w, U"res")) {
    replace(2, U"");
  } else if (ends_with(w, U"ns")) {
    replace(2, U"m");
  } else if (!ends_with(w, U"ss") && !ends_with(w, U"us") && !ends_with(w, U"is")) {
    w.pop_back();
  }
  return w;
}

inline std::string stem(const std::string& token, const std::string& language) {
  std::u32string w = utf8::to_u32(token);
  if (!std::all_of(w.begin(), w.end(), utf8::is_letter)) return token;
  if (language == "en") return utf8::from_u32(stem_english(std::move(w)));
  if (language == "pt") return utf8::from_u32(stem_portuguese(std::move(w)));
  return token;
}

inline bool is_abbreviation(std::u32string_view word_lower) {
  static const std::unordered_set<std::u32string> kAbbrev = {
      U"mr",   U"mrs", U"ms",   U"dr",  U"prof", U"sr",  U"sra", U"jr",  U"st",  U"vs",
      U"e.g",  U"i.e", U"u.s",  U"u.k", U"u.n",  U"inc", U"ltd", U"co",  U"corp",
      U"gen",  U"gov", U"sen",  U"rep", U"jan",  U"feb", U"mar", U"apr", U"jun",
      U"jul",  U"aug", U"sep",  U"sept", U"oct", U"nov", U"dec", U"av",  U"dra",
      U"fig",  U"no",  U"p",    U"pp",  U"vol",
  };
  return kAbbrev.count(std::u32string(word_lower)) > 0;
}

inline bool is_terminator(char32_t c) { return c == U'.' || c == U'!' || c == U'?'; }

inline bool is_closer(char32_t c) {
  return c == U'"' || c == U'\'' || c == U')' || c == U']' || c == 0x201D || c == 0x2019 ||
         c == 0xBB;
}

inline std::string trim_u32(std::u32string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && utf8::is_space(s[b])) ++b;
  while (e > b && utf8::is_space(s[e - 1])) --e;
  return utf8::from_u32(s.substr(b, e - b));
}

}  // namespace detail

/// Splits raw text into sentences. Segments keep their terminating
/// punctuation; whitespace between segments is dropped. Segments without any
/// letter or digit are discarded.
inline std::vector<std::string> segment(std::string_view raw_text) {
  const std::u32string text = utf8::to_u32(raw_text);
  std::vector<std::string> out;
  const auto emit = [&out, &text](std::size_t b, std::size_t e) {
    std::u32string_view piece(text.data() + b, e - b);
    if (std::any_of(piece.begin(), piece.end(), utf8::is_alnum)) {
      out.push_back(detail::trim_u32(piece));
    }
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t c = text[i];
    if (!detail::is_terminator(c)) {
      ++i;
      continue;
    }
    if (c == U'.') {
      const bool digit_before = i > 0 && utf8::is_digit(text[i - 1]);
      const bool digit_after = i + 1 < text.size() && utf8::is_digit(text[i + 1]);
      if (digit_before && digit_after) {
        ++i;
        continue;
      }
      // Word immediately before the period, e.g. "Dr" or "U.S".
      std::size_t w = i;
      while (w > start && !utf8::is_space(text[w - 1])) --w;
      std::u32string word;
      for (std::size_t k = w; k < i; ++k) {
        if (utf8::is_alnum(text[k]) || text[k] == U'.') word.push_back(utf8::to_lower(text[k]));
      }
      const bool followed_by_space_or_end = i + 1 >= text.size() || utf8::is_space(text[i + 1]);
      if (!word.empty() && detail::is_abbreviation(word) && followed_by_space_or_end &&
          i + 1 < text.size()) {
        ++i;
        continue;
      }
      // Inner period of an abbreviation such as "U.S.": not followed by space.
      if (!followed_by_space_or_end && i + 1 < text.size() && utf8::is_letter(text[i + 1])) {
        std::size_t e = i + 1;
        while (e < text.size() && !utf8::is_space(text[e])) ++e;
        std::u32string whole;
        for (std::size_t k = w; k < e; ++k) {
          if (utf8::is_alnum(text[k]) || text[k] == U'.') whole.push_back(utf8::to_lower(text[k]));
        }
        while (!whole.empty() && whole.back() == U'.') whole.pop_back();
        if (detail::is_abbreviation(whole)) {
          ++i;
          continue;
        }
      }
    }
    // Consume runs like "?!" or "..." plus trailing quotes and brackets.
    std::size_t end = i + 1;
    while (end < text.size() && detail::is_terminator(text[end])) ++end;
    while (end < text.size() && detail::is_closer(text[end])) ++end;
    emit(start, end);
    start = end;
    i = end;
  }
  if (start < text.size()) emit(start, text.size());
  return out;
}

/// Content-word tokens of one sentence.
inline std::vector<std::string> normalize(std::string_view sentence,
                                          const LanguageResources& resources) {
  std::vector<std::string> tokens;
  const std::u32string text = utf8::to_u32(sentence);

  const auto finish = [&](std::u32string word) {
    // Trim apostrophes at either end.
    while (!word.empty() && word.front() == U'\'') word.erase(word.begin());
    while (!word.empty() && word.back() == U'\'') word.pop_back();
    if (word.empty()) return;
    for (auto& ch : word) ch = utf8::to_lower(ch);
    std::string form = utf8::from_u32(word);
    if (resources.is_stopword(form)) return;
    if (detail::ends_with(word, U"'s")) word.resize(word.size() - 2);
    word.erase(std::remove(word.begin(), word.end(), U'\''), word.end());
    if (word.empty()) return;
    if (std::none_of(word.begin(), word.end(), utf8::is_letter)) return;
    form = utf8::from_u32(word);
    if (resources.is_stopword(form)) return;

    if (const std::string* lemma = resources.lemma_of(form)) {
      form = *lemma;
    } else if (!resources.is_lemma(form)) {
      form = detail::stem(form, resources.language());
      if (const std::string* lemma2 = resources.lemma_of(form)) form = *lemma2;
    }
    const std::u32string check = utf8::to_u32(form);
    if (form.empty() || std::none_of(check.begin(), check.end(), utf8::is_letter)) return;
    if (resources.is_stopword(form)) return;
    tokens.push_back(std::move(form));
  };

  std::u32string current;
  for (char32_t c : text) {
    if (c == 0x2019) c = U'\'';
    if (utf8::is_alnum(c) || (c == U'\'' && !current.empty())) {
      current.push_back(c);
    } else {
      if (!current.empty()) finish(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) finish(std::move(current));
  return tokens;
}

/// Segments and normalizes every document of a cluster. Global ids follow
/// (layer_index, position_in_doc) order starting at 0.
inline std::vector<SentenceRecord> build_sentences(const Cluster& cluster,
                                                   const LanguageResources& resources) {
  std::vector<SentenceRecord> records;
  std::vector<const Document*> docs;
  for (const auto& d : cluster.documents) docs.push_back(&d);
  std::stable_sort(docs.begin(), docs.end(),
                   [](const Document* a, const Document* b) { return a->layer_index < b->layer_index; });
  for (const Document* doc : docs) {
    std::size_t pos = 0;
    for (auto& raw : segment(doc->raw_text)) {
      SentenceRecord rec;
      rec.global_id = records.size();
      rec.doc_id = doc->id;
      rec.layer_index = doc->layer_index;
      rec.position_in_doc = pos++;
      rec.tokens = normalize(raw, resources);
      rec.raw_text = std::move(raw);
      records.push_back(std::move(rec));
    }
  }
  const bool any_content =
      std::any_of(records.begin(), records.end(), [](const auto& r) { return !r.tokens.empty(); });
  if (!any_content) {
    throw DegenerateCluster("cluster " + cluster.id + " has no content words");
  }
  return records;
}

}  // namespace mlsum

#endif  // MLSUM_TEXT_PIPELINE_HPP_
