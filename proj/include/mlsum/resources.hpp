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

// Built-in stopword lists and a small irregular-form lemma table. Larger
// dictionaries are loaded from files (see text_pipeline.hpp).

#ifndef MLSUM_RESOURCES_HPP_
#define MLSUM_RESOURCES_HPP_

#include <array>
#include <string_view>
#include <utility>

namespace mlsum::builtin {

// Function words of English (articles, pronouns, auxiliaries, prepositions,
// conjunctions, contraction fragments).
inline constexpr std::string_view kEnglishStopwords[] = {
    "a", "about", "above", "after", "again", "against", "ain", "all", "am", "an", "and",
    "any", "are", "aren", "aren't", "as", "at", "be", "because", "been", "before", "being",
    "below", "between", "both", "but", "by", "can", "couldn", "couldn't", "d", "did",
    "didn", "didn't", "do", "does", "doesn", "doesn't", "doing", "don", "don't", "down",
    "during", "each", "few", "for", "from", "further", "had", "hadn", "hadn't", "has",
    "hasn", "hasn't", "have", "haven", "haven't", "having", "he", "her", "here", "hers",
    "herself", "him", "himself", "his", "how", "i", "if", "in", "into", "is", "isn",
    "isn't", "it", "it's", "its", "itself", "just", "ll", "m", "ma", "me", "mightn",
    "mightn't", "more", "most", "mustn", "mustn't", "my", "myself", "needn", "needn't",
    "no", "nor", "not", "now", "o", "of", "off", "on", "once", "only", "or", "other", "our",
    "ours", "ourselves", "out", "over", "own", "re", "s", "same", "shan", "shan't", "she",
    "she's", "should", "should've", "shouldn", "shouldn't", "so", "some", "such", "t",
    "than", "that", "that'll", "the", "their", "theirs", "them", "themselves", "then",
    "there", "these", "they", "this", "those", "through", "to", "too", "under", "until",
    "up", "ve", "very", "was", "wasn", "wasn't", "we", "were", "weren", "weren't", "what",
    "when", "where", "which", "while", "who", "whom", "why", "will", "with", "won", "won't",
    "wouldn", "wouldn't", "y", "you", "you'd", "you'll", "you're", "you've", "your",
    "yours", "yourself", "yourselves", "also", "would", "could", "may", "might", "must",
    "shall", "us", "upon", "yet", "via",
};

inline constexpr std::string_view kPortugueseStopwords[] = {
    "a", "à", "ao", "aos", "aquela", "aquelas", "aquele", "aqueles", "aquilo", "as", "às",
    "até", "com", "como", "da", "das", "de", "dela", "delas", "dele", "deles", "depois",
    "do", "dos", "e", "é", "ela", "elas", "ele", "eles", "em", "entre", "era", "eram",
    "essa", "essas", "esse", "esses", "esta", "está", "estamos", "estão", "estas", "estava",
    "estavam", "estávamos", "este", "esteve", "estes", "estive", "estivemos", "estiveram",
    "estou", "eu", "foi", "fomos", "foram", "fui", "há", "havia", "houve", "isso", "isto",
    "já", "lhe", "lhes", "mais", "mas", "me", "mesmo", "meu", "meus", "minha", "minhas",
    "muito", "na", "não", "nas", "nem", "no", "nos", "nós", "nossa", "nossas", "nosso",
    "nossos", "num", "numa", "o", "os", "ou", "para", "pela", "pelas", "pelo", "pelos",
    "pois", "por", "porque", "qual", "quando", "que", "quem", "são", "se", "seja", "sejam",
    "sem", "ser", "será", "serão", "seu", "seus", "só", "sobre", "sou", "somos", "sua",
    "suas", "também", "te", "tem", "têm", "ter", "teu", "teus", "tinha", "tinham", "tu",
    "tua", "tuas", "um", "uma", "umas", "uns", "você", "vocês", "vos",
};

// Irregular English forms that the plural-stripping fallback cannot reach.
inline constexpr std::pair<std::string_view, std::string_view> kEnglishLemmas[] = {
    {"children", "child"}, {"men", "man"},       {"women", "woman"},   {"people", "person"},
    {"feet", "foot"},      {"teeth", "tooth"},   {"mice", "mouse"},    {"geese", "goose"},
    {"larger", "large"},   {"largest", "large"}, {"bigger", "big"},    {"biggest", "big"},
    {"better", "good"},    {"best", "good"},     {"worse", "bad"},     {"worst", "bad"},
    {"went", "go"},        {"gone", "go"},       {"took", "take"},     {"taken", "take"},
    {"made", "make"},      {"said", "say"},      {"told", "tell"},     {"ran", "run"},
    {"running", "run"},    {"wrote", "write"},   {"written", "write"}, {"saw", "see"},
    {"seen", "see"},       {"gave", "give"},     {"given", "give"},    {"got", "get"},
    {"began", "begin"},    {"begun", "begin"},   {"knew", "know"},     {"known", "know"},
    {"thought", "think"},  {"brought", "bring"}, {"bought", "buy"},
    {"lost", "lose"},      {"held", "hold"},     {"met", "meet"},      {"paid", "pay"},
};

}  // namespace mlsum::builtin

#endif  // MLSUM_RESOURCES_HPP_
