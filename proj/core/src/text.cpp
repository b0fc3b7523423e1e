// Copyright 2026 The winsumm Authors.
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

#include "winsumm/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace winsumm {
namespace {

constexpr std::array<std::string_view, 10> kAbbreviations = {
    "fig.", "eq.", "et al.", "e.g.", "i.e.", "dr.", "vs.", "al.", "sec.", "no."};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || u >= 0x80;
}

bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Does the '.' at `dot` terminate an abbreviation from the stop-list?
bool ends_abbreviation(std::string_view text, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > 0 && !is_space(text[begin - 1])) --begin;
  std::string word = lower(text.substr(begin, dot + 1 - begin));
  // Strip leading brackets/quotes such as "(Fig."
  const auto first = word.find_first_not_of("([{\"'");
  word = first == std::string::npos ? std::string{} : word.substr(first);
  // "et al." is caught through its last word, which is listed on its own.
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) !=
         kAbbreviations.end();
}

}  // namespace

bool is_punctuation(std::string_view norm) {
  return norm.size() == 1 && !is_word_char(norm[0]) && !is_space(norm[0]);
}

std::string normalize_word(std::string_view word) {
  std::string w = lower(word);
  if (ends_with(w, "ies") && w.size() > 3) {
    w.replace(w.size() - 3, 3, "y");
  } else if (w.size() > 5 && ends_with(w, "ing")) {
    w.resize(w.size() - 3);
  } else if (w.size() > 5 && ends_with(w, "ed")) {
    w.resize(w.size() - 2);
  } else if (w.size() > 3 && ends_with(w, "s") && !ends_with(w, "ss")) {
    w.pop_back();
  }
  return w;
}

std::vector<Token> tokenize_and_normalize(std::string_view sentence_text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < sentence_text.size()) {
    const char c = sentence_text[i];
    if (is_space(c)) {
      ++i;
    } else if (is_word_char(c)) {
      std::size_t j = i;
      while (j < sentence_text.size() && is_word_char(sentence_text[j])) ++j;
      const auto surface = sentence_text.substr(i, j - i);
      tokens.push_back(Token{std::string(surface), normalize_word(surface), kUnkId});
      i = j;
    } else {
      const std::string surface(1, c);
      tokens.push_back(Token{surface, surface, kUnkId});
      ++i;
    }
  }
  return tokens;
}

std::vector<Sentence> split_sentences(std::string_view text) {
  std::vector<Sentence> out;
  auto emit = [&](std::size_t start, std::size_t end) {
    while (start < end && is_space(text[start])) ++start;
    while (end > start && is_space(text[end - 1])) --end;
    if (start == end) return;
    Sentence s;
    s.text = std::string(text.substr(start, end - start));
    s.tokens = tokenize_and_normalize(s.text);
    if (s.tokens.empty()) return;
    s.char_span = {start, end};
    s.index = out.size();
    out.push_back(std::move(s));
  };

  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t end = i + 1;
    while (end < text.size() && is_closer(text[end])) ++end;
    std::size_t next = end;
    while (next < text.size() && is_space(text[next])) ++next;
    if (next == end || next == text.size()) continue;
    const auto u = static_cast<unsigned char>(text[next]);
    if (!std::isupper(u) && !std::isdigit(u)) continue;
    if (c == '.' && ends_abbreviation(text, i)) continue;
    emit(start, end);
    start = end;
    i = end - 1;
  }
  emit(start, text.size());
  return out;
}

}  // namespace winsumm
