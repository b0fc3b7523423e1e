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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace winsumm {

inline constexpr int kPadId = 0;
inline constexpr int kUnkId = 1;

struct Token {
  std::string surface;
  std::string norm;
  int vocab_id = kUnkId;
};

struct CharSpan {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive
};

struct Sentence {
  std::vector<Token> tokens;
  std::size_t index = 0;
  CharSpan char_span;
  std::string text;  // source text covered by char_span
};

/// Split running text into sentences.
///
/// A boundary is a '.', '!' or '?' (optionally followed by closing quotes or
/// brackets) followed by whitespace and then an uppercase letter or digit.
/// Periods that end a known abbreviation ("Fig.", "e.g.", "et al.", ...) do
/// not split. Sentences that produce no tokens are dropped; surviving
/// sentences are re-indexed from 0.
std::vector<Sentence> split_sentences(std::string_view text);

/// Tokenize on whitespace and punctuation. Punctuation characters become
/// single-character tokens; runs of letters/digits (and any non-ASCII bytes)
/// form word tokens.
std::vector<Token> tokenize_and_normalize(std::string_view sentence_text);

/// Lowercase plus the suffix rules: "ies" -> "y"; trailing "s" removed when
/// the word is longer than 3 and does not end in "ss"; "ing" / "ed" removed
/// when the word is longer than 5.
std::string normalize_word(std::string_view word);

/// True when the token is a single punctuation character.
bool is_punctuation(std::string_view norm);

}  // namespace winsumm
