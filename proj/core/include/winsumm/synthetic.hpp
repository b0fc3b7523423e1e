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
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "winsumm/corpus.hpp"
#include "winsumm/random.hpp"

namespace winsumm::synthetic {

/// Raw text of one generated paper/slides pair.
struct PairText {
  std::string id;
  std::string paper;
  std::string slides;
};

/// `count` distinct lowercase pseudo-words built from consonant-vowel
/// syllables. Words end in a vowel so normalization leaves them unchanged.
std::vector<std::string> lexicon(std::size_t count, std::uint64_t seed);

/// Capitalized sentence text ending in " ." for the given words.
std::string sentence_text(std::span<const std::string> words);

CorpusPair materialize(const PairText& text);
std::vector<CorpusPair> materialize(std::span<const PairText> texts);

/// Write `<id>.paper.txt` and `<id>.slides.txt` files.
void write_corpus(const std::filesystem::path& dir, std::span<const PairText> texts);

/// Documents whose gold summary is exactly `designated` sentences, one placed
/// at a random position inside each consecutive block of `block` sentences.
/// Other sentences use a disjoint vocabulary.
struct DesignatedOptions {
  std::size_t docs = 8;
  std::size_t sentences = 20;
  std::size_t block = 10;
  std::size_t min_words = 5;
  std::size_t max_words = 9;
  std::uint64_t seed = 1;
};
std::vector<PairText> designated_corpus(const DesignatedOptions& opts);

/// Papers with `sections` sections of `section_length` sentences. Each
/// section holds one key sentence carrying that section's topic words; the
/// slides are one bullet per section (its topic words plus a few common
/// words). Every other sentence is filler drawn from common and noise words,
/// so common gold words are reachable from the first sentences of the paper.
// An introduction of `preview_sentences` sentences mentions every topic word
// once, scattered, before the sections; each section holds one key sentence
// carrying its topic words. Slides have one bullet per section.
struct SectionedOptions {
  std::size_t docs = 60;
  std::size_t preview_sentences = 20;
  std::size_t sections = 5;
  std::size_t section_length = 10;
  std::size_t topic_words_per_section = 6;
  std::size_t common_words_per_bullet = 1;
  std::size_t topic_vocabulary = 120;
  std::size_t common_vocabulary = 12;
  std::size_t noise_vocabulary = 150;
  std::uint64_t seed = 2;
};
std::vector<PairText> sectioned_corpus(const SectionedOptions& opts);

/// News-style documents: the gold summary paraphrases the first sentences,
/// later sentences only repeat material already covered.
std::vector<PairText> front_loaded_corpus(std::size_t docs, std::size_t sentences, std::uint64_t seed);

/// Small random pair over an alphabet of `alphabet` words, for property tests.
PairText random_pair(Rng& rng, std::size_t max_sentences, std::size_t max_words,
                     std::size_t alphabet, const std::string& id);

}  // namespace winsumm::synthetic
