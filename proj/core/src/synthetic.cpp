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

#include "winsumm/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "winsumm/error.hpp"

namespace winsumm::synthetic {
namespace {

constexpr std::string_view kConsonants = "bdfgklmnprtvz";
constexpr std::string_view kVowels = "aeiou";

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[rng.below(items.size())];
}

std::vector<std::string> sample_distinct(Rng& rng, std::span<const std::string> pool, std::size_t k) {
  std::vector<std::size_t> idx(pool.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  rng.shuffle(std::span<std::size_t>(idx));
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k && i < idx.size(); ++i) out.push_back(pool[idx[i]]);
  return out;
}

std::string join_sentences(const std::vector<std::string>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

}  // namespace

std::vector<std::string> lexicon(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::set<std::string> seen;
  std::vector<std::string> out;
  while (out.size() < count) {
    const std::size_t syllables = 2 + rng.below(2);
    std::string w;
    for (std::size_t s = 0; s < syllables; ++s) {
      w += kConsonants[rng.below(kConsonants.size())];
      w += kVowels[rng.below(kVowels.size())];
    }
    if (seen.insert(w).second) out.push_back(std::move(w));
  }
  return out;
}

std::string sentence_text(std::span<const std::string> words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string w = words[i];
    if (i == 0 && !w.empty()) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    if (i) out += ' ';
    out += w;
  }
  out += " .";
  return out;
}

CorpusPair materialize(const PairText& text) {
  CorpusPair pair;
  pair.doc = make_document(text.id, text.paper);
  pair.gold = make_document(text.id, text.slides);
  return pair;
}

std::vector<CorpusPair> materialize(std::span<const PairText> texts) {
  std::vector<CorpusPair> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(materialize(t));
  return out;
}

void write_corpus(const std::filesystem::path& dir, std::span<const PairText> texts) {
  std::filesystem::create_directories(dir);
  for (const auto& t : texts) {
    std::ofstream paper(dir / (t.id + ".paper.txt"));
    std::ofstream slides(dir / (t.id + ".slides.txt"));
    if (!paper || !slides) throw DataError("cannot write synthetic corpus into " + dir.string());
    paper << t.paper << '\n';
    slides << t.slides << '\n';
  }
}

std::vector<PairText> designated_corpus(const DesignatedOptions& opts) {
  const auto words = lexicon(600, opts.seed * 7919 + 1);
  const std::vector<std::string> filler(words.begin(), words.begin() + 300);
  const std::vector<std::string> key(words.begin() + 300, words.end());
  Rng rng(opts.seed);
  std::vector<PairText> out;
  for (std::size_t d = 0; d < opts.docs; ++d) {
    std::vector<std::string> paper, slides;
    std::size_t key_pos = 0;
    for (std::size_t i = 0; i < opts.sentences; ++i) {
      if (i % opts.block == 0)
        key_pos = i + rng.below(std::min(opts.block, opts.sentences - i));
      const std::size_t len = opts.min_words + rng.below(opts.max_words - opts.min_words + 1);
      if (i == key_pos) {
        const auto s = sentence_text(sample_distinct(rng, key, len));
        paper.push_back(s);
        slides.push_back(s);
      } else {
        std::vector<std::string> ws;
        for (std::size_t k = 0; k < len; ++k) ws.push_back(pick(rng, filler));
        paper.push_back(sentence_text(ws));
      }
    }
    out.push_back({"doc" + std::to_string(1000 + d), join_sentences(paper), join_sentences(slides)});
  }
  return out;
}

std::vector<PairText> sectioned_corpus(const SectionedOptions& opts) {
  const auto words = lexicon(opts.topic_vocabulary + opts.common_vocabulary + opts.noise_vocabulary,
                             opts.seed * 104729 + 3);
  const auto topic_end = static_cast<std::ptrdiff_t>(opts.topic_vocabulary);
  const auto common_end = topic_end + static_cast<std::ptrdiff_t>(opts.common_vocabulary);
  const std::vector<std::string> topic(words.begin(), words.begin() + topic_end);
  const std::vector<std::string> common(words.begin() + topic_end, words.begin() + common_end);
  const std::vector<std::string> noise(words.begin() + common_end, words.end());

  Rng rng(opts.seed);
  std::vector<PairText> out;
  for (std::size_t d = 0; d < opts.docs; ++d) {
    const auto doc_topics =
        sample_distinct(rng, topic, opts.sections * opts.topic_words_per_section);
    std::vector<std::string> paper, slides;
    if (opts.preview_sentences > 0) {
      std::vector<std::vector<std::string>> intro(opts.preview_sentences);
      for (std::size_t t = 0; t < doc_topics.size(); ++t)
        intro[t < intro.size() ? t : rng.below(intro.size())].push_back(doc_topics[t]);
      for (auto& ws : intro) {
        const std::size_t len = 5 + rng.below(3);
        for (std::size_t k = 0; k < len; ++k) ws.push_back(pick(rng, noise));
        rng.shuffle(std::span<std::string>(ws));
      }
      rng.shuffle(std::span<std::vector<std::string>>(intro));
      for (const auto& ws : intro) paper.push_back(sentence_text(ws));
    }
    for (std::size_t s = 0; s < opts.sections; ++s) {
      std::vector<std::string> section_topics(
          doc_topics.begin() + static_cast<std::ptrdiff_t>(s * opts.topic_words_per_section),
          doc_topics.begin() + static_cast<std::ptrdiff_t>((s + 1) * opts.topic_words_per_section));
      std::vector<std::string> bullet = section_topics;
      for (std::size_t k = 0; k < opts.common_words_per_bullet; ++k) bullet.push_back(pick(rng, common));
      rng.shuffle(std::span<std::string>(bullet));
      slides.push_back(sentence_text(bullet));

      const std::size_t key_pos = rng.below(opts.section_length);
      for (std::size_t i = 0; i < opts.section_length; ++i) {
        std::vector<std::string> ws;
        if (i == key_pos) {
          ws = section_topics;
          ws.push_back(pick(rng, common));
          ws.push_back(pick(rng, noise));
          rng.shuffle(std::span<std::string>(ws));
        } else {
          const std::size_t len = 6 + rng.below(5);
          for (std::size_t k = 0; k < len; ++k)
            ws.push_back(rng.uniform() < 0.3 ? pick(rng, common) : pick(rng, noise));
        }
        paper.push_back(sentence_text(ws));
      }
    }
    out.push_back({"sec" + std::to_string(1000 + d), join_sentences(paper), join_sentences(slides)});
  }
  return out;
}

std::vector<PairText> front_loaded_corpus(std::size_t docs, std::size_t sentences, std::uint64_t seed) {
  const auto words = lexicon(400, seed * 31 + 5);
  Rng rng(seed);
  std::vector<PairText> out;
  for (std::size_t d = 0; d < docs; ++d) {
    std::vector<std::vector<std::string>> sents;
    std::vector<std::string> lead_words;
    for (std::size_t i = 0; i < sentences; ++i) {
      std::vector<std::string> ws;
      const std::size_t len = 6 + rng.below(4);
      for (std::size_t k = 0; k < len; ++k) {
        // After the lead, sentences recycle lead words or use fresh ones that
        // the gold never mentions.
        if (i < 3 || lead_words.empty() || rng.uniform() < 0.5) {
          ws.push_back(pick(rng, words));
        } else {
          ws.push_back(pick(rng, lead_words));
        }
      }
      if (i < 3) lead_words.insert(lead_words.end(), ws.begin(), ws.end());
      sents.push_back(std::move(ws));
    }
    std::vector<std::string> paper;
    for (const auto& ws : sents) paper.push_back(sentence_text(ws));
    auto gold_words = lead_words;
    rng.shuffle(std::span<std::string>(gold_words));
    out.push_back({"news" + std::to_string(1000 + d), join_sentences(paper), sentence_text(gold_words)});
  }
  return out;
}

PairText random_pair(Rng& rng, std::size_t max_sentences, std::size_t max_words,
                     std::size_t alphabet, const std::string& id) {
  const auto words = lexicon(alphabet, 99);
  auto random_sentence = [&] {
    std::vector<std::string> ws(1 + rng.below(max_words));
    for (auto& w : ws) w = pick(rng, words);
    return sentence_text(ws);
  };
  std::vector<std::string> paper, slides;
  const std::size_t n = 1 + rng.below(max_sentences);
  for (std::size_t i = 0; i < n; ++i) paper.push_back(random_sentence());
  const std::size_t g = 1 + rng.below(3);
  for (std::size_t i = 0; i < g; ++i) slides.push_back(random_sentence());
  return {id, join_sentences(paper), join_sentences(slides)};
}

}  // namespace winsumm::synthetic
