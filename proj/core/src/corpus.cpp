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

#include "winsumm/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "winsumm/error.hpp"

namespace winsumm {
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw DataError("error while reading file: " + path.string());
  return ss.str();
}

bool parse_double(std::string_view field, double& out) {
  if (field.empty()) return false;
  // from_chars rejects a leading '+', which some vector dumps contain.
  if (field.front() == '+') field.remove_prefix(1);
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

}  // namespace

Document make_document(std::string id, std::string_view text, std::string source_path) {
  Document doc;
  doc.id = std::move(id);
  doc.sentences = split_sentences(text);
  doc.source_path = std::move(source_path);
  return doc;
}

Vocabulary::Vocabulary() {
  add("<pad>");
  add("<unk>");
}

void Vocabulary::add(std::string word) {
  index_.emplace(word, static_cast<int>(words_.size()));
  words_.push_back(std::move(word));
}

Vocabulary Vocabulary::build(std::span<const CorpusPair> pairs, int min_count) {
  if (min_count < 1) throw UsageError("min_count must be >= 1");
  std::unordered_map<std::string, long> counts;
  for (const auto& pair : pairs)
    for (const auto& sent : pair.doc.sentences)
      for (const auto& tok : sent.tokens) ++counts[tok.norm];

  std::vector<std::pair<std::string, long>> kept;
  for (auto& [word, count] : counts)
    if (count >= min_count) kept.emplace_back(word, count);
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });

  Vocabulary vocab;
  vocab.min_count_ = min_count;
  for (auto& [word, count] : kept) vocab.add(std::move(word));
  return vocab;
}

Vocabulary Vocabulary::from_words(std::span<const std::string> words) {
  Vocabulary vocab;
  for (const auto& w : words) {
    if (vocab.contains(w)) throw DataError("duplicate vocabulary word: " + w);
    vocab.add(w);
  }
  return vocab;
}

int Vocabulary::id(std::string_view word) const {
  // Reserved markers are not reachable from corpus text.
  auto it = index_.find(std::string(word));
  if (it == index_.end() || it->second < 2) return kUnkId;
  return it->second;
}

bool Vocabulary::contains(std::string_view word) const {
  return index_.contains(std::string(word));
}

void Vocabulary::save(const fs::path& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write vocabulary: " + path.string());
  out << "# min_count=" << min_count_ << '\n';
  for (const auto& w : corpus_words()) out << w << '\n';
}

Vocabulary Vocabulary::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read vocabulary: " + path.string());
  std::vector<std::string> words;
  std::string line;
  int min_count = 1;
  while (std::getline(in, line)) {
    if (line.rfind("# min_count=", 0) == 0) {
      min_count = std::stoi(line.substr(12));
      continue;
    }
    if (!line.empty()) words.push_back(line);
  }
  auto vocab = from_words(words);
  vocab.min_count_ = min_count;
  return vocab;
}

void assign_ids(Document& doc, const Vocabulary& vocab) {
  for (auto& sent : doc.sentences)
    for (auto& tok : sent.tokens) tok.vocab_id = vocab.id(tok.norm);
}

WordEmbeddings random_word_vectors(const Vocabulary& vocab, std::size_t dim, Rng& rng) {
  WordEmbeddings emb;
  emb.dim = dim;
  emb.matrix.resize(vocab.size() * dim);
  for (std::size_t r = 0; r < vocab.size(); ++r)
    for (std::size_t c = 0; c < dim; ++c)
      emb.matrix[r * dim + c] = r == static_cast<std::size_t>(kPadId) ? 0.0 : rng.uniform(-0.1, 0.1);
  return emb;
}

WordEmbeddings load_word_vectors(const fs::path& path, const Vocabulary& vocab,
                                 std::size_t dim, Rng& rng) {
  WordEmbeddings emb = random_word_vectors(vocab, dim, rng);
  std::ifstream in(path);
  if (!in) throw DataError("cannot read word vectors: " + path.string());

  std::string line;
  std::size_t line_no = 0;
  std::vector<double> values(dim);
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    double probe;
    // A "count dim" first line, or one that is not a vector at all, is a header.
    if (line_no == 1 && (fields.size() < 2 || !parse_double(fields[1], probe) ||
                         (fields.size() == 2 && dim != 1))) {
      std::cerr << "warning: " << path.string() << ":1 looks like a header, skipped\n";
      continue;
    }
    if (fields.size() != dim + 1) {
      std::ostringstream msg;
      msg << path.string() << ":" << line_no << ": expected " << dim
          << " values, found " << fields.size() - 1;
      throw DataError(msg.str());
    }
    for (std::size_t c = 0; c < dim; ++c) {
      if (!parse_double(fields[c + 1], values[c])) {
        std::ostringstream msg;
        msg << path.string() << ":" << line_no << ": bad number '" << fields[c + 1] << "'";
        throw DataError(msg.str());
      }
    }
    const int id = vocab.id(fields[0]);
    if (id == kUnkId) continue;
    std::copy(values.begin(), values.end(),
              emb.matrix.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(id) * dim));
  }
  return emb;
}

ShapedDocument shape_document(const Document& doc, const Vocabulary& vocab,
                              std::size_t max_sents, std::size_t max_toks) {
  if (max_sents < 1 || max_toks < 1) throw UsageError("shape limits must be >= 1");
  ShapedDocument shaped;
  shaped.max_sents = max_sents;
  shaped.max_toks = max_toks;
  shaped.token_ids.assign(max_sents * max_toks, kPadId);
  shaped.n_real = std::min(doc.size(), max_sents);
  shaped.sent_lengths.resize(shaped.n_real);
  for (std::size_t i = 0; i < shaped.n_real; ++i) {
    const auto& toks = doc.sentences[i].tokens;
    const std::size_t len = std::min(toks.size(), max_toks);
    shaped.sent_lengths[i] = len;
    for (std::size_t j = 0; j < len; ++j)
      shaped.token_ids[i * max_toks + j] = vocab.id(toks[j].norm);
  }
  return shaped;
}

std::vector<CorpusPair> load_corpus(const fs::path& dir, LoadReport* report) {
  if (!fs::is_directory(dir)) throw DataError("corpus directory not found: " + dir.string());
  constexpr std::string_view kPaper = ".paper.txt";
  constexpr std::string_view kSlides = ".slides.txt";

  std::map<std::string, std::pair<fs::path, fs::path>> by_id;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    auto strip = [&](std::string_view suffix) -> std::string {
      if (name.size() > suffix.size() &&
          std::string_view(name).substr(name.size() - suffix.size()) == suffix)
        return name.substr(0, name.size() - suffix.size());
      return {};
    };
    if (auto id = strip(kPaper); !id.empty()) {
      by_id[id].first = entry.path();
    } else if (auto sid = strip(kSlides); !sid.empty()) {
      by_id[sid].second = entry.path();
    }
  }

  std::vector<CorpusPair> pairs;
  for (const auto& [id, paths] : by_id) {
    if (paths.first.empty() || paths.second.empty()) {
      const auto& present = paths.first.empty() ? paths.second : paths.first;
      std::cerr << "warning: skipping unpaired file " << present.filename().string() << '\n';
      if (report) report->skipped.push_back(present.filename().string());
      continue;
    }
    CorpusPair pair;
    pair.doc = make_document(id, read_file(paths.first), paths.first.string());
    pair.gold = make_document(id, read_file(paths.second), paths.second.string());
    pairs.push_back(std::move(pair));
  }
  if (pairs.empty()) throw DataError("no paper/slides pairs found in " + dir.string());
  return pairs;
}

Split split_corpus(std::vector<CorpusPair> pairs, std::uint64_t seed,
                   std::array<double, 3> fractions) {
  const double total = fractions[0] + fractions[1] + fractions[2];
  if (!(total > 0) || fractions[0] < 0 || fractions[1] < 0 || fractions[2] < 0)
    throw UsageError("split fractions must be non-negative with a positive sum");
  // Shuffle a canonical (id-sorted) order so the result does not depend on
  // the order the caller supplied.
  std::sort(pairs.begin(), pairs.end(),
            [](const CorpusPair& a, const CorpusPair& b) { return a.doc.id < b.doc.id; });
  Rng rng(seed);
  rng.shuffle(std::span<CorpusPair>(pairs));

  const auto n = static_cast<double>(pairs.size());
  const auto n_valid = static_cast<std::size_t>(std::floor(n * fractions[1] / total + 1e-9));
  const auto n_test = static_cast<std::size_t>(std::floor(n * fractions[2] / total + 1e-9));
  const std::size_t n_train = pairs.size() - n_valid - n_test;

  Split split;
  auto it = std::make_move_iterator(pairs.begin());
  split.train.assign(it, it + static_cast<std::ptrdiff_t>(n_train));
  split.valid.assign(it + static_cast<std::ptrdiff_t>(n_train),
                     it + static_cast<std::ptrdiff_t>(n_train + n_valid));
  split.test.assign(it + static_cast<std::ptrdiff_t>(n_train + n_valid),
                    std::make_move_iterator(pairs.end()));
  return split;
}

}  // namespace winsumm
