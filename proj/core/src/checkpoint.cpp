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

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "winsumm/error.hpp"
#include "winsumm/model.hpp"

namespace winsumm {
namespace {

constexpr std::string_view kMagic = "WINSUMM-CKPT 1";

struct RawTensor {
  Shape shape;
  std::vector<double> values;
};

std::vector<std::string_view> fields_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void bad(const std::filesystem::path& path, std::size_t line, const std::string& what) {
  throw DataError(path.string() + ":" + std::to_string(line) + ": " + what);
}

void read_raw(const std::filesystem::path& path,
              std::vector<std::pair<std::string, std::string>>& config,
              std::map<std::string, RawTensor>& tensors) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read checkpoint: " + path.string());
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kMagic)
    bad(path, line_no, "expected version line '" + std::string(kMagic) + "'");

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (const auto eq = line.find('='); eq != std::string::npos) {
      config.emplace_back(line.substr(0, eq), line.substr(eq + 1));
      continue;
    }
    const auto head = fields_of(line);
    RawTensor raw;
    const std::string name(head.front());
    for (std::size_t k = 1; k < head.size(); ++k) {
      std::size_t dim = 0;
      auto [ptr, ec] = std::from_chars(head[k].data(), head[k].data() + head[k].size(), dim);
      if (ec != std::errc() || ptr != head[k].data() + head[k].size())
        bad(path, line_no, "bad dimension '" + std::string(head[k]) + "' for '" + name + "'");
      raw.shape.push_back(dim);
    }
    const std::size_t expected = shape_size(raw.shape);
    if (!std::getline(in, line)) bad(path, line_no + 1, "truncated: no values for '" + name + "'");
    ++line_no;
    const auto values = fields_of(line);
    if (values.size() != expected)
      bad(path, line_no, "'" + name + "' expects " + std::to_string(expected) + " values, found " +
                             std::to_string(values.size()));
    raw.values.resize(expected);
    for (std::size_t k = 0; k < expected; ++k) {
      auto [ptr, ec] = std::from_chars(values[k].data(), values[k].data() + values[k].size(), raw.values[k]);
      if (ec != std::errc() || ptr != values[k].data() + values[k].size())
        bad(path, line_no, "bad number '" + std::string(values[k]) + "' in '" + name + "'");
    }
    if (tensors.contains(name)) bad(path, line_no, "duplicate parameter '" + name + "'");
    tensors.emplace(name, std::move(raw));
  }
}

RankerParams assemble(const std::filesystem::path& path, const ModelConfig& config,
                      std::map<std::string, RawTensor>& tensors) {
  RankerParams params = RankerParams::zeros(config);
  std::vector<std::string> missing;
  for (auto& p : params.named(config)) {
    auto it = tensors.find(p.name);
    if (it == tensors.end()) {
      missing.push_back(p.name);
      continue;
    }
    if (it->second.shape != p.tensor.shape())
      throw DataError(path.string() + ": parameter '" + p.name + "' has shape " +
                      shape_string(it->second.shape) + ", expected " + shape_string(p.tensor.shape()));
    std::copy(it->second.values.begin(), it->second.values.end(), p.tensor.value().begin());
    tensors.erase(it);
  }
  if (!missing.empty()) {
    std::string msg = path.string() + ": missing parameter";
    msg += missing.size() > 1 ? "s " : " ";
    for (std::size_t i = 0; i < missing.size(); ++i) msg += (i ? ", '" : "'") + missing[i] + "'";
    throw DataError(msg);
  }
  if (!tensors.empty())
    throw DataError(path.string() + ": unexpected parameter '" + tensors.begin()->first +
                    "' for a " + std::string(to_string(config.doc_encoder)) + " encoder");
  return params;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const RankerParams& params,
                     const ModelConfig& config) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write checkpoint: " + path.string());
  out << kMagic << '\n';
  for (const auto& [k, v] : config.to_pairs()) out << k << '=' << v << '\n';
  char buf[32];
  for (const auto& p : params.named(config)) {
    out << p.name;
    for (auto d : p.tensor.shape()) out << ' ' << d;
    out << '\n';
    bool first = true;
    for (double v : p.tensor.value()) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
      if (!first) out << ' ';
      out.write(buf, ptr - buf);
      first = false;
    }
    out << '\n';
  }
  if (!out) throw DataError("error while writing checkpoint: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::map<std::string, RawTensor> tensors;
  read_raw(path, pairs, tensors);
  Checkpoint ckpt;
  ckpt.config = ModelConfig::from_pairs(pairs);
  ckpt.params = assemble(path, ckpt.config, tensors);
  return ckpt;
}

RankerParams load_checkpoint(const std::filesystem::path& path, const ModelConfig& expected) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::map<std::string, RawTensor> tensors;
  read_raw(path, pairs, tensors);
  RankerParams params = assemble(path, expected, tensors);
  const ModelConfig stored = ModelConfig::from_pairs(pairs);
  if (!(stored == expected))
    throw DataError(path.string() + ": stored model configuration differs from the expected one");
  return params;
}

}  // namespace winsumm
