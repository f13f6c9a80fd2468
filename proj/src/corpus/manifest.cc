// Copyright (c) 2026 goldenbench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "goldenbench/corpus/manifest.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "goldenbench/error.h"
#include "json.hpp"

namespace goldenbench::corpus {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string require_string(const json& obj, const char* key,
                           std::size_t line, bool nonempty) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    throw ParseError(std::string("missing required field \"") + key + "\"",
                     line);
  }
  if (!it->is_string()) {
    throw ParseError(std::string("field \"") + key + "\" must be a string",
                     line);
  }
  std::string value = it->get<std::string>();
  if (nonempty && value.empty()) {
    throw ParseError(std::string("field \"") + key + "\" must be nonempty",
                     line);
  }
  return value;
}

std::optional<std::string> optional_string(const json& obj, const char* key,
                                           std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw ParseError(std::string("field \"") + key + "\" must be a string",
                     line);
  }
  return it->get<std::string>();
}

std::optional<std::string> optional_path(const json& obj, const char* key,
                                         std::size_t line) {
  auto value = optional_string(obj, key, line);
  if (!value) return value;
  const std::filesystem::path path(*value);
  if (value->empty() || path.has_root_path()) {
    throw ParseError(std::string("field \"") + key +
                         "\" must be a nonempty relative path",
                     line);
  }
  for (const auto& part : path) {
    if (part == "..") {
      throw ParseError(std::string("field \"") + key +
                           "\" must not contain \"..\" segments",
                       line);
    }
  }
  return value;
}

UtteranceRecord parse_utterance(const json& obj, std::size_t line) {
  UtteranceRecord utt;
  utt.utterance_id = require_string(obj, "id", line, true);
  utt.speaker_id = require_string(obj, "speaker", line, true);
  try {
    utt.role = parse_role(require_string(obj, "role", line, true));
  } catch (const ParseError& e) {
    if (e.line_number() != 0) throw;
    throw ParseError(e.what(), line);
  }
  utt.pair_id = require_string(obj, "pair_id", line, true);
  utt.text_prompt = require_string(obj, "prompt", line, false);
  utt.asr_hypothesis = optional_string(obj, "hyp", line);
  utt.speaker_embedding_path = optional_path(obj, "spk_emb", line);
  utt.frame_embedding_path = optional_path(obj, "frame_emb", line);
  if (const auto it = obj.find("mos"); it != obj.end() && !it->is_null()) {
    if (!it->is_number()) throw ParseError("field \"mos\" must be a number", line);
    const double mos = it->get<double>();
    if (!(mos >= 1.0 && mos <= 5.0)) {
      throw ParseError("mos " + it->dump() + " outside [1, 5]", line);
    }
    utt.mos = mos;
  }
  return utt;
}

SpeakerRecord parse_speaker(const json& obj, std::size_t line) {
  SpeakerRecord spk;
  spk.speaker_id = require_string(obj, "id", line, true);
  spk.group = optional_string(obj, "group", line);
  if (const auto it = obj.find("scores"); it != obj.end() && !it->is_null()) {
    if (!it->is_object()) {
      throw ParseError("field \"scores\" must be an object", line);
    }
    for (const auto& [name, value] : it->items()) {
      if (name.empty()) throw ParseError("empty score name", line);
      if (!value.is_number() || !std::isfinite(value.get<double>())) {
        throw ParseError("score \"" + name + "\" must be a finite number",
                         line);
      }
      spk.scores[name] = value.get<double>();
    }
  }
  return spk;
}

// Calls fn(object, line_number) for every record line.
template <typename Fn>
void for_each_record(std::string_view text, Fn&& fn) {
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(),
                       line_number);
    }
    if (!obj.is_object()) {
      throw ParseError("record must be a JSON object", line_number);
    }
    fn(obj, line, line_number);
    if (end == text.size()) break;
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

CorpusManifest parse_manifest(std::string_view text,
                              std::string default_corpus_id) {
  CorpusManifest manifest;
  manifest.corpus_id = std::move(default_corpus_id);
  std::unordered_map<std::string, std::size_t> utt_lines;
  std::unordered_map<std::string, std::size_t> spk_lines;

  for_each_record(text, [&](const json& obj, std::string_view raw,
                            std::size_t line) {
    const auto kind = obj.find("kind");
    if (kind == obj.end() || !kind->is_string()) {
      throw ParseError("missing required field \"kind\"", line);
    }
    const std::string k = kind->get<std::string>();
    if (k == "utt") {
      UtteranceRecord utt = parse_utterance(obj, line);
      const auto [it, inserted] = utt_lines.emplace(utt.utterance_id, line);
      if (!inserted) {
        throw ParseError("duplicate utterance id \"" + utt.utterance_id +
                             "\" (first defined on line " +
                             std::to_string(it->second) + ")",
                         line);
      }
      manifest.utterances.push_back(std::move(utt));
    } else if (k == "spk") {
      SpeakerRecord spk = parse_speaker(obj, line);
      const auto [it, inserted] = spk_lines.emplace(spk.speaker_id, line);
      if (!inserted) {
        throw ParseError("duplicate speaker id \"" + spk.speaker_id +
                             "\" (first defined on line " +
                             std::to_string(it->second) + ")",
                         line);
      }
      manifest.speakers.push_back(std::move(spk));
    } else if (k == "meta") {
      if (const auto id = obj.find("corpus_id");
          id != obj.end() && id->is_string()) {
        manifest.corpus_id = id->get<std::string>();
      }
      manifest.metadata.emplace_back(raw);
    } else {
      throw ParseError("unknown record kind \"" + k +
                           "\" (expected utt, spk or meta)",
                       line);
    }
  });
  return manifest;
}

CorpusManifest read_manifest_file(const std::filesystem::path& path) {
  std::string id = path.filename().string();
  for (const std::string suffix : {".manifest.jsonl", ".jsonl"}) {
    if (id.size() > suffix.size() && id.ends_with(suffix)) {
      id.resize(id.size() - suffix.size());
      break;
    }
  }
  try {
    return parse_manifest(read_text_file(path), id);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string serialize_manifest(const CorpusManifest& manifest) {
  std::string out;
  for (const auto& meta : manifest.metadata) {
    out += meta;
    out += '\n';
  }
  for (const auto& spk : manifest.speakers) {
    ordered_json obj;
    obj["kind"] = "spk";
    obj["id"] = spk.speaker_id;
    obj["scores"] = ordered_json::object();
    for (const auto& [name, value] : spk.scores) obj["scores"][name] = value;
    if (spk.group) obj["group"] = *spk.group;
    out += obj.dump();
    out += '\n';
  }
  for (const auto& utt : manifest.utterances) {
    ordered_json obj;
    obj["kind"] = "utt";
    obj["id"] = utt.utterance_id;
    obj["speaker"] = utt.speaker_id;
    obj["role"] = std::string(to_string(utt.role));
    obj["pair_id"] = utt.pair_id;
    obj["prompt"] = utt.text_prompt;
    if (utt.asr_hypothesis) obj["hyp"] = *utt.asr_hypothesis;
    if (utt.speaker_embedding_path) obj["spk_emb"] = *utt.speaker_embedding_path;
    if (utt.frame_embedding_path) obj["frame_emb"] = *utt.frame_embedding_path;
    if (utt.mos) obj["mos"] = *utt.mos;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::vector<SpeakerRecord> parse_speaker_scores(std::string_view text) {
  std::vector<SpeakerRecord> speakers;
  std::unordered_map<std::string, std::size_t> lines;
  for_each_record(text, [&](const json& obj, std::string_view,
                            std::size_t line) {
    if (const auto kind = obj.find("kind");
        kind != obj.end() && *kind != "spk") {
      throw ParseError("scores file may only hold speaker records", line);
    }
    SpeakerRecord spk = parse_speaker(obj, line);
    const auto [it, inserted] = lines.emplace(spk.speaker_id, line);
    if (!inserted) {
      throw ParseError("duplicate speaker id \"" + spk.speaker_id +
                           "\" (first defined on line " +
                           std::to_string(it->second) + ")",
                       line);
    }
    speakers.push_back(std::move(spk));
  });
  return speakers;
}

std::vector<SpeakerRecord> read_speaker_scores_file(
    const std::filesystem::path& path) {
  try {
    return parse_speaker_scores(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void merge_speakers(CorpusManifest& manifest,
                    const std::vector<SpeakerRecord>& speakers) {
  for (const auto& incoming : speakers) {
    auto it = std::find_if(manifest.speakers.begin(), manifest.speakers.end(),
                           [&](const SpeakerRecord& s) {
                             return s.speaker_id == incoming.speaker_id;
                           });
    if (it == manifest.speakers.end()) {
      manifest.speakers.push_back(incoming);
      continue;
    }
    for (const auto& [name, value] : incoming.scores) it->scores[name] = value;
    if (incoming.group) it->group = incoming.group;
  }
}

}  // namespace goldenbench::corpus
