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

#include "goldenbench/corpus/validate.h"

#include <array>
#include <fstream>
#include <map>
#include <set>
#include <tuple>

#include "goldenbench/error.h"

namespace goldenbench::corpus {

AssetLookup filesystem_lookup(std::filesystem::path base_dir) {
  return [base = std::move(base_dir)](
             const std::string& relative) -> std::optional<AssetInfo> {
    const std::filesystem::path full = base / relative;
    std::error_code ec;
    if (!std::filesystem::is_regular_file(full, ec)) return std::nullopt;
    AssetInfo info;
    info.size_bytes = std::filesystem::file_size(full, ec);
    if (ec) return std::nullopt;
    std::array<std::uint8_t, kGsebHeaderSize> head{};
    std::ifstream in(full, std::ios::binary);
    in.read(reinterpret_cast<char*>(head.data()), head.size());
    try {
      info.header = read_embedding_header(
          std::span<const std::uint8_t>(head.data(),
                                        static_cast<std::size_t>(in.gcount())));
    } catch (const ParseError& e) {
      info.header_error = e.what();
    }
    return info;
  };
}

namespace {

struct DimTracker {
  const char* kind;
  std::optional<std::uint32_t> dim;
  std::string first_path;
};

void check_embedding(const std::string& utt_id, const std::string& path,
                     bool speaker_kind, const AssetLookup& lookup,
                     DimTracker& dims, ValidationReport& report) {
  const std::string locator = "utt " + utt_id;
  const auto info = lookup(path);
  if (!info) {
    report.errors.push_back({locator, "referenced asset missing: " + path});
    return;
  }
  if (!info->header) {
    report.errors.push_back(
        {locator, "invalid embedding " + path + ": " + info->header_error});
    return;
  }
  const EmbeddingHeader& header = *info->header;
  if (info->size_bytes != header.expected_size()) {
    report.errors.push_back(
        {locator, "embedding " + path + " size mismatch: expected " +
                      std::to_string(header.expected_size()) + " bytes, got " +
                      std::to_string(info->size_bytes)});
  }
  if (speaker_kind && header.frame_count != 1) {
    report.errors.push_back(
        {locator, "speaker embedding " + path + " has frame_count " +
                      std::to_string(header.frame_count) + " (expected 1)"});
  }
  if (!dims.dim) {
    dims.dim = header.dim;
    dims.first_path = path;
  } else if (*dims.dim != header.dim) {
    report.errors.push_back(
        {locator, std::string(dims.kind) + " embedding dim inconsistency: " +
                      path + " has dim " + std::to_string(header.dim) + ", " +
                      dims.first_path + " has dim " +
                      std::to_string(*dims.dim)});
  }
}

}  // namespace

ValidationReport validate_corpus(const CorpusManifest& manifest,
                                 const AssetLookup& lookup) {
  ValidationReport report;

  std::set<std::string> known_speakers;
  for (const auto& spk : manifest.speakers) known_speakers.insert(spk.speaker_id);

  std::set<std::string> speakers_with_utterances;
  std::map<std::tuple<std::string, std::string, Role>, std::string> seen_pairs;
  for (const auto& utt : manifest.utterances) {
    const std::string locator = "utt " + utt.utterance_id;
    speakers_with_utterances.insert(utt.speaker_id);
    if (!known_speakers.contains(utt.speaker_id)) {
      report.errors.push_back(
          {locator, "speaker \"" + utt.speaker_id + "\" has no speaker record"});
    }
    const auto key = std::make_tuple(utt.speaker_id, utt.pair_id, utt.role);
    if (const auto [it, inserted] = seen_pairs.emplace(key, utt.utterance_id);
        !inserted) {
      report.warnings.push_back(
          {locator, "another " + std::string(to_string(utt.role)) +
                        " utterance (" + it->second +
                        ") shares speaker and pair_id \"" + utt.pair_id +
                        "\"; only the first is paired"});
    }
    if (utt.role == Role::kOriginal) continue;
    const UtteranceRecord* original = manifest.counterpart(utt, Role::kOriginal);
    if (original == nullptr) {
      report.errors.push_back(
          {locator, std::string(to_string(utt.role)) +
                        " utterance has no original counterpart (speaker \"" +
                        utt.speaker_id + "\", pair_id \"" + utt.pair_id +
                        "\")"});
    } else if (original->text_prompt != utt.text_prompt) {
      report.errors.push_back(
          {locator, "prompt differs from original counterpart " +
                        original->utterance_id});
    }
  }

  for (const auto& spk : manifest.speakers) {
    if (!speakers_with_utterances.contains(spk.speaker_id)) {
      report.warnings.push_back(
          {"spk " + spk.speaker_id, "speaker has no utterances"});
    }
  }

  DimTracker speaker_dims{"speaker", std::nullopt, {}};
  DimTracker frame_dims{"frame", std::nullopt, {}};
  for (const auto& utt : manifest.utterances) {
    if (utt.speaker_embedding_path) {
      check_embedding(utt.utterance_id, *utt.speaker_embedding_path, true,
                      lookup, speaker_dims, report);
    }
    if (utt.frame_embedding_path) {
      check_embedding(utt.utterance_id, *utt.frame_embedding_path, false,
                      lookup, frame_dims, report);
    }
  }
  return report;
}

}  // namespace goldenbench::corpus
