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

#ifndef GOLDENBENCH_CORPUS_VALIDATE_H_
#define GOLDENBENCH_CORPUS_VALIDATE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "goldenbench/corpus/embedding_io.h"
#include "goldenbench/corpus/types.h"

namespace goldenbench::corpus {

struct AssetInfo {
  std::uintmax_t size_bytes = 0;
  // Set when the first 16 bytes decode as a GSEB header.
  std::optional<EmbeddingHeader> header;
  // Why the header did not decode, when it did not.
  std::string header_error;
};

// Maps a manifest-relative path to what is on disk; nullopt when missing.
using AssetLookup =
    std::function<std::optional<AssetInfo>(const std::string& relative_path)>;

// Resolves paths against `base_dir` (the manifest's directory).
AssetLookup filesystem_lookup(std::filesystem::path base_dir);

// Deterministic and side-effect free apart from calls to `lookup`. Problems
// are reported, never thrown.
ValidationReport validate_corpus(const CorpusManifest& manifest,
                                 const AssetLookup& lookup);

}  // namespace goldenbench::corpus

#endif  // GOLDENBENCH_CORPUS_VALIDATE_H_
