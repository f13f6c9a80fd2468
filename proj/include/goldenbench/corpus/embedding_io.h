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

// GSEB embedding files.
//
//   offset  size  field
//   0       4     ASCII "GSEB"
//   4       4     u32 LE version (1)
//   8       4     u32 LE frame_count
//   12      4     u32 LE dim
//   16      4*N   float32 LE values, row-major, N = frame_count * dim

#ifndef GOLDENBENCH_CORPUS_EMBEDDING_IO_H_
#define GOLDENBENCH_CORPUS_EMBEDDING_IO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "goldenbench/corpus/types.h"

namespace goldenbench::corpus {

inline constexpr std::uint32_t kGsebVersion = 1;
inline constexpr std::size_t kGsebHeaderSize = 16;

struct EmbeddingHeader {
  std::uint32_t version = kGsebVersion;
  std::uint32_t frame_count = 0;
  std::uint32_t dim = 0;

  // Total file size implied by the header.
  std::uint64_t expected_size() const {
    return kGsebHeaderSize + 4ULL * frame_count * dim;
  }
};

// Decodes and checks the 16-byte header only (magic, version, nonzero
// shape). Throws ParseError.
EmbeddingHeader read_embedding_header(std::span<const std::uint8_t> bytes);

// Throws ParseError on bad magic, unsupported version, a payload whose size
// differs from the header's (expected and actual byte counts are reported)
// or a non-finite value.
EmbeddingSequence read_embedding(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> write_embedding(const EmbeddingSequence& seq);
// Raw form; throws Error on a non-finite value or a shape mismatch.
std::vector<std::uint8_t> write_embedding(std::size_t frame_count,
                                          std::size_t dim,
                                          std::span<const float> values);

EmbeddingSequence load_embedding(const std::filesystem::path& path);
void save_embedding(const std::filesystem::path& path,
                    const EmbeddingSequence& seq);

}  // namespace goldenbench::corpus

#endif  // GOLDENBENCH_CORPUS_EMBEDDING_IO_H_
