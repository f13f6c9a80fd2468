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

#include "goldenbench/corpus/embedding_io.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "goldenbench/error.h"

namespace goldenbench::corpus {

namespace {

constexpr char kMagic[4] = {'G', 'S', 'E', 'B'};

std::uint32_t load_u32_le(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 |
         static_cast<std::uint32_t>(p[3]) << 24;
}

void store_u32_le(std::uint32_t v, std::vector<std::uint8_t>& out) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 24));
}

std::uint32_t checked_u32(std::size_t v, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(std::string(what) + " does not fit in 32 bits");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

EmbeddingHeader read_embedding_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kGsebHeaderSize) {
    throw ParseError("truncated GSEB header: expected " +
                     std::to_string(kGsebHeaderSize) + " bytes, got " +
                     std::to_string(bytes.size()));
  }
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw ParseError("bad magic: not a GSEB file");
  }
  EmbeddingHeader header;
  header.version = load_u32_le(bytes.data() + 4);
  header.frame_count = load_u32_le(bytes.data() + 8);
  header.dim = load_u32_le(bytes.data() + 12);
  if (header.version != kGsebVersion) {
    throw ParseError("unsupported GSEB version " +
                     std::to_string(header.version) + " (supported: 1)");
  }
  if (header.frame_count == 0 || header.dim == 0) {
    throw ParseError("GSEB shape must be at least 1x1, got " +
                     std::to_string(header.frame_count) + "x" +
                     std::to_string(header.dim));
  }
  return header;
}

EmbeddingSequence read_embedding(std::span<const std::uint8_t> bytes) {
  const EmbeddingHeader header = read_embedding_header(bytes);
  const std::uint64_t expected = header.expected_size();
  if (bytes.size() != expected) {
    throw ParseError(std::string(bytes.size() < expected ? "truncated"
                                                         : "oversized") +
                     " GSEB payload: expected " + std::to_string(expected) +
                     " bytes, got " + std::to_string(bytes.size()));
  }
  const std::size_t count =
      static_cast<std::size_t>(header.frame_count) * header.dim;
  std::vector<float> values(count);
  const std::uint8_t* p = bytes.data() + kGsebHeaderSize;
  for (std::size_t i = 0; i < count; ++i, p += 4) {
    values[i] = std::bit_cast<float>(load_u32_le(p));
    if (!std::isfinite(values[i])) {
      throw ParseError("non-finite value at index " + std::to_string(i) +
                       " (frame " + std::to_string(i / header.dim) + ")");
    }
  }
  return EmbeddingSequence(header.frame_count, header.dim, std::move(values));
}

std::vector<std::uint8_t> write_embedding(std::size_t frame_count,
                                          std::size_t dim,
                                          std::span<const float> values) {
  if (frame_count == 0 || dim == 0 || values.size() != frame_count * dim) {
    throw Error("cannot write embedding: shape " +
                std::to_string(frame_count) + "x" + std::to_string(dim) +
                " with " + std::to_string(values.size()) + " values");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kGsebHeaderSize + 4 * values.size());
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  store_u32_le(kGsebVersion, out);
  store_u32_le(checked_u32(frame_count, "frame_count"), out);
  store_u32_le(checked_u32(dim, "dim"), out);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error("refusing to write non-finite value at index " +
                  std::to_string(i));
    }
    store_u32_le(std::bit_cast<std::uint32_t>(values[i]), out);
  }
  return out;
}

std::vector<std::uint8_t> write_embedding(const EmbeddingSequence& seq) {
  return write_embedding(seq.frame_count(), seq.dim(), seq.values());
}

EmbeddingSequence load_embedding(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open embedding file " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return read_embedding(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_embedding(const std::filesystem::path& path,
                    const EmbeddingSequence& seq) {
  const auto bytes = write_embedding(seq);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write embedding file " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("short write to " + path.string());
}

}  // namespace goldenbench::corpus
