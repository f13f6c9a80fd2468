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

// Writes the deterministic test corpora under an output directory:
//   ok/           small corpus with hand-checkable WER counts
//   synthetic40/  40 speakers whose golden frames drift with (10 - score)
//   affine/       1x1 frames, golden cost exactly 10 - score
// Usage: make_fixtures <output_dir>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "goldenbench/corpus/embedding_io.h"
#include "goldenbench/corpus/manifest.h"

namespace fs = std::filesystem;
using goldenbench::corpus::CorpusManifest;
using goldenbench::corpus::EmbeddingSequence;
using goldenbench::corpus::Role;
using goldenbench::corpus::SpeakerRecord;
using goldenbench::corpus::UtteranceRecord;

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller, so the stream does not depend on the standard library.
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::mt19937_64 engine_;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void save(const fs::path& dir, const std::string& rel, std::size_t frames,
          std::size_t dim, std::vector<float> values) {
  goldenbench::corpus::save_embedding(
      dir / rel, EmbeddingSequence(frames, dim, std::move(values)));
}

std::vector<float> random_values(Rng& rng, std::size_t n) {
  std::vector<float> v(n);
  for (auto& x : v) x = static_cast<float>(rng.normal());
  return v;
}

UtteranceRecord utt(const std::string& id, const std::string& speaker,
                    Role role, const std::string& pair,
                    const std::string& prompt) {
  UtteranceRecord u;
  u.utterance_id = id;
  u.speaker_id = speaker;
  u.role = role;
  u.pair_id = pair;
  u.text_prompt = prompt;
  return u;
}

std::string meta_line(const std::string& corpus_id) {
  return "{\"kind\":\"meta\",\"corpus_id\":\"" + corpus_id +
         "\",\"generator\":\"make_fixtures\"}";
}

std::string role_tag(Role role) {
  switch (role) {
    case Role::kOriginal:
      return "org";
    case Role::kGolden:
      return "gld";
    case Role::kL1:
      return "l1";
  }
  return "x";
}

// Reference WER counts over the whole corpus (16 reference words):
//   original 3 errors, golden 1 error, l1 7 errors.
void make_ok(const fs::path& root) {
  const fs::path dir = root / "ok";
  fs::create_directories(dir / "emb");
  Rng rng(20260101);

  struct Pair {
    std::string speaker;
    std::string pair;
    std::string prompt;
    std::string hyp[3];  // original, golden, l1
  };
  const std::vector<Pair> pairs = {
      {"spkA", "p1", "The cat sat on the mat.",
       {"the cat sat on a mat", "the cat sat on the mat", "a cat sat on mat"}},
      {"spkA", "p2", "Hello, world!",
       {"hello word", "hello world", "hello big world"}},
      {"spkB", "p1", "Speech synthesis is fun",
       {"speech synthesis fun", "speech synthesis is fun",
        "peach synthesis is a fun"}},
      {"spkB", "p2", "open the door please",
       {"open the door please", "open a door please", "open door"}},
  };
  const Role roles[3] = {Role::kOriginal, Role::kGolden, Role::kL1};
  const double mos[3] = {4.5, 4.0, 3.0};

  CorpusManifest m;
  m.corpus_id = "ok";
  m.metadata.push_back(meta_line("ok"));
  SpeakerRecord a{"spkA", {{"toefl", 104.0}, {"total", 8.5}}, "high"};
  SpeakerRecord b{"spkB", {{"toefl", 71.0}, {"total", 5.0}}, "low"};
  m.speakers = {a, b};

  const std::size_t spk_dim = 4;
  const std::size_t frame_dim = 3;
  for (const Pair& p : pairs) {
    const std::vector<float> spk_base = random_values(rng, spk_dim);
    const std::size_t frames = 5 + static_cast<std::size_t>(rng.uniform() * 4);
    const std::vector<float> frame_base = random_values(rng, frames * frame_dim);
    for (int r = 0; r < 3; ++r) {
      const std::string stem = p.speaker + "_" + p.pair + "_" + role_tag(roles[r]);
      UtteranceRecord u = utt(stem, p.speaker, roles[r], p.pair, p.prompt);
      u.asr_hypothesis = p.hyp[r];
      u.mos = mos[r];
      std::vector<float> spk = spk_base;
      std::vector<float> fr = frame_base;
      if (roles[r] != Role::kOriginal) {
        for (auto& x : spk) x += static_cast<float>(0.3 * rng.normal());
        for (auto& x : fr) x += static_cast<float>(0.2 * rng.normal());
      }
      u.speaker_embedding_path = "emb/" + stem + ".spk.gseb";
      u.frame_embedding_path = "emb/" + stem + ".frames.gseb";
      save(dir, *u.speaker_embedding_path, 1, spk_dim, spk);
      save(dir, *u.frame_embedding_path, frames, frame_dim, fr);
      m.utterances.push_back(u);
    }
  }
  write_text(dir / "ok.manifest.jsonl",
             goldenbench::corpus::serialize_manifest(m));
}

void make_synthetic40(const fs::path& root) {
  const fs::path dir = root / "synthetic40";
  fs::create_directories(dir / "emb");
  Rng rng(40);

  CorpusManifest m;
  m.corpus_id = "synthetic40";
  m.metadata.push_back(meta_line("synthetic40"));
  CorpusManifest scores;
  const std::size_t dim = 8;
  for (int s = 0; s < 40; ++s) {
    char name[16];
    std::snprintf(name, sizeof name, "s%02d", s);
    const std::string speaker = name;
    const double total = std::round(rng.uniform(1.0, 9.5) * 10.0) / 10.0;
    const double toefl = std::round(40.0 + 7.0 * total + 6.0 * rng.normal());
    scores.speakers.push_back(
        {speaker, {{"toefl", toefl}, {"total", total}}, std::nullopt});
    const double sigma = 0.1 * (10.0 - total);
    for (int p = 0; p < 3; ++p) {
      const std::string pair = "p" + std::to_string(p);
      const std::size_t frames = 20 + static_cast<std::size_t>(rng.uniform() * 20);
      const std::vector<float> org = random_values(rng, frames * dim);
      std::vector<float> gld = org;
      for (auto& x : gld) x += static_cast<float>(sigma * rng.normal());
      const std::string prompt = "prompt " + std::to_string(p);
      for (const Role role : {Role::kOriginal, Role::kGolden}) {
        const std::string stem = speaker + "_" + pair + "_" + role_tag(role);
        UtteranceRecord u = utt(stem, speaker, role, pair, prompt);
        u.frame_embedding_path = "emb/" + stem + ".frames.gseb";
        save(dir, *u.frame_embedding_path, frames, dim,
             role == Role::kOriginal ? org : gld);
        m.utterances.push_back(u);
      }
    }
  }
  write_text(dir / "synthetic40.manifest.jsonl",
             goldenbench::corpus::serialize_manifest(m));
  write_text(dir / "synthetic40.scores.jsonl",
             goldenbench::corpus::serialize_manifest(scores));
}

void make_affine(const fs::path& root) {
  const fs::path dir = root / "affine";
  fs::create_directories(dir / "emb");

  CorpusManifest m;
  m.corpus_id = "affine";
  m.metadata.push_back(meta_line("affine"));
  const double totals[] = {2.0, 3.5, 5.0, 6.5, 8.0, 9.5};
  for (std::size_t s = 0; s < std::size(totals); ++s) {
    const std::string speaker = "a" + std::to_string(s);
    m.speakers.push_back({speaker, {{"total", totals[s]}}, std::nullopt});
    for (const Role role : {Role::kOriginal, Role::kGolden}) {
      const std::string stem = speaker + "_" + role_tag(role);
      UtteranceRecord u = utt(stem, speaker, role, "p0", "unit");
      u.frame_embedding_path = "emb/" + stem + ".frames.gseb";
      const float value =
          role == Role::kOriginal ? 0.0f : static_cast<float>(10.0 - totals[s]);
      save(dir, *u.frame_embedding_path, 1, 1, {value});
      m.utterances.push_back(u);
    }
  }
  write_text(dir / "affine.manifest.jsonl",
             goldenbench::corpus::serialize_manifest(m));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <output_dir>\n";
    return 2;
  }
  try {
    const fs::path root = argv[1];
    make_ok(root);
    make_synthetic40(root);
    make_affine(root);
  } catch (const std::exception& e) {
    std::cerr << "make_fixtures: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
