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

#ifndef GOLDENBENCH_CORPUS_MANIFEST_H_
#define GOLDENBENCH_CORPUS_MANIFEST_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "goldenbench/corpus/types.h"

namespace goldenbench::corpus {

// Parses the line-delimited manifest format. Each nonblank line is one JSON
// object whose "kind" is "utt", "spk" or "meta"; lines starting with '#' are
// comments. A meta record carrying "corpus_id" sets the manifest id, which
// otherwise defaults to `default_corpus_id`.
//
// Throws ParseError (with line number) on malformed JSON, unknown kind or
// role, missing or mistyped required fields, duplicate ids, MOS outside
// [1, 5], empty score names and paths that are absolute or contain "..".
CorpusManifest parse_manifest(std::string_view text,
                              std::string default_corpus_id = "");

// Reads and parses a manifest file. The default corpus id is the file name
// with any ".manifest.jsonl" / ".jsonl" suffix removed.
CorpusManifest read_manifest_file(const std::filesystem::path& path);

// Inverse of parse_manifest: meta lines first, then speakers, then
// utterances, each in stored order.
std::string serialize_manifest(const CorpusManifest& manifest);

// A standalone scores file: speaker records only ("kind" may be omitted).
std::vector<SpeakerRecord> parse_speaker_scores(std::string_view text);
std::vector<SpeakerRecord> read_speaker_scores_file(
    const std::filesystem::path& path);

// Adds the given speakers to the manifest. Scores of a speaker already
// present are merged, with incoming values replacing existing ones.
void merge_speakers(CorpusManifest& manifest,
                    const std::vector<SpeakerRecord>& speakers);

}  // namespace goldenbench::corpus

#endif  // GOLDENBENCH_CORPUS_MANIFEST_H_
