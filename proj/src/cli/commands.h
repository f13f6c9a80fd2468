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

// Subcommand bodies. Each returns an exit code and writes results to the
// configured sink; errors propagate as goldenbench::Error.

#ifndef GOLDENBENCH_SRC_CLI_COMMANDS_H_
#define GOLDENBENCH_SRC_CLI_COMMANDS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "goldenbench/alignment/dtw.h"
#include "goldenbench/analytics/correlate.h"
#include "goldenbench/analytics/table.h"
#include "goldenbench/corpus/types.h"
#include "goldenbench/intelligibility/wer.h"

namespace goldenbench::cli {

struct RunConfig {
  std::string manifest_path;
  std::string scores_path;  // optional standalone speaker scores
  std::string output_path;  // empty: the command's output stream
  std::optional<analytics::OutputFormat> output_format;
  std::size_t workers = 1;
  std::uint64_t seed = 0;

  analytics::OutputFormat format_or(analytics::OutputFormat fallback) const {
    return output_format.value_or(fallback);
  }
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

struct WerOptions {
  corpus::Role role = corpus::Role::kGolden;
  std::optional<corpus::Role> werr_baseline;
  bool macro = false;
  intelligibility::NormalizationPolicy policy;
};

struct SecsOptions {
  corpus::Role role = corpus::Role::kGolden;
  bool exclude_diagonal = false;
  bool per_speaker = false;
};

struct DtwOptions {
  corpus::Role role = corpus::Role::kGolden;
  alignment::DtwConfig config;
  bool zscore = false;
};

struct CorrelateOptions {
  std::string dtw_path;
  std::string score_name;
  analytics::CorrelationConfig config;
  bool points = false;
};

struct FuseCheckOptions {
  std::string mechanism = "all";
  std::size_t dim = 8;
  std::size_t frames = 4;
  std::optional<std::size_t> syn_frames;
  std::size_t heads = 2;
  double tolerance = 1e-4;
  double step = 1e-5;
};

struct ReportOptions {
  bool exclude_diagonal = false;
  intelligibility::NormalizationPolicy policy;
};

int command_validate(const RunConfig& cfg, Streams io);
int command_wer(const RunConfig& cfg, const WerOptions& opt, Streams io);
int command_secs(const RunConfig& cfg, const SecsOptions& opt, Streams io);
int command_mos(const RunConfig& cfg, corpus::Role role, Streams io);
int command_dtw(const RunConfig& cfg, const DtwOptions& opt, Streams io);
int command_correlate(const RunConfig& cfg, const CorrelateOptions& opt,
                      Streams io);
int command_fuse_check(const RunConfig& cfg, const FuseCheckOptions& opt,
                       Streams io);
int command_report(const RunConfig& cfg, const ReportOptions& opt, Streams io);

// Parses a dtw records (JSON lines) or CSV file into utterance id -> value.
std::map<std::string, double> read_dtw_values(const std::string& path);

}  // namespace goldenbench::cli

#endif  // GOLDENBENCH_SRC_CLI_COMMANDS_H_
