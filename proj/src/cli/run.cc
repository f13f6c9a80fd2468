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

#include "goldenbench/cli/run.h"

#include <algorithm>
#include <cctype>
#include <exception>

#include "CLI11.hpp"
#include "commands.h"
#include "goldenbench/error.h"

namespace goldenbench::cli {

namespace {

const std::vector<std::string> kRoles = {"original", "golden", "l1"};

void add_role(CLI::App* cmd, std::string& target, const std::string& fallback,
              const std::string& help = "utterance role") {
  target = fallback;
  cmd->add_option("--role", target, help)
      ->check(CLI::IsMember(kRoles))
      ->capture_default_str();
}

void add_policy(CLI::App* cmd, intelligibility::NormalizationPolicy& policy) {
  cmd->add_flag("!--keep-case", policy.lowercase, "do not lowercase tokens");
  cmd->add_flag("!--keep-punctuation", policy.strip_punctuation,
                "do not strip ASCII punctuation");
  cmd->add_flag("!--strict-whitespace", policy.collapse_whitespace,
                "split on single spaces only");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"goldenbench: golden-speaker evaluation toolkit", "goldenbench"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string format;
  app.add_option("--manifest", cfg.manifest_path, "corpus manifest (JSONL)");
  app.add_option("--scores", cfg.scores_path, "speaker scores (JSONL)");
  app.add_option("--output,-o", cfg.output_path, "write results to a file");
  app.add_option("--format", format, "table, csv or records")
      ->check(CLI::IsMember({"table", "csv", "records"}));
  app.add_option("--workers", cfg.workers, "batch worker threads")
      ->envname("GOLDENBENCH_WORKERS")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for all randomness")
      ->capture_default_str();

  CLI::App* validate = app.add_subcommand("validate", "check a corpus");

  WerOptions wer;
  std::string wer_role;
  std::string wer_baseline;
  CLI::App* wer_cmd = app.add_subcommand("wer", "word error rate");
  add_role(wer_cmd, wer_role, "golden");
  wer_cmd->add_option("--werr-baseline", wer_baseline, "role to compare against")
      ->check(CLI::IsMember(kRoles));
  wer_cmd->add_flag("--macro", wer.macro, "average per-utterance rates");
  add_policy(wer_cmd, wer.policy);

  SecsOptions secs;
  std::string secs_role;
  CLI::App* secs_cmd = app.add_subcommand("secs", "speaker similarity");
  add_role(secs_cmd, secs_role, "golden");
  secs_cmd->add_flag("--exclude-diagonal", secs.exclude_diagonal,
                     "drop i=j terms from SECS_spk");
  secs_cmd->add_flag("--per-speaker", secs.per_speaker, "add per-speaker rows");

  std::string mos_role;
  CLI::App* mos_cmd = app.add_subcommand("mos", "mean opinion score");
  add_role(mos_cmd, mos_role, "golden");

  DtwOptions dtw;
  std::string dtw_role;
  std::string metric = "euclidean";
  std::optional<std::size_t> band;
  bool raw_cost = false;
  CLI::App* dtw_cmd = app.add_subcommand("dtw", "batch DTW alignment cost");
  add_role(dtw_cmd, dtw_role, "golden", "role aligned against its original");
  dtw_cmd->add_option("--metric", metric, "local frame distance")
      ->check(CLI::IsMember({"euclidean", "squared_euclidean", "cosine_distance"}))
      ->capture_default_str();
  dtw_cmd->add_option("--band", band, "Sakoe-Chiba band radius")
      ->check(CLI::PositiveNumber);
  dtw_cmd->add_flag("--raw", raw_cost, "report unnormalized cost as value");
  dtw_cmd->add_flag("--zscore", dtw.zscore,
                    "standardize features over the loaded sequences");

  CorrelateOptions corr;
  std::string corr_role;
  std::string level = "speaker";
  CLI::App* corr_cmd =
      app.add_subcommand("correlate", "correlate DTW cost with a score");
  corr_cmd->add_option("--dtw", corr.dtw_path, "dtw output (records or CSV)")
      ->required();
  corr_cmd->add_option("--score", corr.score_name, "speaker score name")
      ->required();
  add_role(corr_cmd, corr_role, "golden");
  corr_cmd->add_option("--level", level, "speaker or utterance")
      ->check(CLI::IsMember({"speaker", "utterance"}))
      ->capture_default_str();
  corr_cmd->add_option("--bucket-width", corr.config.bucket_width,
                       "group scores into buckets of this width")
      ->check(CLI::PositiveNumber);
  corr_cmd->add_flag("--points", corr.points, "print the paired series");

  FuseCheckOptions fuse;
  CLI::App* fuse_cmd =
      app.add_subcommand("fuse-check", "finite-difference gradient check");
  fuse_cmd->add_option("--mechanism", fuse.mechanism, "add, att, gate, cat or all")
      ->check(CLI::IsMember({"all", "add", "att", "gate", "cat"},
                            CLI::ignore_case))
      ->capture_default_str();
  fuse_cmd->add_option("--dim", fuse.dim, "feature dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fuse_cmd->add_option("--frames", fuse.frames, "original frames")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fuse_cmd->add_option("--syn-frames", fuse.syn_frames,
                       "synthesized frames (default: --frames)")
      ->check(CLI::PositiveNumber);
  fuse_cmd->add_option("--heads", fuse.heads, "attention heads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fuse_cmd->add_option("--tolerance", fuse.tolerance, "relative error bound")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fuse_cmd->add_option("--step", fuse.step, "finite-difference step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  ReportOptions report;
  CLI::App* report_cmd = app.add_subcommand("report", "corpus summary table");
  report_cmd->add_flag("--exclude-diagonal", report.exclude_diagonal,
                       "drop i=j terms from SECS_spk");
  add_policy(report_cmd, report.policy);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "goldenbench: " << e.what() << "\n"
        << "run 'goldenbench --help' for usage\n";
    return kExitUsage;
  }

  const Streams io{out, err};
  try {
    if (!format.empty()) cfg.output_format = analytics::parse_output_format(format);
    if (validate->parsed()) return command_validate(cfg, io);
    if (wer_cmd->parsed()) {
      wer.role = corpus::parse_role(wer_role);
      if (!wer_baseline.empty()) wer.werr_baseline = corpus::parse_role(wer_baseline);
      return command_wer(cfg, wer, io);
    }
    if (secs_cmd->parsed()) {
      secs.role = corpus::parse_role(secs_role);
      return command_secs(cfg, secs, io);
    }
    if (mos_cmd->parsed()) {
      return command_mos(cfg, corpus::parse_role(mos_role), io);
    }
    if (dtw_cmd->parsed()) {
      dtw.role = corpus::parse_role(dtw_role);
      dtw.config.local_metric = alignment::parse_local_metric(metric);
      dtw.config.band_radius = band;
      dtw.config.normalize_by_path_length = !raw_cost;
      return command_dtw(cfg, dtw, io);
    }
    if (corr_cmd->parsed()) {
      corr.config.synthesized_role = corpus::parse_role(corr_role);
      corr.config.level = level == "speaker"
                              ? analytics::CorrelationLevel::kSpeaker
                              : analytics::CorrelationLevel::kUtterance;
      return command_correlate(cfg, corr, io);
    }
    if (fuse_cmd->parsed()) {
      std::transform(fuse.mechanism.begin(), fuse.mechanism.end(),
                     fuse.mechanism.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      return command_fuse_check(cfg, fuse, io);
    }
    if (report_cmd->parsed()) return command_report(cfg, report, io);
  } catch (const Error& e) {
    err << "goldenbench: " << e.what() << "\n";
    return kExitFailure;
  }
  err << "goldenbench: no subcommand\n";
  return kExitUsage;
}

}  // namespace goldenbench::cli
