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

#include "commands.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "goldenbench/analytics/stats.h"
#include "goldenbench/corpus/embedding_io.h"
#include "goldenbench/corpus/manifest.h"
#include "goldenbench/corpus/validate.h"
#include "goldenbench/error.h"
#include "goldenbench/fusion/grad_check.h"
#include "goldenbench/speaker_similarity/secs.h"
#include "json.hpp"

namespace goldenbench::cli {

namespace {

using analytics::OutputFormat;
using analytics::Table;
using corpus::Role;

corpus::CorpusManifest load_manifest(const RunConfig& cfg) {
  if (cfg.manifest_path.empty()) throw Error("--manifest is required");
  corpus::CorpusManifest manifest = corpus::read_manifest_file(cfg.manifest_path);
  if (!cfg.scores_path.empty()) {
    corpus::merge_speakers(manifest,
                           corpus::read_speaker_scores_file(cfg.scores_path));
  }
  return manifest;
}

std::filesystem::path manifest_dir(const RunConfig& cfg) {
  return std::filesystem::path(cfg.manifest_path).parent_path();
}

speaker_similarity::EmbeddingLoader embedding_loader(const RunConfig& cfg) {
  return [base = manifest_dir(cfg)](const std::string& relative) {
    return corpus::load_embedding(base / relative);
  };
}

void emit(const RunConfig& cfg, Streams io, const std::string& text) {
  if (cfg.output_path.empty()) {
    io.out << text;
    io.out.flush();
    return;
  }
  std::ofstream file(cfg.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot write " + cfg.output_path);
  file << text;
  if (!file) throw Error("short write to " + cfg.output_path);
}

bool role_present(const corpus::CorpusManifest& m, Role role) {
  for (const auto& utt : m.utterances) {
    if (utt.role == role) return true;
  }
  return false;
}

// How many of the role's utterances satisfy `pred`, and how many there are.
template <typename Pred>
std::pair<std::size_t, std::size_t> coverage(const corpus::CorpusManifest& m,
                                             Role role, Pred pred) {
  std::size_t hit = 0;
  std::size_t total = 0;
  for (const auto& utt : m.utterances) {
    if (utt.role != role) continue;
    ++total;
    if (pred(utt)) ++hit;
  }
  return {hit, total};
}

std::string percent_pair(double wer_percent, std::optional<double> werr) {
  return analytics::format_fixed(wer_percent, 2) + " (" +
         (werr ? analytics::format_fixed(*werr, 2) : std::string("-")) + ")";
}

Table::Value optional_value(std::optional<double> v) {
  if (v) return *v;
  return std::monostate{};
}

}  // namespace

int command_validate(const RunConfig& cfg, Streams io) {
  const corpus::CorpusManifest manifest = load_manifest(cfg);
  const corpus::ValidationReport report = corpus::validate_corpus(
      manifest, corpus::filesystem_lookup(manifest_dir(cfg)));

  const std::string summary = std::to_string(report.errors.size()) +
                              " errors, " +
                              std::to_string(report.warnings.size()) +
                              " warnings";
  const OutputFormat format = cfg.format_or(OutputFormat::kTable);
  if (format == OutputFormat::kTable) {
    std::string text;
    for (const auto& e : report.errors) {
      text += "error: " + e.locator + ": " + e.message + "\n";
    }
    for (const auto& w : report.warnings) {
      text += "warning: " + w.locator + ": " + w.message + "\n";
    }
    text += summary + "\n";
    emit(cfg, io, text);
  } else {
    Table table({{"severity"}, {"locator"}, {"message"}});
    for (const auto& e : report.errors) {
      table.add_row({std::string("error"), e.locator, e.message});
    }
    for (const auto& w : report.warnings) {
      table.add_row({std::string("warning"), w.locator, w.message});
    }
    emit(cfg, io, table.render(format));
    io.err << summary << "\n";
  }
  return report.accepted() ? 0 : 1;
}

int command_wer(const RunConfig& cfg, const WerOptions& opt, Streams io) {
  const corpus::CorpusManifest manifest = load_manifest(cfg);
  const auto pooling = opt.macro ? intelligibility::Pooling::kMacro
                                 : intelligibility::Pooling::kMicro;
  const intelligibility::CorpusWer system =
      intelligibility::corpus_wer(manifest, opt.role, opt.policy, pooling);
  const double system_pct = 100.0 * system.rate;

  std::optional<double> baseline_pct;
  std::optional<double> reduction;
  if (opt.werr_baseline) {
    baseline_pct = 100.0 * intelligibility::corpus_wer(manifest,
                                                       *opt.werr_baseline,
                                                       opt.policy, pooling)
                               .rate;
    reduction = intelligibility::werr(*baseline_pct, system_pct);
  }

  const OutputFormat format = cfg.format_or(OutputFormat::kTable);
  const std::string pooling_name = opt.macro ? "macro" : "micro";
  if (format == OutputFormat::kTable) {
    Table table({{"corpus"}, {"role"}, {"WER (WERR%)"}, {"pooling"},
                 {"utterances"}, {"errors"}, {"ref words"}});
    table.add_row({manifest.corpus_id, std::string(corpus::to_string(opt.role)),
                   percent_pair(system_pct, reduction), pooling_name,
                   static_cast<std::int64_t>(system.utterance_count),
                   static_cast<std::int64_t>(system.totals.errors()),
                   static_cast<std::int64_t>(system.totals.reference_length)});
    emit(cfg, io, table.render(format));
  } else {
    Table table({{"corpus"}, {"role"}, {"wer_percent"}, {"pooling"},
                 {"utterances"}, {"substitutions"}, {"deletions"},
                 {"insertions"}, {"ref_words"}, {"baseline_role"},
                 {"baseline_wer_percent"}, {"werr_percent"}});
    table.add_row(
        {manifest.corpus_id, std::string(corpus::to_string(opt.role)),
         system_pct, pooling_name,
         static_cast<std::int64_t>(system.utterance_count),
         static_cast<std::int64_t>(system.totals.substitutions),
         static_cast<std::int64_t>(system.totals.deletions),
         static_cast<std::int64_t>(system.totals.insertions),
         static_cast<std::int64_t>(system.totals.reference_length),
         opt.werr_baseline
             ? Table::Value(std::string(corpus::to_string(*opt.werr_baseline)))
             : Table::Value(std::monostate{}),
         optional_value(baseline_pct), optional_value(reduction)});
    emit(cfg, io, table.render(format));
  }
  return 0;
}

int command_secs(const RunConfig& cfg, const SecsOptions& opt, Streams io) {
  const corpus::CorpusManifest manifest = load_manifest(cfg);
  const auto sets = speaker_similarity::collect_embedding_sets(
      manifest, opt.role, embedding_loader(cfg));
  const auto report =
      speaker_similarity::secs_report(sets, opt.exclude_diagonal);

  Table table({{"corpus"}, {"role"}, {"speaker"}, {"utt", 2}, {"spk", 2}});
  const std::string role(corpus::to_string(opt.role));
  table.add_row({manifest.corpus_id, role, std::string("*"), report.utt.corpus,
                 report.spk.corpus});
  if (opt.per_speaker) {
    for (const auto& [speaker, utt] : report.utt.per_speaker) {
      table.add_row({manifest.corpus_id, role, speaker, utt,
                     report.spk.per_speaker.at(speaker)});
    }
  }
  emit(cfg, io, table.render(cfg.format_or(OutputFormat::kTable)));
  return 0;
}

int command_mos(const RunConfig& cfg, Role role, Streams io) {
  const corpus::CorpusManifest manifest = load_manifest(cfg);
  const double mean = analytics::mos_mean(manifest, role);
  const auto [rated, total] =
      coverage(manifest, role, [](const auto& u) { return u.mos.has_value(); });
  Table table({{"corpus"}, {"role"}, {"rated"}, {"utterances"}, {"mos", 2}});
  table.add_row({manifest.corpus_id, std::string(corpus::to_string(role)),
                 static_cast<std::int64_t>(rated),
                 static_cast<std::int64_t>(total), mean});
  emit(cfg, io, table.render(cfg.format_or(OutputFormat::kTable)));
  return 0;
}

int command_dtw(const RunConfig& cfg, const DtwOptions& opt, Streams io) {
  const corpus::CorpusManifest manifest = load_manifest(cfg);
  const std::filesystem::path base = manifest_dir(cfg);

  struct Entry {
    const corpus::UtteranceRecord* synthesized;
    const corpus::UtteranceRecord* original;
  };
  std::vector<Entry> entries;
  for (const auto& utt : manifest.utterances) {
    if (utt.role != opt.role) continue;
    const corpus::UtteranceRecord* original =
        opt.role == Role::kOriginal ? &utt
                                    : manifest.counterpart(utt, Role::kOriginal);
    if (original == nullptr) {
      throw Error("utterance " + utt.utterance_id +
                  " has no original counterpart");
    }
    for (const auto* u : {&utt, original}) {
      if (!u->frame_embedding_path) {
        throw Error("utterance " + u->utterance_id + " has no frame_emb");
      }
    }
    entries.push_back({&utt, original});
  }
  if (entries.empty()) {
    throw Error("no utterances with role " +
                std::string(corpus::to_string(opt.role)));
  }

  // Each distinct file is loaded once.
  std::map<std::string, std::size_t> slot;
  std::vector<corpus::EmbeddingSequence> sequences;
  auto load = [&](const std::string& rel) {
    auto [it, inserted] = slot.emplace(rel, sequences.size());
    if (inserted) sequences.push_back(corpus::load_embedding(base / rel));
    return it->second;
  };
  std::vector<std::pair<std::size_t, std::size_t>> index_pairs;
  for (const Entry& e : entries) {
    const std::size_t o = load(*e.original->frame_embedding_path);
    const std::size_t s = load(*e.synthesized->frame_embedding_path);
    index_pairs.emplace_back(o, s);
  }
  if (opt.zscore) {
    std::vector<const corpus::EmbeddingSequence*> ptrs;
    for (const auto& s : sequences) ptrs.push_back(&s);
    sequences = alignment::zscore(ptrs);
  }
  std::vector<alignment::SequencePair> pairs;
  for (const auto& [o, s] : index_pairs) {
    pairs.push_back({&sequences[o], &sequences[s]});
  }

  const alignment::BatchDtwOutcome outcome =
      alignment::batch_dtw(pairs, opt.config, cfg.workers);

  Table table({{"utterance"}, {"original"}, {"speaker"}, {"frames_original"},
               {"frames_synthesized"}, {"cost", 6}, {"path_length"},
               {"normalized_cost", 6}, {"value", 6}});
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (!outcome.results[k]) continue;
    const alignment::DtwResult& r = *outcome.results[k];
    table.add_row({entries[k].synthesized->utterance_id,
                   entries[k].original->utterance_id,
                   entries[k].synthesized->speaker_id,
                   static_cast<std::int64_t>(pairs[k].original->frame_count()),
                   static_cast<std::int64_t>(
                       pairs[k].synthesized->frame_count()),
                   r.cost, static_cast<std::int64_t>(r.path_length),
                   r.normalized_cost, r.value(opt.config)});
  }
  emit(cfg, io, table.render(cfg.format_or(OutputFormat::kRecords)));
  for (const auto& f : outcome.failures) {
    io.err << "pair " << f.index << " ("
           << entries[f.index].synthesized->utterance_id
           << "): " << f.message << "\n";
  }
  return outcome.failures.empty() ? 0 : 1;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

}  // namespace

std::map<std::string, double> read_dtw_values(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open DTW results " + path);
  std::map<std::string, double> values;
  std::string line;
  std::size_t line_number = 0;
  std::optional<std::pair<std::size_t, std::size_t>> csv_columns;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line == "\r") continue;
    std::string id;
    double value = 0.0;
    if (line.front() == '{') {
      try {
        const auto obj = nlohmann::json::parse(line);
        id = obj.at("utterance").get<std::string>();
        value = obj.at("value").get<double>();
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what(), line_number);
      }
    } else {
      const auto fields = split_csv_line(line);
      if (!csv_columns) {
        const auto find = [&](const char* name) {
          for (std::size_t i = 0; i < fields.size(); ++i) {
            if (fields[i] == name) return i;
          }
          throw ParseError(path + ": CSV header lacks column \"" +
                               std::string(name) + "\"",
                           line_number);
        };
        csv_columns = {find("utterance"), find("value")};
        continue;
      }
      const auto [id_col, value_col] = *csv_columns;
      if (fields.size() <= std::max(id_col, value_col)) {
        throw ParseError(path + ": short CSV row", line_number);
      }
      id = fields[id_col];
      try {
        std::size_t used = 0;
        value = std::stod(fields[value_col], &used);
        if (used != fields[value_col].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError(path + ": bad value \"" + fields[value_col] + "\"",
                         line_number);
      }
    }
    if (!values.emplace(id, value).second) {
      throw ParseError(path + ": duplicate utterance " + id, line_number);
    }
  }
  return values;
}

int command_correlate(const RunConfig& cfg, const CorrelateOptions& opt,
                      Streams io) {
  const corpus::CorpusManifest manifest = load_manifest(cfg);
  const auto costs = read_dtw_values(opt.dtw_path);
  const analytics::CorrelationResult result = analytics::correlate_corpus(
      manifest, costs, opt.score_name, opt.config);
  const std::string level =
      opt.config.level == analytics::CorrelationLevel::kSpeaker ? "speaker"
                                                                : "utterance";

  Table boxes({{"group"}, {"count"}, {"min", 4}, {"q1", 4}, {"median", 4},
               {"q3", 4}, {"max", 4}});
  for (const auto& box : result.boxes) {
    boxes.add_row({box.label, static_cast<std::int64_t>(box.count), box.min,
                   box.q1, box.median, box.q3, box.max});
  }
  Table points({{"label"}, {"cost", 6}, {"score", 3}});
  for (std::size_t i = 0; i < result.series.xs.size(); ++i) {
    points.add_row({result.series.labels[i], result.series.xs[i],
                    result.series.ys[i]});
  }

  const OutputFormat format = cfg.format_or(OutputFormat::kTable);
  std::string text;
  if (format == OutputFormat::kTable) {
    text += "PCC: " + analytics::format_fixed(result.pcc, 3) + "\n";
    text += "score: " + opt.score_name + ", level: " + level +
            ", points: " + std::to_string(result.series.xs.size()) + "\n\n";
    text += boxes.render(format);
    if (opt.points) text += "\n" + points.render(format);
  } else {
    Table summary({{"metric"}, {"score"}, {"level"}, {"points"}, {"pcc", 3}});
    summary.add_row({std::string("pcc"), opt.score_name, level,
                     static_cast<std::int64_t>(result.series.xs.size()),
                     result.pcc});
    text += summary.render(format);
    if (format == OutputFormat::kCsv) text += "\n";
    text += boxes.render(format);
    if (opt.points) {
      if (format == OutputFormat::kCsv) text += "\n";
      text += points.render(format);
    }
  }
  emit(cfg, io, text);
  return 0;
}

int command_fuse_check(const RunConfig& cfg, const FuseCheckOptions& opt,
                       Streams io) {
  std::vector<fusion::Mechanism> mechanisms;
  if (opt.mechanism == "all") {
    mechanisms = {fusion::Mechanism::kAdd, fusion::Mechanism::kAtt,
                  fusion::Mechanism::kGate, fusion::Mechanism::kCat};
  } else {
    mechanisms = {fusion::parse_mechanism(opt.mechanism)};
  }
  const std::size_t syn_frames = opt.syn_frames.value_or(opt.frames);
  if (opt.frames == 0 || syn_frames == 0 || opt.dim == 0) {
    throw Error("fuse-check: frames and dim must be positive");
  }
  const fusion::Tensor h_org =
      fusion::random_tensor(opt.frames, opt.dim, cfg.seed * 4 + 1);
  const fusion::Tensor h_syn =
      fusion::random_tensor(syn_frames, opt.dim, cfg.seed * 4 + 2);

  Table table({{"mechanism"}, {"coordinates"}, {"max_abs_error", 3, true},
               {"max_rel_error", 3, true}, {"worst"}, {"tolerance", 1, true},
               {"result"}});
  bool all_pass = true;
  for (const fusion::Mechanism m : mechanisms) {
    const fusion::FusionParams params =
        fusion::init_params(m, opt.dim, opt.heads, cfg.seed * 4 + 3);
    const fusion::GradCheckReport report =
        fusion::grad_check(h_org, h_syn, params, opt.tolerance, opt.step);
    all_pass = all_pass && report.pass;
    table.add_row({std::string(fusion::to_string(m)),
                   static_cast<std::int64_t>(report.coordinates),
                   report.max_abs_error, report.max_rel_error,
                   report.worst_name, opt.tolerance,
                   std::string(report.pass ? "pass" : "FAIL")});
  }
  emit(cfg, io, table.render(cfg.format_or(OutputFormat::kTable)));
  return all_pass ? 0 : 1;
}

int command_report(const RunConfig& cfg, const ReportOptions& opt, Streams io) {
  const corpus::CorpusManifest manifest = load_manifest(cfg);
  const auto loader = embedding_loader(cfg);

  auto wer_percent = [&](Role role) -> std::optional<double> {
    const auto [with_hyp, total] = coverage(
        manifest, role, [](const auto& u) { return u.asr_hypothesis.has_value(); });
    if (with_hyp == 0) return std::nullopt;
    return 100.0 *
           intelligibility::corpus_wer(manifest, role, opt.policy).rate;
  };
  auto secs = [&](Role role) -> std::optional<speaker_similarity::SecsReport> {
    bool any = false;
    for (const auto& utt : manifest.utterances) {
      if (utt.role != Role::kOriginal || !utt.speaker_embedding_path) continue;
      const auto* synth =
          role == Role::kOriginal ? &utt : manifest.counterpart(utt, role);
      if (synth != nullptr && synth->speaker_embedding_path) any = true;
    }
    if (!any) return std::nullopt;
    return speaker_similarity::secs_report(
        speaker_similarity::collect_embedding_sets(manifest, role, loader),
        opt.exclude_diagonal);
  };
  auto mos = [&](Role role) -> std::optional<double> {
    const auto [rated, total] =
        coverage(manifest, role, [](const auto& u) { return u.mos.has_value(); });
    if (rated == 0) return std::nullopt;
    return analytics::mos_mean(manifest, role);
  };

  const std::optional<double> baseline = wer_percent(Role::kOriginal);
  const OutputFormat format = cfg.format_or(OutputFormat::kTable);
  Table table =
      format == OutputFormat::kTable
          ? Table({{"system"}, {"WER (WERR%)"}, {"SECS utt", 2},
                   {"SECS spk", 2}, {"MOS", 2}})
          : Table({{"corpus"}, {"role"}, {"wer_percent"}, {"werr_percent"},
                   {"secs_utt"}, {"secs_spk"}, {"mos"}});
  struct Row {
    Role role;
    const char* label;
  };
  const Row rows[] = {{Role::kOriginal, nullptr},
                      {Role::kL1, "- L1"},
                      {Role::kGolden, "- GLD"}};
  for (const Row& row : rows) {
    if (!role_present(manifest, row.role)) continue;
    const std::optional<double> wer = wer_percent(row.role);
    std::optional<double> reduction;
    if (wer && baseline && row.role != Role::kOriginal && *baseline > 0.0) {
      reduction = intelligibility::werr(*baseline, *wer);
    }
    const auto similarity = secs(row.role);
    const std::optional<double> utt =
        similarity ? std::optional(similarity->utt.corpus) : std::nullopt;
    const std::optional<double> spk =
        similarity ? std::optional(similarity->spk.corpus) : std::nullopt;
    if (format == OutputFormat::kTable) {
      const std::string label =
          row.label != nullptr ? row.label : manifest.corpus_id;
      table.add_row({label,
                     wer ? Table::Value(percent_pair(*wer, reduction))
                         : Table::Value(std::monostate{}),
                     optional_value(utt), optional_value(spk),
                     optional_value(mos(row.role))});
    } else {
      table.add_row({manifest.corpus_id,
                     std::string(corpus::to_string(row.role)),
                     optional_value(wer), optional_value(reduction),
                     optional_value(utt), optional_value(spk),
                     optional_value(mos(row.role))});
    }
  }
  if (table.row_count() == 0) throw Error("manifest has no utterances");
  emit(cfg, io, table.render(format));
  return 0;
}

}  // namespace goldenbench::cli
