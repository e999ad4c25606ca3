/*
 * Copyright 2026 The LingLeak Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lingleak/pipeline.h"

#include <map>
#include <set>

#include "json.hpp"
#include "lingleak/ngram_model.h"
#include "lingleak/parallel.h"
#include "lingleak/rng.h"
#include "lingleak/status_macros.h"
#include "lingleak/strings.h"
#include "lingleak/svg.h"
#include "lingleak/wire.h"

namespace lingleak {
namespace {

constexpr uint64_t kHalfStream = 31;
constexpr uint64_t kTargetStream = 32;
constexpr uint64_t kShadowStream = 33;
constexpr uint64_t kEnsembleStream = 34;

absl::StatusOr<std::vector<ConfidenceTrajectory>> TrainAndCollect(
    const Corpus& half, const ClassifierOptions& base, uint64_t seed) {
  std::set<std::string> in;
  for (const Document& doc : half.docs) {
    if (doc.split == Split::kTrain) in.insert(doc.id);
  }
  ClassifierOptions options = base;
  options.seed = seed;
  ASSIGN_OR_RETURN(BinClassifier model,
                   BinClassifier::Train(half, in, options));
  return CollectTrajectories(model, half);
}

Table CdfTableOf(const std::vector<CdfTable>& tables) {
  Table t;
  t.columns = {"statistic", "subset", "value", "cumulative"};
  for (const CdfTable& c : tables) {
    for (const CdfPoint& p : c.points) {
      t.rows.push_back({c.statistic, c.subset, p.value, p.cumulative});
    }
  }
  return t;
}

std::vector<std::pair<double, double>> Points(const std::vector<CdfPoint>& c) {
  std::vector<std::pair<double, double>> out;
  for (const CdfPoint& p : c) out.emplace_back(p.value, p.cumulative);
  return out;
}

Table HistogramTable(const Histogram& in, const Histogram& out) {
  Table t;
  t.columns = {"bin_lo", "bin_hi", "in", "out"};
  for (size_t b = 0; b < in.counts.size(); ++b) {
    t.rows.push_back({in.edges[b], in.edges[b + 1],
                      static_cast<double>(in.counts[b]),
                      static_cast<double>(out.counts[b])});
  }
  return t;
}

nlohmann::ordered_json OptionalJson(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

absl::StatusOr<TrajectorySets> ToyMembershipTrajectories(
    const Corpus& corpus, const ClassifierOptions& classifier, uint64_t seed) {
  Corpus target_half, shadow_half;
  target_half.language = shadow_half.language = corpus.language;
  for (size_t i = 0; i < corpus.docs.size(); ++i) {
    const bool to_target = CounterHash(seed, kHalfStream, i) & 1;
    (to_target ? target_half : shadow_half).docs.push_back(corpus.docs[i]);
  }
  TrajectorySets sets;
  ASSIGN_OR_RETURN(sets.target,
                   TrainAndCollect(target_half, classifier,
                                   CounterHash(seed, kTargetStream, 0)));
  ASSIGN_OR_RETURN(sets.shadow,
                   TrainAndCollect(shadow_half, classifier,
                                   CounterHash(seed, kShadowStream, 0)));
  return sets;
}

absl::StatusOr<ToyPipelineResult> RunToyPipeline(
    const Corpus& input, const ToyPipelineOptions& options) {
  ToyPipelineResult r;
  r.language = input.language;
  ASSIGN_OR_RETURN(Corpus split,
                   SplitCorpus(input, options.train_fraction, options.seed));
  ASSIGN_OR_RETURN(r.corpus, AssignLengthBins(split, options.n_bins));
  MetricOptions metric_options = options.metrics;
  metric_options.threads = options.threads;
  ASSIGN_OR_RETURN(r.profile, Profile(r.corpus, metric_options));
  const Corpus train = SplitSubset(r.corpus, Split::kTrain);

  // Extraction: greedy continuations of train-document prompts.
  ASSIGN_OR_RETURN(
      NGramModel ngram,
      NGramModel::Train(train, options.ngram_order, options.ngram_smoothing));
  ASSIGN_OR_RETURN(MatchIndex index,
                   MatchIndex::Build(train, options.seed_ngram));
  const std::string model_id =
      StrCat("ngram-", options.ngram_order, "-", ngram.digest().substr(0, 12));
  for (int k : options.prompt_sizes) {
    const PromptSet prompts =
        BuildPrompts(train, k, options.detect.min_match_len);
    std::vector<GenerationRecord> records(prompts.prompts.size());
    ParallelFor(records.size(), options.threads, [&](size_t i) {
      const PromptSpec& spec = prompts.prompts[i];
      GenerateOptions gen;
      gen.max_tokens = options.max_new_tokens;
      records[i] = {spec.doc_id, k, spec.prompt_text,
                    StrJoin(ngram.Generate(spec.prompt, gen), " "), model_id};
    });
    r.generations.insert(r.generations.end(), records.begin(), records.end());
  }
  ASSIGN_OR_RETURN(r.evaluation,
                   EvaluateGenerationLog(r.generations, index, r.language,
                                         options.detect, options.threads));
  r.extraction = BuildExtractionReport(
      r.evaluation.matches, train, options.prompt_sizes, r.evaluation.attempts);

  // Counterfactual memorization over the train split.
  EnsembleOptions ensemble;
  ensemble.n_models = options.n_models;
  ensemble.inclusion_prob = options.inclusion_prob;
  ensemble.seed = CounterHash(options.seed, kEnsembleStream, 0);
  ensemble.classifier = options.classifier;
  ensemble.threads = options.threads;
  ASSIGN_OR_RETURN(r.losses, RunToyEnsemble(train, ensemble));
  ASSIGN_OR_RETURN(r.scores, CounterfactualScores(r.losses, options.threads));
  ASSIGN_OR_RETURN(r.flag_threshold,
                   FlagMemorized(r.scores, options.percentile));
  ASSIGN_OR_RETURN(r.surface_cdfs, SurfaceCdfs(train, r.scores));
  ASSIGN_OR_RETURN(r.label_histogram,
                   AuditLabelDistribution(r.corpus, options.n_bins));

  // Membership inference: target and shadow models on disjoint halves.
  ASSIGN_OR_RETURN(
      TrajectorySets sets,
      ToyMembershipTrajectories(r.corpus, options.classifier, options.seed));
  r.target = std::move(sets.target);
  r.shadow = std::move(sets.shadow);
  RETURN_IF_ERROR(CheckShadowDisjoint(r.shadow, r.target));
  ASSIGN_OR_RETURN(r.attack, TrainAttack(r.shadow, options.attack));
  ASSIGN_OR_RETURN(r.mia, EvaluateMia(r.attack, r.target));
  ASSIGN_OR_RETURN(r.separability, Separability(r.target));

  r.summary.language = r.language;
  for (const PromptSizeSummary& s : r.extraction.per_size) {
    r.summary.extraction_unique[s.prompt_size] = s.unique_extractions;
  }
  r.summary.memorization_tail_mass = TailMass(r.scores, options.tail_threshold);
  r.summary.mia_accuracy = r.mia.accuracy;
  r.summary.mia_overlap = r.separability.overlap;
  return r;
}

std::vector<Artifact> PipelineArtifacts(const ToyPipelineResult& r) {
  const std::string p = r.language + "_";
  std::vector<Artifact> out;

  Artifact profile;
  profile.name = p + "profile";
  profile.json = ProfileToJson(r.profile).dump(2) + "\n";
  out.push_back(std::move(profile));

  Artifact summary;
  summary.name = p + "summary";
  summary.json = LeakageSummaryToJson(r.summary);
  out.push_back(std::move(summary));

  Artifact extraction;
  extraction.name = p + "extraction";
  Table ext;
  ext.columns = {"prompt_size", "unique_extractions", "exact", "near",
                 "attempts"};
  std::vector<std::string> categories;
  BarSeries bars{"unique extractions", {}};
  for (const auto& s : r.extraction.per_size) {
    ext.rows.push_back({static_cast<double>(s.prompt_size),
                        static_cast<double>(s.unique_extractions),
                        static_cast<double>(s.exact_matches),
                        static_cast<double>(s.near_matches),
                        static_cast<double>(s.attempts)});
    categories.push_back(StrCat("k=", s.prompt_size));
    bars.values.push_back(static_cast<double>(s.unique_extractions));
  }
  extraction.table = std::move(ext);
  extraction.svg =
      RenderBarChart(r.language + " unique extractions", categories, {bars});
  extraction.raw_files.emplace_back(p + "generations.jsonl",
                                    WriteGenerationLog(r.generations));
  out.push_back(std::move(extraction));

  Artifact ext_cdf;
  ext_cdf.name = p + "extraction_cdf";
  ext_cdf.table = CdfTableOf(
      {{"word_count", "all", r.extraction.all_word_count_cdf},
       {"word_count", "extracted", r.extraction.extracted_word_count_cdf}});
  ext_cdf.svg = RenderStepChart(
      r.language + " word count CDF", "words",
      {{"all", Points(r.extraction.all_word_count_cdf)},
       {"extracted", Points(r.extraction.extracted_word_count_cdf)}});
  out.push_back(std::move(ext_cdf));

  Artifact mem;
  mem.name = p + "memorization";
  Table scores;
  scores.columns = {"doc_id", "score", "n_in", "n_out", "flagged"};
  for (const auto& s : r.scores) {
    scores.rows.push_back({s.doc_id, s.score, static_cast<double>(s.n_in),
                           static_cast<double>(s.n_out),
                           s.flagged ? 1.0 : 0.0});
  }
  mem.table = std::move(scores);
  std::vector<double> sorted;
  for (const auto& s : r.scores) sorted.push_back(s.score);
  std::vector<CdfPoint> score_cdf = EmpiricalCdf(sorted);
  mem.svg = RenderStepChart(r.language + " counterfactual scores", "score",
                            {{"all", Points(score_cdf)}});
  mem.raw_files.emplace_back(p + "losses.csv", WriteLossesCsv(r.losses));
  mem.raw_files.emplace_back(p + "mask.csv", WriteMaskCsv(r.losses));
  mem.raw_files.emplace_back(p + "scores.jsonl", WriteScoresJsonl(r.scores));
  out.push_back(std::move(mem));

  Artifact surface;
  surface.name = p + "surface_cdf";
  surface.table = CdfTableOf(r.surface_cdfs.tables);
  std::vector<LineSeries> lines;
  for (const CdfTable& c : r.surface_cdfs.tables) {
    if (c.statistic == "word_count") {
      lines.push_back({c.subset, Points(c.points)});
    }
  }
  surface.svg = RenderStepChart(r.language + " flagged vs all word counts",
                                "words", lines);
  out.push_back(std::move(surface));

  Artifact labels;
  labels.name = p + "labels";
  Table hist;
  hist.columns = {"label", "count"};
  std::vector<std::string> label_names;
  BarSeries label_bars{"documents", {}};
  for (size_t b = 0; b < r.label_histogram.size(); ++b) {
    hist.rows.push_back(
        {static_cast<double>(b), static_cast<double>(r.label_histogram[b])});
    label_names.push_back(StrCat(b));
    label_bars.values.push_back(static_cast<double>(r.label_histogram[b]));
  }
  labels.table = std::move(hist);
  labels.svg = RenderBarChart(r.language + " length-bin labels", label_names,
                              {label_bars});
  out.push_back(std::move(labels));

  Artifact mia;
  mia.name = p + "mia";
  nlohmann::ordered_json mj = {
      {"accuracy", r.mia.accuracy},
      {"precision_in", OptionalJson(r.mia.precision_in)},
      {"precision_out", OptionalJson(r.mia.precision_out)},
      {"confusion",
       {{"true_in", r.mia.true_in},
        {"false_in", r.mia.false_in},
        {"true_out", r.mia.true_out},
        {"false_out", r.mia.false_out}}},
      {"n", r.mia.n},
      {"overlap", r.separability.overlap},
      {"separability_epoch", r.separability.epoch},
      {"threshold_provenance", r.mia.threshold_provenance}};
  mia.json = mj.dump(2) + "\n";
  mia.table = HistogramTable(r.mia.final_in, r.mia.final_out);
  std::vector<std::string> bins;
  BarSeries in_bars{"in", {}}, out_bars{"out", {}};
  for (size_t b = 0; b < r.mia.final_in.counts.size(); ++b) {
    bins.push_back(FormatDouble(r.mia.final_in.edges[b]));
    in_bars.values.push_back(static_cast<double>(r.mia.final_in.counts[b]));
    out_bars.values.push_back(static_cast<double>(r.mia.final_out.counts[b]));
  }
  mia.svg = RenderBarChart(r.language + " final-epoch confidence", bins,
                           {in_bars, out_bars});
  mia.raw_files.emplace_back(p + "attack_model.json",
                             r.attack.ensemble.ToJson() + "\n");
  mia.raw_files.emplace_back(p + "target_trajectories.jsonl",
                             WriteTrajectoriesJsonl(r.target));
  mia.raw_files.emplace_back(p + "shadow_trajectories.jsonl",
                             WriteTrajectoriesJsonl(r.shadow));
  out.push_back(std::move(mia));
  return out;
}

absl::StatusOr<std::vector<Artifact>> CrossCorpusArtifacts(
    const std::vector<ToyPipelineResult>& results) {
  std::map<std::string, LinguisticProfile> profiles;
  std::map<std::string, LeakageSummary> leakage;
  for (const auto& r : results) {
    if (!profiles.emplace(r.language, r.profile).second) {
      return absl::InvalidArgumentError(
          StrCat("language ", r.language, " appears twice"));
    }
    leakage.emplace(r.language, r.summary);
  }
  ASSIGN_OR_RETURN(Table joined, Join(profiles, leakage));
  std::vector<Artifact> out;
  Artifact table1;
  table1.name = "profiles";
  table1.table = ProfileTable(profiles);
  out.push_back(std::move(table1));
  Artifact join;
  join.name = "joined";
  join.table = joined;
  out.push_back(std::move(join));
  Artifact corr;
  corr.name = "correlations";
  corr.table = CorrelationTable(CorrelationReport(joined));
  out.push_back(std::move(corr));
  return out;
}

}  // namespace lingleak
