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

#include "cli.h"

#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lingleak/corpus.h"
#include "lingleak/linguametrics.h"
#include "lingleak/matchindex.h"
#include "lingleak/memorization.h"
#include "lingleak/mia.h"
#include "lingleak/ngram_model.h"
#include "lingleak/pipeline.h"
#include "lingleak/report.h"
#include "lingleak/status_macros.h"
#include "lingleak/strings.h"
#include "lingleak/svg.h"
#include "lingleak/synth.h"
#include "lingleak/wire.h"

namespace lingleak {
namespace {

struct GlobalFlags {
  std::string lang;
  uint64_t seed = 0;
  std::string out = "lingleak_out";
  std::string format = "all";
  int threads = 1;
};

struct CorpusFlags {
  std::string path;
  std::string format = "jsonl";
};

void AddCorpusFlags(CLI::App* cmd, CorpusFlags* flags, bool required) {
  auto* opt = cmd->add_option("--corpus", flags->path, "Corpus file");
  if (required) opt->required();
  cmd->add_option("--corpus-format", flags->format, "jsonl or tsv")
      ->check(CLI::IsMember({"jsonl", "tsv"}));
}

absl::StatusOr<Corpus> LoadFromFlags(const CorpusFlags& flags,
                                     const GlobalFlags& g) {
  LoadOptions options;
  options.format =
      flags.format == "tsv" ? CorpusFormat::kTsv : CorpusFormat::kJsonl;
  options.language = g.lang;
  return LoadCorpus(flags.path, options);
}

absl::Status Write(const std::vector<Artifact>& artifacts,
                   const GlobalFlags& g) {
  ASSIGN_OR_RETURN(std::set<OutputFormat> formats, ParseFormats(g.format));
  ASSIGN_OR_RETURN(std::vector<ManifestEntry> manifest,
                   Emit(artifacts, g.out, formats));
  for (const ManifestEntry& e : manifest) {
    std::cout << g.out << "/" << e.path << "  " << e.sha256 << "\n";
  }
  std::cout << g.out << "/manifest.json\n";
  return absl::OkStatus();
}

std::string Prefix(const std::string& language) {
  return language.empty() ? "corpus_" : language + "_";
}

// ---------------------------------------------------------------- synth

struct SynthFlags {
  SynthSpec spec;
};

absl::Status RunSynth(const SynthFlags& f, const GlobalFlags& g) {
  SynthSpec spec = f.spec;
  spec.seed = g.seed;
  if (!g.lang.empty()) spec.language = g.lang;
  ASSIGN_OR_RETURN(Corpus corpus, SynthCorpus(spec));
  Artifact a;
  a.name = spec.language + "_corpus";
  a.raw_files.emplace_back(spec.language + "_corpus.jsonl",
                           WriteCorpusJsonl(corpus));
  return Write({a}, g);
}

// -------------------------------------------------------------- metrics

struct MetricsFlags {
  CorpusFlags corpus;
  MetricOptions options;
};

absl::Status RunMetrics(const MetricsFlags& f, const GlobalFlags& g) {
  ASSIGN_OR_RETURN(Corpus corpus, LoadFromFlags(f.corpus, g));
  MetricOptions options = f.options;
  options.threads = g.threads;
  ASSIGN_OR_RETURN(LinguisticProfile profile, Profile(corpus, options));
  std::cout << ProfileToJson(profile).dump(2) << "\n";
  Artifact a;
  a.name = Prefix(corpus.language) + "profile";
  a.json = ProfileToJson(profile).dump(2) + "\n";
  return Write({a}, g);
}

// -------------------------------------------------------------- extract

struct ExtractFlags {
  CorpusFlags corpus;
  std::string generations;
  std::vector<int> prompt_sizes = {5, 12, 25, 37};
  DetectOptions detect;
  int seed_ngram = 5;
  int order = 5;
  double smoothing = 0.01;
  int max_new_tokens = 64;
};

absl::Status RunExtract(const ExtractFlags& f, const GlobalFlags& g) {
  ASSIGN_OR_RETURN(Corpus corpus, LoadFromFlags(f.corpus, g));
  const bool has_split = std::any_of(
      corpus.docs.begin(), corpus.docs.end(),
      [](const Document& d) { return d.split != Split::kUnassigned; });
  const Corpus train = has_split ? SplitSubset(corpus, Split::kTrain) : corpus;
  ASSIGN_OR_RETURN(MatchIndex index, MatchIndex::Build(train, f.seed_ngram));

  std::vector<GenerationRecord> records;
  if (!f.generations.empty()) {
    ASSIGN_OR_RETURN(std::string content, ReadFile(f.generations));
    ASSIGN_OR_RETURN(records, ParseGenerationLog(content));
  } else {
    ASSIGN_OR_RETURN(NGramModel model,
                     NGramModel::Train(train, f.order, f.smoothing));
    const std::string model_id =
        StrCat("ngram-", f.order, "-", model.digest().substr(0, 12));
    for (int k : f.prompt_sizes) {
      const PromptSet prompts = BuildPrompts(train, k, f.detect.min_match_len);
      for (const std::string& w : prompts.warnings) {
        std::cerr << "warning: " << w << "\n";
      }
      for (const PromptSpec& spec : prompts.prompts) {
        GenerateOptions gen;
        gen.max_tokens = f.max_new_tokens;
        records.push_back({spec.doc_id, k, spec.prompt_text,
                           StrJoin(model.Generate(spec.prompt, gen), " "),
                           model_id});
      }
    }
  }
  ASSIGN_OR_RETURN(LogEvaluation eval,
                   EvaluateGenerationLog(records, index, corpus.language,
                                         f.detect, g.threads));
  std::vector<int> sizes = f.prompt_sizes;
  for (const auto& [k, n] : eval.attempts) {
    if (std::find(sizes.begin(), sizes.end(), k) == sizes.end()) {
      sizes.push_back(k);
    }
  }
  const ExtractionReport report =
      BuildExtractionReport(eval.matches, train, sizes, eval.attempts);

  const std::string p = Prefix(corpus.language);
  Artifact summary;
  summary.name = p + "extraction";
  Table t;
  t.columns = {"prompt_size", "unique_extractions", "exact", "near",
               "attempts"};
  std::vector<std::string> categories;
  BarSeries bars{"unique extractions", {}};
  for (const auto& s : report.per_size) {
    t.rows.push_back({static_cast<double>(s.prompt_size),
                      static_cast<double>(s.unique_extractions),
                      static_cast<double>(s.exact_matches),
                      static_cast<double>(s.near_matches),
                      static_cast<double>(s.attempts)});
    categories.push_back(StrCat("k=", s.prompt_size));
    bars.values.push_back(static_cast<double>(s.unique_extractions));
  }
  summary.table = t;
  summary.svg = RenderBarChart("unique extractions", categories, {bars});
  if (f.generations.empty()) {
    summary.raw_files.emplace_back(p + "generations.jsonl",
                                   WriteGenerationLog(records));
  }
  Artifact matches;
  matches.name = p + "matches";
  Table m;
  m.columns = {"doc_id",    "prompt_size", "matched_doc_id",   "kind",
               "match_len", "edit_ratio",  "matched_span_text"};
  for (const auto& x : eval.matches) {
    m.rows.push_back({x.doc_id, static_cast<double>(x.prompt_size),
                      x.matched_doc_id, std::string(MatchKindName(x.kind)),
                      static_cast<double>(x.match_len), x.edit_ratio,
                      x.matched_span_text});
  }
  matches.table = m;
  Artifact cdf;
  cdf.name = p + "extraction_cdf";
  Table c;
  c.columns = {"subset", "word_count", "cumulative"};
  std::vector<LineSeries> lines(2);
  lines[0].name = "all";
  lines[1].name = "extracted";
  for (const auto& pt : report.all_word_count_cdf) {
    c.rows.push_back({std::string("all"), pt.value, pt.cumulative});
    lines[0].points.emplace_back(pt.value, pt.cumulative);
  }
  for (const auto& pt : report.extracted_word_count_cdf) {
    c.rows.push_back({std::string("extracted"), pt.value, pt.cumulative});
    lines[1].points.emplace_back(pt.value, pt.cumulative);
  }
  cdf.table = c;
  cdf.svg = RenderStepChart("word count CDF", "words", lines);
  return Write({summary, matches, cdf}, g);
}

// ------------------------------------------------------------- memorize

struct MemorizeFlags {
  CorpusFlags corpus;
  std::string losses;
  std::string mask;
  bool toy = false;
  double percentile = 0.95;
  double tail_threshold = kDefaultTailThreshold;
  EnsembleOptions ensemble;
  int epochs = 30;
};

absl::Status RunMemorize(const MemorizeFlags& f, const GlobalFlags& g) {
  std::optional<Corpus> corpus;
  if (!f.corpus.path.empty()) {
    ASSIGN_OR_RETURN(Corpus loaded, LoadFromFlags(f.corpus, g));
    corpus = std::move(loaded);
  }
  LossMatrix lm;
  if (f.toy) {
    if (!corpus) {
      return absl::InvalidArgumentError("--toy needs --corpus");
    }
    const bool binned =
        std::all_of(corpus->docs.begin(), corpus->docs.end(),
                    [](const Document& d) { return d.bin_label.has_value(); });
    if (!binned) {
      ASSIGN_OR_RETURN(Corpus b, AssignLengthBins(*corpus));
      corpus = std::move(b);
    }
    EnsembleOptions options = f.ensemble;
    options.seed = g.seed;
    options.threads = g.threads;
    options.classifier.epochs = f.epochs;
    ASSIGN_OR_RETURN(lm, RunToyEnsemble(*corpus, options));
  } else {
    if (f.losses.empty() || f.mask.empty()) {
      return absl::InvalidArgumentError(
          "give --losses and --mask, or --toy with --corpus");
    }
    ASSIGN_OR_RETURN(std::string losses, ReadFile(f.losses));
    ASSIGN_OR_RETURN(std::string mask, ReadFile(f.mask));
    ASSIGN_OR_RETURN(lm, ParseLossMatrix(losses, mask));
  }
  ASSIGN_OR_RETURN(std::vector<CounterfactualScore> scores,
                   CounterfactualScores(lm, g.threads));
  ASSIGN_OR_RETURN(double threshold, FlagMemorized(scores, f.percentile));
  const std::string p = Prefix(corpus ? corpus->language : g.lang);

  std::vector<Artifact> artifacts;
  Artifact mem;
  mem.name = p + "memorization";
  nlohmann::ordered_json j = {
      {"threshold", threshold},
      {"percentile", f.percentile},
      {"n_docs", scores.size()},
      {"n_flagged", std::count_if(scores.begin(), scores.end(),
                                  [](const auto& s) { return s.flagged; })},
      {"tail_threshold", f.tail_threshold},
      {"tail_mass", TailMass(scores, f.tail_threshold)}};
  mem.json = j.dump(2) + "\n";
  mem.raw_files.emplace_back(p + "scores.jsonl", WriteScoresJsonl(scores));
  if (f.toy) {
    mem.raw_files.emplace_back(p + "losses.csv", WriteLossesCsv(lm));
    mem.raw_files.emplace_back(p + "mask.csv", WriteMaskCsv(lm));
  }
  artifacts.push_back(std::move(mem));
  if (corpus) {
    ASSIGN_OR_RETURN(SurfaceCdfResult cdfs, SurfaceCdfs(*corpus, scores));
    for (const std::string& n : cdfs.notices)
      std::cerr << "notice: " << n << "\n";
    Artifact surface;
    surface.name = p + "surface_cdf";
    Table t;
    t.columns = {"statistic", "subset", "value", "cumulative"};
    for (const CdfTable& c : cdfs.tables) {
      for (const CdfPoint& pt : c.points) {
        t.rows.push_back({c.statistic, c.subset, pt.value, pt.cumulative});
      }
    }
    surface.table = t;
    artifacts.push_back(std::move(surface));
    auto hist = AuditLabelDistribution(*corpus);
    if (hist.ok()) {
      Artifact labels;
      labels.name = p + "labels";
      Table h;
      h.columns = {"label", "count"};
      for (size_t b = 0; b < hist->size(); ++b) {
        h.rows.push_back(
            {static_cast<double>(b), static_cast<double>((*hist)[b])});
      }
      labels.table = h;
      artifacts.push_back(std::move(labels));
    }
  }
  return Write(artifacts, g);
}

// ------------------------------------------------------------------ mia

struct MiaFlags {
  std::string target;
  std::string shadow;
  CorpusFlags corpus;
  BoostingConfig attack;
  int epochs = 30;
};

absl::Status RunMia(const MiaFlags& f, const GlobalFlags& g) {
  std::vector<ConfidenceTrajectory> target, shadow;
  std::string language = g.lang;
  if (!f.corpus.path.empty()) {
    ASSIGN_OR_RETURN(Corpus corpus, LoadFromFlags(f.corpus, g));
    language = corpus.language;
    ASSIGN_OR_RETURN(Corpus split, SplitCorpus(corpus, 0.8, g.seed));
    ASSIGN_OR_RETURN(Corpus binned, AssignLengthBins(split));
    ClassifierOptions classifier;
    classifier.epochs = f.epochs;
    ASSIGN_OR_RETURN(TrajectorySets sets,
                     ToyMembershipTrajectories(binned, classifier, g.seed));
    target = std::move(sets.target);
    shadow = std::move(sets.shadow);
  } else {
    if (f.target.empty() || f.shadow.empty()) {
      return absl::InvalidArgumentError(
          "give --target and --shadow trajectories, or --corpus");
    }
    ASSIGN_OR_RETURN(std::string t, ReadFile(f.target));
    ASSIGN_OR_RETURN(target, ParseTrajectoriesJsonl(t));
    ASSIGN_OR_RETURN(std::string s, ReadFile(f.shadow));
    ASSIGN_OR_RETURN(shadow, ParseTrajectoriesJsonl(s));
  }
  RETURN_IF_ERROR(CheckShadowDisjoint(shadow, target));
  ASSIGN_OR_RETURN(AttackModel attack, TrainAttack(shadow, f.attack));
  ASSIGN_OR_RETURN(MiaResult result, EvaluateMia(attack, target));
  ASSIGN_OR_RETURN(SeparabilityReport sep, Separability(target));

  const std::string p = Prefix(language);
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  Artifact a;
  a.name = p + "mia";
  nlohmann::ordered_json j = {
      {"accuracy", result.accuracy},
      {"precision_in", opt(result.precision_in)},
      {"precision_out", opt(result.precision_out)},
      {"n", result.n},
      {"overlap", sep.overlap},
      {"threshold_provenance", result.threshold_provenance}};
  std::cout << j.dump(2) << "\n";
  a.json = j.dump(2) + "\n";
  Table h;
  h.columns = {"bin_lo", "bin_hi", "in", "out"};
  for (size_t b = 0; b < result.final_in.counts.size(); ++b) {
    h.rows.push_back({result.final_in.edges[b], result.final_in.edges[b + 1],
                      static_cast<double>(result.final_in.counts[b]),
                      static_cast<double>(result.final_out.counts[b])});
  }
  a.table = h;
  a.raw_files.emplace_back(p + "attack_model.json",
                           attack.ensemble.ToJson() + "\n");
  return Write({a}, g);
}

// --------------------------------------------------------------- report

struct ReportFlags {
  std::vector<std::string> inputs;
};

absl::Status RunReport(const ReportFlags& f, const GlobalFlags& g) {
  std::map<std::string, LinguisticProfile> profiles;
  std::map<std::string, LeakageSummary> leakage;
  for (const std::string& dir : f.inputs) {
    std::error_code ec;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
      files.push_back(entry.path());
    }
    if (ec) {
      return absl::NotFoundError(
          StrCat("cannot list ", dir, ": ", ec.message()));
    }
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
      const std::string name = path.filename().string();
      auto ends_with = [&name](std::string_view suffix) {
        return name.size() > suffix.size() &&
               name.compare(name.size() - suffix.size(), suffix.size(),
                            suffix) == 0;
      };
      if (ends_with("_profile.json")) {
        ASSIGN_OR_RETURN(std::string content, ReadFile(path.string()));
        nlohmann::json j = nlohmann::json::parse(content, nullptr, false);
        if (j.is_discarded()) {
          return absl::InvalidArgumentError(
              StrCat(path.string(), ": invalid JSON"));
        }
        ASSIGN_OR_RETURN(LinguisticProfile p, ProfileFromJson(j));
        profiles[name.substr(0, name.size() - 13)] = p;
      } else if (ends_with("_summary.json")) {
        ASSIGN_OR_RETURN(std::string content, ReadFile(path.string()));
        ASSIGN_OR_RETURN(LeakageSummary s, LeakageSummaryFromJson(content));
        leakage[s.language] = s;
      }
    }
  }
  ASSIGN_OR_RETURN(Table joined, Join(profiles, leakage));
  Artifact t1{
      "profiles", ProfileTable(profiles), std::nullopt, std::nullopt, {}};
  Artifact j{"joined", joined, std::nullopt, std::nullopt, {}};
  Artifact c{"correlations",
             CorrelationTable(CorrelationReport(joined)),
             std::nullopt,
             std::nullopt,
             {}};
  return Write({t1, j, c}, g);
}

// -------------------------------------------------------------- e2e-toy

struct E2eFlags {
  std::vector<std::string> corpora;
  std::string corpus_format = "jsonl";
  int synth_docs = 400;
  ToyPipelineOptions options;
  bool fallbacks = true;
};

absl::Status RunE2e(const E2eFlags& f, const GlobalFlags& g) {
  std::vector<Corpus> corpora;
  for (const std::string& path : f.corpora) {
    ASSIGN_OR_RETURN(Corpus c, LoadFromFlags({path, f.corpus_format}, g));
    corpora.push_back(std::move(c));
  }
  if (corpora.empty()) {
    // Four synthetic corpora that differ in redundancy and inflection.
    const double redundancy[] = {0.1, 0.4, 0.7, 0.9};
    for (int i = 0; i < 4; ++i) {
      SynthSpec spec;
      spec.n_docs = f.synth_docs;
      spec.vocab_size = 2000;
      spec.redundancy = redundancy[i];
      spec.inflection = i + 1;
      spec.min_len = 8;
      spec.max_len = 40;
      spec.seed = g.seed + static_cast<uint64_t>(i);
      spec.language = StrCat("syn", i);
      ASSIGN_OR_RETURN(Corpus c, SynthCorpus(spec));
      corpora.push_back(std::move(c));
    }
  }
  ToyPipelineOptions options = f.options;
  options.seed = g.seed;
  options.threads = g.threads;
  options.metrics.fallback_lemmatizer = f.fallbacks;
  options.metrics.fallback_relations = f.fallbacks;
  std::vector<ToyPipelineResult> results;
  std::vector<Artifact> artifacts;
  for (const Corpus& c : corpora) {
    std::cerr << "running toy pipeline on " << c.language << " ("
              << c.docs.size() << " docs)\n";
    ASSIGN_OR_RETURN(ToyPipelineResult r, RunToyPipeline(c, options));
    for (Artifact& a : PipelineArtifacts(r)) artifacts.push_back(std::move(a));
    results.push_back(std::move(r));
  }
  ASSIGN_OR_RETURN(std::vector<Artifact> cross, CrossCorpusArtifacts(results));
  for (Artifact& a : cross) artifacts.push_back(std::move(a));
  return Write(artifacts, g);
}

// ------------------------------------------------------------- validate

struct ValidateFlags {
  std::string kind;
  std::string file;
  std::string mask;
};

absl::Status RunValidate(const ValidateFlags& f, const GlobalFlags&) {
  ASSIGN_OR_RETURN(std::string content, ReadFile(f.file));
  if (f.kind == "lossmatrix") {
    if (f.mask.empty()) {
      return absl::InvalidArgumentError("lossmatrix needs --mask");
    }
    ASSIGN_OR_RETURN(std::string mask, ReadFile(f.mask));
    RETURN_IF_ERROR(ParseLossMatrix(content, mask).status());
  } else {
    ASSIGN_OR_RETURN(WireKind kind, ParseWireKind(f.kind));
    RETURN_IF_ERROR(ValidateWire(kind, content));
  }
  std::cout << f.file << ": ok\n";
  return absl::OkStatus();
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kOutOfRange:
    case absl::StatusCode::kAlreadyExists:
    case absl::StatusCode::kPermissionDenied:
    case absl::StatusCode::kDataLoss:
      return kExitInputError;
    default:
      return kExitInternalError;
  }
}

int RunCli(int argc, char** argv) {
  CLI::App app{"Multilingual privacy-leakage audit toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags g;
  app.add_option("--lang", g.lang, "Language tag for inputs without one");
  app.add_option("--seed", g.seed, "Seed for every randomized step");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--format", g.format, "json,csv,svg or all");
  app.add_option("--threads", g.threads, "Worker threads")
      ->check(CLI::Range(1, 256));

  std::function<absl::Status()> action;

  SynthFlags synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic corpus");
  synth_cmd->add_option("--docs", synth.spec.n_docs);
  synth_cmd->add_option("--vocab", synth.spec.vocab_size);
  synth_cmd->add_option("--redundancy", synth.spec.redundancy);
  synth_cmd->add_option("--inflection", synth.spec.inflection);
  synth_cmd->add_option("--min-len", synth.spec.min_len);
  synth_cmd->add_option("--max-len", synth.spec.max_len);
  synth_cmd->add_option("--templates", synth.spec.n_templates);
  synth_cmd->callback([&] { action = [&] { return RunSynth(synth, g); }; });

  MetricsFlags metrics;
  auto* metrics_cmd = app.add_subcommand("metrics", "Linguistic profile");
  AddCorpusFlags(metrics_cmd, &metrics.corpus, true);
  metrics_cmd->add_flag("--fallback-lemmas",
                        metrics.options.fallback_lemmatizer,
                        "Suffix-strip lemmas when annotations are missing");
  metrics_cmd->add_flag("--fallback-relations",
                        metrics.options.fallback_relations,
                        "Word-class bigram proxy when deprels are missing");
  metrics_cmd->add_option("--smoothing-k", metrics.options.smoothing_k);
  metrics_cmd->callback(
      [&] { action = [&] { return RunMetrics(metrics, g); }; });

  ExtractFlags extract;
  auto* extract_cmd = app.add_subcommand("extract", "Extraction attack");
  AddCorpusFlags(extract_cmd, &extract.corpus, true);
  extract_cmd->add_option("--generations", extract.generations,
                          "Generation log; default runs the toy n-gram model");
  extract_cmd->add_option("--prompt-sizes", extract.prompt_sizes)
      ->delimiter(',');
  extract_cmd->add_option("--min-match", extract.detect.min_match_len);
  extract_cmd->add_option("--near-threshold", extract.detect.near_threshold);
  extract_cmd->add_option("--seed-ngram", extract.seed_ngram);
  extract_cmd->add_option("--order", extract.order);
  extract_cmd->add_option("--smoothing", extract.smoothing);
  extract_cmd->add_option("--max-new-tokens", extract.max_new_tokens);
  extract_cmd->callback(
      [&] { action = [&] { return RunExtract(extract, g); }; });

  MemorizeFlags memorize;
  auto* memorize_cmd =
      app.add_subcommand("memorize", "Counterfactual memorization");
  AddCorpusFlags(memorize_cmd, &memorize.corpus, false);
  memorize_cmd->add_option("--losses", memorize.losses);
  memorize_cmd->add_option("--mask", memorize.mask);
  memorize_cmd->add_flag("--toy", memorize.toy,
                         "Train the toy ensemble on --corpus");
  memorize_cmd->add_option("--percentile", memorize.percentile);
  memorize_cmd->add_option("--tail-threshold", memorize.tail_threshold);
  memorize_cmd->add_option("--models", memorize.ensemble.n_models);
  memorize_cmd->add_option("--inclusion", memorize.ensemble.inclusion_prob);
  memorize_cmd->add_option("--epochs", memorize.epochs);
  memorize_cmd->callback(
      [&] { action = [&] { return RunMemorize(memorize, g); }; });

  MiaFlags mia;
  auto* mia_cmd = app.add_subcommand("mia", "Membership inference");
  mia_cmd->add_option("--target", mia.target, "Target trajectories JSONL");
  mia_cmd->add_option("--shadow", mia.shadow, "Shadow trajectories JSONL");
  AddCorpusFlags(mia_cmd, &mia.corpus, false);
  mia_cmd->add_option("--rounds", mia.attack.n_rounds);
  mia_cmd->add_option("--learning-rate", mia.attack.learning_rate);
  mia_cmd->add_option("--epochs", mia.epochs);
  mia_cmd->callback([&] { action = [&] { return RunMia(mia, g); }; });

  ReportFlags report;
  auto* report_cmd =
      app.add_subcommand("report", "Join profiles with leakage summaries");
  report_cmd
      ->add_option("--inputs", report.inputs,
                   "Directories holding *_profile.json and "
                   "*_summary.json")
      ->required();
  report_cmd->callback([&] { action = [&] { return RunReport(report, g); }; });

  E2eFlags e2e;
  auto* e2e_cmd = app.add_subcommand("e2e-toy", "Full pipeline on toy models");
  e2e_cmd->add_option("--corpus", e2e.corpora,
                      "Corpus files; default is four synthetic corpora");
  e2e_cmd->add_option("--corpus-format", e2e.corpus_format)
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  e2e_cmd->add_option("--synth-docs", e2e.synth_docs);
  e2e_cmd->add_option("--epochs", e2e.options.classifier.epochs);
  e2e_cmd->add_option("--models", e2e.options.n_models);
  e2e_cmd->add_option("--prompt-sizes", e2e.options.prompt_sizes)
      ->delimiter(',');
  e2e_cmd->add_option("--min-match", e2e.options.detect.min_match_len);
  e2e_cmd->add_flag("!--no-fallbacks", e2e.fallbacks,
                    "Require lemma and deprel annotations");
  e2e_cmd->callback([&] { action = [&] { return RunE2e(e2e, g); }; });

  ValidateFlags validate;
  auto* validate_cmd = app.add_subcommand("validate", "Check a wire file");
  validate_cmd
      ->add_option("--kind", validate.kind,
                   "corpus, generations, scores, trajectories or lossmatrix")
      ->required();
  validate_cmd->add_option("file", validate.file)->required();
  validate_cmd->add_option("--mask", validate.mask, "mask.csv for lossmatrix");
  validate_cmd->callback(
      [&] { action = [&] { return RunValidate(validate, g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }
  absl::Status status;
  try {
    status = action();
  } catch (const std::exception& e) {
    status = absl::InternalError(StrCat("unexpected exception: ", e.what()));
  }
  if (!status.ok()) {
    std::cerr << "error: " << status.ToString() << "\n";
  }
  return ExitCodeFor(status);
}

}  // namespace lingleak
