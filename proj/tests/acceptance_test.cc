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

// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Exit status is 0 only when all criteria pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lingleak/bin_classifier.h"
#include "lingleak/corpus.h"
#include "lingleak/linguametrics.h"
#include "lingleak/matchindex.h"
#include "lingleak/memorization.h"
#include "lingleak/mia.h"
#include "lingleak/ngram_model.h"
#include "lingleak/pipeline.h"
#include "lingleak/report.h"
#include "lingleak/rng.h"
#include "lingleak/strings.h"
#include "lingleak/synth.h"
#include "lingleak/table.h"
#include "lingleak/unicode.h"
#include "oracles.h"

namespace lingleak {
namespace {

// Frozen oracle values for the annotated fixture (exact rational arithmetic
// by an independent script).
constexpr double kFixtureS = 2.7362225232970126846;
constexpr double kFixtureR = 0.57821822643945181208;

// Collects failed checks of one criterion.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++n_failed_;
  }
  bool ok() const { return n_failed_ == 0; }
  std::string Summary() const {
    if (ok()) return "";
    return StrCat(n_failed_, " failed check(s): ", StrJoin(failures_, "; "));
  }

 private:
  std::vector<std::string> failures_;
  int n_failed_ = 0;
};

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::vector<std::string> Surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const Token& t : tokens) out.push_back(t.surface);
  return out;
}

Document WordDoc(const std::string& id, const std::vector<std::string>& words) {
  Document d;
  d.id = id;
  d.language = "xx";
  d.text = StrJoin(words, " ");
  for (const std::string& w : words) d.tokens.push_back(MakeToken(w));
  return d;
}

Corpus SynthOrDie(const SynthSpec& spec) {
  auto c = SynthCorpus(spec);
  if (!c.ok()) {
    std::fprintf(stderr, "synth failed: %s\n", c.status().ToString().c_str());
    std::exit(3);
  }
  return *std::move(c);
}

// ------------------------------------------------------------ metrics

void MetricCorrectness(Checker& check) {
  auto loaded = LoadCorpus(LINGLEAK_FIXTURE_DIR "/annotated_en.jsonl", {});
  check.Expect(loaded.ok(), "fixture loads");
  if (!loaded.ok()) return;
  const Corpus& c = *loaded;
  auto p = Profile(c);
  check.Expect(p.ok(), "profile computes");
  if (!p.ok()) return;

  // Hand recount straight from the tokens and annotations.
  int64_t tokens = 0, chars = 0, caps = 0;
  std::set<std::string> types;
  std::map<std::string, std::set<std::string>> forms;
  std::map<std::string, int64_t> relations;
  std::vector<std::vector<std::string>> folded;
  for (const Document& d : c.docs) {
    std::vector<std::string> doc;
    for (size_t i = 0; i < d.tokens.size(); ++i) {
      const std::string& s = d.tokens[i].surface;
      ++tokens;
      chars += CodePointCount(s);
      caps += StartsWithUppercase(s);
      types.insert(CaseFold(s));
      forms[CaseFold((*d.lemmas)[i])].insert(CaseFold(s));
      ++relations[(*d.deprels)[i]];
      doc.push_back(CaseFold(s));
    }
    folded.push_back(std::move(doc));
  }
  double entropy = 0;
  for (const auto& [rel, n] : relations) {
    const double q = static_cast<double>(n) / static_cast<double>(tokens);
    entropy -= q * std::log(q);
  }
  double m = 0;
  for (const auto& [lemma, f] : forms) m += static_cast<double>(f.size());
  m /= static_cast<double>(forms.size());

  check.Expect(tokens == 200 && p->n_tokens == 200, "200 tokens");
  check.Expect(p->avg_word_len == 1040.0 / 200.0 &&
                   p->avg_word_len ==
                       static_cast<double>(chars) / static_cast<double>(tokens),
               "T");
  check.Expect(p->cap_rate == 27.0 / 200.0 &&
                   p->cap_rate ==
                       static_cast<double>(caps) / static_cast<double>(tokens),
               "C");
  check.Expect(p->vocab_richness == 120.0 / 200.0 &&
                   p->n_types == static_cast<int64_t>(types.size()),
               "D");
  check.Expect(p->morph_complexity == 120.0 / 110.0 &&
                   std::abs(p->morph_complexity - m) < 1e-15,
               "M");
  check.Expect(std::abs(p->syntactic_entropy - kFixtureS) <= 1e-9 &&
                   std::abs(entropy - kFixtureS) <= 1e-9,
               "S");
  check.Expect(
      std::abs(p->redundancy - kFixtureR) <= 1e-9 &&
          std::abs(testing::BruteForceRedundancy(folded) - kFixtureR) <= 1e-9,
      "R");
}

Corpus PropertyCorpus(int i) {
  SplitMix64 rng(CounterHash(4321, 0, i));
  SynthSpec spec;
  spec.n_docs = 5 + static_cast<int>(rng.NextBelow(30));
  spec.vocab_size = 5 + static_cast<int>(rng.NextBelow(200));
  spec.inflection = 1 + static_cast<int>(rng.NextBelow(4));
  spec.redundancy = rng.NextDouble();
  spec.min_len = 3;
  spec.max_len = 3 + static_cast<int>(rng.NextBelow(20));
  spec.seed = rng();
  return SynthOrDie(spec);
}

void MetricInvariants(Checker& check) {
  for (int i = 0; i < 120; ++i) {
    const Corpus c = PropertyCorpus(i);
    Corpus doubled = c;
    for (const Document& d : c.docs) {
      Document copy = d;
      copy.id += "-dup";
      doubled.docs.push_back(copy);
    }
    Corpus permuted = c;
    SplitMix64 rng(CounterHash(4321, 1, i));
    Shuffle(std::span<Document>(permuted.docs), rng);
    auto a = Profile(c);
    auto b = Profile(doubled);
    auto q = Profile(permuted);
    auto dist = RelationDistributionOf(c);
    if (!a.ok() || !b.ok() || !q.ok() || !dist.ok()) {
      check.Expect(false, StrCat("case ", i, " computes"));
      continue;
    }
    check.Expect(a->avg_word_len == b->avg_word_len &&
                     a->cap_rate == b->cap_rate &&
                     a->morph_complexity == b->morph_complexity,
                 StrCat("case ", i, " duplication keeps T, C, M"));
    check.Expect(b->vocab_richness < a->vocab_richness,
                 StrCat("case ", i, " duplication lowers D"));
    check.Expect(
        a->syntactic_entropy <=
            std::log(static_cast<double>(dist->probabilities.size())) + 1e-12,
        StrCat("case ", i, " entropy bound"));
    check.Expect(ProfileToJson(*a).dump() == ProfileToJson(*q).dump(),
                 StrCat("case ", i, " order invariance"));
  }
}

// --------------------------------------------------------- extraction

PromptSpec NoPrompt() { return PromptSpec{}; }

void ExtractionSoundness(Checker& check) {
  int found = 0;
  for (uint64_t trial = 0; trial < 1000; ++trial) {
    SplitMix64 rng(CounterHash(2024, 0, trial));
    const int n = 2 + static_cast<int>(rng.NextBelow(4));
    const int min_match = n + static_cast<int>(rng.NextBelow(6));
    const uint64_t alphabet = 2 + rng.NextBelow(5);
    std::vector<std::vector<std::string>> docs;
    Corpus corpus;
    int budget = 20 + static_cast<int>(rng.NextBelow(181));  // <= 200 tokens
    while (budget > 0) {
      const int len = std::min(budget, 1 + static_cast<int>(rng.NextBelow(30)));
      std::vector<std::string> words;
      for (int i = 0; i < len; ++i) {
        words.push_back(StrCat("t", rng.NextBelow(alphabet)));
      }
      corpus.docs.push_back(WordDoc(StrCat("d", docs.size()), words));
      docs.push_back(std::move(words));
      budget -= len;
    }
    std::vector<std::string> gen;
    const int pieces = 1 + static_cast<int>(rng.NextBelow(3));
    for (int p = 0; p < pieces; ++p) {
      if (rng.NextBelow(2) == 0) {
        const auto& src = docs[rng.NextBelow(docs.size())];
        const size_t a = rng.NextBelow(src.size());
        const size_t b = a + 1 + rng.NextBelow(src.size() - a);
        gen.insert(gen.end(), src.begin() + a, src.begin() + b);
      } else {
        const int noise = 1 + static_cast<int>(rng.NextBelow(6));
        for (int i = 0; i < noise; ++i) {
          gen.push_back(StrCat("t", rng.NextBelow(alphabet + 2)));
        }
      }
    }
    auto index = MatchIndex::Build(corpus, n);
    if (!index.ok()) {
      // Every document shorter than the seed order: nothing to index.
      check.Expect(std::all_of(docs.begin(), docs.end(),
                               [n](const auto& d) {
                                 return static_cast<int>(d.size()) < n;
                               }),
                   StrCat("trial ", trial, " index builds"));
      continue;
    }
    DetectOptions options;
    options.min_match_len = min_match;
    options.near_threshold = 0;
    const testing::NaiveRun naive = testing::NaiveLongestRun(gen, docs);
    const auto m = DetectExtraction(gen, NoPrompt(), *index, options);
    const size_t need = static_cast<size_t>(std::max(min_match, n));
    if (naive.length >= need) {
      ++found;
      check.Expect(
          m.has_value() && static_cast<size_t>(m->match_len) == naive.length,
          StrCat("trial ", trial, " complete"));
    } else {
      check.Expect(!m.has_value(), StrCat("trial ", trial, " no false match"));
    }
    if (m) {
      std::vector<std::string> span;
      for (std::string_view w : StrSplit(m->matched_span_text, ' ')) {
        span.emplace_back(w);
      }
      const auto d = index->FindDoc(m->matched_doc_id);
      check.Expect(d.has_value() && testing::NaiveContains(docs[*d], span) &&
                       testing::NaiveContains(gen, span),
                   StrCat("trial ", trial, " sound"));
    }
  }
  check.Expect(found > 100, StrCat("enough positive trials (", found, ")"));
}

struct ExtractionRun {
  int64_t unique = 0;
  int64_t eligible_train = 0;
  int64_t extracted_eligible = 0;
  int64_t held_out_unseen = 0;
  int64_t held_out_extracted = 0;
};

// Greedy k=5 extraction against an order-5 n-gram model trained on the
// train split of a 500-sentence synthetic corpus.
ExtractionRun RunExtraction(double redundancy, uint64_t seed) {
  SynthSpec spec;
  spec.n_docs = 500;
  spec.vocab_size = 5000;
  spec.redundancy = redundancy;
  spec.inflection = 2;
  spec.min_len = 12;
  spec.max_len = 40;
  spec.seed = seed;
  auto split = SplitCorpus(SynthOrDie(spec), 0.8, seed);
  ExtractionRun run;
  if (!split.ok()) return run;
  const Corpus train = SplitSubset(*split, Split::kTrain);
  // Prompts are only built from unassigned or train documents.
  Corpus test = SplitSubset(*split, Split::kTest);
  for (Document& d : test.docs) d.split = Split::kUnassigned;
  auto model = NGramModel::Train(train, 5, 0.01);
  auto index = MatchIndex::Build(train, 5);
  if (!model.ok() || !index.ok()) return run;

  auto prefix = [](const Document& d) {
    std::vector<std::string> s = Surfaces(d.tokens);
    s.resize(std::min<size_t>(s.size(), 4));
    return StrJoin(s, " ");
  };
  auto key_of = [](const PromptSpec& p) {
    return StrJoin(
        std::vector<std::string>(p.prompt.begin(), p.prompt.begin() + 4), " ");
  };
  std::map<std::string, int> train_prefixes;
  for (const Document& d : train.docs) ++train_prefixes[prefix(d)];

  DetectOptions detect;
  GenerateOptions greedy;
  greedy.max_tokens = 64;
  std::set<std::string> unique;
  const PromptSet prompts = BuildPrompts(train, 5, detect.min_match_len);
  for (const PromptSpec& p : prompts.prompts) {
    const auto gen = model->Generate(p.prompt, greedy);
    const auto m = DetectExtraction(gen, p, *index, detect);
    if (m) unique.insert(m->matched_span_text);
    // Per-document oracle on sentences whose 4-prefix is unique.
    if (train_prefixes[key_of(p)] != 1) continue;
    ++run.eligible_train;
    if (m && m->kind == MatchKind::kExact && m->matched_doc_id == p.doc_id) {
      ++run.extracted_eligible;
    }
  }
  run.unique = static_cast<int64_t>(unique.size());

  const PromptSet held = BuildPrompts(test, 5, detect.min_match_len);
  for (const PromptSpec& p : held.prompts) {
    if (train_prefixes.count(key_of(p))) continue;
    ++run.held_out_unseen;
    const auto gen = model->Generate(p.prompt, greedy);
    if (DetectExtraction(gen, p, *index, detect)) ++run.held_out_extracted;
  }
  return run;
}

std::string extraction_detail;

void EndToEndExtraction(Checker& check) {
  const ExtractionRun high = RunExtraction(0.9, 11);
  const ExtractionRun low = RunExtraction(0.1, 11);
  extraction_detail = StrCat(
      "r0.9: ", high.extracted_eligible, "/", high.eligible_train,
      " unique-prefix train sentences extracted, ", high.held_out_extracted,
      "/", high.held_out_unseen, " held-out; unique spans r0.9=", high.unique,
      " r0.1=", low.unique);
  check.Expect(high.eligible_train > 0 &&
                   5 * high.extracted_eligible >= 4 * high.eligible_train,
               ">= 80% of unique-prefix train sentences extracted");
  check.Expect(high.held_out_unseen > 0 && high.held_out_extracted == 0,
               "no held-out extraction");
  check.Expect(high.unique > low.unique,
               StrCat("unique extractions at redundancy 0.9 (", high.unique,
                      ") exceed those at 0.1 (", low.unique, ")"));
}

// ------------------------------------------------------- memorization

constexpr char kOutlierId[] = "planted-outlier";

// 1000 binned documents; the last one is an outlier whose label contradicts
// its length and whose tokens appear nowhere else.
Corpus OutlierCorpus(uint64_t seed) {
  SynthSpec spec;
  spec.n_docs = 999;
  spec.vocab_size = 3000;
  spec.inflection = 2;
  spec.min_len = 5;
  spec.max_len = 40;
  spec.seed = seed;
  Corpus c = SynthOrDie(spec);
  std::vector<std::string> words;
  for (int i = 0; i < 6; ++i) words.push_back(StrCat("qx", seed, "w", i));
  c.docs.push_back(WordDoc(kOutlierId, words));
  c.docs.back().language = c.language;
  auto binned = AssignLengthBins(c, 9);
  if (!binned.ok()) std::exit(3);
  // A six-token sentence lands in a low bin; label it as the longest.
  binned->docs.back().bin_label = 8;
  return *std::move(binned);
}

std::string counterfactual_detail;

void CounterfactualOracle(Checker& check) {
  int flagged_seeds = 0;
  double worst_fraction_gap = 0;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const Corpus c = OutlierCorpus(seed);
    EnsembleOptions options;
    options.n_models = 10;
    options.inclusion_prob = 0.5;
    options.seed = seed;
    options.classifier.epochs = 10;
    options.classifier.repeats[kOutlierId] = 49;  // 50 copies in total
    auto lm = RunToyEnsemble(c, options);
    if (!lm.ok()) {
      check.Expect(false, StrCat("seed ", seed, " ensemble"));
      continue;
    }
    auto scores = CounterfactualScores(*lm);
    if (!scores.ok() || !FlagMemorized(*scores, 0.95).ok()) {
      check.Expect(false, StrCat("seed ", seed, " scores"));
      continue;
    }
    for (const CounterfactualScore& s : *scores) {
      if (s.doc_id == kOutlierId && s.flagged) ++flagged_seeds;
    }

    // Null model: the same losses scored against an unrelated mask.
    LossMatrix null_lm = *lm;
    auto mask = MakeEnsembleMasks(c.docs.size(), 10, 0.5, seed + 1000);
    if (!mask.ok()) std::exit(3);
    null_lm.in_mask = *mask;
    auto null_scores = CounterfactualScores(null_lm);
    if (!null_scores.ok() || !FlagMemorized(*null_scores, 0.95).ok()) {
      check.Expect(false, StrCat("seed ", seed, " null scores"));
      continue;
    }
    double sum = 0, sum_sq = 0;
    int flagged = 0;
    for (const CounterfactualScore& s : *null_scores) {
      sum += s.score;
      sum_sq += s.score * s.score;
      flagged += s.flagged;
    }
    const double n = static_cast<double>(null_scores->size());
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / (n - 1));
    worst_fraction_gap =
        std::max(worst_fraction_gap, std::abs(flagged / n - 0.05));
    check.Expect(std::abs(flagged / n - 0.05) <= 0.01,
                 StrCat("seed ", seed, " null flagged fraction ", flagged / n));
    check.Expect(std::abs(mean) <= 3 * se, StrCat("seed ", seed, " null mean ",
                                                  mean, " vs 3 SE ", 3 * se));
  }
  counterfactual_detail =
      StrCat("outlier flagged in ", flagged_seeds,
             "/10 seeds, worst null fraction gap ", worst_fraction_gap);
  check.Expect(flagged_seeds >= 9,
               StrCat("outlier flagged in ", flagged_seeds, "/10 seeds"));
}

// ----------------------------------------------------------------- mia

std::vector<ConfidenceTrajectory> Trajectories(
    int n, int epochs, uint64_t seed,
    const std::function<double(bool, SplitMix64&)>& draw) {
  SplitMix64 rng(seed);
  std::vector<ConfidenceTrajectory> out;
  for (int i = 0; i < n; ++i) {
    ConfidenceTrajectory t;
    t.doc_id = StrCat("s", seed, "-", i);
    t.member = i % 2 == 0;
    for (int e = 0; e < epochs; ++e) t.conf.push_back(draw(t.member, rng));
    out.push_back(std::move(t));
  }
  return out;
}

std::optional<double> AttackAccuracy(
    const std::vector<ConfidenceTrajectory>& shadow,
    const std::vector<ConfidenceTrajectory>& target) {
  auto attack = TrainAttack(shadow);
  if (!attack.ok()) return std::nullopt;
  auto result = EvaluateMia(*attack, target);
  if (!result.ok()) return std::nullopt;
  return result->accuracy;
}

// Pure memorization: equal-length documents over a huge vocabulary with
// balanced random labels. Non-members share almost no features with
// members, so only training can separate the two groups.
Corpus OverfitCorpus(uint64_t seed) {
  SynthSpec spec;
  spec.n_docs = 1000;
  spec.vocab_size = 1000000;
  spec.min_len = 10;
  spec.max_len = 10;
  spec.seed = seed;
  auto split = SplitCorpus(SynthOrDie(spec), 0.5, seed);
  if (!split.ok()) std::exit(3);
  std::vector<int> labels(split->docs.size());
  for (size_t i = 0; i < labels.size(); ++i)
    labels[i] = static_cast<int>(i % 9);
  SplitMix64 rng(CounterHash(seed, 9, 0));
  Shuffle(std::span<int>(labels), rng);
  for (size_t i = 0; i < labels.size(); ++i) {
    split->docs[i].bin_label = labels[i];
  }
  return *std::move(split);
}

std::string mia_detail;

void MiaFloorCeiling(Checker& check) {
  auto uniform = [](bool, SplitMix64& rng) { return rng.NextDouble(); };
  const auto chance = AttackAccuracy(Trajectories(1000, 30, 1, uniform),
                                     Trajectories(1000, 30, 2, uniform));
  check.Expect(chance && std::abs(*chance - 0.5) <= 0.05,
               StrCat("chance accuracy ", chance.value_or(-1)));

  auto split = [](bool member, SplitMix64& rng) {
    return member ? 0.6 + 0.4 * rng.NextDouble() : 0.4 * rng.NextDouble();
  };
  const auto ceiling = AttackAccuracy(Trajectories(200, 30, 3, split),
                                      Trajectories(200, 30, 4, split));
  check.Expect(ceiling && *ceiling == 1.0,
               StrCat("separable accuracy ", ceiling.value_or(-1)));

  constexpr int kEpochs = 30;
  std::vector<double> separation(kEpochs, 0.0);
  for (uint64_t seed = 0; seed < 5; ++seed) {
    ClassifierOptions options;
    options.epochs = kEpochs;
    options.seed = seed;
    auto sets = ToyMembershipTrajectories(OverfitCorpus(seed), options, seed);
    if (!sets.ok()) {
      check.Expect(false, StrCat("seed ", seed, " trajectories"));
      return;
    }
    for (int e = 1; e <= kEpochs; ++e) {
      auto report = Separability(sets->target, e);
      if (!report.ok()) {
        check.Expect(false, "separability computes");
        return;
      }
      separation[e - 1] += (1.0 - report->overlap) / 5.0;
    }
  }
  int drops = 0;
  for (int e = 1; e < kEpochs; ++e) {
    if (separation[e] < separation[e - 1] - 1e-12) {
      ++drops;
      check.Expect(false, StrCat("separation falls at epoch ", e + 1, ": ",
                                 separation[e - 1], " -> ", separation[e]));
    }
  }
  check.Expect(separation.back() > separation.front(),
               "separation grows over training");
  mia_detail =
      StrCat("chance ", chance.value_or(-1), ", separable ",
             ceiling.value_or(-1), ", separation epoch 1 ", separation.front(),
             " -> epoch 30 ", separation.back(), ", drops ", drops);
}

// -------------------------------------------------------------- report

Table RandomTable(SplitMix64& rng) {
  static const std::vector<std::string> kStrings = {
      "",          "plain",   "with,comma", "quote\"inside", "line\nbreak",
      "crlf\r\nx", "  pad  ", "1.5",        "ñandú",         "null",
      "\"\"",      ","};
  Table t;
  const size_t cols = 1 + rng.NextBelow(6);
  for (size_t c = 0; c < cols; ++c) t.columns.push_back(StrCat("c,", c));
  const size_t rows = rng.NextBelow(8);
  for (size_t r = 0; r < rows; ++r) {
    std::vector<Cell> row;
    for (size_t c = 0; c < cols; ++c) {
      switch (rng.NextBelow(3)) {
        case 0:
          row.emplace_back(std::monostate{});
          break;
        case 1:
          row.emplace_back(kStrings[rng.NextBelow(kStrings.size())]);
          break;
        default:
          row.emplace_back(
              (rng.NextDouble() - 0.5) *
              std::pow(10.0, static_cast<double>(rng.NextBelow(12)) - 6));
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string ManifestOf(const std::vector<Artifact>& artifacts,
                       const std::string& tag) {
  const std::string dir =
      (std::filesystem::temp_directory_path() / StrCat("lingleak_accept_", tag))
          .string();
  std::filesystem::remove_all(dir);
  auto formats = ParseFormats("all");
  if (!formats.ok() || !Emit(artifacts, dir, *formats).ok()) return "";
  auto manifest = ReadFile(dir + "/manifest.json");
  std::filesystem::remove_all(dir);
  return manifest.ok() ? *manifest : "";
}

void ReportOracles(Checker& check) {
  // Spearman: every admissible length 3..10 with heavy ties and continuous
  // values; shorter inputs are rejected.
  check.Expect(!Spearman({1, 2}, {2, 1}).ok(), "spearman rejects 2 pairs");
  SplitMix64 rng(77);
  for (int trial = 0; trial < 20000; ++trial) {
    const size_t n = 3 + trial % 8;
    const uint64_t levels = trial % 2 == 0 ? 3 : 1000000;
    std::vector<double> x(n), y(n);
    for (size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(rng.NextBelow(levels));
      y[i] = static_cast<double>(rng.NextBelow(levels));
    }
    auto rho = Spearman(x, y);
    const double oracle = testing::BruteForceSpearman(x, y);
    if (!rho.ok()) {
      check.Expect(false, StrCat("spearman trial ", trial));
    } else if (std::isnan(oracle)) {
      check.Expect(!rho->has_value(), StrCat("spearman null ", trial));
    } else {
      check.Expect(rho->has_value() && std::abs(**rho - oracle) <= 1e-12,
                   StrCat("spearman trial ", trial));
    }
  }

  for (int trial = 0; trial < 2000; ++trial) {
    const Table t = RandomTable(rng);
    const std::string csv = WriteCsv(t);
    auto parsed = ParseCsv(csv);
    check.Expect(parsed.ok() && *parsed == t && WriteCsv(*parsed) == csv,
                 StrCat("csv trial ", trial));
  }

  SynthSpec spec;
  spec.n_docs = 150;
  spec.vocab_size = 100000;
  spec.redundancy = 0.3;
  spec.inflection = 2;
  spec.min_len = 12;
  spec.max_len = 60;
  spec.seed = 5;
  const Corpus c = SynthOrDie(spec);
  ToyPipelineOptions options;
  options.seed = 5;
  options.n_models = 4;
  options.classifier.epochs = 6;
  std::vector<std::string> manifests;
  for (int threads : {1, 1, 4}) {
    options.threads = threads;
    auto r = RunToyPipeline(c, options);
    if (!r.ok()) {
      check.Expect(false, "pipeline runs");
      return;
    }
    manifests.push_back(
        ManifestOf(PipelineArtifacts(*r), StrCat(manifests.size())));
  }
  check.Expect(!manifests[0].empty() && manifests[0] == manifests[1],
               "manifest identical across runs");
  check.Expect(manifests[0] == manifests[2],
               "manifest identical across thread counts");
}

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<void(Checker&)> run;
  const std::string* detail;
};

int Main() {
  static const std::string kNone;
  const std::vector<Criterion> criteria = {
      {"metric-correctness", 1, MetricCorrectness, &kNone},
      {"metric-invariants", 30, MetricInvariants, &kNone},
      {"extraction-soundness-completeness", 60, ExtractionSoundness, &kNone},
      {"end-to-end-extraction-oracle", 120, EndToEndExtraction,
       &extraction_detail},
      {"counterfactual-oracle", 120, CounterfactualOracle,
       &counterfactual_detail},
      {"mia-floor-ceiling", 120, MiaFloorCeiling, &mia_detail},
      {"report-oracles", 60, ReportOracles, &kNone},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Checker check;
    const auto start = std::chrono::steady_clock::now();
    c.run(check);
    const double seconds = Seconds(start);
    check.Expect(
        seconds < c.budget_seconds,
        fmt::format("runtime {:.2f}s over {}s", seconds, c.budget_seconds));
    std::string line = fmt::format(
        "{} {} ({:.2f}s)", check.ok() ? "PASS" : "FAIL", c.name, seconds);
    if (!c.detail->empty()) line += " " + *c.detail;
    if (!check.ok()) line += " " + check.Summary();
    std::printf("%s\n", line.c_str());
    std::fflush(stdout);
    failed += !check.ok();
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace lingleak

int main() { return lingleak::Main(); }
