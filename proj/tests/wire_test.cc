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

#include "lingleak/wire.h"

#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "lingleak/corpus.h"
#include "lingleak/report.h"
#include "lingleak/rng.h"
#include "lingleak/strings.h"

namespace lingleak {
namespace {

using ::testing::HasSubstr;

std::string Fixture(const std::string& name) {
  auto content = ReadFile(StrCat(LINGLEAK_FIXTURE_DIR, "/adapter/", name));
  EXPECT_TRUE(content.ok()) << content.status();
  return content.ok() ? *content : "";
}

TEST(GenerationLogTest, RoundTrip) {
  std::vector<GenerationRecord> records = {
      {"d1", 5, "The patient", "was admitted \"quickly\"", "toy"},
      {"d,2", 12, "ñandú\nline", "", "model-01"}};
  const std::string text = WriteGenerationLog(records);
  auto parsed = ParseGenerationLog(text);
  ASSERT_TRUE(parsed.ok()) << parsed.status();
  ASSERT_EQ(parsed->size(), 2u);
  EXPECT_EQ((*parsed)[0].generation, "was admitted \"quickly\"");
  EXPECT_EQ((*parsed)[1].doc_id, "d,2");
  EXPECT_EQ((*parsed)[1].prompt, "ñandú\nline");
  EXPECT_EQ((*parsed)[1].prompt_size, 12);
  EXPECT_EQ(WriteGenerationLog(*parsed), text);
}

TEST(GenerationLogTest, ErrorsNameTheLine) {
  const std::string good =
      R"({"doc_id":"a","prompt_size":5,"prompt":"p","generation":"g","model_id":"m"})";
  const std::vector<std::string> bad = {
      R"({"doc_id":"a","prompt":"p","generation":"g","model_id":"m"})",
      R"({"doc_id":"a","prompt_size":"5","prompt":"p","generation":"g","model_id":"m"})",
      R"({"doc_id":"a","prompt_size":0,"prompt":"p","generation":"g","model_id":"m"})",
      R"({"doc_id":7,"prompt_size":5,"prompt":"p","generation":"g","model_id":"m"})",
      R"([1,2])",
      R"({"doc_id":"a",)"};
  for (const std::string& line : bad) {
    auto parsed = ParseGenerationLog(good + "\n\n" + line + "\n");
    ASSERT_FALSE(parsed.ok()) << line;
    EXPECT_THAT(std::string(parsed.status().message()), HasSubstr("line 3"))
        << line;
  }
  auto empty = ParseGenerationLog("");
  ASSERT_TRUE(empty.ok());
  EXPECT_TRUE(empty->empty());
}

LossMatrix SampleMatrix() {
  LossMatrix lm;
  lm.model_ids = {"model-00", "model-01", "model,02"};
  lm.doc_ids = {"a", "b,c", "1.5"};
  lm.losses = {{0.1, 0.25, 1e-9}, {0.5, 0.3, 2.0}, {0.0, 1.0 / 3.0, 7.0}};
  lm.in_mask = {{1, 0, 1}, {0, 1, 0}, {1, 0, 0}};
  return lm;
}

TEST(LossMatrixCsvTest, RoundTripIsExact) {
  const LossMatrix lm = SampleMatrix();
  auto parsed = ParseLossMatrix(WriteLossesCsv(lm), WriteMaskCsv(lm));
  ASSERT_TRUE(parsed.ok()) << parsed.status();
  EXPECT_EQ(parsed->model_ids, lm.model_ids);
  EXPECT_EQ(parsed->doc_ids, lm.doc_ids);
  EXPECT_EQ(parsed->losses, lm.losses);
  EXPECT_EQ(parsed->in_mask, lm.in_mask);
  EXPECT_EQ(WriteLossesCsv(*parsed), WriteLossesCsv(lm));
}

TEST(LossMatrixCsvTest, ShapeAndValueErrors) {
  const LossMatrix lm = SampleMatrix();
  const std::string losses = WriteLossesCsv(lm);
  const std::string mask = WriteMaskCsv(lm);
  auto check = [](const std::string& l, const std::string& m,
                  const std::string& needle) {
    auto parsed = ParseLossMatrix(l, m);
    ASSERT_FALSE(parsed.ok()) << needle;
    EXPECT_THAT(std::string(parsed.status().message()), HasSubstr(needle));
  };
  LossMatrix other = lm;
  other.doc_ids[0] = "z";
  check(losses, WriteMaskCsv(other), "headers differ");
  other = lm;
  other.model_ids.pop_back();
  other.losses.pop_back();
  other.in_mask.pop_back();
  check(losses, WriteMaskCsv(other), "row counts");
  other = lm;
  other.model_ids[1] = "model-99";
  check(losses, WriteMaskCsv(other), "model ids differ");
  other = lm;
  other.in_mask[0][0] = 2;
  check(losses, WriteMaskCsv(other), "0 or 1");
  other = lm;
  other.losses[0][1] = -1;
  check(WriteLossesCsv(other), mask, "non-negative");
  check("doc,a\n", "doc,a\n", "model_id");
  check("model_id,a\nm,\n", "model_id,a\nm,1\n", "expected a number");
  check("model_id,a,a\nm,1,1\n", "model_id,a,a\nm,1,0\n", "duplicate");
  // Every doc must have both in- and out-models once scored.
  other = lm;
  for (auto& row : other.in_mask) row[2] = 1;
  auto parsed = ParseLossMatrix(WriteLossesCsv(other), WriteMaskCsv(other));
  ASSERT_TRUE(parsed.ok());
  EXPECT_FALSE(CounterfactualScores(*parsed).ok());
}

TEST(ScoresJsonlTest, RoundTripAndErrors) {
  std::vector<CounterfactualScore> scores = {{"a", 0.125, 3, 7, true},
                                             {"b", -0.5, 5, 5, false}};
  const std::string text = WriteScoresJsonl(scores);
  auto parsed = ParseScoresJsonl(text);
  ASSERT_TRUE(parsed.ok()) << parsed.status();
  ASSERT_EQ(parsed->size(), 2u);
  EXPECT_EQ((*parsed)[0].score, 0.125);
  EXPECT_TRUE((*parsed)[0].flagged);
  EXPECT_EQ((*parsed)[1].n_out, 5);
  EXPECT_EQ(WriteScoresJsonl(*parsed), text);
  auto bad = ParseScoresJsonl(
      text +
      R"({"doc_id":"c","score":0.1,"n_in":0,"n_out":2,"flagged":false})");
  ASSERT_FALSE(bad.ok());
  EXPECT_THAT(std::string(bad.status().message()), HasSubstr("line 3"));
  EXPECT_FALSE(
      ParseScoresJsonl(
          R"({"doc_id":"c","score":"x","n_in":1,"n_out":2,"flagged":false})")
          .ok());
}

TEST(TrajectoriesJsonlTest, RoundTripAndErrors) {
  std::vector<ConfidenceTrajectory> traj = {
      {"a", true, {0.1, 0.7, 1.0}}, {"b", false, {0.0, 0.2, 1.0 / 3.0}}};
  const std::string text = WriteTrajectoriesJsonl(traj);
  auto parsed = ParseTrajectoriesJsonl(text);
  ASSERT_TRUE(parsed.ok()) << parsed.status();
  ASSERT_EQ(parsed->size(), 2u);
  EXPECT_EQ((*parsed)[1].conf, traj[1].conf);
  EXPECT_TRUE((*parsed)[0].member);
  EXPECT_EQ(WriteTrajectoriesJsonl(*parsed), text);

  auto ragged = ParseTrajectoriesJsonl(
      text + R"({"doc_id":"c","member":true,"conf":[0.1,0.2]})" + "\n");
  ASSERT_FALSE(ragged.ok());
  EXPECT_THAT(std::string(ragged.status().message()), HasSubstr("line 3"));
  EXPECT_FALSE(
      ParseTrajectoriesJsonl(R"({"doc_id":"c","member":"yes","conf":[0.1]})")
          .ok());
  EXPECT_FALSE(
      ParseTrajectoriesJsonl(R"({"doc_id":"c","member":true,"conf":[1.1]})")
          .ok());
  EXPECT_FALSE(
      ParseTrajectoriesJsonl(R"({"doc_id":"c","member":true,"conf":["0.1"]})")
          .ok());
}

TEST(WireKindTest, NamesAndValidation) {
  EXPECT_EQ(*ParseWireKind("corpus"), WireKind::kCorpus);
  EXPECT_EQ(*ParseWireKind("generations"), WireKind::kGenerations);
  EXPECT_EQ(*ParseWireKind("scores"), WireKind::kScores);
  EXPECT_EQ(*ParseWireKind("trajectories"), WireKind::kTrajectories);
  EXPECT_FALSE(ParseWireKind("losses").ok());
  EXPECT_FALSE(ValidateWire(WireKind::kCorpus, "{\"id\":\"a\"}\n").ok());
  EXPECT_TRUE(ValidateWire(WireKind::kScores, "").ok());
}

// Files written by a Python exporter for a 50-document micro-run must pass
// every validator and drive every analysis stage.
TEST(ExporterContractTest, FixtureFilesValidate) {
  EXPECT_TRUE(ValidateWire(WireKind::kCorpus, Fixture("corpus.jsonl")).ok());
  EXPECT_TRUE(
      ValidateWire(WireKind::kGenerations, Fixture("generations.jsonl")).ok());
  EXPECT_TRUE(ValidateWire(WireKind::kTrajectories,
                           Fixture("target_trajectories.jsonl"))
                  .ok());
  EXPECT_TRUE(ValidateWire(WireKind::kTrajectories,
                           Fixture("shadow_trajectories.jsonl"))
                  .ok());
  EXPECT_TRUE(ParseLossMatrix(Fixture("losses.csv"), Fixture("mask.csv")).ok());
}

TEST(ExporterContractTest, FixtureDrivesExtraction) {
  auto corpus = ParseCorpus(Fixture("corpus.jsonl"), {});
  ASSERT_TRUE(corpus.ok()) << corpus.status();
  ASSERT_EQ(corpus->docs.size(), 50u);
  auto records = ParseGenerationLog(Fixture("generations.jsonl"));
  ASSERT_TRUE(records.ok());
  auto index = MatchIndex::Build(SplitSubset(*corpus, Split::kTrain));
  ASSERT_TRUE(index.ok());
  auto eval = EvaluateGenerationLog(*records, *index, corpus->language);
  ASSERT_TRUE(eval.ok());
  int64_t attempts = 0;
  for (const auto& [k, n] : eval->attempts) attempts += n;
  EXPECT_EQ(attempts, static_cast<int64_t>(records->size()));
  int exact = 0, near = 0;
  for (const ExtractionMatch& m : eval->matches) {
    (m.kind == MatchKind::kExact ? exact : near)++;
    EXPECT_GE(m.match_len, 10);
  }
  EXPECT_GT(exact, 0);
  EXPECT_GT(near, 0);
  const ExtractionReport report = BuildExtractionReport(
      eval->matches, *corpus, {5, 12, 25, 37}, eval->attempts);
  for (const PromptSizeSummary& s : report.per_size) {
    EXPECT_LE(s.unique_extractions, s.attempts);
  }
}

TEST(ExporterContractTest, FixtureDrivesMemorizationAndMia) {
  auto lm = ParseLossMatrix(Fixture("losses.csv"), Fixture("mask.csv"));
  ASSERT_TRUE(lm.ok()) << lm.status();
  EXPECT_EQ(lm->model_ids.size(), 10u);
  auto scores = CounterfactualScores(*lm);
  ASSERT_TRUE(scores.ok());
  auto threshold = FlagMemorized(*scores);
  ASSERT_TRUE(threshold.ok());
  auto round_trip = ParseScoresJsonl(WriteScoresJsonl(*scores));
  ASSERT_TRUE(round_trip.ok());
  EXPECT_EQ(round_trip->size(), 40u);

  auto target = ParseTrajectoriesJsonl(Fixture("target_trajectories.jsonl"));
  auto shadow = ParseTrajectoriesJsonl(Fixture("shadow_trajectories.jsonl"));
  ASSERT_TRUE(target.ok() && shadow.ok());
  EXPECT_EQ(target->front().conf.size(), 30u);
  ASSERT_TRUE(CheckShadowDisjoint(*shadow, *target).ok());
  auto attack = TrainAttack(*shadow);
  ASSERT_TRUE(attack.ok()) << attack.status();
  auto result = EvaluateMia(*attack, *target);
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_EQ(result->n, 25);
}

}  // namespace
}  // namespace lingleak
