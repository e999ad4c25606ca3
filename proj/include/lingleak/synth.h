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

#ifndef LINGLEAK_SYNTH_H_
#define LINGLEAK_SYNTH_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "lingleak/corpus.h"

namespace lingleak {

struct SynthSpec {
  int n_docs = 100;
  int vocab_size = 1000;    // lemma vocabulary
  double redundancy = 0.0;  // share of documents copied from templates
  int inflection = 1;       // surface forms per lemma
  uint64_t seed = 0;
  int min_len = 8;
  int max_len = 30;
  int n_templates = 5;
  std::string language = "syn";
};

// Each document is, with probability `redundancy`, a verbatim copy of one of
// `n_templates` template documents; otherwise its tokens are drawn i.i.d.
// uniformly over lemmas and forms. Documents carry lemma and relation
// annotations. The first token of every document is capitalized.
absl::StatusOr<Corpus> SynthCorpus(const SynthSpec& spec);

// The surface form used for (lemma, form). Exposed for fixtures.
std::string SynthStem(int lemma, int vocab_size);
std::string SynthForm(int lemma, int form, int vocab_size);

}  // namespace lingleak

#endif  // LINGLEAK_SYNTH_H_
