// Copyright 2026 The SOIRE Learner Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment sweeps: for every noise level, generate data once, then for
// every learning rate (and restart seed) train, interpret and evaluate.
// Faithfulness is measured against the encoding the SOIRE was read from.
// Per noise level the run whose interpreted SOIRE scores best on the
// validation set is selected; ties go to the lower learning rate.

#ifndef SOIRE_PIPELINE_HPP_
#define SOIRE_PIPELINE_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "soire/datagen.hpp"
#include "soire/interpreter.hpp"
#include "soire/metrics.hpp"
#include "soire/train.hpp"

namespace soire {

struct ExperimentConfig {
  std::string target;                  // prefix or infix
  std::string dataset_id = "custom";   // first CSV column
  std::string alphabet = "abcdefghij"; // empty: the target's own symbols
  std::vector<double> deltas{0.0};
  std::vector<double> learning_rates{0.01, 0.05, 0.1, 0.15, 0.2};
  std::size_t bound = 0;  // 0 means 4|Σ| - 2
  std::size_t beam = kDefaultBeam;
  double lambda = 0.0;
  std::size_t batch_size = 64;
  std::size_t epochs = 100;
  std::uint64_t seed = 1;
  std::size_t restarts = 1;  // training seeds seed, seed + 1, ...
  // Interpret the encoding after every epoch and keep the epoch whose SOIRE
  // scores best on the validation set (ties: higher validation agreement
  // between network and SOIRE, then the earlier epoch). Otherwise interpret
  // only the best-validation network checkpoint.
  bool interpret_each_epoch = true;
  double time_limit_seconds = 5000.0;  // per training run; 0 disables
  SplitSizes sizes;
  std::size_t max_length = 20;
  std::filesystem::path out;  // empty: write nothing
  Execution execution = Execution::kParallel;

  // Throws kConfig on an empty target, delta or learning-rate list, a delta
  // outside [0, 1), zero restarts or an invalid training setting.
  void validate() const;
  Alphabet resolved_alphabet() const;
};

struct RunResult {
  double delta = 0.0;
  double learning_rate = 0.0;
  std::uint64_t seed = 0;
  std::string error;  // empty on success
  std::string prefix;
  std::string infix;
  double validation_accuracy = 0.0;
  EvalReport test;
  std::size_t epoch = 0;  // epoch of the interpreted encoding
  bool timed_out = false;
  std::optional<Encoding> checkpoint;

  bool ok() const { return error.empty(); }
};

struct PipelineResult {
  std::vector<RunResult> runs;
  std::vector<RunResult> selected;  // one per delta with a successful run
};

// `progress` receives one human-readable line per run.
PipelineResult run_pipeline(const ExperimentConfig& config, std::ostream* progress = nullptr);

// Argmax of validation accuracy, ties to the lower learning rate, then the
// lower seed. Runs with errors are skipped; nullopt when none succeeded.
std::optional<std::size_t> select_run(const std::vector<RunResult>& runs);

// "dataset,delta,accuracy,network_accuracy,faithfulness" rows.
std::string eval_csv_header();
std::string eval_csv_row(const std::string& dataset, double delta, const EvalReport& report);

}  // namespace soire

#endif  // SOIRE_PIPELINE_HPP_
