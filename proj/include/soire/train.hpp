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

// Mini-batch training of an encoding: AdamW steps on the mean squared loss
// of the leaky network (plus lambda times the faithfulness penalties),
// projection to [0, 1] after every step, and best-validation checkpointing.

#ifndef SOIRE_TRAIN_HPP_
#define SOIRE_TRAIN_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "soire/datagen.hpp"
#include "soire/encoding.hpp"
#include "soire/kernels.hpp"

namespace soire {

struct TrainConfig {
  std::size_t bound = 0;  // T; 0 means 4|Σ| - 2
  std::size_t batch_size = 64;
  double learning_rate = 0.1;
  double lambda = 0.0;
  std::size_t epochs = 100;
  std::uint64_t seed = 1;
  double leaky_slope = 0.01;
  double eval_threshold = 0.5;
  double weight_decay = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double time_limit_seconds = 0.0;  // 0 disables the cap
  std::size_t max_length = 20;
  Execution execution = Execution::kParallel;
  // Called after the initialization check and after every epoch.
  std::function<void(std::size_t epoch, const Encoding& theta)> on_epoch;

  // Throws kConfig on batch_size = 0, lambda < 0, a threshold outside
  // (0, 1) or a non-positive learning rate.
  void validate() const;
};

struct TrainLogRow {
  std::size_t epoch = 0;     // 0 is the initialization
  double train_loss = 0.0;   // mean over the epoch's batches
  double validation_accuracy = 0.0;
};

struct TrainResult {
  Encoding best;
  Encoding last;
  std::size_t best_epoch = 0;
  double best_validation_accuracy = 0.0;
  std::vector<TrainLogRow> log;
  bool timed_out = false;
};

// Uniform entries, each w row and each nonempty u row normalized to sum 1.
Encoding initialize(const Alphabet& sigma, std::size_t bound, Rng& rng);

// Starts from initialize(..., Rng(config.seed)).
TrainResult train(const Dataset& train_set, const Dataset& validation, const TrainConfig& config);
TrainResult train(const Dataset& train_set, const Dataset& validation, Encoding init,
                  const TrainConfig& config);

// "epoch,train_loss,validation_accuracy" with one row per log entry.
std::string log_csv(const std::vector<TrainLogRow>& log);

}  // namespace soire

#endif  // SOIRE_TRAIN_HPP_
