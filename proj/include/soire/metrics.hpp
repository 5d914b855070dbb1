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

// Accuracy of a SOIRE or of the network over a dataset, and faithfulness:
// how often the thresholded network agrees with the interpreted SOIRE.

#ifndef SOIRE_METRICS_HPP_
#define SOIRE_METRICS_HPP_

#include <optional>
#include <span>

#include "soire/datagen.hpp"
#include "soire/kernels.hpp"

namespace soire {

inline constexpr double kDefaultThreshold = 0.5;

struct EvalReport {
  double accuracy = 0.0;  // of the SOIRE
  std::optional<double> network_accuracy;
  std::optional<double> faithfulness;
  std::size_t matched_positives = 0;
  std::size_t rejected_negatives = 0;
  std::size_t agreements = 0;  // N=, network and SOIRE predict the same label
  std::size_t total = 0;
};

// Fraction of samples whose label equals soiretm(r, s). 0 on an empty set.
double accuracy(const Soire& r, std::span<const LabeledString> samples,
                Execution exec = Execution::kParallel);
double accuracy(const Soire& r, const Dataset& d, Execution exec = Execution::kParallel);

// Fraction of samples whose label equals 1[y_hat >= threshold], exact clamps.
double network_accuracy(const Encoding& theta, const Dataset& d,
                        double threshold = kDefaultThreshold,
                        Execution exec = Execution::kParallel);

double faithfulness(const Encoding& theta, const Soire& r, const Dataset& d,
                    double threshold = kDefaultThreshold, Execution exec = Execution::kParallel);

EvalReport evaluate(const Soire& r, const Dataset& d, Execution exec = Execution::kParallel);
EvalReport evaluate(const Encoding& theta, const Soire& r, const Dataset& d,
                    double threshold = kDefaultThreshold, Execution exec = Execution::kParallel);

}  // namespace soire

#endif  // SOIRE_METRICS_HPP_
