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

// Batch kernels over many strings. Each has a serial reference and an
// OpenMP version; both produce bitwise identical results because per-sample
// results are stored by index and reduced in index order.

#ifndef SOIRE_KERNELS_HPP_
#define SOIRE_KERNELS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "soire/diffnet.hpp"
#include "soire/matcher.hpp"

namespace soire {

enum class Execution { kSerial, kParallel };

struct LabeledString {
  std::string text;
  int label = 0;  // 1 positive, 0 negative
};

struct BatchGradient {
  std::vector<double> grad;  // mean over the batch, flat parameter order
  double loss = 0.0;         // mean loss
};

// Mean loss and gradient over samples[indices].
BatchGradient batch_gradient(const Encoding& theta, std::span<const LabeledString> samples,
                             std::span<const std::size_t> indices, const NetworkOptions& options,
                             Execution exec = Execution::kParallel);

// forward(theta, s).y_hat for every string.
std::vector<double> predict(const Encoding& theta, std::span<const LabeledString> samples,
                            const NetworkOptions& options = {},
                            Execution exec = Execution::kParallel);

// soiretm(r, s) for every string.
std::vector<std::uint8_t> match_all(const Soire& r, std::span<const LabeledString> samples,
                                    Execution exec = Execution::kParallel);

}  // namespace soire

#endif  // SOIRE_KERNELS_HPP_
