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

#include "soire/metrics.hpp"

namespace soire {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double accuracy(const Soire& r, std::span<const LabeledString> samples, Execution exec) {
  auto matched = match_all(r, samples, exec);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < samples.size(); ++i)
    correct += matched[i] == samples[i].label ? 1 : 0;
  return ratio(correct, samples.size());
}

double accuracy(const Soire& r, const Dataset& d, Execution exec) {
  return accuracy(r, d.samples, exec);
}

double network_accuracy(const Encoding& theta, const Dataset& d, double threshold,
                        Execution exec) {
  auto y = predict(theta, d.samples, {}, exec);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < y.size(); ++i)
    correct += (y[i] >= threshold ? 1 : 0) == d.samples[i].label ? 1 : 0;
  return ratio(correct, y.size());
}

double faithfulness(const Encoding& theta, const Soire& r, const Dataset& d, double threshold,
                    Execution exec) {
  return *evaluate(theta, r, d, threshold, exec).faithfulness;
}

EvalReport evaluate(const Soire& r, const Dataset& d, Execution exec) {
  EvalReport report;
  auto matched = match_all(r, d.samples, exec);
  report.total = d.samples.size();
  for (std::size_t i = 0; i < matched.size(); ++i) {
    if (d.samples[i].label == 1 && matched[i]) ++report.matched_positives;
    if (d.samples[i].label == 0 && !matched[i]) ++report.rejected_negatives;
  }
  report.accuracy = ratio(report.matched_positives + report.rejected_negatives, report.total);
  return report;
}

EvalReport evaluate(const Encoding& theta, const Soire& r, const Dataset& d, double threshold,
                    Execution exec) {
  EvalReport report = evaluate(r, d, exec);
  auto matched = match_all(r, d.samples, exec);
  auto y = predict(theta, d.samples, {}, exec);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const int net = y[i] >= threshold ? 1 : 0;
    correct += net == d.samples[i].label ? 1 : 0;
    report.agreements += net == matched[i] ? 1 : 0;
  }
  report.network_accuracy = ratio(correct, y.size());
  report.faithfulness = ratio(report.agreements, y.size());
  return report;
}

}  // namespace soire
