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

#include <doctest.h>

#include <numeric>

#include "soire/kernels.hpp"
#include "soire/train.hpp"
#include "support/random.hpp"

using namespace soire;
using soire::testing::Rng;

namespace {

std::vector<LabeledString> strings(Rng& rng, const Soire& r, std::size_t n) {
  std::vector<LabeledString> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({soire::testing::likely_string(rng, r, 7), static_cast<int>(i % 2)});
  return out;
}

}  // namespace

TEST_CASE("serial and parallel kernels agree bitwise") {
  Rng rng(21);
  const Alphabet sigma = Alphabet::letters(4);
  for (int round = 0; round < 3; ++round) {
    Soire r = soire::testing::random_soire(rng, sigma, 10);
    auto samples = strings(rng, r, 40);
    Encoding theta = initialize(sigma, 6, rng);
    std::vector<std::size_t> idx(samples.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::reverse(idx.begin(), idx.end());

    auto gs = batch_gradient(theta, samples, idx, leaky_options(), Execution::kSerial);
    auto gp = batch_gradient(theta, samples, idx, leaky_options(), Execution::kParallel);
    CHECK(gs.grad == gp.grad);
    CHECK(gs.loss == gp.loss);

    CHECK(predict(theta, samples, {}, Execution::kSerial) ==
          predict(theta, samples, {}, Execution::kParallel));
    CHECK(match_all(r, samples, Execution::kSerial) == match_all(r, samples, Execution::kParallel));
  }
}

TEST_CASE("kernels agree with their single-sample definitions") {
  Rng rng(22);
  const Alphabet sigma = Alphabet::letters(3);
  Soire r = soire::testing::random_soire(rng, sigma, 8);
  auto samples = strings(rng, r, 20);
  Encoding theta = initialize(sigma, 5, rng);

  auto m = match_all(r, samples);
  auto y = predict(theta, samples);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK((m[i] != 0) == soiretm(r, samples[i].text));
    CHECK(y[i] == forward(theta, samples[i].text).y_hat());
  }

  const std::vector<std::size_t> idx{3, 7, 11};
  auto bg = batch_gradient(theta, samples, idx, leaky_options());
  std::vector<double> mean(theta.parameter_count(), 0.0);
  double l = 0;
  for (std::size_t i : idx) {
    Encoding g = backward(theta, samples[i].text, samples[i].label);
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += g.params()[k] / 3.0;
    l += loss(forward(theta, samples[i].text, leaky_options()).y_hat(), samples[i].label) / 3.0;
  }
  CHECK(bg.loss == doctest::Approx(l));
  for (std::size_t k = 0; k < mean.size(); ++k) CHECK(bg.grad[k] == doctest::Approx(mean[k]));
}

TEST_CASE("errors inside a parallel kernel propagate") {
  Encoding theta(Alphabet("ab"), 3);
  std::vector<LabeledString> samples{{"ab", 1}, {"az", 0}};
  CHECK_THROWS_AS(predict(theta, samples), Error);
}
