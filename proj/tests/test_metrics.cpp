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

#include "soire/datagen.hpp"
#include "soire/metrics.hpp"
#include "soire/train.hpp"

using namespace soire;

namespace {

const Alphabet kAb("ab");

Dataset make(std::vector<LabeledString> s) { return Dataset{kAb, std::move(s), 0.0}; }

}  // namespace

TEST_CASE("accuracy") {
  Dataset d = make({{"a", 1}, {"ab", 1}, {"b", 0}, {"ba", 0}});
  CHECK(accuracy(parse_infix("ab?", kAb), d) == 1.0);
  CHECK(accuracy(parse_infix("(a|b)*", kAb), d) == 0.5);
  CHECK(accuracy(parse_infix("a", kAb), d) == 0.75);
  CHECK(accuracy(parse_infix("a", kAb), make({})) == 0.0);
}

TEST_CASE("faithfulness and network accuracy") {
  Soire r = parse_infix("ab?", kAb);
  Encoding theta = encode(r, 4);
  Dataset d = make({{"a", 1}, {"ab", 1}, {"b", 0}, {"ba", 0}, {"", 0}});
  CHECK(faithfulness(theta, r, d) == 1.0);
  CHECK(network_accuracy(theta, d) == 1.0);

  // Complementary languages on these strings.
  Soire other = parse_infix("ba?", kAb);
  Dataset e = make({{"a", 1}, {"ab", 1}, {"b", 0}, {"ba", 0}});
  CHECK(faithfulness(theta, other, e) == 0.0);

  EvalReport rep = evaluate(theta, r, d);
  CHECK(rep.accuracy == 1.0);
  CHECK(rep.network_accuracy == 1.0);
  CHECK(rep.faithfulness == 1.0);
  CHECK(rep.matched_positives == 2);
  CHECK(rep.rejected_negatives == 3);
  CHECK(rep.agreements == 5);
  CHECK(rep.total == 5);

  EvalReport plain = evaluate(r, d);
  CHECK_FALSE(plain.network_accuracy.has_value());
  CHECK_FALSE(plain.faithfulness.has_value());
}

TEST_CASE("agreement on 400 of 500") {
  // r = a accepts only "a"; the network for a? also accepts "". With 100
  // empty strings among 500 the two disagree exactly there.
  Soire r = parse_infix("a", kAb);
  Encoding theta = encode(parse_infix("a?", kAb), 3);
  std::vector<LabeledString> s;
  for (int i = 0; i < 100; ++i) s.push_back({"", 0});
  for (int i = 0; i < 200; ++i) s.push_back({"a", 1});
  for (int i = 0; i < 200; ++i) s.push_back({"b", 0});
  Dataset d = make(s);
  CHECK(faithfulness(theta, r, d) == doctest::Approx(0.8));
  CHECK(accuracy(r, d) == 1.0);
  CHECK(network_accuracy(theta, d) == doctest::Approx(0.8));
}

TEST_CASE("threshold") {
  Encoding theta(kAb, 2);
  Rng rng(1);
  theta = initialize(kAb, 3, rng);
  Dataset d = make({{"a", 1}, {"b", 0}});
  const double lo = network_accuracy(theta, d, 1e-9);
  const double hi = network_accuracy(theta, d, 1.0);
  CHECK(lo >= 0.0);
  CHECK(hi >= 0.0);
  CHECK(network_accuracy(theta, d, 0.5, Execution::kSerial) ==
        network_accuracy(theta, d, 0.5, Execution::kParallel));
}
