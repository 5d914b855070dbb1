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
#include "soire/train.hpp"

using namespace soire;

namespace {

const Alphabet kAb("ab");

Splits small_data(std::size_t n) {
  return make_dataset(parse_infix("(a?b)+", kAb), kAb, SplitSizes{n, n, 50, 50, 1, 1}, 0.0, 1);
}

}  // namespace

TEST_CASE("initialize draws normalized rows") {
  Rng rng(1);
  Encoding e = initialize(Alphabet("abc"), 6, rng);
  for (std::size_t t = 0; t < 6; ++t) {
    double w = 0, u = 0;
    for (double x : e.w_row(t)) {
      CHECK(x >= 0.0);
      w += x;
    }
    for (double x : e.u_row(t)) u += x;
    CHECK(w == doctest::Approx(1.0));
    if (e.u_width(t)) CHECK(u == doctest::Approx(1.0));
  }
  Rng again(1);
  CHECK(initialize(Alphabet("abc"), 6, again) == e);
}

TEST_CASE("configuration errors") {
  TrainConfig c;
  CHECK_NOTHROW(c.validate());
  c.batch_size = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.lambda = -1;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.eval_threshold = 1.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.learning_rate = 0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("zero epochs return the initialization") {
  Splits d = small_data(20);
  TrainConfig c;
  c.epochs = 0;
  c.bound = 5;
  Rng rng(c.seed);
  Encoding init = initialize(kAb, 5, rng);
  TrainResult r = train(d.train, d.validation, c);
  CHECK(r.best == init);
  CHECK(r.last == init);
  CHECK(r.best_epoch == 0);
  CHECK(r.log.size() == 1);
}

TEST_CASE("training is deterministic and stays in the box") {
  Splits d = small_data(30);
  TrainConfig c;
  c.epochs = 3;
  c.batch_size = 16;
  c.lambda = 0.1;
  std::size_t calls = 0;
  c.on_epoch = [&](std::size_t, const Encoding&) { ++calls; };
  TrainResult a = train(d.train, d.validation, c);
  c.execution = Execution::kSerial;
  TrainResult b = train(d.train, d.validation, c);
  CHECK(calls == 8);
  CHECK(a.last == b.last);
  CHECK(log_csv(a.log) == log_csv(b.log));
  for (double x : a.last.params()) CHECK((x >= 0.0 && x <= 1.0));
  CHECK(a.last.bound() == 6);
  CHECK(log_csv(a.log).rfind("epoch,train_loss,validation_accuracy\n0,", 0) == 0);
}

TEST_CASE("the network fits a tiny noise-free target") {
  Splits d = small_data(200);
  TrainConfig c;
  TrainResult r = train(d.train, d.validation, c);
  CHECK(r.best_validation_accuracy >= 0.95);
}
