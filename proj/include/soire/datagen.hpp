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
// Labeled datasets from a ground-truth SOIRE: positives by random traversal
// of the syntax tree, negatives as non-matching single-edit neighbours of
// positives, then label-flip noise.

#ifndef SOIRE_DATAGEN_HPP_
#define SOIRE_DATAGEN_HPP_

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "soire/kernels.hpp"
#include "soire/soire.hpp"

namespace soire {

using Rng = std::mt19937_64;

struct Dataset {
  Alphabet alphabet;
  std::vector<LabeledString> samples;
  double delta = 0.0;

  std::size_t positives() const;
  std::size_t negatives() const { return samples.size() - positives(); }
};

struct Splits {
  Dataset train, validation, test;
};

struct SplitSizes {
  std::size_t train_pos = 250, train_neg = 250;
  std::size_t val_pos = 50, val_neg = 50;
  std::size_t test_pos = 250, test_neg = 250;
};

struct SamplerOptions {
  std::size_t max_length = 20;
  double continue_probability = 0.5;  // geometric expansion of * and +
  std::size_t attempts = 200;         // resamples per string
};

// A string matched by r of length at most max_length. Throws kUnsatisfiable
// when every attempt overflows.
std::string sample_positive(const Soire& r, Rng& rng, const SamplerOptions& options = {});

// Every string other than s reachable by deleting, inserting, replacing or
// moving one character.
std::set<std::string> edit_neighbors(const std::string& s, const Alphabet& sigma);

// A uniform non-matching edit neighbour of a fresh positive. Throws
// kExhaustedRetries when no attempt finds one.
std::string sample_negative(const Soire& r, const Alphabet& sigma, Rng& rng,
                            const SamplerOptions& options = {});

// Flips floor(|positives| delta) positive and floor(|negatives| delta)
// negative labels, chosen uniformly.
void flip_labels(Dataset& d, double delta, Rng& rng);

// Deduplicated splits; noise on train and validation only. Deterministic in
// seed. Throws kExhaustedRetries when the language has too few distinct
// strings for the requested sizes.
Splits make_dataset(const Soire& r, const Alphabet& sigma, const SplitSizes& sizes, double delta,
                    std::uint64_t seed, const SamplerOptions& options = {});

}  // namespace soire

#endif  // SOIRE_DATAGEN_HPP_
