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

// Bottom-up beam search from a learnt encoding to a SOIRE. Vertex t collects
// candidates rooted at t: symbols weighted w^t_a, unary operators over the
// candidates of t + 1, and binary operators over pairs from t + 1 and t2 with
// disjoint alphabets, weighted w^t_o u^t_{t2}. Each set keeps the beta best
// by e^(1/|r|); the training-set accuracy picks among the root candidates.

#ifndef SOIRE_INTERPRETER_HPP_
#define SOIRE_INTERPRETER_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "soire/encoding.hpp"
#include "soire/kernels.hpp"

namespace soire {

inline constexpr std::size_t kDefaultBeam = 500;

struct BeamCandidate {
  std::string prefix;
  double score = 0.0;       // product of the weights used
  std::size_t size = 0;     // |r|
  std::uint64_t alpha = 0;  // symbol indices used, as bits

  std::string infix() const { return to_infix(prefix); }
  // e^(1/|r|).
  double rank() const;
};

// e_i * e_j * op_weight.
double score_merge(double e_i, double e_j, double op_weight);

// Ranking order: rank desc, then score desc, then size asc, then prefix.
bool ranks_before(const BeamCandidate& a, const BeamCandidate& b);

// Candidate sets C^0 .. C^{T-1}, each sorted by ranks_before. Candidates
// with score 0 are dropped. beta must be positive.
std::vector<std::vector<BeamCandidate>> beam_sets(const Encoding& theta, std::size_t beta);

struct Interpretation {
  Soire expr;
  BeamCandidate candidate;
  double train_accuracy = 0.0;
};

// Root candidate with the best training accuracy; ties go to the smaller
// expression, then the lexicographically smaller prefix. Throws kEmptyBeam
// when C^0 is empty and kConfig for beta = 0.
//
// Training accuracies are looked up in and added to `cache` when given; it
// must only ever be used with the same training set.
using AccuracyCache = std::unordered_map<std::string, double>;
Interpretation interpret(std::span<const LabeledString> train, const Encoding& theta,
                         std::size_t beta = kDefaultBeam, Execution exec = Execution::kParallel,
                         AccuracyCache* cache = nullptr);

}  // namespace soire

#endif  // SOIRE_INTERPRETER_HPP_
