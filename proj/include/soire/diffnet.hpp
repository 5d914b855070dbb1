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

// The differentiable matching network. For an encoding (w, u) and a string
// s it relaxes the filter-matching dynamic program:
//
//   rho^t_a        probability that symbol a occurs below vertex t
//   flag^{t,x}     probability that no symbol of a substring lies in
//                  alpha(t) but not in alpha(x)
//   g^t(b, e)      probability that vertex t filter-matches s[b, e)
//   y_hat          g^0(0, |s|) minus the largest "symbol of s missing from
//                  the expression" probability
//
// Logical and becomes min, logical or becomes a clamped sum, except for the
// split disjunctions of *, + and . which use max. Every value is recorded on
// a Tape so the same pass yields exact gradients.

#ifndef SOIRE_DIFFNET_HPP_
#define SOIRE_DIFFNET_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "soire/encoding.hpp"
#include "soire/tape.hpp"

namespace soire {

struct NetworkOptions {
  ClampMode mode = ClampMode::kExact;
  double leaky_slope = 0.01;
  std::size_t max_length = 20;
};

inline NetworkOptions leaky_options(double slope = 0.01) {
  return NetworkOptions{ClampMode::kLeaky, slope, 20};
}

// min(max(x, 0), 1).
double sigma01(double x);
// The same under a clamp mode; kLeaky keeps slope `slope` outside [0, 1].
double sigma01(double x, ClampMode mode, double slope);

// All intermediate values of one forward pass, backed by its tape. The
// parameters occupy the first parameter_count() nodes of the tape, in the
// flat order of Encoding::params().
class ForwardTrace {
 public:
  double y_hat() const { return tape_.value(y_hat_); }
  Tape::Var output() const { return y_hat_; }
  const Tape& tape() const { return tape_; }

  std::size_t bound() const { return bound_; }
  std::size_t length() const { return length_; }

  double rho(std::size_t t, std::size_t a) const;
  // begin == end denotes the empty substring.
  double g(std::size_t t, std::size_t begin, std::size_t end) const;
  // flag^{t,x}(s[begin, end)) for x > t.
  double flag(std::size_t t, std::size_t x, std::size_t begin, std::size_t end) const;
  // Soft 1[filter(s[begin,end), alpha(t)) = empty].
  double empty_filter(std::size_t t, std::size_t begin, std::size_t end) const;
  // p^t(op) for ?, *, + and p^t(op, t2) for ., &, |.
  double p(std::size_t t, Op op, std::size_t begin, std::size_t end) const;
  double p(std::size_t t, Op op, std::size_t t2, std::size_t begin, std::size_t end) const;

 private:
  friend void forward_into(ForwardTrace&, const Encoding&, std::string_view,
                           const NetworkOptions&);

  std::size_t substring_id(std::size_t begin, std::size_t end) const;

  Tape tape_;
  Tape::Var y_hat_ = 0;
  std::size_t bound_ = 0, sigma_ = 0, length_ = 0, substrings_ = 0, masks_ = 0;
  std::vector<std::uint32_t> sub_id_;     // (b, e) -> substring id, 0 = empty
  std::vector<std::uint32_t> sub_mask_;   // substring id -> mask id
  std::vector<Tape::Var> rho_;            // [t][a]
  std::vector<Tape::Var> g_;              // [t][substring]
  std::vector<Tape::Var> flag_;           // [t][x][mask]
  std::vector<Tape::Var> empty_;          // [t][mask]
  std::vector<Tape::Var> p_unary_;        // [t][op][substring]
  std::vector<Tape::Var> p_binary_;       // [t][op][t2][substring]
};

// Throws kStringTooLong beyond options.max_length and kUnknownCharacter for
// characters outside the encoding's alphabet. Cost O(|s|^3 T^2).
ForwardTrace forward(const Encoding& theta, std::string_view s,
                     const NetworkOptions& options = {});
// Same, reusing the buffers of an existing trace.
void forward_into(ForwardTrace& trace, const Encoding& theta, std::string_view s,
                  const NetworkOptions& options = {});

// (y_hat - y)^2 / 2.
double loss(double y_hat, int label);

// Mean_i (1 - x_i) x_i + (1 - sum_i x_i)^2.
double onehot_loss(std::span<const double> x);

// The seven faithfulness penalties, one per condition, in condition order.
std::array<double, 7> regularizers(const Encoding& theta);

// Adds lambda * (sum of the seven penalties) gradient into `grad` (flat
// parameter order) and returns lambda * sum.
double add_regularizer_gradient(const Encoding& theta, double lambda, std::span<double> grad);

// Gradient of loss(forward(theta, s), y) with respect to every parameter,
// laid out like theta. Leaky clamps by default.
Encoding backward(const Encoding& theta, std::string_view s, int label,
                  const NetworkOptions& options = leaky_options());

// Per-thread scratch space for repeated gradient evaluations.
struct GradientWorkspace {
  ForwardTrace trace;
  std::vector<double> adjoint;
};

// Writes the loss gradient of one sample into `grad` (overwriting it) and
// returns {loss, y_hat}.
std::array<double, 2> sample_gradient(const Encoding& theta, std::string_view s, int label,
                                      const NetworkOptions& options, GradientWorkspace& ws,
                                      std::span<double> grad);

}  // namespace soire

#endif  // SOIRE_DIFFNET_HPP_
