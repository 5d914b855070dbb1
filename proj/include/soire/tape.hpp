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

// A scalar reverse-mode tape covering the few operations the matching
// network needs: affine/bilinear sums, clamps, ReLU and min/max selection.
//
// Every node stores its value and the local partial derivatives to its
// operands, computed while the node is built. min and max create no node at
// all: they return the operand attaining the extremum, so the gradient flows
// to that operand only (ties go to the earliest operand).

#ifndef SOIRE_TAPE_HPP_
#define SOIRE_TAPE_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace soire {

enum class ClampMode {
  kExact,  // min(max(x, 0), 1)
  kLeaky,  // identity on [0, 1], slope `leaky_slope` outside
};

class Tape {
 public:
  using Var = std::uint32_t;

  void clear() {
    values_.clear();
    begins_.clear();
    edges_.clear();
  }
  void reserve(std::size_t nodes, std::size_t edges) {
    values_.reserve(nodes);
    begins_.reserve(nodes);
    edges_.reserve(edges);
  }

  std::size_t size() const { return values_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  double value(Var v) const { return values_[v]; }

  // A node without operands: a leaf parameter or a constant.
  Var leaf(double v) {
    begins_.push_back(static_cast<std::uint32_t>(edges_.size()));
    values_.push_back(v);
    return static_cast<Var>(values_.size() - 1);
  }

  // Builds bias + sum c_k x_k + sum d_k x_k y_k as one node.
  class Sum {
   public:
    explicit Sum(Tape& tape, double bias = 0.0)
        : tape_(tape), value_(bias), begin_(tape.edges_.size()) {}
    Sum& term(Var x, double c = 1.0) {
      value_ += c * tape_.values_[x];
      tape_.edges_.push_back({x, c});
      return *this;
    }
    Sum& product(Var x, Var y, double c = 1.0) {
      const double vx = tape_.values_[x], vy = tape_.values_[y];
      value_ += c * vx * vy;
      tape_.edges_.push_back({x, c * vy});
      tape_.edges_.push_back({y, c * vx});
      return *this;
    }
    Var done() {
      tape_.begins_.push_back(static_cast<std::uint32_t>(begin_));
      tape_.values_.push_back(value_);
      return static_cast<Var>(tape_.values_.size() - 1);
    }

   private:
    Tape& tape_;
    double value_;
    std::size_t begin_;
  };

  Sum sum(double bias = 0.0) { return Sum(*this, bias); }

  Var clamp01(Var x, ClampMode mode, double slope) {
    const double v = values_[x];
    double out, d;
    if (v < 0.0) {
      out = mode == ClampMode::kExact ? 0.0 : slope * v;
      d = mode == ClampMode::kExact ? 0.0 : slope;
    } else if (v > 1.0) {
      out = mode == ClampMode::kExact ? 1.0 : 1.0 + slope * (v - 1.0);
      d = mode == ClampMode::kExact ? 0.0 : slope;
    } else {
      out = v;
      d = 1.0;
    }
    return unary(x, out, d);
  }

  Var relu(Var x) {
    const double v = values_[x];
    return v > 0.0 ? unary(x, v, 1.0) : unary(x, 0.0, 0.0);
  }

  Var min(Var a, Var b) const { return values_[b] < values_[a] ? b : a; }
  Var max(Var a, Var b) const { return values_[b] > values_[a] ? b : a; }

  // Adjoints of every node for d(out)/d(node) scaled by `seed`.
  void backward(Var out, double seed, std::vector<double>& adjoint) const {
    adjoint.assign(values_.size(), 0.0);
    adjoint[out] = seed;
    for (std::size_t n = out + 1; n-- > 0;) {
      const double a = adjoint[n];
      if (a == 0.0) continue;
      const std::size_t end = n + 1 < begins_.size() ? begins_[n + 1] : edges_.size();
      for (std::size_t e = begins_[n]; e < end; ++e)
        adjoint[edges_[e].target] += a * edges_[e].weight;
    }
  }

 private:
  struct Edge {
    Var target;
    double weight;
  };

  Var unary(Var x, double out, double d) {
    begins_.push_back(static_cast<std::uint32_t>(edges_.size()));
    if (d != 0.0) edges_.push_back({x, d});
    values_.push_back(out);
    return static_cast<Var>(values_.size() - 1);
  }

  std::vector<double> values_;
  std::vector<std::uint32_t> begins_;
  std::vector<Edge> edges_;
};

}  // namespace soire

#endif  // SOIRE_TAPE_HPP_
