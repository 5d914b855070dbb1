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

// The parameter pair (w, u) of the matching network over a bounded size T,
// and the codec between faithful encodings and prefix notations.
//
// w has one row per vertex and one column per member of the operator set:
// the symbols of the alphabet in order, then ? * + . & | and none.
// u^t_{t'} is the weight of vertex t choosing t' as its right child and is
// stored only for t' >= t + 2. Vertices are 0-based.

#ifndef SOIRE_ENCODING_HPP_
#define SOIRE_ENCODING_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "soire/soire.hpp"

namespace soire {

class Encoding {
 public:
  static constexpr std::size_t kOperatorColumns = 7;  // ? * + . & | none

  // All-zero encoding. T must be positive.
  Encoding(Alphabet sigma, std::size_t bound);

  const Alphabet& alphabet() const { return sigma_; }
  std::size_t bound() const { return bound_; }
  std::size_t columns() const { return columns_; }

  // Column of symbol index i, of an operator, and of none.
  std::size_t symbol_column(std::size_t i) const { return i; }
  std::size_t op_column(Op op) const;
  std::size_t none_column() const { return columns_ - 1; }

  double& w(std::size_t t, std::size_t col) { return params_[t * columns_ + col]; }
  double w(std::size_t t, std::size_t col) const { return params_[t * columns_ + col]; }
  std::span<double> w_row(std::size_t t) { return {params_.data() + t * columns_, columns_}; }
  std::span<const double> w_row(std::size_t t) const {
    return {params_.data() + t * columns_, columns_};
  }

  // u^t_{t2}; requires t + 2 <= t2 < T.
  double& u(std::size_t t, std::size_t t2) { return params_[u_index(t, t2)]; }
  double u(std::size_t t, std::size_t t2) const { return params_[u_index(t, t2)]; }
  // 0 outside the stored triangle.
  double u_or_zero(std::size_t t, std::size_t t2) const {
    return t2 >= t + 2 && t2 < bound_ ? params_[u_index(t, t2)] : 0.0;
  }
  // Entries u^t_{t+2}, ..., u^t_{T-1}; empty for the last two vertices.
  std::span<double> u_row(std::size_t t) { return {params_.data() + u_offset(t), u_width(t)}; }
  std::span<const double> u_row(std::size_t t) const {
    return {params_.data() + u_offset(t), u_width(t)};
  }
  std::size_t u_width(std::size_t t) const { return t + 2 < bound_ ? bound_ - t - 2 : 0; }

  // T|B| + (T-1)(T-2)/2.
  std::size_t parameter_count() const { return params_.size(); }

  // Flat view: w row-major, then the u rows in (t, t2) lexicographic order.
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }
  std::size_t w_index(std::size_t t, std::size_t col) const { return t * columns_ + col; }
  std::size_t u_index(std::size_t t, std::size_t t2) const { return u_offset(t) + (t2 - t - 2); }

  bool operator==(const Encoding& o) const {
    return sigma_ == o.sigma_ && bound_ == o.bound_ && params_ == o.params_;
  }

 private:
  std::size_t u_offset(std::size_t t) const { return u_offsets_[t]; }

  Alphabet sigma_;
  std::size_t bound_;
  std::size_t columns_;
  std::vector<std::size_t> u_offsets_;
  std::vector<double> params_;
};

struct FaithfulReport {
  bool faithful = true;
  std::vector<int> violated;  // condition numbers 1..7, ascending
};

// Exact-equality checks against 0 and 1 up to `tolerance`; pass 0 for the
// strict mode used on codec output. Condition 5 also covers the ends: the
// root must not be none, and the last vertex must not be an operator, as if
// a none vertex followed it.
FaithfulReport check_faithful(const Encoding& theta, double tolerance = 1e-9);
bool is_faithful(const Encoding& theta, double tolerance = 1e-9);

// Labels of vertices up to the last non-none vertex, as a prefix notation.
// Throws kNotFaithful.
std::string decode(const Encoding& theta, double tolerance = 1e-9);

// One-hot rows by vertex label, u at each right child, none beyond |r|.
// Throws kSizeExceedsBound when |r| > T.
Encoding encode(const Soire& r, std::size_t bound);

// 4|Σ| - 2: enough for every SOIRE up to language equivalence.
std::size_t required_bound(const Alphabet& sigma);

// Elementwise clamp to [0, 1].
Encoding project(Encoding theta);

}  // namespace soire

#endif  // SOIRE_ENCODING_HPP_
