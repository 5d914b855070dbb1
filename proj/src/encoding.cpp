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

#include "soire/encoding.hpp"

#include <algorithm>
#include <cmath>

namespace soire {

Encoding::Encoding(Alphabet sigma, std::size_t bound)
    : sigma_(std::move(sigma)), bound_(bound), columns_(sigma_.size() + kOperatorColumns) {
  if (bound_ == 0) throw Error(ErrorCode::kConfig, "bounded size must be positive");
  std::size_t offset = bound_ * columns_;
  u_offsets_.resize(bound_);
  for (std::size_t t = 0; t < bound_; ++t) {
    u_offsets_[t] = offset;
    offset += u_width(t);
  }
  params_.assign(offset, 0.0);
}

std::size_t Encoding::op_column(Op op) const {
  const std::size_t base = sigma_.size();
  switch (op) {
    case Op::kOptional: return base + 0;
    case Op::kStar: return base + 1;
    case Op::kPlus: return base + 2;
    case Op::kConcat: return base + 3;
    case Op::kInterleave: return base + 4;
    case Op::kUnion: return base + 5;
    case Op::kSymbol: break;
  }
  throw Error(ErrorCode::kIndexOutOfRange, "symbols have no operator column");
}

namespace {

constexpr Op kUnary[] = {Op::kOptional, Op::kStar, Op::kPlus};
constexpr Op kBinary[] = {Op::kConcat, Op::kInterleave, Op::kUnion};

struct Approx {
  double tol;
  bool zero(double x) const { return std::fabs(x) <= tol; }
  bool one(double x) const { return std::fabs(x - 1.0) <= tol; }
  bool binary(double x) const { return zero(x) || one(x); }
};

// Every entry is 0 or 1 and the number of ones lies in [min_ones, 1].
bool one_hot(std::span<const double> row, Approx ap, int min_ones) {
  int ones = 0;
  for (double x : row) {
    if (!ap.binary(x)) return false;
    ones += ap.one(x) ? 1 : 0;
  }
  return ones >= min_ones && ones <= 1;
}

}  // namespace

FaithfulReport check_faithful(const Encoding& theta, double tolerance) {
  const Approx ap{tolerance};
  const std::size_t T = theta.bound();
  const std::size_t sigma = theta.alphabet().size();
  const std::size_t none = theta.none_column();
  bool bad[8] = {};

  for (std::size_t t = 0; t < T; ++t) {
    if (!one_hot(theta.w_row(t), ap, 1)) bad[1] = true;
    if (!one_hot(theta.u_row(t), ap, 0)) bad[2] = true;

    double sum = theta.w(t, none);
    for (double x : theta.u_row(t)) sum += x;
    for (std::size_t a = 0; a < sigma; ++a) sum += theta.w(t, a);
    for (Op op : kUnary) sum += theta.w(t, theta.op_column(op));
    if (!ap.one(sum)) bad[3] = true;

    if (t + 1 < T && theta.w(t + 1, none) - theta.w(t, none) < -tolerance) bad[4] = true;

    if (t == 0) {
      if (!ap.zero(theta.w(0, none))) bad[5] = true;
    } else {
      double parents = theta.w(t, none);
      for (Op op : kUnary) parents += theta.w(t - 1, theta.op_column(op));
      for (Op op : kBinary) parents += theta.w(t - 1, theta.op_column(op));
      for (std::size_t p = 0; p + 2 <= t; ++p) parents += theta.u(p, t);
      if (!ap.one(parents)) bad[5] = true;
    }

    // Preorder: when p's right child is t, no vertex strictly between p and
    // t may point beyond t.
    for (std::size_t p = 0; p + 2 <= t; ++p) {
      const double gap = static_cast<double>(t - 1 - p);
      double lhs = gap * theta.u(p, t);
      for (std::size_t q = p + 1; q < t; ++q)
        for (std::size_t t2 = t + 1; t2 < T; ++t2) lhs += theta.u_or_zero(q, t2);
      if (lhs > gap + tolerance) bad[6] = true;
    }
  }

  // A virtual none vertex follows the last one, so the last vertex has no
  // operator waiting for a child.
  for (Op op : kUnary)
    if (!ap.zero(theta.w(T - 1, theta.op_column(op)))) bad[5] = true;
  for (Op op : kBinary)
    if (!ap.zero(theta.w(T - 1, theta.op_column(op)))) bad[5] = true;

  for (std::size_t a = 0; a < sigma; ++a) {
    double uses = 0.0;
    for (std::size_t t = 0; t < T; ++t) uses += theta.w(t, a);
    if (uses > 1.0 + tolerance) bad[7] = true;
  }

  FaithfulReport report;
  for (int c = 1; c <= 7; ++c)
    if (bad[c]) report.violated.push_back(c);
  report.faithful = report.violated.empty();
  return report;
}

bool is_faithful(const Encoding& theta, double tolerance) {
  return check_faithful(theta, tolerance).faithful;
}

std::string decode(const Encoding& theta, double tolerance) {
  FaithfulReport report = check_faithful(theta, tolerance);
  if (!report.faithful) {
    std::string which;
    for (int c : report.violated) which += (which.empty() ? "" : ",") + std::to_string(c);
    throw Error(ErrorCode::kNotFaithful, "violated conditions " + which);
  }
  const Approx ap{tolerance};
  const Alphabet& sigma = theta.alphabet();
  std::string out;
  for (std::size_t t = 0; t < theta.bound(); ++t) {
    if (ap.one(theta.w(t, theta.none_column()))) break;
    for (std::size_t a = 0; a < sigma.size(); ++a)
      if (ap.one(theta.w(t, a))) out.push_back(sigma.symbol(a));
    for (Op op : kUnary)
      if (ap.one(theta.w(t, theta.op_column(op)))) out.push_back(glyph(op));
    for (Op op : kBinary)
      if (ap.one(theta.w(t, theta.op_column(op)))) out.push_back(glyph(op));
  }
  return out;
}

Encoding encode(const Soire& r, std::size_t bound) {
  if (r.size() > bound)
    throw Error(ErrorCode::kSizeExceedsBound,
                "|r| = " + std::to_string(r.size()) + " exceeds T = " + std::to_string(bound));
  Encoding theta(r.alphabet(), bound);
  for (std::size_t t = 0; t < bound; ++t) {
    if (t >= r.size()) {
      theta.w(t, theta.none_column()) = 1.0;
      continue;
    }
    const Soire::Vertex& v = r.vertex(t);
    if (v.op == Op::kSymbol) {
      theta.w(t, theta.symbol_column(r.alphabet().index_of(v.symbol))) = 1.0;
    } else {
      theta.w(t, theta.op_column(v.op)) = 1.0;
      if (is_binary(v.op)) theta.u(t, static_cast<std::size_t>(v.right)) = 1.0;
    }
  }
  return theta;
}

std::size_t required_bound(const Alphabet& sigma) { return 4 * sigma.size() - 2; }

Encoding project(Encoding theta) {
  for (double& x : theta.params()) x = std::clamp(x, 0.0, 1.0);
  return theta;
}

}  // namespace soire
