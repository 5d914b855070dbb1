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

#include "soire/diffnet.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace soire {

using Var = Tape::Var;

double sigma01(double x) { return std::clamp(x, 0.0, 1.0); }

double sigma01(double x, ClampMode mode, double slope) {
  if (mode == ClampMode::kExact) return sigma01(x);
  if (x < 0.0) return slope * x;
  if (x > 1.0) return 1.0 + slope * (x - 1.0);
  return x;
}

namespace {

constexpr Op kUnary[] = {Op::kOptional, Op::kStar, Op::kPlus};
constexpr Op kBinary[] = {Op::kConcat, Op::kInterleave, Op::kUnion};

std::size_t unary_slot(Op op) {
  return op == Op::kOptional ? 0 : op == Op::kStar ? 1 : 2;
}
std::size_t binary_slot(Op op) {
  return op == Op::kConcat ? 0 : op == Op::kInterleave ? 1 : 2;
}

}  // namespace

std::size_t ForwardTrace::substring_id(std::size_t begin, std::size_t end) const {
  if (begin > end || end > length_)
    throw Error(ErrorCode::kIndexOutOfRange, "substring outside the input");
  return sub_id_[begin * (length_ + 1) + end];
}

double ForwardTrace::rho(std::size_t t, std::size_t a) const {
  return tape_.value(rho_[t * sigma_ + a]);
}

double ForwardTrace::g(std::size_t t, std::size_t begin, std::size_t end) const {
  return tape_.value(g_[t * substrings_ + substring_id(begin, end)]);
}

double ForwardTrace::flag(std::size_t t, std::size_t x, std::size_t begin,
                          std::size_t end) const {
  if (x <= t || x >= bound_) throw Error(ErrorCode::kIndexOutOfRange, "flag needs t < x < T");
  std::size_t m = sub_mask_[substring_id(begin, end)];
  return tape_.value(flag_[(t * bound_ + x) * masks_ + m]);
}

double ForwardTrace::empty_filter(std::size_t t, std::size_t begin, std::size_t end) const {
  std::size_t m = sub_mask_[substring_id(begin, end)];
  return tape_.value(empty_[t * masks_ + m]);
}

double ForwardTrace::p(std::size_t t, Op op, std::size_t begin, std::size_t end) const {
  if (!is_unary(op)) throw Error(ErrorCode::kIndexOutOfRange, "unary operator expected");
  return tape_.value(p_unary_[(t * 3 + unary_slot(op)) * substrings_ + substring_id(begin, end)]);
}

double ForwardTrace::p(std::size_t t, Op op, std::size_t t2, std::size_t begin,
                       std::size_t end) const {
  if (!is_binary(op)) throw Error(ErrorCode::kIndexOutOfRange, "binary operator expected");
  if (t2 < t + 2 || t2 >= bound_) throw Error(ErrorCode::kIndexOutOfRange, "t2 outside t+2..T-1");
  return tape_.value(
      p_binary_[((t * 3 + binary_slot(op)) * bound_ + t2) * substrings_ + substring_id(begin, end)]);
}

void forward_into(ForwardTrace& tr, const Encoding& theta, std::string_view s,
                  const NetworkOptions& options) {
  const Alphabet& sigma = theta.alphabet();
  const std::size_t T = theta.bound();
  const std::size_t S = sigma.size();
  const std::size_t n = s.size();
  if (n > options.max_length)
    throw Error(ErrorCode::kStringTooLong, "length " + std::to_string(n) + " exceeds " +
                                               std::to_string(options.max_length));
  std::vector<int> sym(n);
  for (std::size_t i = 0; i < n; ++i) {
    sym[i] = sigma.index_of(s[i]);
    if (sym[i] < 0)
      throw Error(ErrorCode::kUnknownCharacter,
                  std::string("'") + s[i] + "' is not in '" + sigma.str() + "'");
  }
  const ClampMode mode = options.mode;
  const double slope = options.leaky_slope;

  // Substrings: id 0 is the empty one, then ascending length.
  tr.bound_ = T;
  tr.sigma_ = S;
  tr.length_ = n;
  tr.substrings_ = 1 + n * (n + 1) / 2;
  tr.sub_id_.assign((n + 1) * (n + 1), 0);
  std::vector<std::uint64_t> sub_bits(tr.substrings_, 0);
  std::vector<std::uint64_t> sub_once(tr.substrings_, 0);  // symbols occurring exactly once
  {
    std::uint32_t id = 1;
    for (std::size_t len = 1; len <= n; ++len) {
      for (std::size_t b = 0; b + len <= n; ++b, ++id) {
        tr.sub_id_[b * (n + 1) + b + len] = id;
        std::uint64_t seen = 0, twice = 0;
        for (std::size_t i = b; i < b + len; ++i) {
          std::uint64_t bit = std::uint64_t{1} << sym[i];
          twice |= seen & bit;
          seen |= bit;
        }
        sub_bits[id] = seen;
        sub_once[id] = seen & ~twice;
      }
    }
  }
  // Flags only depend on which symbols a substring contains.
  std::vector<std::uint64_t> mask_values{0};
  tr.sub_mask_.assign(tr.substrings_, 0);
  {
    std::unordered_map<std::uint64_t, std::uint32_t> index{{0, 0}};
    for (std::size_t id = 1; id < tr.substrings_; ++id) {
      auto [it, fresh] = index.emplace(sub_bits[id], static_cast<std::uint32_t>(mask_values.size()));
      if (fresh) mask_values.push_back(sub_bits[id]);
      tr.sub_mask_[id] = it->second;
    }
  }
  const std::size_t M = mask_values.size();
  tr.masks_ = M;
  const std::size_t N = tr.substrings_;

  Tape& tape = tr.tape_;
  tape.clear();
  tape.reserve(theta.parameter_count() + T * N * (T + 12) + T * T * M * (2 * S + 3),
               T * N * (4 * T + 20 + S) + T * T * M * 6 * S);
  for (double x : theta.params()) tape.leaf(x);
  const Var zero = tape.leaf(0.0);
  auto W = [&](std::size_t t, std::size_t col) { return static_cast<Var>(theta.w_index(t, col)); };
  auto U = [&](std::size_t t, std::size_t t2) { return static_cast<Var>(theta.u_index(t, t2)); };
  auto clamp = [&](Var x) { return tape.clamp01(x, mode, slope); };

  // rho, bottom-up.
  tr.rho_.assign((T + 1) * S, zero);
  for (std::size_t t = T; t-- > 0;) {
    Var binary_mass = zero;
    if (t + 2 < T) {
      auto sum = tape.sum();
      for (Op op : kBinary) sum.term(W(t, theta.op_column(op)));
      binary_mass = sum.done();
    }
    for (std::size_t a = 0; a < S; ++a) {
      Var below_right = zero;
      if (t + 2 < T) {
        auto sum = tape.sum();
        for (std::size_t t2 = t + 2; t2 < T; ++t2) sum.product(U(t, t2), tr.rho_[t2 * S + a]);
        below_right = sum.done();
      }
      auto sum = tape.sum();
      sum.term(W(t, theta.symbol_column(a)));
      if (t + 1 < T) {
        for (Op op : kUnary) sum.product(W(t, theta.op_column(op)), tr.rho_[(t + 1) * S + a]);
        for (Op op : kBinary) sum.product(W(t, theta.op_column(op)), tr.rho_[(t + 1) * S + a]);
      }
      if (t + 2 < T) sum.product(binary_mass, below_right);
      tr.rho_[t * S + a] = clamp(sum.done());
    }
  }

  // 1 - sigma(sum_a sigma(1[a in m] + rho^t_a - rho^x_a - 1)); x == T means
  // the empty set, which gives the soft empty-filter test.
  auto soft_flag = [&](std::size_t t, std::size_t x, std::uint64_t m) {
    std::vector<Var> parts(S);
    for (std::size_t a = 0; a < S; ++a) {
      double present = (m >> a) & 1u ? 1.0 : 0.0;
      auto inner = tape.sum(present - 1.0);
      inner.term(tr.rho_[t * S + a]);
      if (x < T) inner.term(tr.rho_[x * S + a], -1.0);
      parts[a] = clamp(inner.done());
    }
    auto total = tape.sum();
    for (Var v : parts) total.term(v);
    Var clamped = clamp(total.done());
    return tape.sum(1.0).term(clamped, -1.0).done();
  };
  tr.flag_.assign(T * T * M, zero);
  tr.empty_.assign(T * M, zero);
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t m = 0; m < M; ++m) tr.empty_[t * M + m] = soft_flag(t, T, mask_values[m]);
    for (std::size_t x = t + 1; x < T; ++x)
      for (std::size_t m = 0; m < M; ++m)
        tr.flag_[(t * T + x) * M + m] = soft_flag(t, x, mask_values[m]);
  }

  tr.g_.assign((T + 1) * N, zero);
  tr.p_unary_.assign(T * 3 * N, zero);
  tr.p_binary_.assign(T * 3 * T * N, zero);
  auto G = [&](std::size_t t, std::size_t id) { return tr.g_[t * N + id]; };
  auto F = [&](std::size_t t, std::size_t x, std::size_t id) {
    return tr.flag_[(t * T + x) * M + tr.sub_mask_[id]];
  };
  auto id_of = [&](std::size_t b, std::size_t e) { return tr.sub_id_[b * (n + 1) + e]; };

  std::vector<Var> binary_p(3 * T);
  for (std::size_t len = 0; len <= n; ++len) {
    for (std::size_t t = T; t-- > 0;) {
      const std::size_t l = t + 1;  // G(T, .) is the zero padding row
      for (std::size_t b = 0; b + len <= n; ++b) {
        const std::size_t e = b + len;
        const std::size_t id = id_of(b, e);
        const Var gl = G(l, id);
        const Var empty = tr.empty_[t * M + tr.sub_mask_[id]];

        // Split disjunction shared by * and +: max_k min(g^t(b,k), g^l(k,e)).
        bool has_split = false;
        Var split = zero;
        for (std::size_t k = b + 1; k < e; ++k) {
          Var c = tape.min(G(t, id_of(b, k)), G(l, id_of(k, e)));
          split = has_split ? tape.max(split, c) : c;
          has_split = true;
        }

        Var* pu = &tr.p_unary_[t * 3 * N];
        pu[0 * N + id] = clamp(tape.sum().term(empty).term(gl).done());
        {
          auto sum = tape.sum();
          sum.term(empty).term(gl);
          if (has_split) sum.term(split);
          pu[1 * N + id] = clamp(sum.done());
        }
        {
          auto sum = tape.sum();
          sum.term(gl);
          if (has_split) sum.term(split);
          pu[2 * N + id] = clamp(sum.done());
        }

        for (std::size_t t2 = t + 2; t2 < T; ++t2) {
          const Var gr = G(t2, id);
          const Var fl = F(t, l, id), fr = F(t, t2, id);
          // .: left alone with nullable right, right alone with nullable
          // left, or a split into two nonempty halves.
          Var c1 = tape.min(tape.min(fl, gl), G(t2, 0));
          Var c2 = tape.min(tape.min(fr, gr), G(l, 0));
          auto cat = tape.sum();
          cat.term(c1).term(c2);
          bool any = false;
          Var best = zero;
          for (std::size_t k = b + 1; k < e; ++k) {
            const std::size_t left = id_of(b, k), right = id_of(k, e);
            Var c = tape.min(tape.min(F(t, l, left), G(l, left)),
                             tape.min(F(t, t2, right), G(t2, right)));
            best = any ? tape.max(best, c) : c;
            any = true;
          }
          if (any) cat.term(best);
          Var p_cat = clamp(cat.done());
          Var p_and = tape.min(gl, gr);
          Var p_or = clamp(tape.sum().term(tape.min(fl, gl)).term(tape.min(fr, gr)).done());
          Var* pb = &tr.p_binary_[t * 3 * T * N];
          pb[(0 * T + t2) * N + id] = p_cat;
          pb[(1 * T + t2) * N + id] = p_and;
          pb[(2 * T + t2) * N + id] = p_or;
          binary_p[0 * T + t2] = p_cat;
          binary_p[1 * T + t2] = p_and;
          binary_p[2 * T + t2] = p_or;
        }

        Var mixed[3] = {zero, zero, zero};
        if (t + 2 < T) {
          for (std::size_t o = 0; o < 3; ++o) {
            auto sum = tape.sum();
            for (std::size_t t2 = t + 2; t2 < T; ++t2) sum.product(U(t, t2), binary_p[o * T + t2]);
            mixed[o] = sum.done();
          }
        }

        auto sum = tape.sum();
        const std::uint64_t once = sub_once[id];
        for (std::size_t a = 0; a < S; ++a)
          if ((once >> a) & 1u) sum.term(W(t, theta.symbol_column(a)));
        for (Op op : kUnary)
          sum.product(W(t, theta.op_column(op)), pu[unary_slot(op) * N + id]);
        if (t + 2 < T)
          for (Op op : kBinary)
            sum.product(W(t, theta.op_column(op)), mixed[binary_slot(op)]);
        tr.g_[t * N + id] = sum.done();
      }
    }
  }

  // y_hat = sigma(g^0(s) - max_a sigma(1[a in s] - rho^0_a)); the outer clamp
  // keeps y_hat in [0, 1] when both terms fire.
  const std::uint64_t in_s = sub_bits[id_of(0, n)];
  Var missing = zero;
  for (std::size_t a = 0; a < S; ++a) {
    Var v = clamp(tape.sum((in_s >> a) & 1u ? 1.0 : 0.0).term(tr.rho_[a], -1.0).done());
    missing = a == 0 ? v : tape.max(missing, v);
  }
  tr.y_hat_ = clamp(tape.sum().term(G(0, id_of(0, n))).term(missing, -1.0).done());
}

ForwardTrace forward(const Encoding& theta, std::string_view s, const NetworkOptions& options) {
  ForwardTrace trace;
  forward_into(trace, theta, s, options);
  return trace;
}

double loss(double y_hat, int label) {
  const double d = y_hat - static_cast<double>(label);
  return 0.5 * d * d;
}

double onehot_loss(std::span<const double> x) {
  double mean = 0.0, total = 0.0;
  for (double v : x) {
    mean += (1.0 - v) * v;
    total += v;
  }
  if (!x.empty()) mean /= static_cast<double>(x.size());
  return mean + (1.0 - total) * (1.0 - total);
}

namespace {

// Mean_i (1 - x_i) x_i + (1 - sum x)^2.
Var onehot_node(Tape& tape, const std::vector<Var>& xs) {
  const double inv = xs.empty() ? 0.0 : 1.0 / static_cast<double>(xs.size());
  auto binary = tape.sum();
  for (Var x : xs) binary.term(x, inv).product(x, x, -inv);
  Var bin = binary.done();
  auto rest = tape.sum(1.0);
  for (Var x : xs) rest.term(x, -1.0);
  Var r = rest.done();
  Var sq = tape.sum().product(r, r).done();
  return tape.sum().term(bin).term(sq).done();
}

// Like onehot_node but also zero on the all-zero vector:
// Mean_i (1 - x_i) x_i + (sum x (1 - sum x))^2.
Var onehot_or_zero_node(Tape& tape, const std::vector<Var>& xs) {
  const double inv = xs.empty() ? 0.0 : 1.0 / static_cast<double>(xs.size());
  auto binary = tape.sum();
  for (Var x : xs) binary.term(x, inv).product(x, x, -inv);
  Var bin = binary.done();
  auto total = tape.sum();
  for (Var x : xs) total.term(x);
  Var s = total.done();
  Var q = tape.sum().term(s).product(s, s, -1.0).done();
  Var sq = tape.sum().product(q, q).done();
  return tape.sum().term(bin).term(sq).done();
}

Var mean_node(Tape& tape, const std::vector<Var>& xs, Var zero) {
  if (xs.empty()) return zero;
  auto sum = tape.sum();
  for (Var x : xs) sum.term(x, 1.0 / static_cast<double>(xs.size()));
  return sum.done();
}

std::array<Var, 7> build_regularizers(Tape& tape, const Encoding& theta) {
  for (double x : theta.params()) tape.leaf(x);
  const Var zero = tape.leaf(0.0);
  const Var one = tape.leaf(1.0);
  const std::size_t T = theta.bound();
  const std::size_t S = theta.alphabet().size();
  const std::size_t none = theta.none_column();
  auto W = [&](std::size_t t, std::size_t col) { return static_cast<Var>(theta.w_index(t, col)); };
  auto U = [&](std::size_t t, std::size_t t2) { return static_cast<Var>(theta.u_index(t, t2)); };

  std::array<Var, 7> terms{};
  std::vector<Var> rows, xs;

  // 1: w rows are one-hot.
  rows.clear();
  for (std::size_t t = 0; t < T; ++t) {
    xs.clear();
    for (std::size_t c = 0; c < theta.columns(); ++c) xs.push_back(W(t, c));
    rows.push_back(onehot_node(tape, xs));
  }
  terms[0] = mean_node(tape, rows, zero);

  // 2: u rows are one-hot or zero.
  rows.clear();
  for (std::size_t t = 0; t < T; ++t) {
    xs.clear();
    for (std::size_t t2 = t + 2; t2 < T; ++t2) xs.push_back(U(t, t2));
    rows.push_back(onehot_or_zero_node(tape, xs));
  }
  terms[1] = mean_node(tape, rows, zero);

  // 3: a right child, or a symbol, unary operator or none.
  rows.clear();
  for (std::size_t t = 0; t < T; ++t) {
    xs.clear();
    for (std::size_t t2 = t + 2; t2 < T; ++t2) xs.push_back(U(t, t2));
    for (std::size_t a = 0; a < S; ++a) xs.push_back(W(t, a));
    for (Op op : kUnary) xs.push_back(W(t, theta.op_column(op)));
    xs.push_back(W(t, none));
    rows.push_back(onehot_node(tape, xs));
  }
  terms[2] = mean_node(tape, rows, zero);

  // 4: none never precedes a non-none vertex.
  rows.clear();
  for (std::size_t t = 0; t + 1 < T; ++t)
    rows.push_back(tape.relu(tape.sum().term(W(t, none)).term(W(t + 1, none), -1.0).done()));
  terms[3] = mean_node(tape, rows, zero);

  // 5: every non-none vertex but the root has exactly one parent. The root
  // is not none, and a virtual none vertex T has no parent.
  rows.clear();
  rows.push_back(onehot_node(tape, {W(0, none), one}));
  for (std::size_t t = 1; t <= T; ++t) {
    xs.clear();
    for (Op op : kUnary) xs.push_back(W(t - 1, theta.op_column(op)));
    for (Op op : kBinary) xs.push_back(W(t - 1, theta.op_column(op)));
    if (t == T) {
      xs.push_back(one);
    } else {
      for (std::size_t p = 0; p + 2 <= t; ++p) xs.push_back(U(p, t));
      xs.push_back(W(t, none));
    }
    rows.push_back(onehot_node(tape, xs));
  }
  terms[4] = mean_node(tape, rows, zero);

  // 6: preorder numbering.
  rows.clear();
  for (std::size_t t = 2; t < T; ++t) {
    std::vector<Var> inner;
    for (std::size_t p = 0; p + 2 <= t; ++p) {
      const double gap = static_cast<double>(t - 1 - p);
      auto sum = tape.sum(-gap);
      sum.term(U(p, t), gap);
      for (std::size_t q = p + 1; q < t; ++q)
        for (std::size_t t2 = std::max(t + 1, q + 2); t2 < T; ++t2) sum.term(U(q, t2));
      inner.push_back(tape.relu(sum.done()));
    }
    rows.push_back(mean_node(tape, inner, zero));
  }
  terms[5] = mean_node(tape, rows, zero);

  // 7: single occurrence.
  rows.clear();
  for (std::size_t a = 0; a < S; ++a) {
    auto sum = tape.sum(-1.0);
    for (std::size_t t = 0; t < T; ++t) sum.term(W(t, a));
    rows.push_back(tape.relu(sum.done()));
  }
  terms[6] = mean_node(tape, rows, zero);
  return terms;
}

}  // namespace

std::array<double, 7> regularizers(const Encoding& theta) {
  Tape tape;
  auto terms = build_regularizers(tape, theta);
  std::array<double, 7> out{};
  for (std::size_t i = 0; i < 7; ++i) out[i] = tape.value(terms[i]);
  return out;
}

double add_regularizer_gradient(const Encoding& theta, double lambda, std::span<double> grad) {
  if (lambda == 0.0) return 0.0;
  Tape tape;
  auto terms = build_regularizers(tape, theta);
  auto sum = tape.sum();
  for (Var v : terms) sum.term(v, lambda);
  Var total = sum.done();
  std::vector<double> adjoint;
  tape.backward(total, 1.0, adjoint);
  for (std::size_t k = 0; k < grad.size(); ++k) grad[k] += adjoint[k];
  return tape.value(total);
}

std::array<double, 2> sample_gradient(const Encoding& theta, std::string_view s, int label,
                                      const NetworkOptions& options, GradientWorkspace& ws,
                                      std::span<double> grad) {
  forward_into(ws.trace, theta, s, options);
  const double y_hat = ws.trace.y_hat();
  ws.trace.tape().backward(ws.trace.output(), y_hat - static_cast<double>(label), ws.adjoint);
  std::copy_n(ws.adjoint.begin(), grad.size(), grad.begin());
  return {loss(y_hat, label), y_hat};
}

Encoding backward(const Encoding& theta, std::string_view s, int label,
                  const NetworkOptions& options) {
  Encoding grad(theta.alphabet(), theta.bound());
  GradientWorkspace ws;
  sample_gradient(theta, s, label, options, ws, grad.params());
  return grad;
}

}  // namespace soire
