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

#include "soire/interpreter.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "soire/metrics.hpp"

namespace soire {

double BeamCandidate::rank() const { return std::pow(score, 1.0 / static_cast<double>(size)); }

double score_merge(double e_i, double e_j, double op_weight) { return e_i * e_j * op_weight; }

bool ranks_before(const BeamCandidate& a, const BeamCandidate& b) {
  const double ra = a.rank(), rb = b.rank();
  if (ra != rb) return ra > rb;
  if (a.score != b.score) return a.score > b.score;
  if (a.size != b.size) return a.size < b.size;
  return a.prefix < b.prefix;
}

namespace {

constexpr Op kUnary[] = {Op::kOptional, Op::kStar, Op::kPlus};
constexpr Op kBinary[] = {Op::kConcat, Op::kInterleave, Op::kUnion};

// A candidate not yet materialized: its prefix is glyph + left + right and
// is only built when needed to break a tie or once it survives.
struct Pending {
  double rank, score;
  std::size_t size;
  std::uint64_t alpha;
  char label;
  const BeamCandidate* left;
  const BeamCandidate* right;

  std::string prefix() const {
    std::string p(1, label);
    if (left) p += left->prefix;
    if (right) p += right->prefix;
    return p;
  }
};

bool pending_before(const Pending& a, const Pending& b) {
  if (a.rank != b.rank) return a.rank > b.rank;
  if (a.score != b.score) return a.score > b.score;
  if (a.size != b.size) return a.size < b.size;
  return a.prefix() < b.prefix();
}

// Keeps the beta best Pending entries; the heap top is the worst kept one.
class TopK {
 public:
  explicit TopK(std::size_t k) : k_(k) {}

  void offer(const Pending& p) {
    if (p.score <= 0.0) return;
    if (heap_.size() < k_) {
      heap_.push(p);
    } else if (pending_before(p, heap_.top())) {
      heap_.pop();
      heap_.push(p);
    }
  }

  std::vector<BeamCandidate> take() {
    std::vector<Pending> kept;
    while (!heap_.empty()) {
      kept.push_back(heap_.top());
      heap_.pop();
    }
    std::sort(kept.begin(), kept.end(), pending_before);
    std::vector<BeamCandidate> out;
    out.reserve(kept.size());
    for (const Pending& p : kept) out.push_back({p.prefix(), p.score, p.size, p.alpha});
    return out;
  }

 private:
  struct Worse {
    bool operator()(const Pending& a, const Pending& b) const { return pending_before(a, b); }
  };
  std::size_t k_;
  std::priority_queue<Pending, std::vector<Pending>, Worse> heap_;
};

Pending make(double score, std::size_t size, std::uint64_t alpha, char label,
             const BeamCandidate* left, const BeamCandidate* right) {
  return {std::pow(score, 1.0 / static_cast<double>(size)), score, size, alpha, label, left, right};
}

}  // namespace

std::vector<std::vector<BeamCandidate>> beam_sets(const Encoding& theta, std::size_t beta) {
  if (beta == 0) throw Error(ErrorCode::kConfig, "beam width must be positive");
  const std::size_t T = theta.bound();
  const Alphabet& sigma = theta.alphabet();
  std::vector<std::vector<BeamCandidate>> sets(T);
  for (std::size_t t = T; t-- > 0;) {
    TopK top(beta);
    for (std::size_t a = 0; a < sigma.size(); ++a)
      top.offer(make(theta.w(t, theta.symbol_column(a)), 1, std::uint64_t{1} << a,
                     sigma.symbol(a), nullptr, nullptr));
    if (t + 1 < T) {
      for (Op op : kUnary) {
        const double w = theta.w(t, theta.op_column(op));
        if (w <= 0.0) continue;
        for (const BeamCandidate& c : sets[t + 1])
          top.offer(make(c.score * w, c.size + 1, c.alpha, glyph(op), &c, nullptr));
      }
    }
    for (std::size_t t2 = t + 2; t2 < T; ++t2) {
      const double u = theta.u(t, t2);
      if (u <= 0.0) continue;
      for (Op op : kBinary) {
        const double w = theta.w(t, theta.op_column(op)) * u;
        if (w <= 0.0) continue;
        for (const BeamCandidate& l : sets[t + 1])
          for (const BeamCandidate& r : sets[t2]) {
            if (l.alpha & r.alpha) continue;
            top.offer(make(score_merge(l.score, r.score, theta.w(t, theta.op_column(op))) * u,
                           l.size + r.size + 1, l.alpha | r.alpha, glyph(op), &l, &r));
          }
      }
    }
    sets[t] = top.take();
  }
  return sets;
}

Interpretation interpret(std::span<const LabeledString> train, const Encoding& theta,
                         std::size_t beta, Execution exec, AccuracyCache* cache) {
  auto sets = beam_sets(theta, beta);
  const auto& roots = sets[0];
  if (roots.empty()) throw Error(ErrorCode::kEmptyBeam, "no candidate at the root vertex");
  const BeamCandidate* best = nullptr;
  double best_acc = -1.0;
  for (const BeamCandidate& c : roots) {
    double acc = -1.0;
    if (cache) {
      auto it = cache->find(c.prefix);
      if (it != cache->end()) acc = it->second;
    }
    if (acc < 0.0) {
      acc = accuracy(parse_prefix(c.prefix, theta.alphabet()), train, exec);
      if (cache) cache->emplace(c.prefix, acc);
    }
    const bool better =
        !best || acc > best_acc ||
        (acc == best_acc && (c.size < best->size || (c.size == best->size && c.prefix < best->prefix)));
    if (better) {
      best = &c;
      best_acc = acc;
    }
  }
  return {parse_prefix(best->prefix, theta.alphabet()), *best, best_acc};
}

}  // namespace soire
