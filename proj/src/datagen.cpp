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
#include "soire/datagen.hpp"

#include <algorithm>
#include <unordered_set>

#include "soire/matcher.hpp"

namespace soire {

std::size_t Dataset::positives() const {
  return static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [](const auto& s) { return s.label == 1; }));
}

namespace {

std::size_t uniform(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

class Emitter {
 public:
  Emitter(const Soire& r, Rng& rng, const SamplerOptions& options)
      : r_(r), rng_(rng), options_(options) {}

  // False once the output exceeds the cap, so runaway stars stop early.
  bool emit(std::size_t t, std::string& out) {
    if (out.size() > options_.max_length) return false;
    const Soire::Vertex& v = r_.vertex(t);
    switch (v.op) {
      case Op::kSymbol:
        out.push_back(v.symbol);
        return true;
      case Op::kOptional:
        return coin(rng_, 0.5) ? emit(t + 1, out) : true;
      case Op::kStar:
      case Op::kPlus: {
        if (v.op == Op::kPlus && !emit(t + 1, out)) return false;
        while (coin(rng_, options_.continue_probability))
          if (!emit(t + 1, out)) return false;
        return true;
      }
      case Op::kConcat:
        return emit(t + 1, out) && emit(static_cast<std::size_t>(v.right), out);
      case Op::kUnion:
        return emit(coin(rng_, 0.5) ? t + 1 : static_cast<std::size_t>(v.right), out);
      case Op::kInterleave: {
        std::string left, right;
        if (!emit(t + 1, left) || !emit(static_cast<std::size_t>(v.right), right)) return false;
        std::vector<std::uint8_t> from_left(left.size() + right.size(), 0);
        std::fill(from_left.begin(), from_left.begin() + static_cast<std::ptrdiff_t>(left.size()), 1);
        std::shuffle(from_left.begin(), from_left.end(), rng_);
        std::size_t i = 0, j = 0;
        for (std::uint8_t take_left : from_left) out.push_back(take_left ? left[i++] : right[j++]);
        return out.size() <= options_.max_length;
      }
    }
    return false;
  }

 private:
  const Soire& r_;
  Rng& rng_;
  const SamplerOptions& options_;
};

}  // namespace

std::string sample_positive(const Soire& r, Rng& rng, const SamplerOptions& options) {
  Emitter emitter(r, rng, options);
  for (std::size_t attempt = 0; attempt < options.attempts; ++attempt) {
    std::string out;
    if (emitter.emit(0, out) && out.size() <= options.max_length) return out;
  }
  throw Error(ErrorCode::kUnsatisfiable, "no string of length <= " +
                                             std::to_string(options.max_length) + " for " +
                                             r.to_infix());
}

std::set<std::string> edit_neighbors(const std::string& s, const Alphabet& sigma) {
  std::set<std::string> out;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) out.insert(s.substr(0, i) + s.substr(i + 1));
  for (std::size_t i = 0; i <= n; ++i)
    for (char c : sigma.str()) out.insert(s.substr(0, i) + c + s.substr(i));
  for (std::size_t i = 0; i < n; ++i)
    for (char c : sigma.str()) {
      if (c == s[i]) continue;
      std::string t = s;
      t[i] = c;
      out.insert(t);
    }
  for (std::size_t i = 0; i < n; ++i) {
    std::string rest = s.substr(0, i) + s.substr(i + 1);
    for (std::size_t j = 0; j <= rest.size(); ++j)
      out.insert(rest.substr(0, j) + s[i] + rest.substr(j));
  }
  out.erase(s);
  return out;
}

std::string sample_negative(const Soire& r, const Alphabet& sigma, Rng& rng,
                            const SamplerOptions& options) {
  for (std::size_t attempt = 0; attempt < options.attempts; ++attempt) {
    std::vector<std::string> candidates;
    for (const std::string& s : edit_neighbors(sample_positive(r, rng, options), sigma))
      if (s.size() <= options.max_length && !soiretm(r, s)) candidates.push_back(s);
    if (!candidates.empty()) return candidates[uniform(rng, candidates.size())];
  }
  throw Error(ErrorCode::kExhaustedRetries, "no negative example found for " + r.to_infix());
}

void flip_labels(Dataset& d, double delta, Rng& rng) {
  // Both groups are fixed before any label changes.
  std::vector<std::size_t> groups[2];
  for (std::size_t i = 0; i < d.samples.size(); ++i)
    groups[d.samples[i].label == 1 ? 0 : 1].push_back(i);
  for (auto& members : groups) {
    const auto flips =
        static_cast<std::size_t>(static_cast<double>(members.size()) * delta + 1e-9);
    // Partial Fisher-Yates: the first flips entries form a uniform subset.
    for (std::size_t k = 0; k < flips; ++k) {
      std::size_t j = k + uniform(rng, members.size() - k);
      std::swap(members[k], members[j]);
      d.samples[members[k]].label = 1 - d.samples[members[k]].label;
    }
  }
  d.delta = delta;
}

namespace {

Dataset make_split(const Soire& r, const Alphabet& sigma, std::size_t pos, std::size_t neg,
                   Rng& rng, const SamplerOptions& options) {
  // Consecutive duplicate draws tolerated before the language is deemed too
  // small for the requested size.
  constexpr std::size_t kMaxDuplicates = 20000;
  Dataset d{sigma, {}, 0.0};
  std::unordered_set<std::string> seen;
  auto fill = [&](std::size_t count, int label) {
    std::size_t duplicates = 0;
    for (std::size_t k = 0; k < count;) {
      std::string s = label ? sample_positive(r, rng, options)
                            : sample_negative(r, sigma, rng, options);
      if (seen.insert(s).second) {
        d.samples.push_back({std::move(s), label});
        ++k;
        duplicates = 0;
      } else if (++duplicates > kMaxDuplicates) {
        throw Error(ErrorCode::kExhaustedRetries,
                    "too few distinct " + std::string(label ? "positive" : "negative") +
                        " strings for " + r.to_infix());
      }
    }
  };
  fill(pos, 1);
  fill(neg, 0);
  return d;
}

}  // namespace

Splits make_dataset(const Soire& r, const Alphabet& sigma, const SplitSizes& sizes, double delta,
                    std::uint64_t seed, const SamplerOptions& options) {
  for (char c : r.alpha().str())
    if (!sigma.contains(c))
      throw Error(ErrorCode::kUnknownCharacter,
                  std::string("'") + c + "' is not in '" + sigma.str() + "'");
  Rng rng(seed);
  Splits out{make_split(r, sigma, sizes.train_pos, sizes.train_neg, rng, options),
             make_split(r, sigma, sizes.val_pos, sizes.val_neg, rng, options),
             make_split(r, sigma, sizes.test_pos, sizes.test_neg, rng, options)};
  flip_labels(out.train, delta, rng);
  flip_labels(out.validation, delta, rng);
  return out;
}

}  // namespace soire
