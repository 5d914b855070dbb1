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

#include "soire/matcher.hpp"

#include <map>
#include <string>
#include <utility>

namespace soire {

MatchTable::MatchTable(std::size_t vertices, std::size_t length)
    : vertices_(vertices),
      length_(length),
      cells_(vertices * (length + 1) * (length + 1), 0) {}

namespace {

using Mask = std::uint64_t;

Mask to_mask(const SymbolSet& set, const Alphabet& sigma) {
  Mask m = 0;
  for (char c : set.str()) {
    int i = sigma.index_of(c);
    if (i >= 0) m |= Mask{1} << i;
  }
  return m;
}

// Symbol masks of every substring s[b, e), row-major over b.
class SubstringMasks {
 public:
  SubstringMasks(std::string_view s, const Alphabet& sigma)
      : n_(s.size()), masks_((n_ + 1) * (n_ + 1), 0) {
    for (std::size_t b = 0; b < n_; ++b) {
      Mask m = 0;
      for (std::size_t e = b + 1; e <= n_; ++e) {
        int i = sigma.index_of(s[e - 1]);
        if (i >= 0) m |= Mask{1} << i;
        masks_[b * (n_ + 1) + e] = m;
      }
    }
  }
  Mask operator()(std::size_t b, std::size_t e) const {
    return b == e ? 0 : masks_[b * (n_ + 1) + e];
  }

 private:
  std::size_t n_;
  std::vector<Mask> masks_;
};

}  // namespace

MatchTable match_table(const Soire& r, std::string_view s) {
  const std::size_t n = s.size();
  const std::size_t size = r.size();
  const Alphabet& sigma = r.alphabet();
  MatchTable g(size, n);
  SubstringMasks sub(s, sigma);

  std::vector<Mask> alpha(size);
  for (std::size_t t = 0; t < size; ++t) alpha[t] = to_mask(r.alpha(t), sigma);

  // Occurrence prefix counts for each leaf symbol.
  std::vector<std::vector<int>> counts(size);
  for (std::size_t t = 0; t < size; ++t) {
    if (r.op(t) != Op::kSymbol) continue;
    counts[t].assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
      counts[t][i + 1] = counts[t][i] + (s[i] == r.vertex(t).symbol ? 1 : 0);
  }

  // flag^{t,x}(b,e): no character of s[b,e) lies in alpha(t) \ alpha(x).
  auto flag_of = [&](std::size_t t, std::size_t x, std::size_t b, std::size_t e) {
    return (sub(b, e) & alpha[t] & ~alpha[x]) == 0;
  };

  for (std::size_t len = 0; len <= n; ++len) {
    for (std::size_t t = size; t-- > 0;) {
      const Op op = r.op(t);
      const std::size_t l = t + 1;
      const std::size_t q = is_binary(op) ? static_cast<std::size_t>(r.right(t)) : 0;
      for (std::size_t b = 0; b + len <= n; ++b) {
        const std::size_t e = b + len;
        bool v = false;
        switch (op) {
          case Op::kSymbol:
            v = counts[t][e] - counts[t][b] == 1;
            break;
          case Op::kOptional:
            v = (sub(b, e) & alpha[t]) == 0 || g.at(l, b, e);
            break;
          case Op::kStar:
          case Op::kPlus: {
            v = g.at(l, b, e);
            if (op == Op::kStar) v = v || (sub(b, e) & alpha[t]) == 0;
            for (std::size_t k = b + 1; k < e && !v; ++k)
              v = g.at(t, b, k) && g.at(l, k, e);
            break;
          }
          case Op::kConcat: {
            v = (flag_of(t, l, b, e) && g.at(l, b, e) && g.epsilon(q)) ||
                (flag_of(t, q, b, e) && g.at(q, b, e) && g.epsilon(l));
            for (std::size_t k = b + 1; k < e && !v; ++k)
              v = flag_of(t, l, b, k) && g.at(l, b, k) && flag_of(t, q, k, e) &&
                  g.at(q, k, e);
            break;
          }
          case Op::kInterleave:
            v = g.at(l, b, e) && g.at(q, b, e);
            break;
          case Op::kUnion:
            v = (flag_of(t, l, b, e) && g.at(l, b, e)) ||
                (flag_of(t, q, b, e) && g.at(q, b, e));
            break;
        }
        g.set(t, b, e, v);
        if (len == 0) break;  // one shared empty cell
      }
    }
  }
  return g;
}

bool soiretm(const Soire& r, std::string_view s) {
  if (filter(s, r.alpha()) != s) return false;
  return match_table(r, s).at(0, 0, s.size());
}

bool flag(const Soire& r, std::string_view s, std::size_t begin, std::size_t end,
          std::size_t t, std::size_t t2) {
  if (begin > end || end > s.size())
    throw Error(ErrorCode::kIndexOutOfRange, "substring outside the input");
  if (t >= r.size() || t2 >= r.size())
    throw Error(ErrorCode::kIndexOutOfRange, "vertex outside the tree");
  std::string_view piece = s.substr(begin, end - begin);
  return filter(piece, r.alpha(t)) == filter(piece, r.alpha(t2));
}

namespace {

class Oracle {
 public:
  Oracle(const Soire& r, InterleaveStrategy strategy) : r_(r), strategy_(strategy) {}

  bool match(std::size_t t, const std::string& s) {
    auto key = std::make_pair(t, s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool v = compute(t, s);
    memo_.emplace(std::move(key), v);
    return v;
  }

 private:
  // r1* ⊨ s: s is empty or s = s1 s2 with s2 nonempty, r1* ⊨ s1, r1 ⊨ s2.
  bool star(std::size_t child, const std::string& s) {
    auto key = std::make_pair(child, s);
    if (auto it = star_memo_.find(key); it != star_memo_.end()) return it->second;
    bool v = s.empty();
    for (std::size_t k = 0; k < s.size() && !v; ++k)
      v = star(child, s.substr(0, k)) && match(child, s.substr(k));
    star_memo_.emplace(std::move(key), v);
    return v;
  }

  bool compute(std::size_t t, const std::string& s) {
    const std::size_t l = t + 1;
    const std::size_t q = static_cast<std::size_t>(r_.right(t));
    switch (r_.op(t)) {
      case Op::kSymbol:
        return s.size() == 1 && s[0] == r_.vertex(t).symbol;
      case Op::kOptional:
        return s.empty() || match(l, s);
      case Op::kStar:
        return star(l, s);
      case Op::kPlus:
        for (std::size_t k = 0; k <= s.size(); ++k)
          if (star(l, s.substr(0, k)) && match(l, s.substr(k))) return true;
        return false;
      case Op::kConcat:
        for (std::size_t k = 0; k <= s.size(); ++k)
          if (match(l, s.substr(0, k)) && match(q, s.substr(k))) return true;
        return false;
      case Op::kInterleave:
        return interleave(t, l, q, s);
      case Op::kUnion:
        return match(l, s) || match(q, s);
    }
    return false;
  }

  bool interleave(std::size_t t, std::size_t l, std::size_t q, const std::string& s) {
    bool filtered = filter(s, r_.alpha(t)) == s;
    bool partition = strategy_ == InterleaveStrategy::kPartition ||
                     (strategy_ == InterleaveStrategy::kAuto && filtered);
    if (partition) {
      if (!filtered) return false;
      return match(l, filter(s, r_.alpha(l))) && match(q, filter(s, r_.alpha(q)));
    }
    // Every way of distributing the positions of s over the two operands.
    const std::size_t n = s.size();
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      std::string left, right;
      for (std::size_t i = 0; i < n; ++i)
        ((bits >> i) & 1u ? left : right).push_back(s[i]);
      if (match(l, left) && match(q, right)) return true;
    }
    return false;
  }

  const Soire& r_;
  InterleaveStrategy strategy_;
  std::map<std::pair<std::size_t, std::string>, bool> memo_;
  std::map<std::pair<std::size_t, std::string>, bool> star_memo_;
};

}  // namespace

bool oracle_match(const Soire& r, std::string_view s, const OracleOptions& options) {
  if (s.size() > options.max_length || r.size() > options.max_size)
    throw Error(ErrorCode::kInstanceTooLarge,
                "oracle capped at |s| <= " + std::to_string(options.max_length) +
                    " and |r| <= " + std::to_string(options.max_size));
  Oracle oracle(r, options.strategy);
  return oracle.match(0, std::string(s));
}

}  // namespace soire
