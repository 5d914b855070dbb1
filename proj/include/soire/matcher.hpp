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

// Membership r ⊨ s, decided by a filter-matching dynamic program and, for
// testing, by direct recursion over the language semantics.

#ifndef SOIRE_MATCHER_HPP_
#define SOIRE_MATCHER_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "soire/soire.hpp"

namespace soire {

// g(t, begin, end): whether the subexpression rooted at vertex t matches
// filter(s[begin, end), alpha(t)). Every empty substring shares one entry.
class MatchTable {
 public:
  MatchTable() = default;
  MatchTable(std::size_t vertices, std::size_t length);

  std::size_t vertices() const { return vertices_; }
  std::size_t length() const { return length_; }

  bool at(std::size_t t, std::size_t begin, std::size_t end) const {
    return cells_[index(t, begin, end)] != 0;
  }
  bool epsilon(std::size_t t) const { return at(t, 0, 0); }
  void set(std::size_t t, std::size_t begin, std::size_t end, bool v) {
    cells_[index(t, begin, end)] = v ? 1 : 0;
  }

 private:
  std::size_t index(std::size_t t, std::size_t begin, std::size_t end) const {
    if (begin == end) begin = end = 0;
    return (t * (length_ + 1) + begin) * (length_ + 1) + end;
  }

  std::size_t vertices_ = 0;
  std::size_t length_ = 0;
  std::vector<std::uint8_t> cells_;
};

// Fills g for every vertex and every substring of s, shortest substrings
// first and deepest vertices first within a length. Characters outside the
// alphabet belong to no alpha(t) and are filtered away.
MatchTable match_table(const Soire& r, std::string_view s);

// r ⊨ s: filter(s, alpha(r)) = s and g(root, 0, |s|). O(|s|^3 |r|).
bool soiretm(const Soire& r, std::string_view s);

// 1[filter(s[begin,end), alpha(t)) = filter(s[begin,end), alpha(t2))],
// evaluated literally. t2 must be t + 1 or the right child of t.
bool flag(const Soire& r, std::string_view s, std::size_t begin, std::size_t end,
          std::size_t t, std::size_t t2);

enum class InterleaveStrategy {
  kAuto,       // partition by symbol ownership when s uses only alpha(r)
  kPartition,  // always partition (false when s has foreign characters)
  kEnumerate,  // enumerate every split of s into two subsequences
};

struct OracleOptions {
  std::size_t max_length = 10;
  std::size_t max_size = 15;
  InterleaveStrategy strategy = InterleaveStrategy::kAuto;
};

// Memoized recursion over the seven cases of the matching semantics.
// Exponential in |s| for interleavings; throws kInstanceTooLarge beyond the
// configured caps.
bool oracle_match(const Soire& r, std::string_view s, const OracleOptions& options = {});

}  // namespace soire

#endif  // SOIRE_MATCHER_HPP_
