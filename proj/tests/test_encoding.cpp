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

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>

#include "soire/encoding.hpp"
#include "support/enumerate.hpp"
#include "support/random.hpp"

using namespace soire;
using soire::testing::Rng;

namespace {

const Alphabet kAbc("abc");

// (a&b)c* with every listed parameter 1 and the rest 0.
Encoding example4(std::size_t bound = 6) {
  Encoding e(kAbc, bound);
  e.w(0, e.op_column(Op::kConcat)) = 1;
  e.w(1, e.op_column(Op::kInterleave)) = 1;
  e.w(2, 0) = 1;
  e.w(3, 1) = 1;
  e.w(4, e.op_column(Op::kStar)) = 1;
  e.w(5, 2) = 1;
  e.u(0, 4) = 1;
  e.u(1, 3) = 1;
  for (std::size_t t = 6; t < bound; ++t) e.w(t, e.none_column()) = 1;
  return e;
}

bool violates(const Encoding& e, int condition) {
  auto v = check_faithful(e).violated;
  return std::find(v.begin(), v.end(), condition) != v.end();
}

}  // namespace

TEST_CASE("layout and parameter count") {
  Encoding e(kAbc, 10);
  CHECK(e.columns() == 10);
  CHECK(e.parameter_count() == 136);
  CHECK(e.none_column() == 9);
  CHECK(e.u_width(0) == 8);
  CHECK(e.u_width(8) == 0);
  CHECK(e.u_index(0, 2) == 100);
  CHECK(e.u_index(1, 3) == 108);
  CHECK(required_bound(Alphabet::letters(10)) == 38);
  CHECK(required_bound(Alphabet::letters(1)) == 2);
  CHECK(required_bound(kAbc) == 10);
  CHECK(e.u_or_zero(3, 4) == 0.0);
  CHECK_THROWS_AS(Encoding(kAbc, 0), Error);
}

TEST_CASE("check_faithful examples") {
  CHECK(is_faithful(example4()));
  CHECK(violates(Encoding(kAbc, 6), 1));

  Encoding e = example4();
  e.u(0, 4) = 0;
  CHECK(violates(e, 3));

  // The last vertex cannot hold an operator: it has no child.
  Encoding tail(kAbc, 4);
  tail.w(0, tail.op_column(Op::kUnion)) = 1;
  tail.w(1, tail.op_column(Op::kStar)) = 1;
  tail.w(2, 1) = 1;
  tail.w(3, tail.op_column(Op::kPlus)) = 1;
  tail.u(0, 3) = 1;
  CHECK(check_faithful(tail).violated == std::vector<int>{5});

  Encoding d = example4();
  d.w(4, d.op_column(Op::kStar)) = 0;
  d.w(4, d.none_column()) = 1;
  CHECK_FALSE(is_faithful(d));
}

TEST_CASE("decode examples") {
  CHECK(decode(example4(8)) == ".&ab*c");
  CHECK(decode(example4()) == ".&ab*c");
  Encoding leaf(Alphabet("a"), 1);
  leaf.w(0, 0) = 1;
  CHECK(decode(leaf) == "a");
  try {
    decode(Encoding(kAbc, 3));
    FAIL("expected kNotFaithful");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kNotFaithful);
  }
}

TEST_CASE("encode examples") {
  CHECK(encode(parse_prefix(".&ab*c", kAbc), 6) == example4());

  Encoding leaf = encode(parse_prefix("a", kAbc), 3);
  CHECK(leaf.w(0, 0) == 1);
  CHECK(leaf.w(1, leaf.none_column()) == 1);
  CHECK(leaf.w(2, leaf.none_column()) == 1);
  double total = 0;
  for (double x : leaf.params()) total += x;
  CHECK(total == 3);

  Encoding p = encode(parse_prefix("+.*ab", kAbc), 5);
  CHECK(p.w(0, p.op_column(Op::kPlus)) == 1);
  CHECK(p.w(1, p.op_column(Op::kConcat)) == 1);
  CHECK(p.w(2, p.op_column(Op::kStar)) == 1);
  CHECK(p.w(3, 0) == 1);
  CHECK(p.w(4, 1) == 1);
  CHECK(p.u(1, 4) == 1);

  try {
    encode(parse_prefix(".&ab*c", kAbc), 5);
    FAIL("expected kSizeExceedsBound");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kSizeExceedsBound);
  }
}

TEST_CASE("project") {
  Encoding e(kAbc, 2);
  e.w(0, 0) = 1.3;
  e.w(0, 1) = -0.2;
  e.w(0, 2) = 0.4;
  Encoding p = project(e);
  CHECK(p.w(0, 0) == 1.0);
  CHECK(p.w(0, 1) == 0.0);
  CHECK(p.w(0, 2) == 0.4);
  CHECK(project(p) == p);
}

TEST_CASE("random round trips") {
  Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    const Alphabet sigma = Alphabet::letters(1 + soire::testing::pick(rng, 5));
    Soire r = soire::testing::random_soire(rng, sigma, 18);
    const std::size_t bound = r.size() + soire::testing::pick(rng, 4);
    Encoding e = encode(r, bound);
    CAPTURE(r.to_prefix());
    CHECK(is_faithful(e, 0.0));
    CHECK(decode(e) == r.to_prefix());
    CHECK(encode(parse_prefix(decode(e), sigma), bound) == e);
  }
}

TEST_CASE("every faithful encoding at small bounds decodes to a distinct valid prefix") {
  const Alphabet sigma("ab");
  for (std::size_t bound = 1; bound <= 4; ++bound) {
    std::map<std::string, int> seen;
    std::size_t faithful = 0;
    soire::testing::for_each_one_hot(sigma, bound, [&](const Encoding& e) {
      if (!is_faithful(e)) return;
      ++faithful;
      const std::string p = decode(e);
      CHECK(validate_prefix(p));
      CHECK(encode(parse_prefix(p, sigma), bound) == e);
      ++seen[p];
    });
    CHECK(seen.size() == faithful);

    // Every SOIRE of size <= T is reached.
    std::size_t expressions = 0;
    const std::string glyphs = "ab?*+.&|";
    std::function<void(std::string)> grow = [&](std::string p) {
      if (!p.empty() && validate_prefix(p)) {
        try {
          parse_prefix(p, sigma);
          ++expressions;
        } catch (const Error&) {
        }
      }
      if (p.size() == bound) return;
      for (char c : glyphs) grow(p + c);
    };
    grow("");
    CHECK(faithful == expressions);
  }
}

TEST_CASE("single-condition violations are detected") {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    Soire r = soire::testing::random_soire(rng, kAbc, 8);
    Encoding e = encode(r, r.size() + 1);
    e.w(0, 0) += 0.5;
    CHECK_FALSE(is_faithful(e));
    Encoding f = encode(r, r.size() + 1);
    f.w(r.size(), f.none_column()) = 0.0;
    CHECK_FALSE(is_faithful(f));
  }
}
