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

#include "soire/matcher.hpp"
#include "soire/soire.hpp"
#include "support/random.hpp"

using namespace soire;
using soire::testing::Rng;

namespace {

const Alphabet kAbc("abc");

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kConfig;
}

}  // namespace

TEST_CASE("parse_prefix builds the preorder tree") {
  Soire r = parse_prefix("\xC2\xB7&ab*c", kAbc);  // middle dot
  REQUIRE(r.size() == 6);
  CHECK(r.op(0) == Op::kConcat);
  CHECK(r.op(1) == Op::kInterleave);
  CHECK(r.vertex(2).symbol == 'a');
  CHECK(r.vertex(3).symbol == 'b');
  CHECK(r.op(4) == Op::kStar);
  CHECK(r.vertex(5).symbol == 'c');
  CHECK(r.right(0) == 4);
  CHECK(r.right(1) == 3);

  Soire leaf = parse_prefix("a", kAbc);
  CHECK(leaf.size() == 1);
  CHECK(leaf.op(0) == Op::kSymbol);

  CHECK(parse_prefix("+.*ab", kAbc).to_infix() == "(((a*).b)+)");
  CHECK(parse_prefix(" . & a b * c ", kAbc).to_prefix() == ".&ab*c");
}

TEST_CASE("parse_prefix errors") {
  CHECK(code_of([] { parse_prefix("x", kAbc); }) == ErrorCode::kUnknownCharacter);
  CHECK(code_of([] { parse_prefix(".a", kAbc); }) == ErrorCode::kInvalidPrefix);
  CHECK(code_of([] { parse_prefix("", kAbc); }) == ErrorCode::kInvalidPrefix);
  CHECK(code_of([] { parse_prefix("ab", kAbc); }) == ErrorCode::kInvalidPrefix);
  CHECK(code_of([] { parse_prefix(".aa", kAbc); }) == ErrorCode::kDuplicateSymbol);
}

TEST_CASE("to_prefix and to_infix") {
  CHECK(to_prefix(parse_infix("(a&b)c*", kAbc)) == ".&ab*c");
  CHECK(to_prefix(parse_prefix("a", kAbc)) == "a");
  CHECK(to_prefix(parse_infix("(a*b)+", kAbc)) == "+.*ab");

  CHECK(to_infix(".&ab*c") == "((a&b).(c*))");
  CHECK(to_infix("a") == "a");
  CHECK(to_infix("?a") == "(a?)");
  CHECK(code_of([] { to_infix(".a"); }) == ErrorCode::kInvalidPrefix);
}

TEST_CASE("parse_infix precedence and associativity") {
  CHECK(parse_infix("a|bc&d", Alphabet("abcd")).to_prefix() == "|a&.bcd");
  CHECK(parse_infix("a?&b*&c?", kAbc).to_prefix() == "&&?a*b?c");
  CHECK(parse_infix("a.b.c", kAbc).to_prefix() == "..abc");
  CHECK(parse_infix("((a))", kAbc).to_prefix() == "a");
  CHECK(code_of([] { parse_infix("(a", kAbc); }) == ErrorCode::kInvalidInfix);
  CHECK(code_of([] { parse_infix("a|", kAbc); }) == ErrorCode::kInvalidInfix);
  CHECK(parse_regex("(a|b)", kAbc).to_prefix() == "|ab");
  CHECK(parse_regex("|ab", kAbc).to_prefix() == "|ab");
  CHECK(parse_regex("ab", kAbc).to_prefix() == ".ab");
}

TEST_CASE("alpha") {
  Soire r = parse_prefix(".&ab*c", kAbc);
  CHECK(alpha(r, 0).str() == "abc");
  CHECK(alpha(r, 2).str() == "a");
  CHECK(alpha(r, 1).str() == "ab");
  CHECK(alpha(r, 4).str() == "c");
  CHECK(code_of([&] { alpha(r, 6); }) == ErrorCode::kIndexOutOfRange);
}

TEST_CASE("filter") {
  CHECK(filter("dbac", SymbolSet("abc")) == "bac");
  CHECK(filter("", SymbolSet("abc")).empty());
  CHECK(filter("abc", SymbolSet()).empty());
}

TEST_CASE("size") {
  CHECK(size(parse_prefix(".&ab*c", kAbc)) == 6);
  CHECK(size(parse_prefix("a", kAbc)) == 1);
  CHECK(size(parse_prefix("+.*ab", kAbc)) == 5);
}

TEST_CASE("validate_prefix") {
  CHECK(validate_prefix(".&ab*c"));
  CHECK(validate_prefix("a"));
  CHECK_FALSE(validate_prefix(".a"));
  CHECK_FALSE(validate_prefix(""));
  CHECK_FALSE(validate_prefix("ab"));
  CHECK_FALSE(validate_prefix("a*"));
}

TEST_CASE("normalize_unary") {
  CHECK(normalize_unary(parse_infix("(a?)?", kAbc)).to_prefix() == "?a");
  CHECK(normalize_unary(parse_infix("(a+)*", kAbc)).to_prefix() == "*a");
  CHECK(normalize_unary(parse_prefix("a", kAbc)).to_prefix() == "a");
  CHECK(normalize_unary(parse_infix("(a+)+", kAbc)).to_prefix() == "+a");
  CHECK(normalize_unary(parse_infix("(a?)+", kAbc)).to_prefix() == "*a");
  CHECK(normalize_unary(parse_infix("((a*)?b)", kAbc)).to_prefix() == ".*ab");
}

TEST_CASE("alphabet validation") {
  CHECK(code_of([] { Alphabet(""); }) == ErrorCode::kInvalidAlphabet);
  CHECK(code_of([] { Alphabet("aa"); }) == ErrorCode::kInvalidAlphabet);
  CHECK(code_of([] { Alphabet("a*"); }) == ErrorCode::kInvalidAlphabet);
  CHECK(code_of([] { Alphabet("a b"); }) == ErrorCode::kInvalidAlphabet);
  CHECK(Alphabet::letters(3).str() == "abc");
  CHECK(alphabet_of("(c|a)b*").str() == "abc");
}

TEST_CASE("random expressions: round trip, validity, alpha, normalization") {
  Rng rng(11);
  const Alphabet sigma = Alphabet::letters(5);
  for (int i = 0; i < 500; ++i) {
    Soire r = soire::testing::random_soire(rng, sigma, 15);
    const std::string p = r.to_prefix();
    CAPTURE(p);
    CHECK(parse_prefix(p, sigma).to_prefix() == p);
    CHECK(validate_prefix(p));
    CHECK(parse_infix(r.to_infix(), sigma).to_prefix() == p);

    for (std::size_t t = 0; t < r.size(); ++t) {
      SymbolSet expected;
      const Soire::Vertex& v = r.vertex(t);
      if (v.op == Op::kSymbol) {
        expected.insert(v.symbol);
      } else {
        expected = alpha(r, t + 1);
        if (is_binary(v.op)) expected = expected | alpha(r, static_cast<std::size_t>(v.right));
      }
      CHECK(alpha(r, t) == expected);
    }

    Soire n = normalize_unary(r);
    CHECK(n.size() <= r.size());
    CHECK(normalize_unary(n).to_prefix() == n.to_prefix());
    CHECK(n.size() <= 4 * r.alpha().size() - 2);
    for (std::size_t t = 0; t + 1 < n.size(); ++t)
      CHECK_FALSE((is_unary(n.op(t)) && is_unary(n.op(t + 1))));
    for (int k = 0; k < 10; ++k) {
      std::string s = soire::testing::likely_string(rng, r, 8);
      CHECK(soiretm(r, s) == soiretm(n, s));
    }

    std::string s = soire::testing::random_string(rng, "abcdefg", 10);
    SymbolSet v = r.alpha();
    CHECK(filter(filter(s, v), v) == filter(s, v));
    CHECK(filter(filter(s, v), sigma.set()) == filter(s, v));
  }
}
