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

#include <filesystem>
#include <sstream>

#include "soire/datagen.hpp"
#include "soire/io.hpp"
#include "soire/train.hpp"

using namespace soire;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kConfig;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "soire_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("dataset save and load round trip") {
  const Alphabet sigma = Alphabet::letters(10);
  Splits s = make_dataset(parse_infix("(a?b)+", sigma), sigma, SplitSizes{20, 20, 2, 2, 2, 2},
                          0.1, 3);
  const auto path = scratch("train.tsv");
  save_dataset(path, s.train);
  Dataset back = load_dataset(path);
  CHECK(back.alphabet == s.train.alphabet);
  REQUIRE(back.samples.size() == s.train.samples.size());
  for (std::size_t i = 0; i < back.samples.size(); ++i) {
    CHECK(back.samples[i].text == s.train.samples[i].text);
    CHECK(back.samples[i].label == s.train.samples[i].label);
  }

  std::ostringstream a, b;
  write_dataset(a, s.train);
  write_dataset(b, back);
  CHECK(a.str() == b.str());
}

TEST_CASE("dataset parse errors") {
  std::istringstream bad("#alphabet=ab\n+\tab\n?\tb\n");
  try {
    read_dataset(bad);
    FAIL("expected kMalformedFile");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMalformedFile);
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
  std::istringstream foreign("#alphabet=ab\n+\taz\n");
  CHECK_THROWS_AS(read_dataset(foreign), Error);
  std::istringstream empty_string("#alphabet=ab\n-\t\n");
  CHECK(read_dataset(empty_string).samples.at(0).text.empty());
}

TEST_CASE("checkpoint round trip is exact") {
  Rng rng(5);
  Encoding theta = initialize(Alphabet("abc"), 7, rng);
  theta.u(0, 3) = 0.0;
  std::ostringstream out;
  write_checkpoint(out, theta);
  std::istringstream in(out.str());
  Encoding back = read_checkpoint(in);
  CHECK(back == theta);
  std::ostringstream again;
  write_checkpoint(again, back);
  CHECK(again.str() == out.str());
  CHECK(out.str().rfind("soire-checkpoint 1\nT 7\nalphabet abc\n", 0) == 0);

  const auto path = scratch("ck.txt");
  save_checkpoint(path, theta);
  CHECK(load_checkpoint(path) == theta);
}

TEST_CASE("checkpoint errors") {
  std::istringstream v2("soire-checkpoint 2\nT 1\n");
  CHECK(code_of([&] { read_checkpoint(v2); }) == ErrorCode::kVersionMismatch);
  std::istringstream trunc("soire-checkpoint 1\nT 2\nalphabet a\n");
  CHECK(code_of([&] { read_checkpoint(trunc); }) == ErrorCode::kMalformedFile);
  CHECK_THROWS_AS(load_checkpoint(scratch("missing.txt")), Error);
}

TEST_CASE("fixtures") {
  std::istringstream in("# comment\n1\t.ab\n\n2\t|a*b\n");
  auto f = read_fixtures(in);
  REQUIRE(f.size() == 2);
  CHECK(f[1].id == 2);
  CHECK(f[1].prefix == "|a*b");

  auto all = load_fixtures(SOIRE_DATA_DIR "/fixtures.tsv");
  CHECK(all.size() == 30);
  for (const auto& x : all) CHECK(validate_prefix(x.prefix));
  CHECK(all[12].prefix == "&&?a*b?c");
  CHECK(all[20].prefix == "+.*ab");
  CHECK(all[27].prefix == "+.?ab");
}

TEST_CASE("doubles") {
  for (double x : {0.0, 1.0, 0.1, 1.0 / 3.0, 1e-300, 123456.789}) CHECK(parse_double(format_double(x)) == x);
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  CHECK_THROWS_AS(parse_double("x1"), Error);
}
