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

// Text formats: datasets, checkpoints and the fixture list. Readers report
// malformed input as kMalformedFile with the offending line number.
//
// Dataset:     "#alphabet=<symbols>", then "<+|->\t<string>" per line.
// Checkpoint:  "soire-checkpoint <version>", "T <n>", "alphabet <symbols>",
//              "operators ? * + . & | none", "w", T rows of |B| values,
//              "u", one "t t2 value" line per nonzero entry (1-based,
//              lexicographic), "end". Values use the shortest exact form.
// Fixtures:    "<id>\t<prefix>" per line; '#' starts a comment line.

#ifndef SOIRE_IO_HPP_
#define SOIRE_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "soire/datagen.hpp"
#include "soire/encoding.hpp"

namespace soire {

inline constexpr int kCheckpointVersion = 1;

void write_dataset(std::ostream& out, const Dataset& d);
Dataset read_dataset(std::istream& in);
void save_dataset(const std::filesystem::path& path, const Dataset& d);
Dataset load_dataset(const std::filesystem::path& path);

void write_checkpoint(std::ostream& out, const Encoding& theta);
// Throws kVersionMismatch for other versions.
Encoding read_checkpoint(std::istream& in);
void save_checkpoint(const std::filesystem::path& path, const Encoding& theta);
Encoding load_checkpoint(const std::filesystem::path& path);

struct Fixture {
  int id = 0;
  std::string prefix;
};
std::vector<Fixture> read_fixtures(std::istream& in);
std::vector<Fixture> load_fixtures(const std::filesystem::path& path);

// Shortest text that reads back to the same double.
std::string format_double(double x);
double parse_double(std::string_view text);

// Writes `content` to path, creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace soire

#endif  // SOIRE_IO_HPP_
