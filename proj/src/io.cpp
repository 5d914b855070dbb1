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

#include "soire/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace soire {

namespace {

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kMalformedFile, "line " + std::to_string(line) + ": " + what);
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMalformedFile, "cannot open " + path.string());
  return in;
}

// getline without the trailing '\r' of CRLF files.
bool next_line(std::istream& in, std::string& line, std::size_t& number) {
  if (!std::getline(in, line)) return false;
  ++number;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double x = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw Error(ErrorCode::kMalformedFile, "not a number: '" + std::string(text) + "'");
  return x;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error(ErrorCode::kMalformedFile, "cannot write " + path.string());
}

void write_dataset(std::ostream& out, const Dataset& d) {
  out << "#alphabet=" << d.alphabet.str() << '\n';
  for (const LabeledString& s : d.samples) out << (s.label ? '+' : '-') << '\t' << s.text << '\n';
}

Dataset read_dataset(std::istream& in) {
  std::string line;
  std::size_t number = 0;
  if (!next_line(in, line, number) || line.rfind("#alphabet=", 0) != 0)
    malformed(1, "expected '#alphabet=<symbols>'");
  Dataset d{Alphabet(line.substr(10)), {}, 0.0};
  while (next_line(in, line, number)) {
    if (line.empty()) continue;
    if (line.size() < 2 || (line[0] != '+' && line[0] != '-') || line[1] != '\t')
      malformed(number, "expected '<+|->\\t<string>'");
    std::string text = line.substr(2);
    for (char c : text)
      if (!d.alphabet.contains(c)) malformed(number, std::string("symbol '") + c + "' not in alphabet");
    d.samples.push_back({std::move(text), line[0] == '+' ? 1 : 0});
  }
  return d;
}

void save_dataset(const std::filesystem::path& path, const Dataset& d) {
  std::ostringstream out;
  write_dataset(out, d);
  write_file(path, out.str());
}

Dataset load_dataset(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_dataset(in);
}

void write_checkpoint(std::ostream& out, const Encoding& theta) {
  out << "soire-checkpoint " << kCheckpointVersion << '\n';
  out << "T " << theta.bound() << '\n';
  out << "alphabet " << theta.alphabet().str() << '\n';
  out << "operators ? * + . & | none\n";
  out << "w\n";
  for (std::size_t t = 0; t < theta.bound(); ++t) {
    auto row = theta.w_row(t);
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? " " : "") << format_double(row[c]);
    out << '\n';
  }
  out << "u\n";
  for (std::size_t t = 0; t < theta.bound(); ++t)
    for (std::size_t t2 = t + 2; t2 < theta.bound(); ++t2)
      if (theta.u(t, t2) != 0.0)
        out << t + 1 << ' ' << t2 + 1 << ' ' << format_double(theta.u(t, t2)) << '\n';
  out << "end\n";
}

Encoding read_checkpoint(std::istream& in) {
  std::string line;
  std::size_t number = 0;
  auto expect = [&](const char* what) {
    if (!next_line(in, line, number)) malformed(number + 1, std::string("expected ") + what);
    return split_ws(line);
  };
  auto to_size = [&](const std::string& tok) -> std::size_t {
    std::size_t v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
      malformed(number, "not an integer: '" + tok + "'");
    return v;
  };
  auto number_at = [&](const std::string& tok) {
    try {
      return parse_double(tok);
    } catch (const Error&) {
      malformed(number, "not a number: '" + tok + "'");
    }
  };

  auto head = expect("header");
  if (head.size() != 2 || head[0] != "soire-checkpoint") malformed(number, "not a checkpoint");
  if (head[1] != std::to_string(kCheckpointVersion))
    throw Error(ErrorCode::kVersionMismatch, "checkpoint version " + head[1] + ", expected " +
                                                 std::to_string(kCheckpointVersion));
  auto tline = expect("'T <n>'");
  if (tline.size() != 2 || tline[0] != "T") malformed(number, "expected 'T <n>'");
  const std::size_t T = to_size(tline[1]);
  if (T == 0) malformed(number, "T must be positive");
  auto aline = expect("'alphabet <symbols>'");
  if (aline.size() != 2 || aline[0] != "alphabet") malformed(number, "expected 'alphabet <symbols>'");
  Encoding theta(Alphabet(aline[1]), T);
  expect("'operators ...'");
  if (line != "operators ? * + . & | none") malformed(number, "unsupported operator order");
  if (expect("'w'") != std::vector<std::string>{"w"}) malformed(number, "expected 'w'");
  for (std::size_t t = 0; t < T; ++t) {
    auto row = expect("a w row");
    if (row.size() != theta.columns())
      malformed(number, "expected " + std::to_string(theta.columns()) + " values");
    for (std::size_t c = 0; c < row.size(); ++c) theta.w(t, c) = number_at(row[c]);
  }
  if (expect("'u'") != std::vector<std::string>{"u"}) malformed(number, "expected 'u'");
  for (;;) {
    auto entry = expect("'end'");
    if (entry == std::vector<std::string>{"end"}) break;
    if (entry.size() != 3) malformed(number, "expected 't t2 value'");
    const std::size_t t = to_size(entry[0]), t2 = to_size(entry[1]);
    if (t < 1 || t2 < t + 2 || t2 > T) malformed(number, "u index outside the stored triangle");
    theta.u(t - 1, t2 - 1) = number_at(entry[2]);
  }
  return theta;
}

void save_checkpoint(const std::filesystem::path& path, const Encoding& theta) {
  std::ostringstream out;
  write_checkpoint(out, theta);
  write_file(path, out.str());
}

Encoding load_checkpoint(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_checkpoint(in);
}

std::vector<Fixture> read_fixtures(std::istream& in) {
  std::vector<Fixture> out;
  std::string line;
  std::size_t number = 0;
  while (next_line(in, line, number)) {
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) malformed(number, "expected '<id>\\t<prefix>'");
    Fixture f;
    auto res = std::from_chars(line.data(), line.data() + tab, f.id);
    if (res.ec != std::errc() || res.ptr != line.data() + tab) malformed(number, "bad fixture id");
    f.prefix = line.substr(tab + 1);
    if (!validate_prefix(canonical_text(f.prefix))) malformed(number, "invalid prefix notation");
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Fixture> load_fixtures(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_fixtures(in);
}

}  // namespace soire
