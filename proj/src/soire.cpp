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

#include "soire/soire.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <utility>

namespace soire {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidPrefix: return "InvalidPrefix";
    case ErrorCode::kInvalidInfix: return "InvalidInfix";
    case ErrorCode::kDuplicateSymbol: return "DuplicateSymbol";
    case ErrorCode::kUnknownCharacter: return "UnknownCharacter";
    case ErrorCode::kInvalidAlphabet: return "InvalidAlphabet";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kNotFaithful: return "NotFaithful";
    case ErrorCode::kSizeExceedsBound: return "SizeExceedsBound";
    case ErrorCode::kStringTooLong: return "StringTooLong";
    case ErrorCode::kEmptyBeam: return "EmptyBeam";
    case ErrorCode::kUnsatisfiable: return "Unsatisfiable";
    case ErrorCode::kExhaustedRetries: return "ExhaustedRetries";
    case ErrorCode::kMalformedFile: return "MalformedFile";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kConfig: return "Config";
  }
  return "Unknown";
}

char glyph(Op op) {
  switch (op) {
    case Op::kOptional: return '?';
    case Op::kStar: return '*';
    case Op::kPlus: return '+';
    case Op::kConcat: return '.';
    case Op::kInterleave: return '&';
    case Op::kUnion: return '|';
    case Op::kSymbol: break;
  }
  return 0;
}

std::optional<Op> op_from_glyph(char c) {
  switch (c) {
    case '?': return Op::kOptional;
    case '*': return Op::kStar;
    case '+': return Op::kPlus;
    case '.': return Op::kConcat;
    case '&': return Op::kInterleave;
    case '|': return Op::kUnion;
    default: return std::nullopt;
  }
}

SymbolSet::SymbolSet(std::string_view symbols) {
  for (char c : symbols) insert(c);
}

void SymbolSet::insert(char c) {
  auto u = static_cast<unsigned char>(c);
  if (u < 128) bits_.set(u);
}

std::string SymbolSet::str() const {
  std::string out;
  for (std::size_t c = 0; c < 128; ++c)
    if (bits_.test(c)) out.push_back(static_cast<char>(c));
  return out;
}

Alphabet::Alphabet(std::string_view symbols) : symbols_(symbols) {
  std::memset(index_, -1, sizeof(index_));
  if (symbols_.empty())
    throw Error(ErrorCode::kInvalidAlphabet, "alphabet is empty");
  if (symbols_.size() > kMaxSymbols)
    throw Error(ErrorCode::kInvalidAlphabet, "more than 64 symbols");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    char c = symbols_[i];
    auto u = static_cast<unsigned char>(c);
    if (u >= 128 || !std::isgraph(u) || op_from_glyph(c) || c == '(' ||
        c == ')' || c == '#')
      throw Error(ErrorCode::kInvalidAlphabet,
                  std::string("symbol '") + c + "' is not allowed");
    if (index_[u] >= 0)
      throw Error(ErrorCode::kInvalidAlphabet,
                  std::string("duplicate symbol '") + c + "'");
    index_[u] = static_cast<std::int8_t>(i);
    set_.insert(c);
  }
}

Alphabet Alphabet::letters(std::size_t n) {
  if (n == 0 || n > 26)
    throw Error(ErrorCode::kInvalidAlphabet, "letter count must be in 1..26");
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(static_cast<char>('a' + i));
  return Alphabet(s);
}

std::string canonical_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto u = static_cast<unsigned char>(text[i]);
    if (std::isspace(u)) continue;
    // U+00B7 MIDDLE DOT
    if (u == 0xC2 && i + 1 < text.size() &&
        static_cast<unsigned char>(text[i + 1]) == 0xB7) {
      out.push_back('.');
      ++i;
      continue;
    }
    out.push_back(text[i]);
  }
  return out;
}

namespace {

int prefix_weight(char c) {
  auto op = op_from_glyph(c);
  if (!op) return 1;
  return is_binary(*op) ? -1 : 0;
}

}  // namespace

bool validate_prefix(std::string_view text) {
  std::string s = canonical_text(text);
  if (s.empty()) return false;
  int suffix = 0;
  for (std::size_t i = s.size(); i-- > 0;) {
    suffix += prefix_weight(s[i]);
    if (suffix < 1) return false;
  }
  return suffix == 1;
}

Soire::Soire(std::vector<Vertex> vertices, Alphabet alphabet)
    : vertices_(std::move(vertices)), alphabet_(std::move(alphabet)) {
  alpha_.resize(vertices_.size());
  for (std::size_t t = vertices_.size(); t-- > 0;) {
    const Vertex& v = vertices_[t];
    if (v.op == Op::kSymbol) {
      alpha_[t].insert(v.symbol);
    } else {
      alpha_[t] = alpha_[t + 1];
      if (is_binary(v.op)) alpha_[t] = alpha_[t] | alpha_[v.right];
    }
  }
}

const SymbolSet& Soire::alpha(std::size_t t) const {
  if (t >= vertices_.size())
    throw Error(ErrorCode::kIndexOutOfRange,
                "vertex " + std::to_string(t) + " of a size-" +
                    std::to_string(vertices_.size()) + " tree");
  return alpha_[t];
}

std::string Soire::to_prefix() const {
  std::string out;
  out.reserve(vertices_.size());
  for (const Vertex& v : vertices_)
    out.push_back(v.op == Op::kSymbol ? v.symbol : glyph(v.op));
  return out;
}

std::string Soire::to_infix() const { return soire::to_infix(to_prefix()); }

Soire parse_prefix(std::string_view text, const Alphabet& sigma) {
  std::string s = canonical_text(text);
  if (s.empty()) throw Error(ErrorCode::kInvalidPrefix, "empty expression");
  for (char c : s) {
    if (!op_from_glyph(c) && !sigma.contains(c))
      throw Error(ErrorCode::kUnknownCharacter,
                  std::string("'") + c + "' is neither a symbol of '" +
                      sigma.str() + "' nor an operator");
  }
  if (!validate_prefix(s))
    throw Error(ErrorCode::kInvalidPrefix, "'" + s + "'");

  SymbolSet seen;
  std::vector<Soire::Vertex> vertices(s.size());
  std::vector<int> stack;
  for (std::size_t i = s.size(); i-- > 0;) {
    Soire::Vertex& v = vertices[i];
    auto op = op_from_glyph(s[i]);
    if (!op) {
      if (seen.contains(s[i]))
        throw Error(ErrorCode::kDuplicateSymbol,
                    std::string("'") + s[i] + "' occurs more than once");
      seen.insert(s[i]);
      v.op = Op::kSymbol;
      v.symbol = s[i];
      v.end = static_cast<int>(i) + 1;
    } else if (is_unary(*op)) {
      int child = stack.back();
      stack.pop_back();
      v.op = *op;
      v.end = vertices[child].end;
    } else {
      stack.pop_back();  // left child, always i + 1
      int right = stack.back();
      stack.pop_back();
      v.op = *op;
      v.right = right;
      v.end = vertices[right].end;
    }
    stack.push_back(static_cast<int>(i));
  }
  return Soire(std::move(vertices), sigma);
}

namespace {

class InfixParser {
 public:
  InfixParser(std::string text, const Alphabet& sigma)
      : text_(std::move(text)), sigma_(sigma) {}

  std::string parse() {
    std::string out = parse_union();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return out;
  }

 private:
  bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kInvalidInfix,
                what + " at offset " + std::to_string(pos_) + " in '" + text_ + "'");
  }

  std::string parse_union() {
    std::string lhs = parse_interleave();
    while (at('|')) {
      ++pos_;
      lhs = "|" + lhs + parse_interleave();
    }
    return lhs;
  }

  std::string parse_interleave() {
    std::string lhs = parse_concat();
    while (at('&')) {
      ++pos_;
      lhs = "&" + lhs + parse_concat();
    }
    return lhs;
  }

  bool starts_atom() const {
    return pos_ < text_.size() && (text_[pos_] == '(' || !op_from_glyph(text_[pos_])) &&
           text_[pos_] != ')';
  }

  std::string parse_concat() {
    std::string lhs = parse_postfix();
    for (;;) {
      if (at('.')) {
        ++pos_;
      } else if (!starts_atom()) {
        break;
      }
      lhs = "." + lhs + parse_postfix();
    }
    return lhs;
  }

  std::string parse_postfix() {
    std::string operand = parse_atom();
    while (at('?') || at('*') || at('+')) operand = text_[pos_++] + operand;
    return operand;
  }

  std::string parse_atom() {
    if (pos_ >= text_.size()) fail("unexpected end");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      std::string inner = parse_union();
      if (!at(')')) fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (op_from_glyph(c) || c == ')') fail(std::string("unexpected '") + c + "'");
    if (!sigma_.contains(c))
      throw Error(ErrorCode::kUnknownCharacter,
                  std::string("'") + c + "' is not a symbol of '" + sigma_.str() + "'");
    ++pos_;
    return std::string(1, c);
  }

  std::string text_;
  const Alphabet& sigma_;
  std::size_t pos_ = 0;
};

}  // namespace

Soire parse_infix(std::string_view text, const Alphabet& sigma) {
  std::string s = canonical_text(text);
  if (s.empty()) throw Error(ErrorCode::kInvalidInfix, "empty expression");
  return parse_prefix(InfixParser(std::move(s), sigma).parse(), sigma);
}

Soire parse_regex(std::string_view text, const Alphabet& sigma) {
  std::string s = canonical_text(text);
  if (s.find_first_of("()") == std::string::npos && validate_prefix(s))
    return parse_prefix(s, sigma);
  return parse_infix(s, sigma);
}

std::string to_prefix(const Soire& r) { return r.to_prefix(); }

std::string to_infix(std::string_view prefix) {
  std::string s = canonical_text(prefix);
  if (!validate_prefix(s)) throw Error(ErrorCode::kInvalidPrefix, "'" + s + "'");
  std::vector<std::string> stack;
  for (std::size_t i = s.size(); i-- > 0;) {
    auto op = op_from_glyph(s[i]);
    if (!op) {
      stack.emplace_back(1, s[i]);
    } else if (is_unary(*op)) {
      stack.back() = "(" + stack.back() + s[i] + ")";
    } else {
      // The element on top is the left operand: it was pushed last, being
      // the nearer one to the operator in preorder.
      std::string left = std::move(stack.back());
      stack.pop_back();
      std::string right = std::move(stack.back());
      stack.pop_back();
      stack.push_back("(" + left + s[i] + right + ")");
    }
  }
  return stack.back();
}

const SymbolSet& alpha(const Soire& r, std::size_t t) { return r.alpha(t); }

std::string filter(std::string_view s, const SymbolSet& v) {
  std::string out;
  for (char c : s)
    if (v.contains(c)) out.push_back(c);
  return out;
}

namespace {

void normalize_into(const Soire& r, std::size_t t, std::string& out) {
  Op op = r.op(t);
  if (op == Op::kSymbol) {
    out.push_back(r.vertex(t).symbol);
    return;
  }
  if (is_unary(op)) {
    // A chain of unary operators is ? when all are ?, + when all are +,
    // and * otherwise.
    bool all_optional = true, all_plus = true;
    std::size_t body = t;
    while (is_unary(r.op(body))) {
      all_optional = all_optional && r.op(body) == Op::kOptional;
      all_plus = all_plus && r.op(body) == Op::kPlus;
      ++body;
    }
    out.push_back(all_optional ? '?' : all_plus ? '+' : '*');
    normalize_into(r, body, out);
    return;
  }
  out.push_back(glyph(op));
  normalize_into(r, t + 1, out);
  normalize_into(r, static_cast<std::size_t>(r.right(t)), out);
}

}  // namespace

Soire normalize_unary(const Soire& r) {
  std::string out;
  normalize_into(r, 0, out);
  return parse_prefix(out, r.alphabet());
}

Alphabet alphabet_of(std::string_view text) {
  std::string symbols;
  for (char c : canonical_text(text))
    if (!op_from_glyph(c) && c != '(' && c != ')' && symbols.find(c) == std::string::npos)
      symbols.push_back(c);
  std::sort(symbols.begin(), symbols.end());
  return Alphabet(symbols);
}

}  // namespace soire
