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

// Single-occurrence regular expressions with interleaving: syntax trees,
// prefix and infix notations, alphabets and the filter projection.
//
// Vertices are numbered 0-based in preorder. The left child of an inner
// vertex t is always t + 1; a binary vertex additionally stores the index of
// its right child.

#ifndef SOIRE_SOIRE_HPP_
#define SOIRE_SOIRE_HPP_

#include <bitset>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "soire/error.hpp"

namespace soire {

enum class Op : std::uint8_t {
  kSymbol,
  kOptional,    // ?
  kStar,        // *
  kPlus,        // +
  kConcat,      // .
  kInterleave,  // &
  kUnion,       // |
};

inline constexpr bool is_unary(Op op) {
  return op == Op::kOptional || op == Op::kStar || op == Op::kPlus;
}
inline constexpr bool is_binary(Op op) {
  return op == Op::kConcat || op == Op::kInterleave || op == Op::kUnion;
}

// Serialized glyph of an operator ('.' for concatenation).
char glyph(Op op);

// Operator denoted by `c`, if any. Accepts '.' for concatenation.
std::optional<Op> op_from_glyph(char c);

// A set of ASCII characters.
class SymbolSet {
 public:
  SymbolSet() = default;
  explicit SymbolSet(std::string_view symbols);

  bool contains(char c) const {
    auto u = static_cast<unsigned char>(c);
    return u < 128 && bits_.test(u);
  }
  void insert(char c);
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  // Members in ascending character order.
  std::string str() const;

  SymbolSet operator|(const SymbolSet& o) const { return SymbolSet(bits_ | o.bits_); }
  SymbolSet operator&(const SymbolSet& o) const { return SymbolSet(bits_ & o.bits_); }
  bool operator==(const SymbolSet& o) const = default;

 private:
  explicit SymbolSet(std::bitset<128> bits) : bits_(bits) {}
  std::bitset<128> bits_;
};

// Σ: an ordered set of distinct single-character symbols. The order fixes
// the column order of encodings and the symbol indices used by the network.
class Alphabet {
 public:
  static constexpr std::size_t kMaxSymbols = 64;

  // Throws kInvalidAlphabet on empty input, duplicates, whitespace,
  // non-ASCII characters or operator glyphs.
  explicit Alphabet(std::string_view symbols);

  // The first n lowercase letters.
  static Alphabet letters(std::size_t n);

  std::size_t size() const { return symbols_.size(); }
  char symbol(std::size_t i) const { return symbols_[i]; }
  const std::string& str() const { return symbols_; }
  SymbolSet set() const { return set_; }
  bool contains(char c) const { return set_.contains(c); }

  // Index of `c` in the alphabet order, or -1.
  int index_of(char c) const {
    auto u = static_cast<unsigned char>(c);
    return u < 128 ? index_[u] : -1;
  }

  bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }

 private:
  std::string symbols_;
  SymbolSet set_;
  std::int8_t index_[128];
};

class Soire {
 public:
  struct Vertex {
    Op op = Op::kSymbol;
    char symbol = 0;  // only for kSymbol
    int right = -1;   // right child of a binary vertex
    int end = 0;      // one past the last vertex of this subtree
  };

  std::size_t size() const { return vertices_.size(); }
  const Vertex& vertex(std::size_t t) const { return vertices_[t]; }
  Op op(std::size_t t) const { return vertices_[t].op; }
  int right(std::size_t t) const { return vertices_[t].right; }
  const Alphabet& alphabet() const { return alphabet_; }

  // Symbols of the subtree rooted at t. Throws kIndexOutOfRange.
  const SymbolSet& alpha(std::size_t t) const;
  const SymbolSet& alpha() const { return alpha_[0]; }

  std::string to_prefix() const;
  std::string to_infix() const;

  bool operator==(const Soire& o) const { return to_prefix() == o.to_prefix(); }

 private:
  friend Soire parse_prefix(std::string_view text, const Alphabet& sigma);
  Soire(std::vector<Vertex> vertices, Alphabet alphabet);

  std::vector<Vertex> vertices_;
  std::vector<SymbolSet> alpha_;
  Alphabet alphabet_;
};

// Builds the syntax tree whose preorder traversal is `text`. Whitespace is
// ignored and the UTF-8 middle dot is accepted for concatenation.
// Throws kUnknownCharacter, kInvalidPrefix or kDuplicateSymbol.
Soire parse_prefix(std::string_view text, const Alphabet& sigma);

// Parses the usual infix syntax: postfix ?,*,+ bind tightest, then
// concatenation (explicit '.' or juxtaposition), then '&', then '|'. All
// binary operators associate to the left.
Soire parse_infix(std::string_view text, const Alphabet& sigma);

// Accepts either notation. Text containing parentheses, or failing the
// prefix validity check, is read as infix.
Soire parse_regex(std::string_view text, const Alphabet& sigma);

std::string to_prefix(const Soire& r);

// Fully parenthesized infix form of a prefix notation, built with a
// back-to-front stack. Throws kInvalidPrefix.
std::string to_infix(std::string_view prefix);

const SymbolSet& alpha(const Soire& r, std::size_t t);

// Subsequence of s keeping exactly the characters in v.
std::string filter(std::string_view s, const SymbolSet& v);

inline std::size_t size(const Soire& r) { return r.size(); }

// Running-sum validity of a prefix notation: scanning any suffix, symbols
// minus binary operators is at least one, and exactly one overall.
bool validate_prefix(std::string_view text);

// Collapses chains of unary operators ((r?)? = r?, (r+)* = r*, ...) into
// one. The result matches the same language and has no unary vertex whose
// child is unary.
Soire normalize_unary(const Soire& r);

// The distinct symbols of a regex text in either notation, sorted.
Alphabet alphabet_of(std::string_view text);

// Removes whitespace and rewrites the UTF-8 middle dot to '.'.
std::string canonical_text(std::string_view text);

}  // namespace soire

#endif  // SOIRE_SOIRE_HPP_
