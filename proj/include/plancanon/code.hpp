#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plancanon/error.hpp"

namespace plancanon {

// Canonical token string. Structural tokens are negative so that the plain
// integer order of tokens is LPAREN < RPAREN < COMMA < 0 < 1 < ...
class Code {
 public:
  using Token = std::int32_t;
  static constexpr Token kOpen = -3;
  static constexpr Token kClose = -2;
  static constexpr Token kComma = -1;

  Code() = default;
  explicit Code(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const std::vector<Token>& tokens() const { return tokens_; }
  std::vector<Token>& tokens() { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }

  Code& open() { tokens_.push_back(kOpen); return *this; }
  Code& close() { tokens_.push_back(kClose); return *this; }
  Code& comma() { tokens_.push_back(kComma); return *this; }
  Code& integer(std::int64_t value) {
    if (value < 0 || value > INT32_MAX) throw ArgumentError("code integers must be in 0..2^31-1");
    tokens_.push_back(static_cast<Token>(value));
    return *this;
  }
  Code& append(const Code& other) {
    tokens_.insert(tokens_.end(), other.tokens_.begin(), other.tokens_.end());
    return *this;
  }

  // Parentheses balance and never dip below zero.
  bool balanced() const {
    int depth = 0;
    for (Token t : tokens_) {
      if (t == kOpen) ++depth;
      if (t == kClose && --depth < 0) return false;
    }
    return depth == 0;
  }

  std::string to_string() const {
    std::string out;
    out.reserve(tokens_.size() * 2);
    for (Token t : tokens_) {
      switch (t) {
        case kOpen: out.push_back('('); break;
        case kClose: out.push_back(')'); break;
        case kComma: out.push_back(','); break;
        default: out += std::to_string(t);
      }
    }
    return out;
  }

  // Inverse of to_string. Adjacent integers must be separated by a
  // structural token.
  static Code parse(std::string_view text) {
    Code c;
    for (std::size_t i = 0; i < text.size();) {
      const char ch = text[i];
      if (ch == '(') { c.open(); ++i; continue; }
      if (ch == ')') { c.close(); ++i; continue; }
      if (ch == ',') { c.comma(); ++i; continue; }
      if (ch < '0' || ch > '9') throw ParseError("unexpected character in code", i);
      std::int64_t value = 0;
      const std::size_t start = i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        value = value * 10 + (text[i] - '0');
        if (value > INT32_MAX) throw ParseError("code integer out of range", start);
        ++i;
      }
      c.integer(value);
    }
    return c;
  }

  friend bool operator==(const Code&, const Code&) = default;
  friend std::strong_ordering operator<=>(const Code& a, const Code& b) {
    return std::lexicographical_compare_three_way(a.tokens_.begin(), a.tokens_.end(), b.tokens_.begin(),
                                                  b.tokens_.end());
  }

 private:
  std::vector<Token> tokens_;
};

// Code of a single node with integer color c: "(c)".
inline Code leaf_code(std::int64_t color) {
  Code c;
  c.open().integer(color).close();
  return c;
}

// "(" items joined by "," ")".
inline Code wrap_list(const std::vector<Code>& items) {
  Code c;
  c.open();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) c.comma();
    c.append(items[i]);
  }
  c.close();
  return c;
}

// Node id -> Code, total on the node set a coder looks at.
using LabelMap = std::map<int, Code>;

}  // namespace plancanon
