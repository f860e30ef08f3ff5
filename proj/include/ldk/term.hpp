// Copyright 2026 The ldk Authors
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

// Lattice terms and inequalities.
//
// Concrete syntax: variables `x1`, `x2`, ...; join `\/`; meet `/\`;
// parentheses. Meet binds tighter than join and both associate to the left.
// The printer always parenthesizes compound operands, so printing and
// re-parsing reproduces the tree exactly.

#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ldk {

using VariableIndex = std::uint32_t;

class Term {
 public:
  enum class Kind { kVariable, kJoin, kMeet };

  static Term variable(VariableIndex index);
  static Term join(Term left, Term right);
  static Term meet(Term left, Term right);

  Kind kind() const;
  bool is_variable() const { return kind() == Kind::kVariable; }
  // Only meaningful for variables.
  VariableIndex index() const;
  // Only meaningful for joins and meets.
  const Term& left() const;
  const Term& right() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Kind kind;
  VariableIndex index;
  Term left;
  Term right;
};

inline Term Term::variable(VariableIndex index) {
  if (index == 0) throw std::invalid_argument("variable indices start at 1");
  return Term(std::make_shared<const Node>(
      Node{Kind::kVariable, index, Term(nullptr), Term(nullptr)}));
}

inline Term Term::join(Term left, Term right) {
  return Term(std::make_shared<const Node>(
      Node{Kind::kJoin, 0, std::move(left), std::move(right)}));
}

inline Term Term::meet(Term left, Term right) {
  return Term(std::make_shared<const Node>(
      Node{Kind::kMeet, 0, std::move(left), std::move(right)}));
}

inline Term::Kind Term::kind() const { return node_->kind; }
inline VariableIndex Term::index() const { return node_->index; }
inline const Term& Term::left() const { return node_->left; }
inline const Term& Term::right() const { return node_->right; }

inline bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is_variable()) return a.index() == b.index();
  return a.left() == b.left() && a.right() == b.right();
}

// `lhs <= rhs`, universally quantified over the variables.
struct Identity {
  Term lhs;
  Term rhs;

  friend bool operator==(const Identity&, const Identity&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " +
                           std::to_string(position)),
        position_(position) {}

  // Byte offset into the input.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace internal {

enum class TokenKind { kVariable, kJoin, kMeet, kLParen, kRParen, kLe, kEq, kEnd };

struct Token {
  TokenKind kind;
  std::size_t position;
  VariableIndex index = 0;
};

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (c == 'x') {
      ++i;
      std::uint64_t value = 0;
      std::size_t digits = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (value > 0xFFFFFFFFu) throw ParseError("variable index too large", start);
        ++i;
        ++digits;
      }
      if (digits == 0) throw ParseError("expected digits after 'x'", start);
      if (value == 0) throw ParseError("variable index must be positive", start);
      tokens.push_back({TokenKind::kVariable, start, static_cast<VariableIndex>(value)});
    } else if (text.substr(i, 2) == "\\/") {
      tokens.push_back({TokenKind::kJoin, start});
      i += 2;
    } else if (text.substr(i, 2) == "/\\") {
      tokens.push_back({TokenKind::kMeet, start});
      i += 2;
    } else if (text.substr(i, 2) == "<=") {
      tokens.push_back({TokenKind::kLe, start});
      i += 2;
    } else if (c == '=') {
      tokens.push_back({TokenKind::kEq, start});
      ++i;
    } else if (c == '(') {
      tokens.push_back({TokenKind::kLParen, start});
      ++i;
    } else if (c == ')') {
      tokens.push_back({TokenKind::kRParen, start});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }
  tokens.push_back({TokenKind::kEnd, text.size()});
  return tokens;
}

class TermParser {
 public:
  explicit TermParser(std::string_view text) : tokens_(tokenize(text)) {}

  Term parse_join() {
    Term result = parse_meet();
    while (peek().kind == TokenKind::kJoin) {
      ++pos_;
      result = Term::join(std::move(result), parse_meet());
    }
    return result;
  }

  const Token& peek() const { return tokens_[pos_]; }
  void advance() { ++pos_; }

 private:
  Term parse_meet() {
    Term result = parse_atom();
    while (peek().kind == TokenKind::kMeet) {
      ++pos_;
      result = Term::meet(std::move(result), parse_atom());
    }
    return result;
  }

  Term parse_atom() {
    const Token& token = peek();
    switch (token.kind) {
      case TokenKind::kVariable:
        ++pos_;
        return Term::variable(token.index);
      case TokenKind::kLParen: {
        ++pos_;
        Term inner = parse_join();
        if (peek().kind != TokenKind::kRParen) {
          throw ParseError("expected ')'", peek().position);
        }
        ++pos_;
        return inner;
      }
      case TokenKind::kEnd:
        throw ParseError("expected a term at end of input", token.position);
      default:
        throw ParseError("expected a variable or '('", token.position);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

inline void expect_end(const TermParser& parser) {
  const Token& token = parser.peek();
  if (token.kind == TokenKind::kRParen) {
    throw ParseError("unmatched ')'", token.position);
  }
  if (token.kind != TokenKind::kEnd) {
    throw ParseError("unexpected trailing input", token.position);
  }
}

inline void print(const Term& t, std::string& out) {
  if (t.is_variable()) {
    out += 'x';
    out += std::to_string(t.index());
    return;
  }
  auto operand = [&out](const Term& child) {
    if (child.is_variable()) {
      print(child, out);
    } else {
      out += '(';
      print(child, out);
      out += ')';
    }
  };
  operand(t.left());
  out += t.kind() == Term::Kind::kJoin ? " \\/ " : " /\\ ";
  operand(t.right());
}

}  // namespace internal

inline Term parse_term(std::string_view text) {
  internal::TermParser parser(text);
  Term t = parser.parse_join();
  internal::expect_end(parser);
  return t;
}

// `p <= q` gives one inequality; `p = q` gives p <= q and q <= p.
inline std::vector<Identity> parse_identity(std::string_view text) {
  using internal::TokenKind;
  internal::TermParser parser(text);
  Term lhs = parser.parse_join();
  const internal::Token relation = parser.peek();
  if (relation.kind == TokenKind::kEnd) {
    throw ParseError("missing relation symbol '<=' or '='", relation.position);
  }
  if (relation.kind != TokenKind::kLe && relation.kind != TokenKind::kEq) {
    if (relation.kind == TokenKind::kRParen) {
      throw ParseError("unmatched ')'", relation.position);
    }
    throw ParseError("expected '<=' or '='", relation.position);
  }
  parser.advance();
  Term rhs = parser.parse_join();
  internal::expect_end(parser);
  if (relation.kind == TokenKind::kLe) return {Identity{lhs, rhs}};
  return {Identity{lhs, rhs}, Identity{rhs, lhs}};
}

inline std::string to_string(const Term& t) {
  std::string out;
  internal::print(t, out);
  return out;
}

inline std::string to_string(const Identity& id) {
  return to_string(id.lhs) + " <= " + to_string(id.rhs);
}

// Swaps join and meet at every node.
inline Term dual_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kVariable:
      return t;
    case Term::Kind::kJoin:
      return Term::meet(dual_term(t.left()), dual_term(t.right()));
    case Term::Kind::kMeet:
      return Term::join(dual_term(t.left()), dual_term(t.right()));
  }
  return t;
}

// The dual of p <= q is q* <= p*.
inline Identity dual_identity(const Identity& id) {
  return Identity{dual_term(id.rhs), dual_term(id.lhs)};
}

// Variable indices in left-to-right leaf order, with repetitions.
inline void collect_leaves(const Term& t, std::vector<VariableIndex>& out) {
  if (t.is_variable()) {
    out.push_back(t.index());
    return;
  }
  collect_leaves(t.left(), out);
  collect_leaves(t.right(), out);
}

inline std::vector<VariableIndex> leaves(const Term& t) {
  std::vector<VariableIndex> out;
  collect_leaves(t, out);
  return out;
}

inline std::set<VariableIndex> variables(const Term& t) {
  const auto all = leaves(t);
  return {all.begin(), all.end()};
}

inline std::set<VariableIndex> variables(const Identity& id) {
  auto vars = variables(id.lhs);
  vars.merge(variables(id.rhs));
  return vars;
}

struct OccurrenceCounts {
  std::size_t lhs = 0;
  std::size_t rhs = 0;

  friend bool operator==(const OccurrenceCounts&, const OccurrenceCounts&) = default;
};

using OccurrenceProfile = std::map<VariableIndex, OccurrenceCounts>;

inline OccurrenceProfile occurrences(const Identity& id) {
  OccurrenceProfile profile;
  for (VariableIndex v : leaves(id.lhs)) ++profile[v].lhs;
  for (VariableIndex v : leaves(id.rhs)) ++profile[v].rhs;
  return profile;
}

inline bool is_one_balanced(const Identity& id) {
  for (const auto& [var, counts] : occurrences(id)) {
    if (counts.lhs != 1 || counts.rhs != 1) return false;
  }
  return true;
}

inline bool is_repetition_free(const Term& t) {
  const auto all = leaves(t);
  return std::set<VariableIndex>(all.begin(), all.end()).size() == all.size();
}

inline std::size_t leaf_count(const Term& t) {
  return t.is_variable() ? 1 : leaf_count(t.left()) + leaf_count(t.right());
}

}  // namespace ldk
