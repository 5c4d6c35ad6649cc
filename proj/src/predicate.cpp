/*
 * Copyright 2026 the adalloc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "adalloc/predicate.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace adalloc {
namespace {

enum class TokKind {
  kIdent,
  kNumber,
  kString,
  kOp,      // one of < <= > >= == !=
  kLParen,
  kRParen,
  kLBrace,
  kRBrace,
  kComma,
  kAnd,
  kOr,
  kNot,
  kTrue,
  kIn,
  kEnd,
};

struct Token {
  TokKind kind;
  std::string text;
  std::size_t pos;
  double number = 0.0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= src_.size()) return {TokKind::kEnd, "", start};
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      std::string word = src_.substr(start, pos_ - start);
      if (word == "AND") return {TokKind::kAnd, word, start};
      if (word == "OR") return {TokKind::kOr, word, start};
      if (word == "NOT") return {TokKind::kNot, word, start};
      if (word == "TRUE") return {TokKind::kTrue, word, start};
      if (word == "IN") return {TokKind::kIn, word, start};
      return {TokKind::kIdent, word, start};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      ++pos_;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
        ++pos_;
      std::string text = src_.substr(start, pos_ - start);
      double value = 0.0;
      auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || p != text.data() + text.size())
        throw PredicateParseError(start, "malformed number '" + text + "'");
      Token t{TokKind::kNumber, text, start};
      t.number = value;
      return t;
    }
    if (c == '"') {
      ++pos_;
      std::string value;
      while (pos_ < src_.size() && src_[pos_] != '"') value.push_back(src_[pos_++]);
      if (pos_ >= src_.size())
        throw PredicateParseError(start, "unterminated string literal");
      ++pos_;
      return {TokKind::kString, value, start};
    }
    switch (c) {
      case '(': ++pos_; return {TokKind::kLParen, "(", start};
      case ')': ++pos_; return {TokKind::kRParen, ")", start};
      case '{': ++pos_; return {TokKind::kLBrace, "{", start};
      case '}': ++pos_; return {TokKind::kRBrace, "}", start};
      case ',': ++pos_; return {TokKind::kComma, ",", start};
      case '<':
      case '>':
      case '=':
      case '!': {
        std::string op(1, c);
        ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '=') {
          op.push_back('=');
          ++pos_;
        }
        if (op == "=" )
          throw PredicateParseError(start, "expected '==' not '='");
        if (op == "!")
          throw PredicateParseError(start, "expected '!=' not '!'");
        return {TokKind::kOp, op, start};
      }
      default:
        throw PredicateParseError(start, std::string("unexpected character '") + c + "'");
    }
  }

 private:
  const std::string& src_;
  std::size_t pos_ = 0;
};

CmpOp cmp_op_from(const std::string& text, std::size_t pos) {
  if (text == "<") return CmpOp::kLt;
  if (text == "<=") return CmpOp::kLe;
  if (text == ">") return CmpOp::kGt;
  if (text == ">=") return CmpOp::kGe;
  if (text == "==") return CmpOp::kEq;
  if (text == "!=") return CmpOp::kNe;
  throw PredicateParseError(pos, "unknown operator '" + text + "'");
}

const char* cmp_op_text(CmpOp op) {
  switch (op) {
    case CmpOp::kLt: return "<";
    case CmpOp::kLe: return "<=";
    case CmpOp::kGt: return ">";
    case CmpOp::kGe: return ">=";
    case CmpOp::kEq: return "==";
    case CmpOp::kNe: return "!=";
  }
  return "?";
}

class Parser {
 public:
  Parser(const std::string& src, const KpiSchema& schema, StringPool& pool)
      : lexer_(src), schema_(schema), pool_(pool) {
    advance();
  }

  PredicatePtr parse() {
    PredicatePtr p = parse_or();
    expect(TokKind::kEnd, "end of input");
    return p;
  }

 private:
  void advance() { tok_ = lexer_.next(); }

  void expect(TokKind kind, const char* what) {
    if (tok_.kind != kind)
      throw PredicateParseError(tok_.pos, std::string("expected ") + what + ", got '" +
                                              (tok_.kind == TokKind::kEnd ? "<end>" : tok_.text) +
                                              "'");
  }

  PredicatePtr parse_or() {
    PredicatePtr left = parse_and();
    while (tok_.kind == TokKind::kOr) {
      advance();
      PredicatePtr right = parse_and();
      auto node = std::make_shared<PredicateNode>();
      node->kind = PredicateNode::Kind::kOr;
      node->children = {left, right};
      left = node;
    }
    return left;
  }

  PredicatePtr parse_and() {
    PredicatePtr left = parse_factor();
    while (tok_.kind == TokKind::kAnd) {
      advance();
      PredicatePtr right = parse_factor();
      auto node = std::make_shared<PredicateNode>();
      node->kind = PredicateNode::Kind::kAnd;
      node->children = {left, right};
      left = node;
    }
    return left;
  }

  PredicatePtr parse_factor() {
    if (tok_.kind == TokKind::kNot) {
      advance();
      auto node = std::make_shared<PredicateNode>();
      node->kind = PredicateNode::Kind::kNot;
      node->children = {parse_factor()};
      return node;
    }
    if (tok_.kind == TokKind::kLParen) {
      advance();
      PredicatePtr inner = parse_or();
      expect(TokKind::kRParen, "')'");
      advance();
      return inner;
    }
    if (tok_.kind == TokKind::kTrue) {
      advance();
      auto node = std::make_shared<PredicateNode>();
      node->kind = PredicateNode::Kind::kTrue;
      return node;
    }
    expect(TokKind::kIdent, "attribute name, TRUE, NOT or '('");
    Token ident = tok_;
    int attr = schema_.index_of(ident.text);
    if (attr < 0)
      throw PredicateParseError(ident.pos, "unknown attribute '" + ident.text + "'");
    KpiKind kind = schema_.attributes[attr].kind;
    advance();

    if (tok_.kind == TokKind::kIn) {
      advance();
      expect(TokKind::kLBrace, "'{'");
      advance();
      auto node = std::make_shared<PredicateNode>();
      node->kind = PredicateNode::Kind::kIn;
      node->attr = attr;
      node->attr_name = ident.text;
      node->attr_kind = kind;
      for (;;) {
        read_literal_into(*node, kind);
        if (tok_.kind == TokKind::kComma) {
          advance();
          continue;
        }
        break;
      }
      expect(TokKind::kRBrace, "'}'");
      advance();
      return node;
    }

    expect(TokKind::kOp, "comparison operator or IN");
    CmpOp op = cmp_op_from(tok_.text, tok_.pos);
    std::size_t op_pos = tok_.pos;
    advance();
    if (kind == KpiKind::kCategorical && op != CmpOp::kEq && op != CmpOp::kNe)
      throw PredicateParseError(op_pos, "ordering operator on categorical attribute '" +
                                            ident.text + "'");
    auto node = std::make_shared<PredicateNode>();
    node->kind = PredicateNode::Kind::kCmp;
    node->attr = attr;
    node->attr_name = ident.text;
    node->attr_kind = kind;
    node->op = op;
    if (kind == KpiKind::kNumeric) {
      expect(TokKind::kNumber, "numeric literal");
      node->num_lit = tok_.number;
      node->lit_text = tok_.text;
    } else {
      expect(TokKind::kString, "string literal");
      node->cat_lit = pool_.intern(tok_.text);
      node->lit_text = tok_.text;
    }
    advance();
    return node;
  }

  void read_literal_into(PredicateNode& node, KpiKind kind) {
    if (kind == KpiKind::kNumeric) {
      expect(TokKind::kNumber, "numeric literal");
      node.in_nums.push_back(tok_.number);
    } else {
      expect(TokKind::kString, "string literal");
      node.in_cats.push_back(pool_.intern(tok_.text));
    }
    node.in_texts.push_back(tok_.text);
    advance();
  }

  Lexer lexer_;
  Token tok_{TokKind::kEnd, "", 0};
  const KpiSchema& schema_;
  StringPool& pool_;
};

int precedence(PredicateNode::Kind kind) {
  switch (kind) {
    case PredicateNode::Kind::kOr: return 1;
    case PredicateNode::Kind::kAnd: return 2;
    case PredicateNode::Kind::kNot: return 3;
    default: return 4;
  }
}

void print_node(const PredicateNode& node, int parent_prec, std::string& out) {
  int prec = precedence(node.kind);
  bool need_parens = prec < parent_prec;
  if (need_parens) out.push_back('(');
  switch (node.kind) {
    case PredicateNode::Kind::kTrue:
      out += "TRUE";
      break;
    case PredicateNode::Kind::kCmp:
      out += node.attr_name;
      out.push_back(' ');
      out += cmp_op_text(node.op);
      out.push_back(' ');
      if (node.attr_kind == KpiKind::kNumeric) {
        out += node.lit_text;
      } else {
        out.push_back('"');
        out += node.lit_text;
        out.push_back('"');
      }
      break;
    case PredicateNode::Kind::kIn:
      out += node.attr_name;
      out += " IN {";
      for (std::size_t i = 0; i < node.in_texts.size(); ++i) {
        if (i) out += ", ";
        if (node.attr_kind == KpiKind::kNumeric) {
          out += node.in_texts[i];
        } else {
          out.push_back('"');
          out += node.in_texts[i];
          out.push_back('"');
        }
      }
      out.push_back('}');
      break;
    case PredicateNode::Kind::kAnd:
      print_node(*node.children[0], prec, out);
      out += " AND ";
      print_node(*node.children[1], prec + 1, out);
      break;
    case PredicateNode::Kind::kOr:
      print_node(*node.children[0], prec, out);
      out += " OR ";
      print_node(*node.children[1], prec + 1, out);
      break;
    case PredicateNode::Kind::kNot:
      out += "NOT ";
      print_node(*node.children[0], prec, out);
      break;
  }
  if (need_parens) out.push_back(')');
}

}  // namespace

PredicatePtr parse_predicate(const std::string& text, const KpiSchema& schema,
                             StringPool& pool) {
  if (text.empty()) throw PredicateParseError(0, "empty predicate");
  Parser parser(text, schema, pool);
  return parser.parse();
}

bool evaluate(const PredicateNode& predicate, const KpiVector& kpis) {
  switch (predicate.kind) {
    case PredicateNode::Kind::kTrue:
      return true;
    case PredicateNode::Kind::kCmp: {
      if (predicate.attr_kind == KpiKind::kNumeric) {
        double v = kpis.num(predicate.attr);
        double lit = predicate.num_lit;
        switch (predicate.op) {
          case CmpOp::kLt: return v < lit;
          case CmpOp::kLe: return v <= lit;
          case CmpOp::kGt: return v > lit;
          case CmpOp::kGe: return v >= lit;
          case CmpOp::kEq: return v == lit;
          case CmpOp::kNe: return v != lit;
        }
        return false;
      }
      std::int32_t v = kpis.cat(predicate.attr);
      return predicate.op == CmpOp::kEq ? v == predicate.cat_lit : v != predicate.cat_lit;
    }
    case PredicateNode::Kind::kIn: {
      if (predicate.attr_kind == KpiKind::kNumeric) {
        double v = kpis.num(predicate.attr);
        return std::find(predicate.in_nums.begin(), predicate.in_nums.end(), v) !=
               predicate.in_nums.end();
      }
      std::int32_t v = kpis.cat(predicate.attr);
      return std::find(predicate.in_cats.begin(), predicate.in_cats.end(), v) !=
             predicate.in_cats.end();
    }
    case PredicateNode::Kind::kAnd:
      return evaluate(*predicate.children[0], kpis) && evaluate(*predicate.children[1], kpis);
    case PredicateNode::Kind::kOr:
      return evaluate(*predicate.children[0], kpis) || evaluate(*predicate.children[1], kpis);
    case PredicateNode::Kind::kNot:
      return !evaluate(*predicate.children[0], kpis);
  }
  return false;
}

std::string print_predicate(const PredicateNode& predicate) {
  std::string out;
  print_node(predicate, 0, out);
  return out;
}

}  // namespace adalloc
