#include "bsfe/parse.hpp"

#include <algorithm>
#include <cctype>

#include "bsfe/error.hpp"

namespace bsfe {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  std::unique_ptr<ExprNode> parseAll() {
    auto node = parseSum();
    skipSpace();
    if (pos_ < text_.size()) fail(std::string("unexpected character '") + text_[pos_] + "'");
    return node;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  bool peek(char c) {
    skipSpace();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::unique_ptr<ExprNode> make(ExprNode::Kind k) {
    auto n = std::make_unique<ExprNode>();
    n->kind = k;
    n->line = line_;
    n->column = col_;
    return n;
  }

  std::string readDigits() {
    std::string out;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      out += text_[pos_];
      advance();
    }
    return out;
  }

  std::unique_ptr<ExprNode> parseSum() {
    auto lhs = parseProduct();
    while (true) {
      if (peek('+') || peek('-')) {
        auto node = make(text_[pos_] == '+' ? ExprNode::Kind::Add : ExprNode::Kind::Sub);
        advance();
        node->children.push_back(std::move(lhs));
        node->children.push_back(parseProduct());
        lhs = std::move(node);
      } else {
        return lhs;
      }
    }
  }

  std::unique_ptr<ExprNode> parseProduct() {
    auto lhs = parseUnary();
    while (peek('*')) {
      auto node = make(ExprNode::Kind::Mul);
      advance();
      node->children.push_back(std::move(lhs));
      node->children.push_back(parseUnary());
      lhs = std::move(node);
    }
    return lhs;
  }

  std::unique_ptr<ExprNode> parseUnary() {
    if (peek('-')) {
      auto node = make(ExprNode::Kind::Neg);
      advance();
      node->children.push_back(parseUnary());
      return node;
    }
    if (peek('+')) {
      advance();
      return parseUnary();
    }
    return parsePower();
  }

  std::unique_ptr<ExprNode> parsePower() {
    auto base = parseAtom();
    if (peek('^')) {
      auto node = make(ExprNode::Kind::Pow);
      advance();
      skipSpace();
      std::string digits = readDigits();
      if (digits.empty()) fail("expected a non-negative integer exponent after '^'");
      if (digits.size() > 6) fail("exponent too large");
      node->exponent = std::stoi(digits);
      node->children.push_back(std::move(base));
      return node;
    }
    return base;
  }

  std::unique_ptr<ExprNode> parseAtom() {
    skipSpace();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      advance();
      auto inner = parseSum();
      if (!peek(')')) fail("expected ')'");
      advance();
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto node = make(ExprNode::Kind::Number);
      std::string num = readDigits();
      std::string den = "1";
      std::size_t save = pos_;
      int saveLine = line_, saveCol = col_;
      skipSpace();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        advance();
        skipSpace();
        den = readDigits();
        if (den.empty()) fail("expected a denominator after '/'");
        if (Integer(den) == 0) fail("zero denominator");
      } else {
        pos_ = save;
        line_ = saveLine;
        col_ = saveCol;
      }
      node->value = Rational(Integer(num), Integer(den));
      node->value.canonicalize();
      return node;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      auto node = make(ExprNode::Kind::Symbol);
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        node->name += text_[pos_];
        advance();
      }
      return node;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

MultiPoly evalPoly(const ExprNode& n, const std::vector<std::string>& vars) {
  switch (n.kind) {
    case ExprNode::Kind::Number:
      return MultiPoly::constant(vars, n.value);
    case ExprNode::Kind::Symbol: {
      auto it = std::find(vars.begin(), vars.end(), n.name);
      if (it == vars.end()) throw ParseError("unknown variable '" + n.name + "'", n.line, n.column);
      return MultiPoly::variable(vars, n.name);
    }
    case ExprNode::Kind::Add:
      return evalPoly(*n.children[0], vars) + evalPoly(*n.children[1], vars);
    case ExprNode::Kind::Sub:
      return evalPoly(*n.children[0], vars) - evalPoly(*n.children[1], vars);
    case ExprNode::Kind::Mul:
      return evalPoly(*n.children[0], vars) * evalPoly(*n.children[1], vars);
    case ExprNode::Kind::Neg:
      return -evalPoly(*n.children[0], vars);
    case ExprNode::Kind::Pow:
      return evalPoly(*n.children[0], vars).pow(static_cast<unsigned>(n.exponent));
  }
  return MultiPoly(vars);
}

}  // namespace

std::unique_ptr<ExprNode> parseExpression(const std::string& text) { return Parser(text).parseAll(); }

MultiPoly parsePolynomial(const std::string& text, const std::vector<std::string>& variables) {
  return evalPoly(*parseExpression(text), variables);
}

}  // namespace bsfe
