#include "gentor/word.hpp"

#include <cctype>

namespace gentor::word {

WordExpr WordExpr::ident(std::string n) {
  WordExpr e;
  e.kind = Kind::identifier;
  e.name = std::move(n);
  return e;
}

WordExpr WordExpr::one() { return {}; }

namespace {

WordExpr binary(WordExpr::Kind kind, WordExpr a, WordExpr b) {
  WordExpr e;
  e.kind = kind;
  e.children.push_back(std::move(a));
  e.children.push_back(std::move(b));
  return e;
}

}  // namespace

WordExpr WordExpr::product(WordExpr a, WordExpr b) { return binary(Kind::product, std::move(a), std::move(b)); }
WordExpr WordExpr::conjugate(WordExpr a, WordExpr b) { return binary(Kind::conjugate, std::move(a), std::move(b)); }
WordExpr WordExpr::commutator(WordExpr a, WordExpr b) { return binary(Kind::commutator, std::move(a), std::move(b)); }

WordExpr WordExpr::power(WordExpr a, Integer k) {
  WordExpr e;
  e.kind = Kind::power;
  e.exponent = std::move(k);
  e.children.push_back(std::move(a));
  return e;
}

SyntaxError::SyntaxError(const std::string& what, std::size_t position)
    : InvalidInput("syntax error at position " + std::to_string(position) + ": " + what), position_(position) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  WordExpr parse() {
    WordExpr e = expr();
    skip();
    if (i_ != s_.size()) throw SyntaxError(std::string("unexpected '") + s_[i_] + "'", i_);
    return e;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (i_ >= s_.size()) throw SyntaxError(std::string("expected '") + c + "' before end of input", i_);
      throw SyntaxError(std::string("expected '") + c + "', found '" + s_[i_] + "'", i_);
    }
  }

  WordExpr expr() {
    WordExpr e = power();
    while (accept('*')) e = WordExpr::product(std::move(e), power());
    return e;
  }

  WordExpr power() {
    WordExpr e = atom();
    while (accept('^')) {
      skip();
      if (i_ < s_.size() && (s_[i_] == '-' || std::isdigit(static_cast<unsigned char>(s_[i_]))))
        e = WordExpr::power(std::move(e), integer());
      else
        e = WordExpr::conjugate(std::move(e), atom());
    }
    return e;
  }

  Integer integer() {
    const std::size_t start = i_;
    if (s_[i_] == '-') ++i_;
    const std::size_t digits = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == digits) throw SyntaxError("expected digits after '-'", i_);
    return Integer(std::string(s_.substr(start, i_ - start)));
  }

  WordExpr atom() {
    skip();
    if (i_ >= s_.size()) throw SyntaxError("unexpected end of input", i_);
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      WordExpr e = expr();
      expect(')');
      return e;
    }
    if (c == '[') {
      ++i_;
      WordExpr a = expr();
      expect(',');
      WordExpr b = expr();
      expect(']');
      return WordExpr::commutator(std::move(a), std::move(b));
    }
    if (c == '1' && (i_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[i_ + 1])))) {
      ++i_;
      return WordExpr::one();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      return WordExpr::ident(std::string(s_.substr(start, i_ - start)));
    }
    throw SyntaxError(std::string("unexpected '") + c + "'", i_);
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

std::string parens(const std::string& s) { return "(" + s + ")"; }

}  // namespace

WordExpr parse_word(std::string_view text) { return Parser(text).parse(); }

std::string print_word(const WordExpr& e) {
  switch (e.kind) {
    case WordExpr::Kind::identity:
      return "1";
    case WordExpr::Kind::identifier:
      return e.name;
    case WordExpr::Kind::commutator:
      return "[" + print_word(e.children[0]) + "," + print_word(e.children[1]) + "]";
    case WordExpr::Kind::product: {
      const WordExpr& right = e.children[1];
      const std::string r = right.kind == WordExpr::Kind::product ? parens(print_word(right)) : print_word(right);
      return print_word(e.children[0]) + "*" + r;
    }
    case WordExpr::Kind::power:
    case WordExpr::Kind::conjugate: {
      const WordExpr& base = e.children[0];
      std::string b = print_word(base);
      if (base.kind == WordExpr::Kind::product) b = parens(b);
      if (e.kind == WordExpr::Kind::power) return b + "^" + e.exponent.get_str();
      const WordExpr& by = e.children[1];
      const bool bare = by.kind == WordExpr::Kind::identifier || by.kind == WordExpr::Kind::commutator;
      return b + "^" + (bare ? print_word(by) : parens(print_word(by)));
    }
  }
  return {};
}

WordExpr simplify_product(WordExpr a, WordExpr b) {
  if (a.kind == WordExpr::Kind::identity) return b;
  if (b.kind == WordExpr::Kind::identity) return a;
  if (b.kind == WordExpr::Kind::product) {
    // keep products left-nested so they print without parentheses
    WordExpr left = simplify_product(std::move(a), std::move(b.children[0]));
    return simplify_product(std::move(left), std::move(b.children[1]));
  }
  return WordExpr::product(std::move(a), std::move(b));
}

WordExpr simplify_power(WordExpr a, const Integer& k) {
  if (k == 0 || a.kind == WordExpr::Kind::identity) return WordExpr::one();
  if (k == 1) return a;
  return WordExpr::power(std::move(a), k);
}

}  // namespace gentor::word
