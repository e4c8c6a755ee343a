#pragma once

// Element words:
//
//   atom  := ident | 1 | ( expr ) | [ expr , expr ]
//   power := atom ( ^ ( integer | atom ) )*
//   expr  := power ( * power )*
//
// a^k with an integer k is a power, a^b with a word b is b^-1 a b, and
// [a,b] = a^-1 b^-1 a b. Both ^ and * associate to the left.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gentor/engine.hpp"
#include "gentor/errors.hpp"
#include "gentor/intlin.hpp"

namespace gentor::word {

struct WordExpr {
  enum class Kind { identifier, identity, product, power, conjugate, commutator };

  Kind kind = Kind::identity;
  std::string name;                // identifier
  Integer exponent;                // power
  std::vector<WordExpr> children;  // product, conjugate, commutator: 2; power: 1

  friend bool operator==(const WordExpr&, const WordExpr&) = default;

  static WordExpr ident(std::string n);
  static WordExpr one();
  static WordExpr product(WordExpr a, WordExpr b);
  static WordExpr power(WordExpr a, Integer k);
  static WordExpr conjugate(WordExpr a, WordExpr b);
  static WordExpr commutator(WordExpr a, WordExpr b);
};

class SyntaxError : public InvalidInput {
 public:
  SyntaxError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

WordExpr parse_word(std::string_view text);
/// Minimal parenthesization; parse_word(print_word(e)) == e.
std::string print_word(const WordExpr& e);

/// Products that drop identity factors and trivial powers.
WordExpr simplify_product(WordExpr a, WordExpr b);
WordExpr simplify_power(WordExpr a, const Integer& k);

template <engine::GroupBackend G>
typename G::Element eval_word(const G& grp, const WordExpr& e) {
  switch (e.kind) {
    case WordExpr::Kind::identity:
      return grp.identity();
    case WordExpr::Kind::identifier:
      for (const auto& [name, g] : grp.generators())
        if (name == e.name) return g;
      throw InvalidInput("unknown identifier '" + e.name + "'");
    case WordExpr::Kind::product:
      return grp.mul(eval_word(grp, e.children[0]), eval_word(grp, e.children[1]));
    case WordExpr::Kind::power:
      return grp.pow(eval_word(grp, e.children[0]), e.exponent);
    case WordExpr::Kind::conjugate:
      return grp.conj(eval_word(grp, e.children[0]), eval_word(grp, e.children[1]));
    case WordExpr::Kind::commutator: {
      const auto a = eval_word(grp, e.children[0]);
      const auto b = eval_word(grp, e.children[1]);
      return grp.mul(grp.mul(grp.inv(a), grp.inv(b)), grp.mul(a, b));
    }
  }
  throw std::logic_error("unreachable word kind");
}

template <engine::GroupBackend G>
typename G::Element eval_word(const G& grp, std::string_view text) {
  return eval_word(grp, parse_word(text));
}

}  // namespace gentor::word
