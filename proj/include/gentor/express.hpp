#pragma once

// Writing elements back as words over the named generators.

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gentor/casolo.hpp"
#include "gentor/extgroup.hpp"
#include "gentor/metab.hpp"
#include "gentor/word.hpp"

namespace gentor::word {

/// Generator index and exponent; adjacent equal letters print as one power.
using Letters = std::vector<std::pair<std::size_t, Integer>>;

/// Elements of a small ball get their shortest word. Beyond it, coset
/// representatives come from a BFS over Q with the generators in order and
/// the translation part is solved over the Schreier generators of A.
class ExtExpresser {
 public:
  explicit ExtExpresser(const ext::ExtGroup& grp, std::size_t ball_radius = 4, std::size_t ball_cap = 5000);

  /// nullopt when the named generators do not generate the element.
  std::optional<WordExpr> express(const ext::ExtElement& g) const;

 private:
  WordExpr to_word(const Letters& letters) const;

  const ext::ExtGroup& grp_;
  std::unordered_map<ext::ExtElement, Letters, ext::ExtElementHash> ball_;
  std::vector<std::optional<Letters>> coset_words_;
  std::vector<ext::ExtElement> coset_elements_;
  std::vector<Letters> lattice_words_;
  IntMatrix lattice_;  // columns are the translation parts of lattice_words_
};

/// x^alpha * y^beta * prod ([x,y]^(x^i*y^j))^v_ij
WordExpr express(const metab::KGroup& grp, const metab::MetabElement& g);

/// Appends `suffix` to every identifier.
WordExpr rename_identifiers(WordExpr e, const std::string& suffix);

/// (r, (g, h)) as prod (t^(k_l^-1))^c_k * g_l * h_r over the support of r.
class GammaExpresser {
 public:
  explicit GammaExpresser(const catalog::GammaGroup& grp) : base_(grp.base()) {}
  std::optional<WordExpr> express(const catalog::GammaElement& e) const;

 private:
  ExtExpresser base_;
};

}  // namespace gentor::word
