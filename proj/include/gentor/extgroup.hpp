#pragma once

// Abelian-by-finite groups given as extensions 1 -> Z^n -> G -> Q -> 1 of a
// finite point group Q (explicit multiplication table) by a lattice, with a
// normalized factor set.
//
// Elements are pairs (q, a) and multiply as
//     (q, a) * (q', a') = (q q', coc(q, q') + phi(q') a + a').
// phi is an anti-homomorphism, phi(q q') = phi(q') phi(q), so conjugating a
// translation (0, a) by (q, 0) gives (0, phi(q) a).

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gentor/intlin.hpp"

namespace gentor::ext {

struct ExtElement {
  std::size_t q = 0;
  IntVector a;

  friend bool operator==(const ExtElement&, const ExtElement&) = default;
};

struct ExtElementLess {
  bool operator()(const ExtElement& lhs, const ExtElement& rhs) const;
};

struct ExtElementHash {
  std::size_t operator()(const ExtElement& e) const;
};

std::size_t hash_integer(const Integer& x);

using GroupTable = std::vector<std::vector<std::size_t>>;

struct ExtensionSpec {
  std::size_t q_size = 1;
  GroupTable q_table{{0}};
  std::size_t n = 0;
  std::vector<IntMatrix> phi;               // q_size matrices, n x n
  std::vector<std::vector<IntVector>> coc;  // q_size x q_size vectors of length n
  std::vector<std::pair<std::string, ExtElement>> generators;
};

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  std::string summary() const;
};

/// Group axioms for a multiplication table with identity 0.
ValidationReport validate_group_table(const GroupTable& table);

/// Checks every ExtensionSpec invariant; never throws.
ValidationReport validate_extension(const ExtensionSpec& spec);

/// (q, L a + c) for a formal lattice vector a.
struct AffineElement {
  std::size_t q = 0;
  IntMatrix linear;
  IntVector constant;
};

struct TorsionReport {
  bool torsion_free = true;
  std::optional<ExtElement> witness;  // a nontrivial element of finite order
};

/// A validated extension. Immutable; copies share nothing mutable.
class ExtGroup {
 public:
  using Element = ExtElement;
  using ElementHash = ExtElementHash;

  /// Throws InvalidInput carrying the validation report when `spec` is invalid.
  explicit ExtGroup(ExtensionSpec spec);

  const ExtensionSpec& spec() const { return spec_; }
  std::size_t rank() const { return spec_.n; }

  Element identity() const;
  Element mul(const Element& g, const Element& h) const;
  Element inv(const Element& g) const;
  /// x^{-1} g x
  Element conj(const Element& g, const Element& x) const;
  Element pow(const Element& g, const Integer& k) const;
  Element translation(const IntVector& a) const { return {0, a}; }

  std::size_t point_mul(std::size_t a, std::size_t b) const { return spec_.q_table[a][b]; }
  std::size_t point_inverse(std::size_t q) const { return point_inverse_[q]; }
  std::size_t point_order(std::size_t q) const { return point_order_[q]; }

  AffineElement affine(const Element& g) const;
  /// (q, a) with a formal: linear part identity, constant zero.
  AffineElement affine_generic(std::size_t q) const;
  AffineElement mul(const AffineElement& g, const AffineElement& h) const;

  const std::vector<std::pair<std::string, Element>>& generators() const { return spec_.generators; }

  const TorsionReport& torsion() const { return torsion_; }
  bool is_torsion_free() const { return torsion_.torsion_free; }
  std::size_t center_rank() const { return center_rank_; }

  /// Relation matrix on columns (t_1..t_n, r_0..r_{|Q|-1}).
  const IntMatrix& abelianization_relations() const { return ab_relations_; }
  const AbelianStructure& abelianization() const { return ab_; }
  /// pi(q, a) = (a | e_q) in the abelianization generator coordinates.
  IntVector project(const Element& g) const;

  bool in_lattice(const Element& g) const { return g.q == 0; }
  std::vector<Element> transversal() const;
  /// Coset representatives of A<g> in G, from right cosets of <q_g> in Q.
  std::vector<Element> transversal_mod(const Element& g) const;
  /// Order of gA in G/A.
  std::size_t coset_order(const Element& g) const { return point_order(g.q); }
  std::size_t index() const { return spec_.q_size; }
  /// lcm of the point-group element orders, i.e. exp(G/A).
  std::size_t holonomy_exponent() const;

 private:
  void check(const Element& g) const;

  ExtensionSpec spec_;
  std::vector<std::size_t> point_inverse_;
  std::vector<std::size_t> point_order_;
  TorsionReport torsion_;
  std::size_t center_rank_ = 0;
  IntMatrix ab_relations_;
  AbelianStructure ab_;
};

TorsionReport is_torsion_free(const ExtGroup& g);
std::size_t center_rank(const ExtGroup& g);
IntMatrix abelianization_relations(const ExtensionSpec& spec);

/// Q = Q1 x Q2 with index q1 * |Q2| + q2, block-diagonal phi. Colliding
/// generator names get "_1" / "_2" suffixes.
ExtensionSpec direct_product(const ExtensionSpec& a, const ExtensionSpec& b);

}  // namespace gentor::ext
