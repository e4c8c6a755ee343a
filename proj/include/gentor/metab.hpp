#pragma once

// Collection backend for the Cid groups K(p^n, p^m), presented in the
// metabelian variety on x, y with c = [x, y] = x^-1 y^-1 x y.
//
// Normal form: x^alpha y^beta c^v with 0 <= alpha, beta < p^(n+m) and v in
// the module M = Z[C_{p^n} x C_{p^m}] / S. X and Y act on c-exponents by
// right conjugation: c^(v X) = x^-1 c^v x. The derived subgroup is M, the
// power relations are x^(p^(n+m)) = c^g3 and y^(p^(n+m)) = c^g4, and S is the
// ideal generated by the consistency vectors of those power relations.

#include <cstddef>
#include <algorithm>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "gentor/extgroup.hpp"
#include "gentor/intlin.hpp"

namespace gentor::metab {

/// Elements of Z[C_P x C_Q] indexed by i * Q + j for X^i Y^j.
using RingElem = IntVector;

class GroupRingShape {
 public:
  GroupRingShape(std::size_t px, std::size_t qy) : px_(px), qy_(qy) {}

  std::size_t x_order() const { return px_; }
  std::size_t y_order() const { return qy_; }
  std::size_t dimension() const { return px_ * qy_; }
  std::size_t index(long long i, long long j) const;

  RingElem zero() const { return RingElem(dimension()); }
  RingElem monomial(long long i, long long j) const;
  /// u * X^a * Y^b
  RingElem shift(const RingElem& u, const Integer& a, const Integer& b) const;
  RingElem product(const RingElem& u, const RingElem& w) const;
  /// Psi_a(X) = 1 + X + ... + X^(a-1), with Psi_{-a}(X) = -X^-a Psi_a(X).
  RingElem psi_x(const Integer& a) const;
  RingElem psi_y(const Integer& b) const;

 private:
  std::size_t px_, qy_;
};

struct MetabElement {
  Integer alpha;
  Integer beta;
  IntVector v;  // canonical coordinates in M

  friend bool operator==(const MetabElement&, const MetabElement&) = default;
};

struct MetabElementHash {
  std::size_t operator()(const MetabElement& e) const;
};

enum class Letter { x, y, c };
using Word = std::vector<std::pair<Letter, Integer>>;

class KGroup {
 public:
  using Element = MetabElement;
  using ElementHash = MetabElementHash;

  static constexpr std::size_t kDefaultSizeCap = 256;

  /// Throws InvalidInput when p is not prime, n or m < 1, or p^(n+m) exceeds
  /// `size_cap`.
  KGroup(int p, int n, int m, std::size_t size_cap = kDefaultSizeCap);

  int p() const { return impl_->p; }
  int n() const { return impl_->n; }
  int m() const { return impl_->m; }
  std::string name() const;
  const GroupRingShape& ring() const { return impl_->ring; }
  /// p^(n+m): |G/A| and the exponent of G^ab.
  std::size_t order_pq() const { return impl_->pq; }

  const RingElem& g3() const { return impl_->g3; }
  const RingElem& g4() const { return impl_->g4; }
  const std::vector<RingElem>& consistency_vectors() const { return impl_->consistency; }
  const AbelianStructure& module_structure() const { return impl_->module; }
  bool in_module_ideal(const RingElem& u) const;
  /// Rank of G' = M; G/G' is finite, so this is the Hirsch length.
  std::size_t hirsch_length() const { return impl_->module.free_rank(); }
  /// Defining relators of the metabelian presentation, as words in x, y.
  std::vector<Word> relators() const;

  Element identity() const;
  Element x() const;
  Element y() const;
  Element c() const;
  Element c_power(const RingElem& u) const;
  Element mul(const Element& g, const Element& h) const;
  Element inv(const Element& g) const;
  Element conj(const Element& g, const Element& x) const;
  Element pow(const Element& g, const Integer& k) const;
  Element collect(const Word& word) const;
  /// v as a ring element (a representative in Z^d).
  RingElem ring_part(const Element& g) const;

  const std::vector<std::pair<std::string, Element>>& generators() const { return impl_->generators; }

  const AbelianStructure& abelianization() const { return impl_->abelianization; }
  IntVector project(const Element& g) const { return {g.alpha, g.beta}; }
  bool in_lattice(const Element& g) const;
  std::vector<Element> transversal() const;
  std::vector<Element> transversal_mod(const Element& g) const;
  std::size_t coset_order(const Element& g) const;
  std::size_t index() const { return impl_->px * impl_->qy; }
  std::size_t holonomy_exponent() const { return std::max(impl_->px, impl_->qy); }

  /// The same group as an explicit extension of C_{p^n} x C_{p^m} by the
  /// translation lattice A = <x^(p^n), y^(p^m), G'>.
  const ext::ExtGroup& as_extension() const;
  bool is_torsion_free() const { return as_extension().is_torsion_free(); }
  std::size_t center_rank() const { return as_extension().center_rank(); }
  /// Lattice coordinates of an element of A in the basis used by as_extension().
  IntVector lattice_coordinates(const Element& a) const;

 private:
  struct Impl {
    int p = 0, n = 0, m = 0;
    std::size_t px = 0, qy = 0, pq = 0;
    GroupRingShape ring{1, 1};
    RingElem g3, g4;
    std::vector<RingElem> consistency;
    AbelianStructure module;
    AbelianStructure abelianization;
    AbelianStructure lattice;  // A on generators (x^P, y^Q, module coordinates)
    std::vector<std::pair<std::string, MetabElement>> generators;
    mutable std::once_flag extension_once;
    mutable std::unique_ptr<ext::ExtGroup> extension;
  };

  struct Raw {
    Integer a, b;
    RingElem u;
  };
  Raw combine(const Raw& g, const Raw& h) const;
  Element normalize(const Raw& r) const;
  Raw raw(const Element& g) const { return {g.alpha, g.beta, ring_part(g)}; }
  ext::ExtensionSpec build_extension_spec() const;

  std::shared_ptr<Impl> impl_;
};

KGroup build_K(int p, int n, int m, std::size_t size_cap = KGroup::kDefaultSizeCap);

}  // namespace gentor::metab
