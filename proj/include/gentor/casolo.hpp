#pragma once

// Gamma_G = ZG x| (G x G): the first copy of G translates the support on the
// left, the second acts by the sign of a fixed surjection G -> {+1, -1}.
//
//   (r1, (g1, h1)) (r2, (g2, h2)) = (r1 + sign(h1) g1*r2, (g1 g2, h1 h2))

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gentor/engine.hpp"
#include "gentor/extgroup.hpp"

namespace gentor::catalog {

/// Finite-support element of ZG; zero coefficients are never stored.
using GroupRingElement = std::map<ext::ExtElement, Integer, ext::ExtElementLess>;

struct GammaElement {
  GroupRingElement r;
  ext::ExtElement g;
  ext::ExtElement h;

  friend bool operator==(const GammaElement&, const GammaElement&) = default;
};

struct GammaElementHash {
  std::size_t operator()(const GammaElement& e) const;
};

class GammaGroup {
 public:
  using Element = GammaElement;
  using ElementHash = GammaElementHash;

  /// sign(h) = (-1)^(first canonical coordinate of pi(h)); that coordinate's
  /// invariant factor must be even.
  explicit GammaGroup(ext::ExtGroup base);

  const ext::ExtGroup& base() const { return *base_; }
  int sign(const ext::ExtElement& h) const;

  Element identity() const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;
  Element conj(const Element& a, const Element& x) const;
  Element pow(const Element& a, const Integer& k) const;
  const std::vector<std::pair<std::string, Element>>& generators() const { return generators_; }

  Element from_pair(const ext::ExtElement& g, const ext::ExtElement& h) const { return {{}, g, h}; }
  Element from_ring(GroupRingElement r) const;

  /// Elements (0, (1, h)) with sign(h) = -1, scanning the ball of radius 3.
  std::vector<Element> sigma_candidates(std::size_t count) const;

  /// From g -> prod (g^k)^{x_j} on G, the degree-doubling identity on Gamma:
  /// conjugators y_i = (0, (x, x)) followed by y_i * sigma.
  engine::PositiveIdentity<Element> lift_identity(const engine::PositiveIdentity<ext::ExtElement>& base_identity,
                                                  const Element& sigma) const;

 private:
  GroupRingElement translate(const ext::ExtElement& g, const GroupRingElement& r, int sign) const;

  std::shared_ptr<const ext::ExtGroup> base_;
  std::vector<std::pair<std::string, Element>> generators_;
};

/// Gamma_P over the Promislow group.
GammaGroup build_casolo_gamma();

}  // namespace gentor::catalog
