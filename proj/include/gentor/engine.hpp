#pragma once

// Generalized torsion over any computable abelian-by-finite group.
//
// An element g is generalized torsion when g^{x_1} ... g^{x_k} = 1 for some
// conjugators x_i. For finitely generated abelian-by-finite G this happens
// exactly when the image of g in G^ab has finite order; in that case the
// product of the conjugates of g^n over a transversal S of A<g> (n the order
// of gA) is already trivial, which gives certificates of length |G/A|.

#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gentor/errors.hpp"
#include "gentor/extgroup.hpp"
#include "gentor/intlin.hpp"
#include "gentor/random.hpp"

namespace gentor::engine {

template <class G>
concept GroupBackend = requires(const G& grp, const typename G::Element& a, const Integer& k) {
  typename G::Element;
  typename G::ElementHash;
  { grp.identity() } -> std::convertible_to<typename G::Element>;
  { grp.mul(a, a) } -> std::convertible_to<typename G::Element>;
  { grp.inv(a) } -> std::convertible_to<typename G::Element>;
  { grp.conj(a, a) } -> std::convertible_to<typename G::Element>;
  { grp.pow(a, k) } -> std::convertible_to<typename G::Element>;
  { grp.generators() } -> std::convertible_to<std::vector<std::pair<std::string, typename G::Element>>>;
  { a == a } -> std::convertible_to<bool>;
  { typename G::ElementHash{}(a) } -> std::convertible_to<std::size_t>;
};

/// Backends that also know their translation lattice A and the map to G^ab.
template <class G>
concept AbelianByFiniteBackend = GroupBackend<G> && requires(const G& grp, const typename G::Element& a) {
  { grp.abelianization() } -> std::convertible_to<const AbelianStructure&>;
  { grp.project(a) } -> std::convertible_to<IntVector>;
  { grp.in_lattice(a) } -> std::convertible_to<bool>;
  { grp.transversal() } -> std::convertible_to<std::vector<typename G::Element>>;
  { grp.transversal_mod(a) } -> std::convertible_to<std::vector<typename G::Element>>;
  { grp.coset_order(a) } -> std::convertible_to<std::size_t>;
  { grp.index() } -> std::convertible_to<std::size_t>;
  { grp.holonomy_exponent() } -> std::convertible_to<std::size_t>;
  { grp.is_torsion_free() } -> std::convertible_to<bool>;
};

template <class E>
struct WitnessCertificate {
  E base;
  std::vector<E> conjugators;
  std::size_t length = 0;
  bool verified = false;
};

struct ExponentBounds {
  Integer lower;
  Integer upper;
  bool exact = false;
};

/// g -> prod_j (g^k)^{x_j}; its degree is k times the number of conjugators.
template <class E>
struct PositiveIdentity {
  Integer inner_exponent = 1;
  std::vector<E> conjugators;

  Integer degree() const { return inner_exponent * Integer(conjugators.size()); }
};

template <class E>
struct SampledCheck {
  bool holds = true;
  std::size_t checked = 0;
  std::optional<E> counterexample;
};

template <class E>
struct SearchResult {
  std::size_t k = 0;
  std::vector<E> conjugators;
};

// ---------------------------------------------------------------------------
// Group-level helpers

template <GroupBackend G>
typename G::Element product_of_conjugates(const G& grp, const typename G::Element& g,
                                          std::span<const typename G::Element> conjugators) {
  auto out = grp.identity();
  for (const auto& x : conjugators) out = grp.mul(out, grp.conj(g, x));
  return out;
}

template <GroupBackend G>
bool verify_certificate(const G& grp, const WitnessCertificate<typename G::Element>& cert) {
  return !cert.conjugators.empty() &&
         product_of_conjugates(grp, cert.base, std::span(cert.conjugators)) == grp.identity();
}

template <GroupBackend G>
typename G::Element evaluate_identity(const G& grp, const PositiveIdentity<typename G::Element>& id,
                                      const typename G::Element& g) {
  return product_of_conjugates(grp, grp.pow(g, id.inner_exponent), std::span(id.conjugators));
}

/// Word of uniform length in [0, max_length] over generators and inverses.
template <GroupBackend G>
typename G::Element random_element(const G& grp, SplitMix64& rng, std::size_t max_length = 12) {
  const auto& gens = grp.generators();
  auto out = grp.identity();
  if (gens.empty()) return out;
  const std::size_t len = rng.below(max_length + 1);
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t letter = rng.below(2 * gens.size());
    const auto& g = gens[letter / 2].second;
    out = grp.mul(out, letter % 2 == 0 ? g : grp.inv(g));
  }
  return out;
}

/// Distinct elements of word length <= radius, in BFS order with letters
/// ordered g1, g1^-1, g2, g2^-1, ...
template <GroupBackend G>
std::vector<typename G::Element> ball(const G& grp, std::size_t radius) {
  using E = typename G::Element;
  std::vector<E> letters;
  for (const auto& [name, g] : grp.generators()) {
    letters.push_back(g);
    letters.push_back(grp.inv(g));
  }
  std::vector<E> out{grp.identity()};
  std::unordered_set<E, typename G::ElementHash> seen{out.front()};
  std::size_t frontier_begin = 0;
  for (std::size_t r = 0; r < radius; ++r) {
    const std::size_t frontier_end = out.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i)
      for (const E& l : letters) {
        E next = grp.mul(out[i], l);
        if (seen.insert(next).second) out.push_back(std::move(next));
      }
    frontier_begin = frontier_end;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decision and bounds

template <AbelianByFiniteBackend G>
bool is_generalized_torsion(const G& grp, const typename G::Element& g) {
  return grp.abelianization().order(grp.project(g)).is_finite();
}

template <AbelianByFiniteBackend G>
bool is_fully_generalized_torsion(const G& grp) {
  return grp.abelianization().is_finite();
}

/// Order of pi(g) in G^ab; it divides every k with 1 in (g^G)^k.
template <AbelianByFiniteBackend G>
Integer gen_order_lower_bound(const G& grp, const typename G::Element& g) {
  const Order o = grp.abelianization().order(grp.project(g));
  if (!o.is_finite()) throw InvalidInput("element is not generalized torsion: its image in G^ab has infinite order");
  return o.value();
}

template <AbelianByFiniteBackend G>
ExponentBounds gen_exponent_bounds(const G& grp) {
  const AbelianStructure& ab = grp.abelianization();
  if (!ab.is_finite()) throw InvalidInput("G^ab is infinite, so G has no generalized exponent");
  ExponentBounds b{ab.torsion_exponent(), Integer(grp.index()), false};
  b.exact = b.lower == b.upper;
  return b;
}

template <AbelianByFiniteBackend G>
WitnessCertificate<typename G::Element> witness_construct(const G& grp, const typename G::Element& g) {
  using E = typename G::Element;
  if (!is_generalized_torsion(grp, g)) throw InvalidInput("element is not generalized torsion");
  WitnessCertificate<E> cert{g, {}, 0, false};
  if (grp.in_lattice(g)) {
    // g in A: the product over a transversal of A is central with torsion image, hence 1.
    cert.conjugators = grp.transversal();
  } else if (grp.abelianization().is_finite()) {
    // prod_{s in S} (g^n)^s with g^n = g^{g^0} ... g^{g^{n-1}}.
    const std::size_t n = grp.coset_order(g);
    std::vector<E> powers{grp.identity()};
    for (std::size_t i = 1; i < n; ++i) powers.push_back(grp.mul(powers.back(), g));
    for (const E& s : grp.transversal_mod(g))
      for (const E& gi : powers) cert.conjugators.push_back(grp.mul(gi, s));
  } else {
    // Certificate for g^k in A, each (g^k)^t expanded to k copies of g^t.
    const std::size_t k = grp.coset_order(g);
    for (const E& t : grp.transversal())
      for (std::size_t i = 0; i < k; ++i) cert.conjugators.push_back(t);
  }
  cert.length = cert.conjugators.size();
  if (product_of_conjugates(grp, g, std::span<const E>(cert.conjugators)) != grp.identity())
    throw TheoremViolation("constructed product of conjugates is not the identity");
  cert.verified = true;
  return cert;
}

/// g -> prod_{t in T} (g^k)^t with k = exp(G/A) and T a transversal of A.
template <AbelianByFiniteBackend G>
PositiveIdentity<typename G::Element> positive_identity_witnesses(const G& grp) {
  if (!grp.abelianization().is_finite()) throw InvalidInput("G^ab is infinite: no positive generalized identity");
  return {Integer(grp.holonomy_exponent()), grp.transversal()};
}

/// Symbolic check over all of G: each coset (q, a) with a a formal vector.
bool verify_identity_universal(const ext::ExtGroup& grp, const PositiveIdentity<ext::ExtElement>& id);

template <GroupBackend G>
SampledCheck<typename G::Element> verify_identity_sampled(const G& grp,
                                                          const PositiveIdentity<typename G::Element>& id,
                                                          std::size_t samples, std::uint64_t seed) {
  SampledCheck<typename G::Element> out;
  SplitMix64 rng(seed);
  const auto one = grp.identity();
  for (std::size_t i = 0; i < samples; ++i) {
    auto g = random_element(grp, rng);
    ++out.checked;
    if (!(evaluate_identity(grp, id, g) == one)) {
      out.holds = false;
      out.counterexample = std::move(g);
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bounded search for the generalized order

struct SearchLimits {
  std::size_t max_states = 4'000'000;  // over all stored levels
};

/// Breadth-first search over products of conjugates g^x, x in the ball of
/// the given word radius. Returns the least k <= max_k reaching 1 and the
/// lexicographically least conjugator sequence doing so. Absence is not a
/// proof that the generalized order exceeds max_k.
template <AbelianByFiniteBackend G>
std::optional<SearchResult<typename G::Element>> gen_order_search(const G& grp, const typename G::Element& g,
                                                                  std::size_t max_k, std::size_t radius,
                                                                  SearchLimits limits = {}) {
  using E = typename G::Element;
  using Hash = typename G::ElementHash;
  if (max_k == 0 || !is_generalized_torsion(grp, g)) return std::nullopt;
  const Integer lower = gen_order_lower_bound(grp, g);

  std::vector<E> conjugates, conjugators;
  {
    std::unordered_set<E, Hash> seen;
    for (E& x : ball(grp, radius)) {
      E c = grp.conj(g, x);
      if (seen.insert(c).second) {
        conjugates.push_back(std::move(c));
        conjugators.push_back(std::move(x));
      }
    }
  }

  struct Node {
    E value;
    std::size_t parent;
    std::size_t conjugate;
  };
  std::vector<std::vector<Node>> levels;
  const E one = grp.identity();

  auto reconstruct = [&](std::size_t last_conjugate, std::size_t parent) {
    SearchResult<E> r;
    std::vector<std::size_t> indices{last_conjugate};
    for (std::size_t lvl = levels.size(); lvl-- > 0;) {
      const Node& node = levels[lvl][parent];
      indices.push_back(node.conjugate);
      parent = node.parent;
    }
    for (auto it = indices.rbegin(); it != indices.rend(); ++it) r.conjugators.push_back(conjugators[*it]);
    r.k = r.conjugators.size();
    return r;
  };

  std::size_t stored = 0;
  for (std::size_t k = 1; k <= max_k; ++k) {
    const bool can_close = mpz_divisible_ui_p(Integer(k).get_mpz_t(), lower.get_ui()) != 0;
    const bool last = k == max_k;
    std::vector<Node> next;
    std::unordered_set<E, Hash> seen;
    const std::size_t parents = levels.empty() ? 1 : levels.back().size();
    for (std::size_t p = 0; p < parents; ++p) {
      for (std::size_t ci = 0; ci < conjugates.size(); ++ci) {
        E value = levels.empty() ? conjugates[ci] : grp.mul(levels.back()[p].value, conjugates[ci]);
        if (can_close && value == one) return reconstruct(ci, p);
        if (last) continue;
        if (seen.insert(value).second) next.push_back({std::move(value), p, ci});
      }
    }
    if (last) break;
    stored += next.size();
    if (stored > limits.max_states) return std::nullopt;
    levels.push_back(std::move(next));
  }
  return std::nullopt;
}

}  // namespace gentor::engine
