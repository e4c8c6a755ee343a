#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gentor/extgroup.hpp"
#include "gentor/metab.hpp"

namespace gentor::catalog {

/// D_inf = Z x| C2. Generators are the reflections a, b; ab is the unit translation.
ext::ExtensionSpec build_dihedral_infinite();
/// <x, y | x^y = x^-1>: lattice <x, y^2>, point group C2.
ext::ExtensionSpec build_klein_bottle();
/// <x, y | (x^2)^y = x^-2, (y^2)^x = y^-2>: lattice <x^2, y^2, (xy)^2>,
/// point group C2 x C2 acting by the three diagonal sign matrices.
ext::ExtensionSpec build_promislow();
/// Z with trivial point group; generator z.
ext::ExtensionSpec build_integers();

metab::KGroup build_K_group(int p, int n, int m, std::size_t size_cap = metab::KGroup::kDefaultSizeCap);
/// K(p^n, p^m) as an explicit extension of C_{p^n} x C_{p^m}.
ext::ExtensionSpec build_K_spec(int p, int n, int m);

/// Z wr Q = ZQ x| Q: lattice basis e_p (p in Q), phi(q) e_p = e_{pq}, split.
/// Generators t = e_0 and s<q> for each q != 0.
ext::ExtensionSpec build_wreath(const ext::GroupTable& table);
/// Augmentation of the lattice part: the coefficient sum.
Integer wreath_augmentation(const ext::ExtElement& g);

struct FreeAbelExtInput {
  std::size_t rank = 0;             // r, rank of the free group F
  ext::GroupTable q_table;          // finite quotient Q = F/R
  std::vector<std::size_t> images;  // image of each free generator in Q
  std::vector<std::string> names;   // optional generator names (default x1..xr)
};

/// F/[R,R] as an extension of Q by R/[R,R], via abelianized
/// Reidemeister-Schreier over a BFS Schreier transversal.
ext::ExtensionSpec build_free_abelianized_extension(const FreeAbelExtInput& input);

/// Is `g` generalized torsion in G x Z? Raises TheoremViolation if a central
/// element of infinite order is reported generalized torsion.
bool central_nontorsion_check(const ext::ExtGroup& group, const ext::ExtElement& g);

}  // namespace gentor::catalog
