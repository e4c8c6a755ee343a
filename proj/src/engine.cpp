#include "gentor/engine.hpp"

namespace gentor::engine {

bool verify_identity_universal(const ext::ExtGroup& grp, const PositiveIdentity<ext::ExtElement>& id) {
  if (id.inner_exponent < 1) throw InvalidInput("identity needs a positive inner exponent");
  const std::size_t k = id.inner_exponent.get_ui();
  std::vector<std::pair<ext::AffineElement, ext::AffineElement>> sandwiches;
  for (const auto& x : id.conjugators) sandwiches.emplace_back(grp.affine(grp.inv(x)), grp.affine(x));

  for (std::size_t q = 0; q < grp.index(); ++q) {
    const ext::AffineElement base = grp.affine_generic(q);
    ext::AffineElement power = base;
    for (std::size_t i = 1; i < k; ++i) power = grp.mul(power, base);
    ext::AffineElement product = grp.affine(grp.identity());
    for (const auto& [left, right] : sandwiches) product = grp.mul(product, grp.mul(grp.mul(left, power), right));
    if (product.q != 0 || !product.linear.is_zero() || !is_zero(product.constant)) return false;
  }
  return true;
}

}  // namespace gentor::engine
