#include "gentor/casolo.hpp"

#include "gentor/catalog.hpp"
#include "gentor/errors.hpp"

namespace gentor::catalog {

std::size_t GammaElementHash::operator()(const GammaElement& e) const {
  const ext::ExtElementHash eh;
  std::size_t h = eh(e.g) * 31 + eh(e.h);
  for (const auto& [k, c] : e.r) h = (h ^ (eh(k) + ext::hash_integer(c))) * 0x100000001b3ULL;
  return h;
}

GammaGroup::GammaGroup(ext::ExtGroup base) : base_(std::make_shared<const ext::ExtGroup>(std::move(base))) {
  const auto& factors = base_->abelianization().invariant_factors();
  if (factors.empty() || !mpz_even_p(factors.front().get_mpz_t()))
    throw InvalidInput("Gamma_G needs a surjection G -> C2 from the first invariant factor of G^ab");

  const ext::ExtElement one = base_->identity();
  ext::ExtElement unit = one;
  generators_.emplace_back("t", from_ring(GroupRingElement{{unit, Integer(1)}}));
  for (const auto& [name, g] : base_->generators()) generators_.emplace_back(name + "_l", from_pair(g, one));
  for (const auto& [name, g] : base_->generators()) generators_.emplace_back(name + "_r", from_pair(one, g));
}

int GammaGroup::sign(const ext::ExtElement& h) const {
  const IntVector coords = base_->abelianization().canonical(base_->project(h));
  return mpz_even_p(coords.front().get_mpz_t()) ? 1 : -1;
}

GammaElement GammaGroup::identity() const { return {{}, base_->identity(), base_->identity()}; }

GammaElement GammaGroup::from_ring(GroupRingElement r) const {
  std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
  return {std::move(r), base_->identity(), base_->identity()};
}

GroupRingElement GammaGroup::translate(const ext::ExtElement& g, const GroupRingElement& r, int sign) const {
  GroupRingElement out;
  for (const auto& [k, c] : r) out.emplace(base_->mul(g, k), sign > 0 ? c : Integer(-c));
  return out;
}

GammaElement GammaGroup::mul(const Element& a, const Element& b) const {
  GammaElement out{a.r, base_->mul(a.g, b.g), base_->mul(a.h, b.h)};
  const int s = sign(a.h);
  for (const auto& [k, c] : b.r) {
    auto [it, inserted] = out.r.try_emplace(base_->mul(a.g, k), 0);
    if (s > 0)
      it->second += c;
    else
      it->second -= c;
    if (it->second == 0) out.r.erase(it);
  }
  return out;
}

GammaElement GammaGroup::inv(const Element& a) const {
  // (r, k)^-1 = (-(k^-1 . r), k^-1)
  const ext::ExtElement gi = base_->inv(a.g), hi = base_->inv(a.h);
  return {translate(gi, a.r, -sign(hi)), gi, hi};
}

GammaElement GammaGroup::conj(const Element& a, const Element& x) const { return mul(inv(x), mul(a, x)); }

GammaElement GammaGroup::pow(const Element& a, const Integer& k) const {
  Element base = k < 0 ? inv(a) : a;
  Integer e = abs(k);
  Element result = identity();
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

std::vector<GammaElement> GammaGroup::sigma_candidates(std::size_t count) const {
  std::vector<Element> out;
  for (const auto& h : engine::ball(*base_, 3)) {
    if (out.size() == count) break;
    if (sign(h) < 0) out.push_back(from_pair(base_->identity(), h));
  }
  return out;
}

engine::PositiveIdentity<GammaElement> GammaGroup::lift_identity(
    const engine::PositiveIdentity<ext::ExtElement>& base_identity, const Element& sigma) const {
  if (!sigma.r.empty() || !(sigma.g == base_->identity()) || sign(sigma.h) > 0)
    throw InvalidInput("sigma must be (0, (1, h)) with sign(h) = -1");
  engine::PositiveIdentity<Element> out;
  out.inner_exponent = 1;
  std::vector<Element> lifted;
  for (const auto& x : base_identity.conjugators)
    for (Integer i = 0; i < base_identity.inner_exponent; ++i) lifted.push_back(from_pair(x, x));
  out.conjugators = lifted;
  for (const auto& y : lifted) out.conjugators.push_back(mul(y, sigma));
  return out;
}

GammaGroup build_casolo_gamma() { return GammaGroup(ext::ExtGroup(build_promislow())); }

}  // namespace gentor::catalog
