#include "gentor/metab.hpp"

#include <mutex>
#include <numeric>

#include "gentor/errors.hpp"

namespace gentor::metab {

namespace {

long long floor_mod(const Integer& a, std::size_t m) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), m);
  return r.get_si();
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

std::size_t GroupRingShape::index(long long i, long long j) const {
  const long long px = static_cast<long long>(px_), qy = static_cast<long long>(qy_);
  return static_cast<std::size_t>(((i % px + px) % px) * qy + ((j % qy + qy) % qy));
}

RingElem GroupRingShape::monomial(long long i, long long j) const {
  RingElem u = zero();
  u[index(i, j)] = 1;
  return u;
}

RingElem GroupRingShape::shift(const RingElem& u, const Integer& a, const Integer& b) const {
  const long long da = floor_mod(a, px_), db = floor_mod(b, qy_);
  if (da == 0 && db == 0) return u;
  RingElem out = zero();
  for (std::size_t i = 0; i < px_; ++i)
    for (std::size_t j = 0; j < qy_; ++j) {
      const Integer& c = u[i * qy_ + j];
      if (c != 0) out[index(static_cast<long long>(i) + da, static_cast<long long>(j) + db)] = c;
    }
  return out;
}

RingElem GroupRingShape::product(const RingElem& u, const RingElem& w) const {
  RingElem out = zero();
  for (std::size_t i1 = 0; i1 < px_; ++i1)
    for (std::size_t j1 = 0; j1 < qy_; ++j1) {
      const Integer& a = u[i1 * qy_ + j1];
      if (a == 0) continue;
      for (std::size_t i2 = 0; i2 < px_; ++i2)
        for (std::size_t j2 = 0; j2 < qy_; ++j2) {
          const Integer& b = w[i2 * qy_ + j2];
          if (b != 0) out[index(static_cast<long long>(i1 + i2), static_cast<long long>(j1 + j2))] += a * b;
        }
    }
  return out;
}

RingElem GroupRingShape::psi_x(const Integer& a) const {
  // Psi_a depends on a modulo P only through full cycles: Psi_{kP + r} = k N + Psi_r.
  RingElem out = zero();
  Integer full;
  mpz_fdiv_q_ui(full.get_mpz_t(), a.get_mpz_t(), px_);
  const long long rem = floor_mod(a, px_);
  for (std::size_t i = 0; i < px_; ++i) {
    Integer coeff = full;
    if (static_cast<long long>(i) < rem) coeff += 1;
    out[index(static_cast<long long>(i), 0)] = coeff;
  }
  return out;
}

RingElem GroupRingShape::psi_y(const Integer& b) const {
  RingElem out = zero();
  Integer full;
  mpz_fdiv_q_ui(full.get_mpz_t(), b.get_mpz_t(), qy_);
  const long long rem = floor_mod(b, qy_);
  for (std::size_t j = 0; j < qy_; ++j) {
    Integer coeff = full;
    if (static_cast<long long>(j) < rem) coeff += 1;
    out[index(0, static_cast<long long>(j))] = coeff;
  }
  return out;
}

std::size_t MetabElementHash::operator()(const MetabElement& e) const {
  std::size_t h = ext::hash_integer(e.alpha) * 31 + ext::hash_integer(e.beta);
  for (const auto& x : e.v) h = (h ^ ext::hash_integer(x)) * 0x100000001b3ULL + 0x7f4a7c15;
  return h;
}

KGroup build_K(int p, int n, int m, std::size_t size_cap) { return KGroup(p, n, m, size_cap); }

KGroup::KGroup(int p, int n, int m, std::size_t size_cap) : impl_(std::make_shared<Impl>()) {
  if (!is_prime(p)) throw InvalidInput("K(p^n,p^m): p = " + std::to_string(p) + " is not prime");
  if (n < 1 || m < 1) throw InvalidInput("K(p^n,p^m): n and m must be at least 1");
  Impl& s = *impl_;
  s.p = p;
  s.n = n;
  s.m = m;
  s.px = 1;
  s.qy = 1;
  for (int i = 0; i < n; ++i) {
    s.px *= static_cast<std::size_t>(p);
    if (s.px > size_cap) throw InvalidInput("K(p^n,p^m): p^(n+m) exceeds the size cap " + std::to_string(size_cap));
  }
  for (int i = 0; i < m; ++i) {
    s.qy *= static_cast<std::size_t>(p);
    if (s.px * s.qy > size_cap)
      throw InvalidInput("K(p^n,p^m): p^(n+m) exceeds the size cap " + std::to_string(size_cap));
  }
  s.pq = s.px * s.qy;
  s.ring = GroupRingShape(s.px, s.qy);
  const GroupRingShape& R = s.ring;
  const std::size_t d = R.dimension();

  // Free collection: integer exponents of x, y and c-exponents in Z^d, with
  // no power relations and no module relations.
  auto free_mul = [this](const Raw& g, const Raw& h) { return combine(g, h); };
  auto free_pow = [&](const Raw& g, long long k) {
    Raw out{0, 0, R.zero()};
    for (long long i = 0; i < k; ++i) out = free_mul(out, g);
    return out;
  };
  auto free_inv = [&](const Raw& g) {
    // (A, B, u)^-1 = (-A, -B, -u X^-A Y^-B + Psi_{-A}(X) Psi_B(Y) Y^-B)
    RingElem w = negate(R.shift(g.u, -g.a, -g.b));
    w = add(w, R.shift(R.product(R.psi_x(-g.a), R.psi_y(g.b)), 0, -g.b));
    return Raw{-g.a, -g.b, w};
  };
  const Raw X{1, 0, R.zero()};
  const Raw Y{0, 1, R.zero()};
  const long long P = static_cast<long long>(s.px), Q = static_cast<long long>(s.qy);

  // g3 from (x^P)^{Psi_Q(y)} = 1, g4 from (y^Q)^{Psi_P(x)} = 1.
  Raw rel3{0, 0, R.zero()};
  for (long long j = 0; j < Q; ++j) {
    const Raw yj = free_pow(Y, j);
    rel3 = free_mul(rel3, free_mul(free_mul(free_inv(yj), free_pow(X, P)), yj));
  }
  Raw rel4{0, 0, R.zero()};
  for (long long i = 0; i < P; ++i) {
    const Raw xi = free_pow(X, i);
    rel4 = free_mul(rel4, free_mul(free_mul(free_inv(xi), free_pow(Y, Q)), xi));
  }
  if (rel3.a != s.pq || rel3.b != 0 || rel4.a != 0 || rel4.b != s.pq)
    throw TheoremViolation("power relators did not collect to x^(PQ) c^u / y^(PQ) c^u");
  s.g3 = negate(rel3.u);
  s.g4 = negate(rel4.u);

  // Fold x^(kPQ) and y^(lPQ) through the power relations at ring level.
  auto fold = [&](const Raw& r) {
    Integer k, l;
    mpz_fdiv_q_ui(k.get_mpz_t(), r.a.get_mpz_t(), s.pq);
    mpz_fdiv_q_ui(l.get_mpz_t(), r.b.get_mpz_t(), s.pq);
    RingElem u = add(r.u, add(scale(k, R.shift(s.g3, 0, r.b)), scale(l, s.g4)));
    return Raw{r.a - k * s.pq, r.b - l * s.pq, u};
  };

  // Consistency: z^-1 x^(PQ) z and z^-1 c^g3 z must agree, likewise for y.
  const Raw powers[2] = {free_pow(X, P * Q), free_pow(Y, P * Q)};
  const RingElem* values[2] = {&s.g3, &s.g4};
  for (int which = 0; which < 2; ++which)
    for (const Raw& z : {X, Y}) {
      const Raw lhs = fold(free_mul(free_mul(free_inv(z), powers[which]), z));
      const Raw rhs = fold(free_mul(free_mul(free_inv(z), Raw{0, 0, *values[which]}), z));
      if (lhs.a != 0 || lhs.b != 0 || rhs.a != 0 || rhs.b != 0)
        throw TheoremViolation("consistency check left x/y exponents behind");
      s.consistency.push_back(sub(lhs.u, rhs.u));
    }

  IntMatrix ideal(0, d);
  for (const RingElem& v : s.consistency)
    for (long i = 0; i < P; ++i)
      for (long j = 0; j < Q; ++j) {
        RingElem row = R.shift(v, i, j);
        if (!is_zero(row)) ideal.append_row(row);
      }
  s.module = cokernel_structure(ideal, d);

  // Abelianization straight from the exponent sums of the relators.
  IntMatrix ab(0, 2);
  for (const Word& w : relators()) {
    IntVector row(2);
    for (const auto& [letter, e] : w) {
      if (letter == Letter::x) row[0] += e;
      if (letter == Letter::y) row[1] += e;
      if (letter == Letter::c) throw TheoremViolation("relator mentions c");
    }
    if (!is_zero(row)) ab.append_row(row);
  }
  s.abelianization = cokernel_structure(ab, 2);

  // A = <a = x^P, b = y^Q, M> with a^Q = c^g3, b^P = c^g4.
  const std::size_t mc = s.module.coordinate_count();
  IntMatrix lat(0, 2 + mc);
  {
    IntVector r1(2 + mc), r2(2 + mc);
    r1[0] = s.qy;
    r2[1] = s.px;
    const IntVector c3 = s.module.canonical(s.g3), c4 = s.module.canonical(s.g4);
    for (std::size_t i = 0; i < mc; ++i) {
      r1[2 + i] = -c3[i];
      r2[2 + i] = -c4[i];
    }
    for (std::size_t i = 0; i < s.module.invariant_factors().size(); ++i) {
      IntVector t(2 + mc);
      t[2 + i] = s.module.invariant_factors()[i];
      lat.append_row(t);
    }
    lat.append_row(r1);
    lat.append_row(r2);
  }
  s.lattice = cokernel_structure(lat, 2 + mc);

  s.generators = {{"x", x()}, {"y", y()}};
}

std::string KGroup::name() const {
  return "K:" + std::to_string(p()) + "," + std::to_string(n()) + "," + std::to_string(m());
}

std::vector<Word> KGroup::relators() const {
  const Integer P = impl_->px, Q = impl_->qy;
  std::vector<Word> out;
  // [[x,y], x^P] and [[x,y], y^Q]
  const Word c = {{Letter::x, -1}, {Letter::y, -1}, {Letter::x, 1}, {Letter::y, 1}};
  const Word c_inv = {{Letter::y, -1}, {Letter::x, -1}, {Letter::y, 1}, {Letter::x, 1}};
  for (const auto& [letter, e] : {std::pair{Letter::x, P}, std::pair{Letter::y, Q}}) {
    Word w = c_inv;
    w.emplace_back(letter, -e);
    w.insert(w.end(), c.begin(), c.end());
    w.emplace_back(letter, e);
    out.push_back(std::move(w));
  }
  // (x^P)^{Psi_Q(y)} and (y^Q)^{Psi_P(x)}
  Word w3, w4;
  for (Integer j = 0; j < Q; ++j) {
    w3.emplace_back(Letter::y, Integer(-j));
    w3.emplace_back(Letter::x, P);
    w3.emplace_back(Letter::y, j);
  }
  for (Integer i = 0; i < P; ++i) {
    w4.emplace_back(Letter::x, Integer(-i));
    w4.emplace_back(Letter::y, Q);
    w4.emplace_back(Letter::x, i);
  }
  out.push_back(std::move(w3));
  out.push_back(std::move(w4));
  return out;
}

KGroup::Raw KGroup::combine(const Raw& g, const Raw& h) const {
  // (x^A y^B c^u)(x^A' y^B' c^u') = x^(A+A') y^(B+B') c^(u X^A' Y^B' + u' - Psi_A'(X) Psi_B(Y) Y^B')
  const GroupRingShape& R = impl_->ring;
  RingElem u = R.shift(g.u, h.a, h.b);
  const RingElem twist = R.shift(R.product(R.psi_x(h.a), R.psi_y(g.b)), 0, h.b);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += h.u[i] - twist[i];
  return {g.a + h.a, g.b + h.b, std::move(u)};
}

MetabElement KGroup::normalize(const Raw& r) const {
  const Impl& s = *impl_;
  Integer k, l;
  mpz_fdiv_q_ui(k.get_mpz_t(), r.a.get_mpz_t(), s.pq);
  mpz_fdiv_q_ui(l.get_mpz_t(), r.b.get_mpz_t(), s.pq);
  RingElem u = r.u;
  if (k != 0) u = add(u, scale(k, s.ring.shift(s.g3, 0, r.b)));
  if (l != 0) u = add(u, scale(l, s.g4));
  return {r.a - k * s.pq, r.b - l * s.pq, s.module.canonical(u)};
}

RingElem KGroup::ring_part(const Element& g) const { return impl_->module.lift(g.v); }

bool KGroup::in_module_ideal(const RingElem& u) const { return is_zero(impl_->module.canonical(u)); }

MetabElement KGroup::identity() const { return {0, 0, IntVector(impl_->module.coordinate_count())}; }
MetabElement KGroup::x() const { return normalize({1, 0, impl_->ring.zero()}); }
MetabElement KGroup::y() const { return normalize({0, 1, impl_->ring.zero()}); }
MetabElement KGroup::c() const { return c_power(impl_->ring.monomial(0, 0)); }
MetabElement KGroup::c_power(const RingElem& u) const {
  if (u.size() != impl_->ring.dimension()) throw InvalidInput("c-exponent has wrong dimension");
  return normalize({0, 0, u});
}

MetabElement KGroup::mul(const Element& g, const Element& h) const { return normalize(combine(raw(g), raw(h))); }

MetabElement KGroup::inv(const Element& g) const {
  const GroupRingShape& R = impl_->ring;
  RingElem w = negate(R.shift(ring_part(g), -g.alpha, -g.beta));
  w = add(w, R.shift(R.product(R.psi_x(-g.alpha), R.psi_y(g.beta)), 0, -g.beta));
  return normalize({-g.alpha, -g.beta, w});
}

MetabElement KGroup::conj(const Element& g, const Element& x) const { return mul(inv(x), mul(g, x)); }

MetabElement KGroup::pow(const Element& g, const Integer& k) const {
  Element base = k < 0 ? inv(g) : g;
  Integer e = abs(k);
  Element result = identity();
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

MetabElement KGroup::collect(const Word& word) const {
  Element out = identity();
  const Element gx = x(), gy = y(), gc = c();
  for (const auto& [letter, e] : word) {
    const Element& base = letter == Letter::x ? gx : letter == Letter::y ? gy : gc;
    out = mul(out, pow(base, e));
  }
  return out;
}

bool KGroup::in_lattice(const Element& g) const {
  return mpz_divisible_ui_p(g.alpha.get_mpz_t(), impl_->px) && mpz_divisible_ui_p(g.beta.get_mpz_t(), impl_->qy);
}

std::vector<MetabElement> KGroup::transversal() const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < impl_->px; ++i)
    for (std::size_t j = 0; j < impl_->qy; ++j) out.push_back(normalize({Integer(i), Integer(j), impl_->ring.zero()}));
  return out;
}

std::vector<MetabElement> KGroup::transversal_mod(const Element& g) const {
  const std::size_t P = impl_->px, Q = impl_->qy;
  const long long ga = floor_mod(g.alpha, P), gb = floor_mod(g.beta, Q);
  std::vector<bool> covered(P * Q, false);
  std::vector<Element> out;
  for (std::size_t i = 0; i < P; ++i)
    for (std::size_t j = 0; j < Q; ++j) {
      if (covered[i * Q + j]) continue;
      out.push_back(normalize({Integer(i), Integer(j), impl_->ring.zero()}));
      long long ci = static_cast<long long>(i), cj = static_cast<long long>(j);
      do {
        covered[static_cast<std::size_t>(ci) * Q + static_cast<std::size_t>(cj)] = true;
        ci = (ci + ga) % static_cast<long long>(P);
        cj = (cj + gb) % static_cast<long long>(Q);
      } while (ci != static_cast<long long>(i) || cj != static_cast<long long>(j));
    }
  return out;
}

std::size_t KGroup::coset_order(const Element& g) const {
  const std::size_t P = impl_->px, Q = impl_->qy;
  const std::size_t ga = static_cast<std::size_t>(floor_mod(g.alpha, P));
  const std::size_t gb = static_cast<std::size_t>(floor_mod(g.beta, Q));
  const std::size_t oa = P / std::gcd(ga == 0 ? P : ga, P);
  const std::size_t ob = Q / std::gcd(gb == 0 ? Q : gb, Q);
  return std::lcm(oa, ob);
}

IntVector KGroup::lattice_coordinates(const Element& g) const {
  if (!in_lattice(g)) throw InvalidInput("element is not a translation");
  const Impl& s = *impl_;
  IntVector gen(2 + s.module.coordinate_count());
  gen[0] = g.alpha / Integer(s.px);
  gen[1] = g.beta / Integer(s.qy);
  for (std::size_t i = 0; i < g.v.size(); ++i) gen[2 + i] = g.v[i];
  return s.lattice.canonical(gen);
}

const ext::ExtGroup& KGroup::as_extension() const {
  std::call_once(impl_->extension_once,
                 [this] { impl_->extension = std::make_unique<ext::ExtGroup>(build_extension_spec()); });
  return *impl_->extension;
}

ext::ExtensionSpec KGroup::build_extension_spec() const {
  const Impl& s = *impl_;
  if (!s.lattice.invariant_factors().empty())
    throw TheoremViolation(name() + ": translation subgroup has torsion");
  const std::size_t rank = s.lattice.free_rank();
  const std::size_t P = s.px, Q = s.qy;

  // lattice basis vector k as a group element a^i b^j c^w
  std::vector<Element> basis;
  const Element a = pow(x(), Integer(P)), b = pow(y(), Integer(Q));
  for (std::size_t k = 0; k < rank; ++k) {
    IntVector coords(rank);
    coords[k] = 1;
    const IntVector gen = s.lattice.lift(coords);
    IntVector mod_coords(gen.begin() + 2, gen.end());
    Element e = mul(mul(pow(a, gen[0]), pow(b, gen[1])), normalize({0, 0, s.module.lift(mod_coords)}));
    basis.push_back(std::move(e));
  }

  ext::ExtensionSpec spec;
  spec.q_size = P * Q;
  spec.n = rank;
  spec.q_table.assign(spec.q_size, std::vector<std::size_t>(spec.q_size));
  std::vector<Element> reps;
  for (std::size_t i = 0; i < P; ++i)
    for (std::size_t j = 0; j < Q; ++j) reps.push_back(normalize({Integer(i), Integer(j), s.ring.zero()}));
  for (std::size_t q1 = 0; q1 < spec.q_size; ++q1)
    for (std::size_t q2 = 0; q2 < spec.q_size; ++q2) {
      const std::size_t i = (q1 / Q + q2 / Q) % P, j = (q1 % Q + q2 % Q) % Q;
      spec.q_table[q1][q2] = i * Q + j;
    }
  spec.phi.resize(spec.q_size);
  for (std::size_t q = 0; q < spec.q_size; ++q) {
    IntMatrix m(rank, rank);
    for (std::size_t k = 0; k < rank; ++k) {
      const IntVector col = lattice_coordinates(conj(basis[k], reps[q]));
      for (std::size_t r = 0; r < rank; ++r) m(r, k) = col[r];
    }
    spec.phi[q] = std::move(m);
  }
  spec.coc.assign(spec.q_size, std::vector<IntVector>(spec.q_size));
  for (std::size_t q1 = 0; q1 < spec.q_size; ++q1)
    for (std::size_t q2 = 0; q2 < spec.q_size; ++q2) {
      const Element t = mul(inv(reps[spec.q_table[q1][q2]]), mul(reps[q1], reps[q2]));
      spec.coc[q1][q2] = lattice_coordinates(t);
    }
  spec.generators = {{"x", {Q, IntVector(rank)}}, {"y", {1, IntVector(rank)}}};
  return spec;
}

}  // namespace gentor::metab
