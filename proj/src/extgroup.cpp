#include "gentor/extgroup.hpp"

#include <numeric>
#include <sstream>

#include "gentor/errors.hpp"

namespace gentor::ext {

bool ExtElementLess::operator()(const ExtElement& lhs, const ExtElement& rhs) const {
  if (lhs.q != rhs.q) return lhs.q < rhs.q;
  if (lhs.a.size() != rhs.a.size()) return lhs.a.size() < rhs.a.size();
  for (std::size_t i = 0; i < lhs.a.size(); ++i) {
    const int c = cmp(lhs.a[i], rhs.a[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::size_t hash_integer(const Integer& x) {
  // Low limb and sign are enough for hashing; equality is still exact.
  const std::size_t low = mpz_getlimbn(x.get_mpz_t(), 0);
  return low * 0x9e3779b97f4a7c15ULL ^ static_cast<std::size_t>(sgn(x) + 1);
}

std::size_t ExtElementHash::operator()(const ExtElement& e) const {
  std::size_t h = e.q * 0x100000001b3ULL;
  for (const auto& x : e.a) h = (h ^ hash_integer(x)) * 0x100000001b3ULL + 0x7f4a7c15;
  return h;
}

std::string ValidationReport::summary() const {
  if (ok()) return "valid";
  std::ostringstream os;
  os << failures.size() << " violation(s)";
  const std::size_t shown = std::min<std::size_t>(failures.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) os << "\n  " << failures[i];
  if (shown < failures.size()) os << "\n  ...";
  return os.str();
}

ValidationReport validate_group_table(const GroupTable& table) {
  ValidationReport r;
  const std::size_t s = table.size();
  if (s == 0) {
    r.failures.push_back("empty multiplication table");
    return r;
  }
  for (std::size_t a = 0; a < s; ++a) {
    if (table[a].size() != s) {
      r.failures.push_back("row " + std::to_string(a) + " has wrong length");
      return r;
    }
    for (std::size_t b = 0; b < s; ++b)
      if (table[a][b] >= s) {
        r.failures.push_back("entry (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
        return r;
      }
  }
  for (std::size_t a = 0; a < s; ++a) {
    if (table[0][a] != a || table[a][0] != a)
      r.failures.push_back("0 is not a two-sided identity at " + std::to_string(a));
    bool has_inverse = false;
    for (std::size_t b = 0; b < s; ++b)
      if (table[a][b] == 0 && table[b][a] == 0) has_inverse = true;
    if (!has_inverse) r.failures.push_back("no inverse for " + std::to_string(a));
  }
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b)
      for (std::size_t c = 0; c < s; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          r.failures.push_back("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                               "," + std::to_string(c) + ")");
  return r;
}

ValidationReport validate_extension(const ExtensionSpec& spec) {
  ValidationReport r;
  const std::size_t s = spec.q_size;
  const std::size_t n = spec.n;
  if (spec.q_table.size() != s) {
    r.failures.push_back("q_table has " + std::to_string(spec.q_table.size()) + " rows, expected " +
                         std::to_string(s));
    return r;
  }
  r = validate_group_table(spec.q_table);
  if (!r.ok()) return r;

  if (spec.phi.size() != s) {
    r.failures.push_back("phi has " + std::to_string(spec.phi.size()) + " matrices, expected " + std::to_string(s));
    return r;
  }
  for (std::size_t q = 0; q < s; ++q)
    if (spec.phi[q].rows() != n || spec.phi[q].cols() != n) {
      r.failures.push_back("phi(" + std::to_string(q) + ") is not " + std::to_string(n) + "x" + std::to_string(n));
      return r;
    }
  if (spec.coc.size() != s) {
    r.failures.push_back("coc has wrong number of rows");
    return r;
  }
  for (std::size_t a = 0; a < s; ++a) {
    if (spec.coc[a].size() != s) {
      r.failures.push_back("coc row " + std::to_string(a) + " has wrong length");
      return r;
    }
    for (std::size_t b = 0; b < s; ++b)
      if (spec.coc[a][b].size() != n) {
        r.failures.push_back("coc(" + std::to_string(a) + "," + std::to_string(b) + ") has wrong dimension");
        return r;
      }
  }

  for (std::size_t q = 0; q < s; ++q) {
    const Integer det = determinant(spec.phi[q]);
    if (abs(det) != 1)
      r.failures.push_back("phi(" + std::to_string(q) + ") is not unimodular (det " + det.get_str() + ")");
  }
  if (!(spec.phi[0] == IntMatrix::identity(n))) r.failures.push_back("phi(0) is not the identity");
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b)
      if (!(spec.phi[spec.q_table[a][b]] == spec.phi[b] * spec.phi[a]))
        r.failures.push_back("anti-homomorphism phi(q q') = phi(q') phi(q) fails at (" + std::to_string(a) + "," +
                             std::to_string(b) + ")");

  for (std::size_t q = 0; q < s; ++q) {
    if (!is_zero(spec.coc[0][q])) r.failures.push_back("coc(0," + std::to_string(q) + ") is not zero");
    if (!is_zero(spec.coc[q][0])) r.failures.push_back("coc(" + std::to_string(q) + ",0) is not zero");
  }
  // coc(ab, c) + phi(c) coc(a, b) = coc(a, bc) + coc(b, c)
  const auto& t = spec.q_table;
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b)
      for (std::size_t c = 0; c < s; ++c) {
        const IntVector lhs = add(spec.coc[t[a][b]][c], spec.phi[c] * spec.coc[a][b]);
        const IntVector rhs = add(spec.coc[a][t[b][c]], spec.coc[b][c]);
        if (lhs != rhs)
          r.failures.push_back("cocycle identity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                               std::to_string(c) + ")");
      }

  for (const auto& [name, g] : spec.generators) {
    if (g.q >= s || g.a.size() != n) r.failures.push_back("generator '" + name + "' is malformed");
  }
  return r;
}

ExtGroup::ExtGroup(ExtensionSpec spec) : spec_(std::move(spec)) {
  const ValidationReport report = validate_extension(spec_);
  if (!report.ok()) throw InvalidInput("invalid extension spec: " + report.summary());

  const std::size_t s = spec_.q_size;
  point_inverse_.assign(s, 0);
  point_order_.assign(s, 1);
  for (std::size_t q = 0; q < s; ++q) {
    for (std::size_t b = 0; b < s; ++b)
      if (spec_.q_table[q][b] == 0) point_inverse_[q] = b;
    std::size_t cur = q, k = 1;
    while (cur != 0) {
      cur = spec_.q_table[cur][q];
      ++k;
    }
    point_order_[q] = k;
  }

  torsion_ = gentor::ext::is_torsion_free(*this);
  center_rank_ = gentor::ext::center_rank(*this);
  ab_relations_ = gentor::ext::abelianization_relations(spec_);
  ab_ = cokernel_structure(ab_relations_, spec_.n + s);
}

void ExtGroup::check(const Element& g) const {
  if (g.q >= spec_.q_size || g.a.size() != spec_.n) throw InvalidInput("element does not belong to this extension");
}

ExtElement ExtGroup::identity() const { return {0, IntVector(spec_.n)}; }

ExtElement ExtGroup::mul(const Element& g, const Element& h) const {
  check(g);
  check(h);
  IntVector a = spec_.phi[h.q] * g.a;
  const IntVector& c = spec_.coc[g.q][h.q];
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += c[i] + h.a[i];
  return {spec_.q_table[g.q][h.q], std::move(a)};
}

ExtElement ExtGroup::inv(const Element& g) const {
  check(g);
  const std::size_t qi = point_inverse_[g.q];
  IntVector a = spec_.phi[qi] * g.a;
  const IntVector& c = spec_.coc[g.q][qi];
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = -a[i] - c[i];
  return {qi, std::move(a)};
}

ExtElement ExtGroup::conj(const Element& g, const Element& x) const { return mul(inv(x), mul(g, x)); }

ExtElement ExtGroup::pow(const Element& g, const Integer& k) const {
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

AffineElement ExtGroup::affine(const Element& g) const {
  check(g);
  return {g.q, IntMatrix(spec_.n, spec_.n), g.a};
}

AffineElement ExtGroup::affine_generic(std::size_t q) const {
  return {q, IntMatrix::identity(spec_.n), IntVector(spec_.n)};
}

AffineElement ExtGroup::mul(const AffineElement& g, const AffineElement& h) const {
  const IntMatrix& ph = spec_.phi[h.q];
  AffineElement out;
  out.q = spec_.q_table[g.q][h.q];
  out.linear = ph * g.linear + h.linear;
  out.constant = add(add(spec_.coc[g.q][h.q], ph * g.constant), h.constant);
  return out;
}

IntVector ExtGroup::project(const Element& g) const {
  check(g);
  IntVector v(spec_.n + spec_.q_size);
  for (std::size_t i = 0; i < spec_.n; ++i) v[i] = g.a[i];
  v[spec_.n + g.q] += 1;
  return v;
}

std::vector<ExtElement> ExtGroup::transversal() const {
  std::vector<Element> out;
  out.reserve(spec_.q_size);
  for (std::size_t q = 0; q < spec_.q_size; ++q) out.push_back({q, IntVector(spec_.n)});
  return out;
}

std::vector<ExtElement> ExtGroup::transversal_mod(const Element& g) const {
  check(g);
  std::vector<std::size_t> cyclic{0};
  for (std::size_t cur = g.q; cur != 0; cur = point_mul(cur, g.q)) cyclic.push_back(cur);
  std::vector<bool> covered(spec_.q_size, false);
  std::vector<Element> out;
  for (std::size_t s = 0; s < spec_.q_size; ++s) {
    if (covered[s]) continue;
    out.push_back({s, IntVector(spec_.n)});
    for (std::size_t h : cyclic) covered[point_mul(h, s)] = true;
  }
  return out;
}

std::size_t ExtGroup::holonomy_exponent() const {
  std::size_t e = 1;
  for (std::size_t o : point_order_) e = std::lcm(e, o);
  return e;
}

TorsionReport is_torsion_free(const ExtGroup& g) {
  const std::size_t s = g.spec().q_size;
  for (std::size_t q = 1; q < s; ++q) {
    // (q, a)^o = (0, N_q a + c_q); torsion iff N_q a = -c_q is solvable.
    const AffineElement base = g.affine_generic(q);
    AffineElement power = base;
    for (std::size_t i = 1; i < g.point_order(q); ++i) power = g.mul(power, base);
    if (power.q != 0) throw TheoremViolation("point part of q^order(q) is not trivial");
    if (auto a = solve_integer_linear(power.linear, negate(power.constant))) {
      return {false, ExtElement{q, std::move(*a)}};
    }
  }
  return {true, std::nullopt};
}

std::size_t center_rank(const ExtGroup& g) {
  const auto& spec = g.spec();
  const std::size_t n = spec.n;
  IntMatrix stacked(0, n);
  const IntMatrix id = IntMatrix::identity(n);
  for (std::size_t q = 1; q < spec.q_size; ++q) {
    const IntMatrix d = spec.phi[q] - id;
    for (std::size_t r = 0; r < n; ++r) stacked.append_row(d.row(r));
  }
  return n - integer_rank(stacked);
}

IntMatrix abelianization_relations(const ExtensionSpec& spec) {
  const std::size_t n = spec.n;
  const std::size_t s = spec.q_size;
  IntMatrix rel(0, n + s);
  // translations: t_i ~ phi(q) t_i
  for (std::size_t q = 1; q < s; ++q)
    for (std::size_t i = 0; i < n; ++i) {
      IntVector row(n + s);
      row[i] += 1;
      for (std::size_t k = 0; k < n; ++k) row[k] -= spec.phi[q](k, i);
      if (!is_zero(row)) rel.append_row(row);
    }
  // r_q r_q' = r_{qq'} t^{coc(q,q')}
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b) {
      IntVector row(n + s);
      for (std::size_t k = 0; k < n; ++k) row[k] = -spec.coc[a][b][k];
      row[n + a] += 1;
      row[n + b] += 1;
      row[n + spec.q_table[a][b]] -= 1;
      if (!is_zero(row)) rel.append_row(row);
    }
  IntVector trivial(n + s);
  trivial[n] = 1;
  rel.append_row(trivial);
  return rel;
}

ExtensionSpec direct_product(const ExtensionSpec& a, const ExtensionSpec& b) {
  if (!validate_extension(a).ok() || !validate_extension(b).ok())
    throw InvalidInput("direct_product: invalid factor");
  ExtensionSpec out;
  const std::size_t sa = a.q_size, sb = b.q_size;
  out.q_size = sa * sb;
  out.n = a.n + b.n;
  out.q_table.assign(out.q_size, std::vector<std::size_t>(out.q_size));
  auto idx = [sb](std::size_t x, std::size_t y) { return x * sb + y; };
  for (std::size_t a1 = 0; a1 < sa; ++a1)
    for (std::size_t b1 = 0; b1 < sb; ++b1)
      for (std::size_t a2 = 0; a2 < sa; ++a2)
        for (std::size_t b2 = 0; b2 < sb; ++b2)
          out.q_table[idx(a1, b1)][idx(a2, b2)] = idx(a.q_table[a1][a2], b.q_table[b1][b2]);

  out.phi.resize(out.q_size);
  out.coc.assign(out.q_size, std::vector<IntVector>(out.q_size));
  for (std::size_t x = 0; x < sa; ++x)
    for (std::size_t y = 0; y < sb; ++y) {
      IntMatrix m(out.n, out.n);
      for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j) m(i, j) = a.phi[x](i, j);
      for (std::size_t i = 0; i < b.n; ++i)
        for (std::size_t j = 0; j < b.n; ++j) m(a.n + i, a.n + j) = b.phi[y](i, j);
      out.phi[idx(x, y)] = std::move(m);
    }
  for (std::size_t x1 = 0; x1 < sa; ++x1)
    for (std::size_t y1 = 0; y1 < sb; ++y1)
      for (std::size_t x2 = 0; x2 < sa; ++x2)
        for (std::size_t y2 = 0; y2 < sb; ++y2) {
          IntVector c = a.coc[x1][x2];
          c.insert(c.end(), b.coc[y1][y2].begin(), b.coc[y1][y2].end());
          out.coc[idx(x1, y1)][idx(x2, y2)] = std::move(c);
        }

  auto collides = [](const std::string& name, const ExtensionSpec& other) {
    for (const auto& [n, g] : other.generators)
      if (n == name) return true;
    return false;
  };
  for (const auto& [name, g] : a.generators) {
    IntVector v = g.a;
    v.resize(out.n);
    out.generators.emplace_back(collides(name, b) ? name + "_1" : name, ExtElement{idx(g.q, 0), v});
  }
  for (const auto& [name, g] : b.generators) {
    IntVector v(a.n);
    v.insert(v.end(), g.a.begin(), g.a.end());
    out.generators.emplace_back(collides(name, a) ? name + "_2" : name, ExtElement{idx(0, g.q), v});
  }
  return out;
}

}  // namespace gentor::ext
