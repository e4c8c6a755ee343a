// One PASS/FAIL line per acceptance criterion, each under a fixed time limit.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "gentor/casolo.hpp"
#include "gentor/catalog.hpp"
#include "gentor/cli.hpp"
#include "gentor/engine.hpp"
#include "gentor/extgroup.hpp"
#include "gentor/intlin.hpp"
#include "gentor/metab.hpp"
#include "gentor/word.hpp"
#include "oracles.hpp"

using namespace gentor;
using ext::ExtElement;
using ext::ExtGroup;
using metab::KGroup;

namespace {

/// Set by a criterion to explain a failure.
std::string g_detail;

bool fail(const std::string& why) {
  g_detail = why;
  return false;
}

template <class G>
typename G::Element elem(const G& g, const std::string& text) {
  return word::eval_word(g, text);
}

template <class G>
std::vector<std::string> names(const G& g) {
  std::vector<std::string> out;
  for (const auto& [name, x] : g.generators()) out.push_back(name);
  return out;
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run_cli(args, out, err);
  return out.str();
}

bool contains_line(const std::string& text, const std::string& line) {
  return ("\n" + text).find("\n" + line + "\n") != std::string::npos;
}

long ipow(long p, long e) {
  long r = 1;
  while (e-- > 0) r *= p;
  return r;
}

template <class G>
bool group_laws(const G& g, std::mt19937_64& rng, std::size_t word_len) {
  const auto gens = names(g);
  for (int i = 0; i < 1000; ++i) {
    const auto a = elem(g, oracle::random_word(rng, gens, word_len));
    const auto b = elem(g, oracle::random_word(rng, gens, word_len));
    const auto c = elem(g, oracle::random_word(rng, gens, word_len));
    if (!(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)))) return fail("associativity");
    if (!(g.mul(a, g.inv(a)) == g.identity()) || !(g.mul(g.identity(), a) == a)) return fail("inverse or identity");
    if constexpr (engine::AbelianByFiniteBackend<G>) {
      const auto& ab = g.abelianization();
      if (!ab.equivalent(g.project(g.mul(a, b)), add(g.project(a), g.project(b)))) return fail("pi is not a homomorphism");
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

bool ac1() {
  int code = 0;
  const std::string info = run_cli({"info", "promislow"}, code);
  if (code != 0) return fail("info exit code " + std::to_string(code));
  for (const char* line : {"abelianization: C4 x C4", "invariant_factors: [4, 4]", "index: 4", "torsion_free: true",
                           "center_rank: 0", "exponent: lower=4 upper=4 exact=true"})
    if (!contains_line(info, line)) return fail(std::string("info is missing '") + line + "'");
  const std::string exp = run_cli({"exponent", "promislow"}, code);
  if (code != 0 || exp != "lower=4 upper=4 exact=true\n") return fail("exponent printed '" + exp + "'");
  return true;
}

bool ac2() {
  for (const auto& [p, n, m] : {std::array{2, 1, 1}, {3, 1, 1}, {2, 1, 2}, {2, 2, 1}, {5, 1, 1}}) {
    const KGroup k(p, n, m);
    const long expected = ipow(p, n + m);
    const auto b = engine::gen_exponent_bounds(k);
    if (b.lower != expected || b.upper != expected || !b.exact) return fail(k.name() + ": bounds differ from p^(n+m)");
    const IntVector f = k.abelianization().invariant_factors();
    if (k.abelianization().free_rank() != 0 || f.size() != 2 || f[0] != expected || f[1] != expected)
      return fail(k.name() + ": abelianization " + k.abelianization().describe());
  }
  return true;
}

bool ac3() {
  const ExtGroup p(catalog::build_promislow());
  const auto id = engine::positive_identity_witnesses(p);
  if (id.degree() != 8) return fail("Promislow identity has degree " + id.degree().get_str());
  if (!engine::verify_identity_universal(p, id)) return fail("Promislow identity fails symbolically");
  for (int q : {2, 3}) {
    const KGroup k(q, 1, 1);
    const auto idk = engine::positive_identity_witnesses(k);
    if (idk.degree() != q * q * q) return fail(k.name() + ": identity degree " + idk.degree().get_str());
    const auto r = engine::verify_identity_sampled(k, idk, 1000, 1);
    if (!r.holds || r.checked != 1000) return fail(k.name() + ": sampled identity failed");
  }
  return true;
}

bool ac4() {
  const ExtGroup klein(catalog::build_klein_bottle());
  if (!engine::is_generalized_torsion(klein, elem(klein, "x"))) return fail("Klein x");
  if (engine::is_generalized_torsion(klein, elem(klein, "y"))) return fail("Klein y");
  for (int k = -6; k <= 6; ++k)
    for (int j = -6; j <= 6; ++j) {
      const ExtElement g = klein.mul(klein.pow(elem(klein, "x"), k), klein.pow(elem(klein, "y"), j));
      if (engine::is_generalized_torsion(klein, g) != (j == 0)) return fail("Klein x^k y^j");
    }

  std::mt19937_64 rng(4);
  const ExtGroup dinf(catalog::build_dihedral_infinite());
  for (int i = 0; i < 50; ++i)
    if (!engine::is_generalized_torsion(dinf, elem(dinf, oracle::random_word(rng, {"a", "b"}, 12)))) return fail("D_inf");

  const ExtGroup wreath(catalog::build_wreath({{0, 1}, {1, 0}}));
  for (int i = 0; i < 500; ++i) {
    const ExtElement g = elem(wreath, oracle::random_word(rng, {"t", "s1"}, 12));
    const Integer aug = g.a[0] + g.a[1];
    if (engine::is_generalized_torsion(wreath, g) != (aug == 0)) return fail("wreath membership vs augmentation");
  }

  const ExtGroup f(catalog::build_free_abelianized_extension({2, {{0, 1}, {1, 0}}, {1, 1}, {"a", "b"}}));
  int derived = 0, outside = 0;
  while (derived < 50) {
    const std::string u = oracle::random_word(rng, {"a", "b"}, 6), w = oracle::random_word(rng, {"a", "b"}, 6);
    if (!engine::is_generalized_torsion(f, elem(f, "[" + u + "," + w + "]"))) return fail("commutator not in T.");
    ++derived;
  }
  while (outside < 50) {
    const std::string w = oracle::random_word(rng, {"a", "b"}, 10);
    if (oracle::exponent_sum(w, "a") == 0 && oracle::exponent_sum(w, "b") == 0) continue;
    if (engine::is_generalized_torsion(f, elem(f, w))) return fail("element with nonzero pi reported in T.");
    ++outside;
  }
  return true;
}

bool ac5() {
  std::vector<ExtGroup> exts;
  exts.emplace_back(catalog::build_promislow());
  exts.emplace_back(catalog::build_dihedral_infinite());
  exts.emplace_back(catalog::build_K_spec(2, 1, 2));
  const std::vector<KGroup> ks = {KGroup(2, 1, 1), KGroup(3, 1, 1)};
  std::mt19937_64 rng(5);
  int done = 0;
  auto check = [&](const auto& g) {
    const auto x = elem(g, oracle::random_word(rng, names(g), 12));
    if (!engine::is_generalized_torsion(g, x)) return fail("element of a group with finite G^ab not in T.");
    const auto cert = engine::witness_construct(g, x);
    if (!cert.verified || !engine::verify_certificate(g, cert)) return fail("certificate does not verify");
    if (cert.length != g.index()) return fail("certificate length differs from |G/A|");
    if (cert.length % engine::gen_order_lower_bound(g, x).get_ui() != 0) return fail("length not a multiple of pi-order");
    ++done;
    return true;
  };
  for (int i = 0; i < 14; ++i) {
    for (const auto& g : exts)
      if (!check(g)) return false;
    for (const auto& g : ks)
      if (!check(g)) return false;
  }
  // the Promislow certificates also hold in the affine model
  const ExtGroup& p = exts.front();
  for (int i = 0; i < 30; ++i) {
    const ExtElement x = elem(p, oracle::random_word(rng, {"x", "y"}, 12));
    const auto cert = engine::witness_construct(p, x);
    const oracle::Affine mx = oracle::promislow_model(x.q, x.a);
    oracle::Affine prod = oracle::affine_identity();
    for (const auto& t : cert.conjugators) {
      const oracle::Affine mt = oracle::promislow_model(t.q, t.a);
      prod = oracle::affine_mul(prod, oracle::affine_mul(oracle::affine_mul(oracle::affine_inv(mt), mx), mt));
    }
    if (prod != oracle::affine_identity()) return fail("certificate fails in the affine model");
    ++done;
  }
  return done >= 100 || fail("too few samples");
}

bool ac6() {
  const ExtGroup p(catalog::build_promislow());
  for (const auto& [text, expected] : {std::pair{"x", 4u}, std::pair{"x^2", 2u}}) {
    const ExtElement g = elem(p, text);
    const auto r = engine::gen_order_search(p, g, 8, 3);
    if (!r || r->k != expected) return fail(std::string("search for ") + text + " did not return " + std::to_string(expected));
    if (engine::product_of_conjugates(p, g, std::span<const ExtElement>(r->conjugators)) != p.identity())
      return fail("search conjugators do not multiply to 1");
  }
  return true;
}

bool ac7() {
  const ExtGroup g(ext::direct_product(catalog::build_K_spec(2, 1, 1), catalog::build_K_spec(3, 1, 1)));
  const auto b = engine::gen_exponent_bounds(g);
  if (b.lower != 36 || b.upper != 36 || !b.exact)
    return fail("bounds " + b.lower.get_str() + ", " + b.upper.get_str());
  return true;
}

bool ac8() {
  const catalog::GammaGroup gamma = catalog::build_casolo_gamma();
  const auto base = engine::positive_identity_witnesses(gamma.base());
  const auto sigmas = gamma.sigma_candidates(3);
  if (sigmas.size() != 3) return fail("fewer than 3 sigma candidates");
  for (const auto& sigma : sigmas) {
    const auto id = gamma.lift_identity(base, sigma);
    if (id.degree() != 16) return fail("identity degree " + id.degree().get_str());
    const auto r = engine::verify_identity_sampled(gamma, id, 1000, 1);
    if (!r.holds || r.checked != 1000) return fail("identity fails for a sigma");
  }
  std::mt19937_64 rng(8);
  const auto gens = names(gamma);
  int sampled = 0;
  while (sampled < 100) {
    const auto a = elem(gamma, oracle::random_word(rng, gens, 10));
    if (a == gamma.identity()) continue;
    auto pw = a;
    for (int j = 1; j <= 12; ++j, pw = gamma.mul(pw, a))
      if (pw == gamma.identity()) return fail("element of finite order found");
    ++sampled;
  }
  return true;
}

bool ac9() {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix m = oracle::random_matrix(rng, 1 + rng() % 4, 1 + rng() % 4, 9);
    const auto sd = smith_normal_form(m);
    if (sd.u * m * sd.v != sd.d) return fail("U M V != D");
    const auto hd = hermite_normal_form(m);
    if (hd.u * m != hd.h) return fail("U M != H");
    const auto expected = oracle::invariant_factors_by_minors(m);
    const IntVector diag = sd.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i)
      if (diag[i] != (i < expected.size() ? expected[i] : Integer(0))) return fail("invariant factors differ from minors");
  }
  for (const auto& spec : {catalog::build_dihedral_infinite(), catalog::build_klein_bottle(), catalog::build_promislow(),
                           catalog::build_wreath({{0, 1}, {1, 0}}),
                           catalog::build_free_abelianized_extension({2, {{0, 1}, {1, 0}}, {1, 1}, {}})})
    if (!group_laws(ExtGroup(spec), rng, 8)) return false;
  if (!group_laws(KGroup(2, 1, 1), rng, 8)) return false;
  if (!group_laws(catalog::build_casolo_gamma(), rng, 5)) return false;

  for (const auto& spec : {catalog::build_promislow(), catalog::build_dihedral_infinite(), catalog::build_klein_bottle()}) {
    const ExtGroup gz(ext::direct_product(spec, catalog::build_integers()));
    if (catalog::central_nontorsion_check(gz, elem(gz, "z"))) return fail("central z reported generalized torsion");
    if (catalog::central_nontorsion_check(gz, elem(gz, "z^3"))) return fail("central z^3 reported generalized torsion");
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* what;
    double limit_seconds;
    std::function<bool()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", "Promislow info and exponent", 1, ac1},
      {"AC2", "K(p^n,p^m) exponent bounds and abelianizations", 30, ac2},
      {"AC3", "positive identities, universal and sampled", 20, ac3},
      {"AC4", "decision regression", 10, ac4},
      {"AC5", "certificates of length |G/A|", 10, ac5},
      {"AC6", "bounded minimal-order search", 20, ac6},
      {"AC7", "powerful exponent 36", 5, ac7},
      {"AC8", "Gamma identity and torsion spot check", 20, ac8},
      {"AC9", "property suites", 15, ac9},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    g_detail.clear();
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      g_detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && secs > c.limit_seconds) {
      ok = false;
      g_detail = "time limit exceeded";
    }
    failures += ok ? 0 : 1;
    std::cout << c.id << " " << (ok ? "PASS" : "FAIL") << " " << c.what << " (" << std::fixed;
    std::cout.precision(3);
    std::cout << secs << "s, limit " << static_cast<int>(c.limit_seconds) << "s)";
    if (!ok) std::cout << ": " << g_detail;
    std::cout << "\n";
  }
  return failures == 0 ? 0 : 1;
}
