#include "gentor/cli.hpp"

#include <cstdlib>
#include <functional>
#include <memory>
#include <ostream>
#include <span>

#include "CLI11.hpp"

#include "gentor/catalog.hpp"
#include "gentor/engine.hpp"
#include "gentor/errors.hpp"
#include "gentor/express.hpp"
#include "gentor/json_io.hpp"
#include "gentor/word.hpp"

namespace gentor::cli {

namespace {

using io::Json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

std::array<int, 3> parse_triple(const std::string& name, const std::string& body) {
  const auto parts = split(body, ',');
  if (parts.size() != 3) throw InvalidInput(name + ": expected p,n,m");
  std::array<int, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    try {
      std::size_t used = 0;
      out[i] = std::stoi(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
    } catch (const std::logic_error&) {
      throw InvalidInput(name + ": '" + parts[i] + "' is not an integer");
    }
  }
  return out;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

// ---------------------------------------------------------------------------
// Element formatting per backend

Json raw_json(const ext::ExtElement& g) { return io::element_to_json(g); }
Json raw_json(const metab::MetabElement& g) { return io::element_to_json(g); }
Json raw_json(const catalog::GammaElement& e) {
  Json r = Json::array();
  for (const auto& [k, c] : e.r) r.push_back(Json::array({io::element_to_json(k), io::integer_to_json(c)}));
  Json j;
  j["r"] = r;
  j["g"] = io::element_to_json(e.g);
  j["h"] = io::element_to_json(e.h);
  return j;
}

std::function<std::optional<word::WordExpr>(const ext::ExtElement&)> word_printer(const ext::ExtGroup& grp) {
  auto ex = std::make_shared<word::ExtExpresser>(grp);
  return [ex](const ext::ExtElement& g) { return ex->express(g); };
}
std::function<std::optional<word::WordExpr>(const metab::MetabElement&)> word_printer(const metab::KGroup& grp) {
  return [&grp](const metab::MetabElement& g) { return std::optional(word::express(grp, g)); };
}
std::function<std::optional<word::WordExpr>(const catalog::GammaElement&)> word_printer(const catalog::GammaGroup& grp) {
  auto ex = std::make_shared<word::GammaExpresser>(grp);
  return [ex](const catalog::GammaElement& e) { return ex->express(e); };
}

/// Word for g, checked by evaluating it back; raw JSON when no word exists.
template <class B>
std::string element_text(const B& grp, const auto& printer, const typename B::Element& g) {
  const auto w = printer(g);
  if (!w) return raw_json(g).dump();
  if (!(word::eval_word(grp, *w) == g)) throw TheoremViolation("printed word does not evaluate to the element");
  return word::print_word(*w);
}

// ---------------------------------------------------------------------------
// Commands

template <class B>
constexpr bool has_abelianization = engine::AbelianByFiniteBackend<B>;

void require_abelianization(const catalog::GammaGroup&) {
  throw Unsupported("gamma: this backend has no abelianization; only `identity` is available");
}

void print_exponent(const AbelianStructure& ab, const auto& grp, std::ostream& out, const std::string& prefix) {
  if (!ab.is_finite()) {
    out << prefix << "none (G^ab is infinite)\n";
    return;
  }
  const auto b = engine::gen_exponent_bounds(grp);
  out << prefix << "lower=" << b.lower.get_str() << " upper=" << b.upper.get_str() << " exact=" << yes_no(b.exact) << "\n";
}

template <class B>
void cmd_info(const std::string& name, const B& grp, std::ostream& out) {
  if constexpr (!has_abelianization<B>) {
    require_abelianization(grp);
  } else {
    const AbelianStructure& ab = grp.abelianization();
    std::vector<std::string> factors;
    for (const auto& d : ab.invariant_factors()) factors.push_back(d.get_str());
    out << "group: " << name << "\n";
    out << "abelianization: " << ab.describe() << "\n";
    out << "invariant_factors: [" << join(factors, ", ") << "]\n";
    out << "free_rank: " << ab.free_rank() << "\n";
    out << "index: " << grp.index() << "\n";
    if constexpr (std::is_same_v<B, metab::KGroup>) out << "hirsch_length: " << grp.hirsch_length() << "\n";
    out << "torsion_free: " << yes_no(grp.is_torsion_free()) << "\n";
    out << "center_rank: " << grp.center_rank() << "\n";
    print_exponent(ab, grp, out, "exponent: ");
  }
}

template <class B>
void cmd_decide(const B& grp, const std::string& text, std::ostream& out) {
  if constexpr (!has_abelianization<B>) {
    require_abelianization(grp);
  } else {
    const auto g = word::eval_word(grp, text);
    const Order o = grp.abelianization().order(grp.project(g));
    out << yes_no(o.is_finite()) << "\n";
    out << "pi-order: " << o.to_string() << "\n";
  }
}

template <class B>
void cmd_exponent(const B& grp, std::ostream& out) {
  if constexpr (!has_abelianization<B>) {
    require_abelianization(grp);
  } else {
    const auto b = engine::gen_exponent_bounds(grp);
    out << "lower=" << b.lower.get_str() << " upper=" << b.upper.get_str() << " exact=" << yes_no(b.exact) << "\n";
  }
}

struct WitnessOptions {
  bool search = false;
  std::size_t max_k = 8;
  std::size_t radius = 3;
  std::size_t max_states = engine::SearchLimits{}.max_states;
};

template <class B>
int cmd_witness(const std::string& name, const B& grp, const std::string& text, const WitnessOptions& opt,
                std::ostream& out, std::ostream& err) {
  if constexpr (!has_abelianization<B>) {
    require_abelianization(grp);
    return kInvalidInput;
  } else {
    using E = typename B::Element;
    const E g = word::eval_word(grp, text);
    engine::WitnessCertificate<E> cert;
    if (opt.search) {
      const auto found = engine::gen_order_search(grp, g, opt.max_k, opt.radius, {opt.max_states});
      if (!found) {
        err << "no certificate with k <= " << opt.max_k << " over the ball of radius " << opt.radius
            << " (not a proof that none exists)\n";
        out << "found: false\n";
        return kOk;
      }
      cert = {g, found->conjugators, found->k, false};
      cert.verified = engine::verify_certificate(grp, cert);
    } else {
      cert = engine::witness_construct(grp, g);
    }
    const auto printer = word_printer(grp);
    io::Certificate c;
    c.group = name;
    c.base_word = word::print_word(word::parse_word(text));
    for (const E& x : cert.conjugators) {
      c.conjugator_words.push_back(element_text(grp, printer, x));
      c.conjugators_raw.push_back(raw_json(x));
    }
    c.length = cert.length;
    c.verified = cert.verified;
    out << io::dump_members(io::certificate_to_json(c)) << "\n";
    return kOk;
  }
}

template <class B>
bool check_certificate(const B& grp, const io::Certificate& c, std::ostream& out) {
  using E = typename B::Element;
  const E g = word::eval_word(grp, c.base_word);
  std::vector<E> conjugators;
  for (std::size_t i = 0; i < c.conjugator_words.size(); ++i) {
    conjugators.push_back(word::eval_word(grp, c.conjugator_words[i]));
    if (c.conjugators_raw.is_array() && i < c.conjugators_raw.size() &&
        raw_json(conjugators.back()) != c.conjugators_raw[i]) {
      out << "conjugator " << i << " does not match its raw coordinates\n";
      return false;
    }
  }
  if (conjugators.size() != c.length) {
    out << "length field disagrees with the number of conjugators\n";
    return false;
  }
  return !conjugators.empty() && engine::product_of_conjugates(grp, g, std::span<const E>(conjugators)) == grp.identity();
}

struct IdentityOptions {
  bool universal = false;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::size_t sigma = 0;
};

template <class B>
void report_sampled(const B& grp, const engine::PositiveIdentity<typename B::Element>& id, const IdentityOptions& opt,
                    std::ostream& out) {
  const auto check = engine::verify_identity_sampled(grp, id, opt.samples, opt.seed);
  out << "mode: sampled samples=" << opt.samples << " seed=" << opt.seed << "\n";
  out << "checked: " << check.checked << "\n";
  out << "holds: " << yes_no(check.holds) << "\n";
  if (check.counterexample) out << "counterexample: " << element_text(grp, word_printer(grp), *check.counterexample) << "\n";
}

template <class B>
void print_identity(const B& grp, const engine::PositiveIdentity<typename B::Element>& id, std::ostream& out) {
  const auto printer = word_printer(grp);
  std::vector<std::string> words;
  for (const auto& x : id.conjugators) words.push_back(element_text(grp, printer, x));
  out << "inner_exponent: " << id.inner_exponent.get_str() << "\n";
  out << "degree: " << id.degree().get_str() << "\n";
  out << "conjugators: " << join(words, ", ") << "\n";
}

void cmd_identity(const ext::ExtGroup& grp, const IdentityOptions& opt, std::ostream& out) {
  const auto id = engine::positive_identity_witnesses(grp);
  print_identity(grp, id, out);
  if (opt.universal) {
    out << "mode: universal\n";
    out << "holds: " << yes_no(engine::verify_identity_universal(grp, id)) << "\n";
  } else {
    report_sampled(grp, id, opt, out);
  }
}

void cmd_identity(const metab::KGroup& grp, const IdentityOptions& opt, std::ostream& out) {
  if (opt.universal) {
    out << "via: extension form\n";
    cmd_identity(grp.as_extension(), opt, out);
    return;
  }
  const auto id = engine::positive_identity_witnesses(grp);
  print_identity(grp, id, out);
  report_sampled(grp, id, opt, out);
}

void cmd_identity(const catalog::GammaGroup& grp, const IdentityOptions& opt, std::ostream& out) {
  if (opt.universal) throw Unsupported("gamma: only sampled verification is available");
  const auto candidates = grp.sigma_candidates(opt.sigma + 1);
  if (candidates.size() <= opt.sigma) throw InvalidInput("gamma: no sigma candidate with that index");
  const auto base_id = engine::positive_identity_witnesses(grp.base());
  const auto id = grp.lift_identity(base_id, candidates[opt.sigma]);
  out << "sigma: " << element_text(grp, word_printer(grp), candidates[opt.sigma]) << "\n";
  print_identity(grp, id, out);
  report_sampled(grp, id, opt, out);
}

void cmd_catalog_list(std::ostream& out) {
  const std::vector<std::pair<std::string, std::string>> entries = {
      {"dinf", "infinite dihedral group, generated by two reflections a, b"},
      {"klein", "Klein bottle group <x, y | x^y = x^-1>"},
      {"promislow", "Promislow group <x, y | (x^2)^y = x^-2, (y^2)^x = y^-2>"},
      {"Z", "infinite cyclic group, generator z"},
      {"K:p,n,m", "K(p^n, p^m) in the metabelian collection backend"},
      {"Kspec:p,n,m", "K(p^n, p^m) as an explicit extension of C_{p^n} x C_{p^m}"},
      {"wreath:<file>", "Z wr Q for the multiplication table in <file>"},
      {"freeabext:<file>", "F/[R,R] for the rank, table and images in <file>"},
      {"spec:<file>", "extension read from a JSON spec"},
      {"gamma", "ZP x| (P x P) over the Promislow group (identity checks only)"},
      {"A*B", "direct product of extension-backed groups"},
  };
  for (const auto& [name, what] : entries) out << name << std::string(name.size() < 18 ? 18 - name.size() : 1, ' ') << what << "\n";
}

}  // namespace

// ---------------------------------------------------------------------------

ext::ExtensionSpec resolve_spec(const std::string& name) {
  if (name.find('*') != std::string::npos) {
    const auto parts = split(name, '*');
    ext::ExtensionSpec spec = resolve_spec(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i) spec = ext::direct_product(spec, resolve_spec(parts[i]));
    return spec;
  }
  if (name == "dinf") return catalog::build_dihedral_infinite();
  if (name == "klein") return catalog::build_klein_bottle();
  if (name == "promislow") return catalog::build_promislow();
  if (name == "Z") return catalog::build_integers();
  if (starts_with(name, "K:") || starts_with(name, "Kspec:")) {
    const auto [p, n, m] = parse_triple(name, name.substr(name.find(':') + 1));
    return catalog::build_K_spec(p, n, m);
  }
  if (starts_with(name, "wreath:"))
    return catalog::build_wreath(io::group_table_from_json(io::read_json_file(name.substr(7))));
  if (starts_with(name, "freeabext:"))
    return catalog::build_free_abelianized_extension(io::free_abel_input_from_json(io::read_json_file(name.substr(10))));
  if (starts_with(name, "spec:")) return io::spec_from_json(io::read_json_file(name.substr(5)));
  if (name == "gamma") throw InvalidInput("gamma is not an extension of a lattice by a finite group");
  throw InvalidInput("unknown group '" + name + "' (see `catalog list`)");
}

Backend resolve_group(const std::string& name) {
  if (name.find('*') == std::string::npos) {
    if (starts_with(name, "K:")) {
      const auto [p, n, m] = parse_triple(name, name.substr(2));
      return catalog::build_K_group(p, n, m);
    }
    if (name == "gamma") return catalog::build_casolo_gamma();
  }
  return ext::ExtGroup(resolve_spec(name));
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("GENTOR_SEED")) {
    try {
      std::size_t used = 0;
      const std::string s(env);
      const std::uint64_t v = std::stoull(s, &used);
      if (used == s.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw InvalidInput("GENTOR_SEED is not an unsigned integer");
  }
  return 1;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized torsion in finitely generated abelian-by-finite groups.", "gentor"};
  app.require_subcommand(1);

  auto* catalog_cmd = app.add_subcommand("catalog", "Catalog of built-in groups");
  catalog_cmd->require_subcommand(1);
  auto* list_cmd = catalog_cmd->add_subcommand("list", "List group names");

  std::string group, text, file;
  auto* info_cmd = app.add_subcommand("info", "Abelianization, index, torsion-freeness, center rank, exponent bounds");
  info_cmd->add_option("group", group)->required();

  auto* decide_cmd = app.add_subcommand("decide", "Is the element generalized torsion?");
  decide_cmd->add_option("group", group)->required();
  decide_cmd->add_option("word", text)->required();

  WitnessOptions wopt;
  auto* witness_cmd = app.add_subcommand("witness", "Certificate g^{x_1} ... g^{x_k} = 1 as JSON");
  witness_cmd->add_option("group", group)->required();
  witness_cmd->add_option("word", text)->required();
  witness_cmd->add_flag("--search", wopt.search, "Least k by breadth-first search over a ball");
  witness_cmd->add_option("--max-k", wopt.max_k, "Largest k tried by --search")->capture_default_str();
  witness_cmd->add_option("--radius", wopt.radius, "Word radius of the conjugator ball")->capture_default_str();
  witness_cmd->add_option("--max-states", wopt.max_states, "State budget for --search")->capture_default_str();

  auto* exponent_cmd = app.add_subcommand("exponent", "Bounds on the generalized exponent");
  exponent_cmd->add_option("group", group)->required();

  IdentityOptions iopt;
  std::uint64_t seed_flag = 0;
  auto* identity_cmd = app.add_subcommand("identity", "Build and verify the positive generalized identity");
  identity_cmd->add_option("group", group)->required();
  auto* universal = identity_cmd->add_flag("--universal", iopt.universal, "Symbolic check over every coset");
  identity_cmd->add_option("--samples", iopt.samples, "Number of sampled elements")->capture_default_str()->excludes(universal);
  auto* seed_opt = identity_cmd->add_option("--seed", seed_flag, "Sampling seed (default: GENTOR_SEED, else 1)");
  seed_opt->excludes(universal);
  identity_cmd->add_option("--sigma", iopt.sigma, "gamma only: index of the sigma candidate")->capture_default_str();

  auto* validate_cmd = app.add_subcommand("validate", "Check a JSON extension spec");
  validate_cmd->add_option("spec", file, "Spec file")->required();

  auto* verify_cmd = app.add_subcommand("verify-cert", "Re-verify a certificate written by `witness`");
  verify_cmd->add_option("certificate", file, "Certificate file")->required();

  auto* spec_cmd = app.add_subcommand("spec", "Print an extension-backed group as a JSON spec");
  spec_cmd->add_option("group", group)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (list_cmd->parsed()) {
      cmd_catalog_list(out);
    } else if (info_cmd->parsed()) {
      std::visit([&](const auto& g) { cmd_info(group, g, out); }, resolve_group(group));
    } else if (decide_cmd->parsed()) {
      std::visit([&](const auto& g) { cmd_decide(g, text, out); }, resolve_group(group));
    } else if (witness_cmd->parsed()) {
      return std::visit([&](const auto& g) { return cmd_witness(group, g, text, wopt, out, err); }, resolve_group(group));
    } else if (exponent_cmd->parsed()) {
      std::visit([&](const auto& g) { cmd_exponent(g, out); }, resolve_group(group));
    } else if (identity_cmd->parsed()) {
      if (!iopt.universal) {
        iopt.seed = resolve_seed(seed_opt->count() ? std::optional(seed_flag) : std::nullopt);
        if (iopt.samples == 0) throw InvalidInput("--samples must be positive");
      }
      out << "group: " << group << "\n";
      std::visit([&](const auto& g) { cmd_identity(g, iopt, out); }, resolve_group(group));
    } else if (validate_cmd->parsed()) {
      const ext::ValidationReport report = ext::validate_extension(io::spec_from_json(io::read_json_file(file)));
      out << report.summary() << "\n";
      return report.ok() ? kOk : kInvalidInput;
    } else if (verify_cmd->parsed()) {
      const io::Certificate c = io::certificate_from_json(io::read_json_file(file));
      const bool ok = std::visit(
          [&](const auto& g) {
            if constexpr (std::is_same_v<std::decay_t<decltype(g)>, catalog::GammaGroup>) {
              require_abelianization(g);
              return false;
            } else {
              return check_certificate(g, c, out);
            }
          },
          resolve_group(c.group));
      out << "verified: " << yes_no(ok) << "\n";
    } else if (spec_cmd->parsed()) {
      out << io::dump_members(io::spec_to_json(resolve_spec(group))) << "\n";
    }
  } catch (const TheoremViolation& e) {
    err << "error: " << e.what() << "\n";
    return kTheoremViolation;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const Unsupported& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kOk;
}

}  // namespace gentor::cli
