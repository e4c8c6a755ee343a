#include "gentor/catalog.hpp"

#include <deque>
#include <limits>

#include "gentor/engine.hpp"
#include "gentor/errors.hpp"

namespace gentor::catalog {

namespace {

IntVector vec(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

IntMatrix diag(std::initializer_list<long> xs) {
  IntMatrix m(xs.size(), xs.size());
  std::size_t i = 0;
  for (long x : xs) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

ext::GroupTable cyclic_table(std::size_t k) {
  ext::GroupTable t(k, std::vector<std::size_t>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) t[a][b] = (a + b) % k;
  return t;
}

std::vector<std::vector<IntVector>> zero_cocycle(std::size_t s, std::size_t n) {
  return std::vector<std::vector<IntVector>>(s, std::vector<IntVector>(s, IntVector(n)));
}

}  // namespace

ext::ExtensionSpec build_dihedral_infinite() {
  ext::ExtensionSpec s;
  s.q_size = 2;
  s.q_table = cyclic_table(2);
  s.n = 1;
  s.phi = {diag({1}), diag({-1})};
  s.coc = zero_cocycle(2, 1);
  // two reflections a, b with ab the unit translation
  s.generators = {{"a", {1, vec({0})}}, {"b", {1, vec({1})}}};
  return s;
}

ext::ExtensionSpec build_klein_bottle() {
  ext::ExtensionSpec s;
  s.q_size = 2;
  s.q_table = cyclic_table(2);
  s.n = 2;
  s.phi = {diag({1, 1}), diag({-1, 1})};
  s.coc = zero_cocycle(2, 2);
  s.coc[1][1] = vec({0, 1});  // y^2 = t_2
  s.generators = {{"x", {0, vec({1, 0})}}, {"y", {1, vec({0, 0})}}};
  return s;
}

ext::ExtensionSpec build_promislow() {
  // Coordinates from the affine model x: v -> diag(1,-1,-1) v + (1/2,1/2,0),
  // y: v -> diag(-1,1,-1) v + (0,1/2,1/2); point classes 0 = 1, 1 = x, 2 = y, 3 = xy.
  ext::ExtensionSpec s;
  s.q_size = 4;
  s.q_table = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  s.n = 3;
  s.phi = {diag({1, 1, 1}), diag({1, -1, -1}), diag({-1, 1, -1}), diag({-1, -1, 1})};
  s.coc = {
      {vec({0, 0, 0}), vec({0, 0, 0}), vec({0, 0, 0}), vec({0, 0, 0})},
      {vec({0, 0, 0}), vec({1, 0, 0}), vec({0, 0, 0}), vec({-1, 0, 0})},
      {vec({0, 0, 0}), vec({1, -1, 1}), vec({0, 1, 0}), vec({-1, 0, -1})},
      {vec({0, 0, 0}), vec({0, -1, 1}), vec({0, 1, 0}), vec({0, 0, -1})},
  };
  s.generators = {{"x", {1, vec({0, 0, 0})}}, {"y", {2, vec({0, 0, 0})}}};
  return s;
}

ext::ExtensionSpec build_integers() {
  ext::ExtensionSpec s;
  s.q_size = 1;
  s.q_table = {{0}};
  s.n = 1;
  s.phi = {diag({1})};
  s.coc = zero_cocycle(1, 1);
  s.generators = {{"z", {0, vec({1})}}};
  return s;
}

metab::KGroup build_K_group(int p, int n, int m, std::size_t size_cap) { return metab::build_K(p, n, m, size_cap); }

ext::ExtensionSpec build_K_spec(int p, int n, int m) { return build_K_group(p, n, m).as_extension().spec(); }

ext::ExtensionSpec build_wreath(const ext::GroupTable& table) {
  const ext::ValidationReport report = ext::validate_group_table(table);
  if (!report.ok()) throw InvalidInput("wreath: invalid point group table: " + report.summary());
  const std::size_t s = table.size();
  ext::ExtensionSpec spec;
  spec.q_size = s;
  spec.q_table = table;
  spec.n = s;
  spec.phi.assign(s, IntMatrix(s, s));
  for (std::size_t q = 0; q < s; ++q)
    for (std::size_t p = 0; p < s; ++p) spec.phi[q](table[p][q], p) = 1;
  spec.coc = zero_cocycle(s, s);
  IntVector e0(s);
  e0[0] = 1;
  spec.generators.emplace_back("t", ext::ExtElement{0, e0});
  for (std::size_t q = 1; q < s; ++q) spec.generators.emplace_back("s" + std::to_string(q), ext::ExtElement{q, IntVector(s)});
  return spec;
}

Integer wreath_augmentation(const ext::ExtElement& g) {
  Integer sum = 0;
  for (const auto& x : g.a) sum += x;
  return sum;
}

namespace {

struct FreeLetter {
  std::size_t gen;
  int sign;  // +1 or -1
};
using FreeWord = std::vector<FreeLetter>;

FreeWord inverse(const FreeWord& w) {
  FreeWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->sign});
  return out;
}

FreeWord concat(std::initializer_list<FreeWord> parts) {
  FreeWord out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

class SchreierRewriter {
 public:
  SchreierRewriter(const FreeAbelExtInput& in) : in_(in), s_(in.q_table.size()) {
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    inverse_.assign(s_, 0);
    for (std::size_t q = 0; q < s_; ++q)
      for (std::size_t b = 0; b < s_; ++b)
        if (in.q_table[q][b] == 0) inverse_[q] = b;

    reps_.assign(s_, {});
    std::vector<bool> reached(s_, false);
    std::vector<std::vector<bool>> tree(s_, std::vector<bool>(in.rank, false));
    reached[0] = true;
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
      const std::size_t q = queue.front();
      queue.pop_front();
      for (std::size_t a = 0; a < in.rank; ++a) {
        const std::size_t next = in.q_table[q][in.images[a]];
        if (reached[next]) continue;
        reached[next] = true;
        reps_[next] = concat({reps_[q], FreeWord{{a, 1}}});
        tree[q][a] = true;
        queue.push_back(next);
      }
    }
    for (std::size_t q = 0; q < s_; ++q)
      if (!reached[q]) throw InvalidInput("free abelianized extension: images do not generate Q");

    basis_.assign(s_, std::vector<std::size_t>(in.rank, none));
    for (std::size_t q = 0; q < s_; ++q)
      for (std::size_t a = 0; a < in.rank; ++a)
        if (!tree[q][a]) {
          basis_[q][a] = edges_.size();
          edges_.push_back({q, a});
        }
  }

  std::size_t rank() const { return edges_.size(); }
  const FreeWord& rep(std::size_t q) const { return reps_[q]; }
  std::size_t image(const FreeWord& w) const {
    std::size_t q = 0;
    for (const auto& l : w) q = in_.q_table[q][l.sign > 0 ? in_.images[l.gen] : inverse_[in_.images[l.gen]]];
    return q;
  }
  /// Schreier generator for the non-tree edge k: u_q a u_{q a}^-1.
  FreeWord schreier_generator(std::size_t k) const {
    const auto [q, a] = edges_[k];
    return concat({reps_[q], FreeWord{{a, 1}}, inverse(reps_[in_.q_table[q][in_.images[a]]])});
  }

  /// Abelianized rewrite of a word in R into R/[R,R] coordinates.
  IntVector rewrite(const FreeWord& w) const {
    IntVector out(rank());
    std::size_t q = 0;
    for (const auto& l : w) {
      const std::size_t img = in_.images[l.gen];
      if (l.sign > 0) {
        const std::size_t k = basis_[q][l.gen];
        if (k != std::numeric_limits<std::size_t>::max()) out[k] += 1;
        q = in_.q_table[q][img];
      } else {
        q = in_.q_table[q][inverse_[img]];
        const std::size_t k = basis_[q][l.gen];
        if (k != std::numeric_limits<std::size_t>::max()) out[k] -= 1;
      }
    }
    if (q != 0) throw TheoremViolation("rewritten word does not lie in R");
    return out;
  }

 private:
  const FreeAbelExtInput& in_;
  std::size_t s_;
  std::vector<std::size_t> inverse_;
  std::vector<FreeWord> reps_;
  std::vector<std::vector<std::size_t>> basis_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

}  // namespace

ext::ExtensionSpec build_free_abelianized_extension(const FreeAbelExtInput& input) {
  const ext::ValidationReport table_report = ext::validate_group_table(input.q_table);
  if (!table_report.ok()) throw InvalidInput("free abelianized extension: invalid Q: " + table_report.summary());
  if (input.rank == 0) throw InvalidInput("free abelianized extension: rank must be positive");
  if (input.images.size() != input.rank) throw InvalidInput("free abelianized extension: need one image per generator");
  for (std::size_t img : input.images)
    if (img >= input.q_table.size()) throw InvalidInput("free abelianized extension: image out of range");
  if (!input.names.empty() && input.names.size() != input.rank)
    throw InvalidInput("free abelianized extension: need one name per generator");

  const SchreierRewriter rw(input);
  const std::size_t s = input.q_table.size();
  const std::size_t n = rw.rank();
  if (n != s * (input.rank - 1) + 1) throw TheoremViolation("Schreier rank differs from |Q|(r-1)+1");

  ext::ExtensionSpec spec;
  spec.q_size = s;
  spec.q_table = input.q_table;
  spec.n = n;
  spec.phi.assign(s, IntMatrix(n, n));
  for (std::size_t q = 0; q < s; ++q) {
    const FreeWord& u = rw.rep(q);
    for (std::size_t k = 0; k < n; ++k) {
      const IntVector col = rw.rewrite(concat({inverse(u), rw.schreier_generator(k), u}));
      for (std::size_t i = 0; i < n; ++i) spec.phi[q](i, k) = col[i];
    }
  }
  spec.coc.assign(s, std::vector<IntVector>(s));
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b)
      spec.coc[a][b] = rw.rewrite(concat({inverse(rw.rep(input.q_table[a][b])), rw.rep(a), rw.rep(b)}));

  for (std::size_t i = 0; i < input.rank; ++i) {
    const FreeWord letter{{i, 1}};
    const std::size_t q = rw.image(letter);
    const std::string name = input.names.empty() ? "x" + std::to_string(i + 1) : input.names[i];
    spec.generators.emplace_back(name, ext::ExtElement{q, rw.rewrite(concat({inverse(rw.rep(q)), letter}))});
  }
  const ext::ValidationReport report = ext::validate_extension(spec);
  if (!report.ok()) throw TheoremViolation("free abelianized extension failed validation: " + report.summary());
  return spec;
}

bool central_nontorsion_check(const ext::ExtGroup& group, const ext::ExtElement& g) {
  const bool result = engine::is_generalized_torsion(group, g);
  bool central = true;
  for (const auto& [name, x] : group.generators())
    if (!(group.mul(g, x) == group.mul(x, g))) central = false;
  const bool infinite_order = g.q == 0 && !is_zero(g.a);
  if (central && infinite_order && result)
    throw TheoremViolation("central element of infinite order reported as generalized torsion");
  return result;
}

}  // namespace gentor::catalog
