#include "gentor/express.hpp"

#include <deque>
#include <set>

namespace gentor::word {

namespace {

void append(Letters& out, const Letters& w) {
  for (const auto& [gen, e] : w) {
    if (!out.empty() && out.back().first == gen) {
      out.back().second += e;
      if (out.back().second == 0) out.pop_back();
    } else if (e != 0) {
      out.emplace_back(gen, e);
    }
  }
}

Letters inverse(const Letters& w) {
  Letters out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.emplace_back(it->first, -it->second);
  return out;
}

}  // namespace

ExtExpresser::ExtExpresser(const ext::ExtGroup& grp, std::size_t ball_radius, std::size_t ball_cap)
    : grp_(grp), lattice_(grp.spec().n, 0) {
  const auto& gens = grp.generators();
  {
    std::vector<ext::ExtElement> frontier{grp.identity()};
    ball_.emplace(grp.identity(), Letters{});
    for (std::size_t r = 0; r < ball_radius && ball_.size() < ball_cap; ++r) {
      std::vector<ext::ExtElement> next;
      for (const auto& g : frontier)
        for (std::size_t i = 0; i < gens.size(); ++i)
          for (int sign : {1, -1}) {
            ext::ExtElement h = grp.mul(g, sign > 0 ? gens[i].second : grp.inv(gens[i].second));
            if (ball_.contains(h)) continue;
            Letters w = ball_.at(g);
            append(w, {{i, Integer(sign)}});
            ball_.emplace(h, std::move(w));
            next.push_back(std::move(h));
          }
      frontier = std::move(next);
    }
  }

  const std::size_t s = grp.index();
  coset_words_.assign(s, std::nullopt);
  coset_elements_.assign(s, grp.identity());
  coset_words_[0] = Letters{};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t q = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const ext::ExtElement next = grp.mul(coset_elements_[q], gens[i].second);
      if (coset_words_[next.q]) continue;
      Letters w = *coset_words_[q];
      append(w, {{i, Integer(1)}});
      coset_words_[next.q] = std::move(w);
      coset_elements_[next.q] = next;
      queue.push_back(next.q);
    }
  }

  std::set<IntVector> seen;
  std::vector<IntVector> columns;
  for (std::size_t q = 0; q < s; ++q) {
    if (!coset_words_[q]) continue;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const ext::ExtElement step = grp.mul(coset_elements_[q], gens[i].second);
      const ext::ExtElement t = grp.mul(step, grp.inv(coset_elements_[step.q]));
      if (is_zero(t.a) || !seen.insert(t.a).second) continue;
      Letters w = *coset_words_[q];
      append(w, {{i, Integer(1)}});
      append(w, inverse(*coset_words_[step.q]));
      lattice_words_.push_back(std::move(w));
      columns.push_back(t.a);
    }
  }
  lattice_ = IntMatrix(grp.spec().n, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r = 0; r < grp.spec().n; ++r) lattice_(r, c) = columns[c][r];
}

WordExpr ExtExpresser::to_word(const Letters& letters) const {
  WordExpr out = WordExpr::one();
  for (const auto& [gen, e] : letters)
    out = simplify_product(std::move(out), simplify_power(WordExpr::ident(grp_.generators()[gen].first), e));
  return out;
}

std::optional<WordExpr> ExtExpresser::express(const ext::ExtElement& g) const {
  if (const auto it = ball_.find(g); it != ball_.end()) return to_word(it->second);
  if (g.q >= coset_words_.size() || !coset_words_[g.q]) return std::nullopt;
  const ext::ExtElement t = grp_.mul(g, grp_.inv(coset_elements_[g.q]));
  WordExpr out = WordExpr::one();
  if (!is_zero(t.a)) {
    const auto coeffs = solve_integer_linear(lattice_, t.a);
    if (!coeffs) return std::nullopt;
    for (std::size_t i = 0; i < coeffs->size(); ++i) {
      const Integer& c = (*coeffs)[i];
      if (c == 1 || c == -1) {
        out = simplify_product(std::move(out), to_word(c == 1 ? lattice_words_[i] : inverse(lattice_words_[i])));
      } else if (c != 0) {
        out = simplify_product(std::move(out), simplify_power(to_word(lattice_words_[i]), c));
      }
    }
  }
  return simplify_product(std::move(out), to_word(*coset_words_[g.q]));
}

WordExpr express(const metab::KGroup& grp, const metab::MetabElement& g) {
  const WordExpr x = WordExpr::ident("x"), y = WordExpr::ident("y");
  WordExpr out = simplify_product(simplify_power(x, g.alpha), simplify_power(y, g.beta));
  const metab::RingElem u = grp.ring_part(g);
  const auto& R = grp.ring();
  for (std::size_t i = 0; i < R.x_order(); ++i)
    for (std::size_t j = 0; j < R.y_order(); ++j) {
      const Integer& k = u[R.index(static_cast<long long>(i), static_cast<long long>(j))];
      if (k == 0) continue;
      WordExpr c = WordExpr::commutator(x, y);
      const WordExpr by = simplify_product(simplify_power(x, Integer(static_cast<unsigned long>(i))),
                                           simplify_power(y, Integer(static_cast<unsigned long>(j))));
      if (by.kind != WordExpr::Kind::identity) c = WordExpr::conjugate(std::move(c), by);
      out = simplify_product(std::move(out), simplify_power(std::move(c), k));
    }
  return out;
}

WordExpr rename_identifiers(WordExpr e, const std::string& suffix) {
  if (e.kind == WordExpr::Kind::identifier) e.name += suffix;
  for (auto& c : e.children) c = rename_identifiers(std::move(c), suffix);
  return e;
}

std::optional<WordExpr> GammaExpresser::express(const catalog::GammaElement& e) const {
  WordExpr out = WordExpr::one();
  for (const auto& [k, c] : e.r) {
    const auto wk = base_.express(k);
    if (!wk) return std::nullopt;
    WordExpr term = WordExpr::ident("t");
    if (wk->kind != WordExpr::Kind::identity)
      term = WordExpr::conjugate(std::move(term), WordExpr::power(rename_identifiers(*wk, "_l"), -1));
    out = simplify_product(std::move(out), simplify_power(std::move(term), c));
  }
  const auto wg = base_.express(e.g), wh = base_.express(e.h);
  if (!wg || !wh) return std::nullopt;
  out = simplify_product(std::move(out), rename_identifiers(*wg, "_l"));
  return simplify_product(std::move(out), rename_identifiers(*wh, "_r"));
}

}  // namespace gentor::word
