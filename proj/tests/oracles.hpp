#pragma once

// Reference computations used only by the tests. None of them calls into the
// normal-form or group code they check.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <tuple>
#include <random>
#include <string>
#include <vector>

#include "gentor/intlin.hpp"

namespace oracle {

using gentor::IntMatrix;
using gentor::Integer;
using gentor::IntVector;

/// Cofactor expansion along the first row.
inline Integer laplace_det(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<Integer>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    const Integer term = m[0][c] * laplace_det(minor);
    det += (c % 2 == 0) ? term : Integer(-term);
  }
  return det;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// gcd of all k x k minors.
inline Integer minor_gcd(const IntMatrix& m, std::size_t k) {
  std::vector<std::vector<std::size_t>> rows, cols;
  std::vector<std::size_t> cur;
  subsets(m.rows(), k, 0, cur, rows);
  subsets(m.cols(), k, 0, cur, cols);
  Integer g = 0;
  for (const auto& rs : rows)
    for (const auto& cs : cols) {
      std::vector<std::vector<Integer>> sub;
      for (std::size_t r : rs) {
        std::vector<Integer> row;
        for (std::size_t c : cs) row.push_back(m(r, c));
        sub.push_back(row);
      }
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), laplace_det(sub).get_mpz_t());
    }
  return g;
}

/// Nonzero invariant factors d_k = D_k / D_{k-1}.
inline std::vector<Integer> invariant_factors_by_minors(const IntMatrix& m) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    const Integer dk = minor_gcd(m, k);
    if (dk == 0) break;
    out.push_back(dk / prev);
    prev = dk;
  }
  return out;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

/// Random word text over the names, letters and their inverses, length <= max_len.
inline std::string random_word(std::mt19937_64& rng, const std::vector<std::string>& names, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len), letter(0, 2 * names.size() - 1);
  const std::size_t n = len(rng);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t l = letter(rng);
    if (!out.empty()) out += "*";
    out += names[l / 2];
    if (l % 2) out += "^-1";
  }
  return out.empty() ? "1" : out;
}

/// Exponent sum of one generator name in a word produced by random_word.
inline long exponent_sum(const std::string& word, const std::string& name) {
  long sum = 0;
  std::size_t pos = 0;
  while (pos < word.size()) {
    std::size_t end = word.find('*', pos);
    if (end == std::string::npos) end = word.size();
    const std::string tok = word.substr(pos, end - pos);
    if (tok == name) sum += 1;
    if (tok == name + "^-1") sum -= 1;
    pos = end + 1;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Promislow group as rational affine maps of R^3, 4x4 homogeneous matrices:
// x: v -> diag(1,-1,-1) v + (1/2,1/2,0), y: v -> diag(-1,1,-1) v + (0,1/2,1/2).

using Affine = std::array<std::array<mpq_class, 4>, 4>;

inline Affine affine_identity() {
  Affine m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = i == j ? 1 : 0;
  return m;
}

inline Affine affine_mul(const Affine& a, const Affine& b) {
  Affine m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      mpq_class s = 0;
      for (int k = 0; k < 4; ++k) s += a[i][k] * b[k][j];
      m[i][j] = s;
    }
  return m;
}

/// Inverse of an affine map (R | t): (R^T | -R^T t) since R is a signed diagonal.
inline Affine affine_inv(const Affine& a) {
  Affine m = affine_identity();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = a[j][i];
  for (int i = 0; i < 3; ++i) {
    mpq_class s = 0;
    for (int k = 0; k < 3; ++k) s -= m[i][k] * a[k][3];
    m[i][3] = s;
  }
  return m;
}

inline Affine promislow_x() {
  Affine m = affine_identity();
  m[1][1] = -1;
  m[2][2] = -1;
  m[0][3] = mpq_class(1, 2);
  m[1][3] = mpq_class(1, 2);
  return m;
}

inline Affine promislow_y() {
  Affine m = affine_identity();
  m[0][0] = -1;
  m[2][2] = -1;
  m[1][3] = mpq_class(1, 2);
  m[2][3] = mpq_class(1, 2);
  return m;
}

inline Affine affine_pow(const Affine& a, long k) {
  Affine base = k < 0 ? affine_inv(a) : a, out = affine_identity();
  for (long i = 0; i < (k < 0 ? -k : k); ++i) out = affine_mul(out, base);
  return out;
}

/// Image of a word produced by random_word over {x, y}.
inline Affine promislow_word(const std::string& word) {
  Affine out = affine_identity();
  std::size_t pos = 0;
  while (pos < word.size()) {
    std::size_t end = word.find('*', pos);
    if (end == std::string::npos) end = word.size();
    const std::string tok = word.substr(pos, end - pos);
    if (tok != "1") {
      const Affine g = tok[0] == 'x' ? promislow_x() : promislow_y();
      out = affine_mul(out, tok.size() > 1 ? affine_inv(g) : g);
    }
    pos = end + 1;
  }
  return out;
}

}  // namespace oracle

namespace oracle {

// ---------------------------------------------------------------------------
// Free metabelian group on x, y through the Magnus embedding: pairs
// (X^i Y^j, d) with d in Z[X^+-1, Y^+-1]^2, multiplied as upper triangular
// matrices [[m, d], [0, 1]].

struct Magnus {
  long i = 0, j = 0;
  std::map<std::tuple<int, long, long>, long> d;  // (basis, exp X, exp Y) -> coefficient

  friend bool operator==(const Magnus&, const Magnus&) = default;
};

inline void magnus_add(std::map<std::tuple<int, long, long>, long>& d, const std::tuple<int, long, long>& k, long c) {
  if ((d[k] += c) == 0) d.erase(k);
}

inline Magnus magnus_mul(const Magnus& a, const Magnus& b) {
  Magnus out{a.i + b.i, a.j + b.j, a.d};
  for (const auto& [k, c] : b.d) {
    const auto& [basis, ex, ey] = k;
    magnus_add(out.d, {basis, ex + a.i, ey + a.j}, c);
  }
  return out;
}

inline Magnus magnus_inv(const Magnus& a) {
  Magnus out{-a.i, -a.j, {}};
  for (const auto& [k, c] : a.d) {
    const auto& [basis, ex, ey] = k;
    magnus_add(out.d, {basis, ex - a.i, ey - a.j}, -c);
  }
  return out;
}

inline Magnus magnus_x() { return {1, 0, {{{0, 0, 0}, 1}}}; }
inline Magnus magnus_y() { return {0, 1, {{{1, 0, 0}, 1}}}; }

inline Magnus magnus_pow(const Magnus& a, long k) {
  Magnus base = k < 0 ? magnus_inv(a) : a, out;
  for (long i = 0; i < (k < 0 ? -k : k); ++i) out = magnus_mul(out, base);
  return out;
}

inline Magnus magnus_comm(const Magnus& a, const Magnus& b) {
  return magnus_mul(magnus_mul(magnus_inv(a), magnus_inv(b)), magnus_mul(a, b));
}

/// Laurent polynomial in X, Y as exponent pair -> coefficient.
using Laurent = std::map<std::pair<long, long>, long>;

/// Psi_a(Z) for Z = X (axis 0) or Y (axis 1): 1 + Z + ... + Z^(a-1), and -Z^a - ... - Z^-1 for a < 0.
inline Laurent laurent_psi(long a, int axis) {
  Laurent out;
  for (long k = 0; k < a; ++k) out[axis == 0 ? std::pair{k, 0L} : std::pair{0L, k}] += 1;
  for (long k = a; k < 0; ++k) out[axis == 0 ? std::pair{k, 0L} : std::pair{0L, k}] -= 1;
  return out;
}

inline Laurent laurent_mul(const Laurent& u, const Laurent& w) {
  Laurent out;
  for (const auto& [e1, c1] : u)
    for (const auto& [e2, c2] : w)
      if ((out[{e1.first + e2.first, e1.second + e2.second}] += c1 * c2) == 0) out.erase({e1.first + e2.first, e1.second + e2.second});
  return out;
}

/// prod over the terms of f of ([x,y]^(x^i y^j))^coefficient.
inline Magnus magnus_c_power(const Laurent& f) {
  const Magnus c = magnus_comm(magnus_x(), magnus_y());
  Magnus out;
  for (const auto& [e, coef] : f) {
    const Magnus h = magnus_mul(magnus_pow(magnus_x(), e.first), magnus_pow(magnus_y(), e.second));
    out = magnus_mul(out, magnus_pow(magnus_mul(magnus_mul(magnus_inv(h), c), h), coef));
  }
  return out;
}

}  // namespace oracle

namespace oracle {

/// Affine image of the Promislow spec element (q, a) = rep_q * x^(2 a1) * y^(2 a2) * (xy)^(-2 a3)
/// with rep = 1, x, y, xy.
inline Affine promislow_model(std::size_t q, const IntVector& a) {
  const Affine xy = affine_mul(promislow_x(), promislow_y());
  const std::array<Affine, 4> reps = {affine_identity(), promislow_x(), promislow_y(), xy};
  Affine m = reps[q];
  m = affine_mul(m, affine_pow(promislow_x(), 2 * a[0].get_si()));
  m = affine_mul(m, affine_pow(promislow_y(), 2 * a[1].get_si()));
  return affine_mul(m, affine_pow(xy, -2 * a[2].get_si()));
}

}  // namespace oracle
