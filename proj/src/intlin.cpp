#include "gentor/intlin.hpp"

#include <algorithm>
#include <sstream>

#include "gentor/errors.hpp"

namespace gentor {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidInput("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void IntMatrix::append_row(const IntVector& row) {
  if (row.size() != cols_) throw InvalidInput("append_row: dimension mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) {
    const Integer& s = (*this)(src, c);
    if (s != 0) (*this)(dst, c) += factor * s;
  }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) {
    const Integer& s = (*this)(r, src);
    if (s != 0) (*this)(r, dst) += factor * s;
  }
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix product: dimension mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("matrix sum: dimension mismatch");
  IntMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("matrix difference: dimension mismatch");
  IntMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ",";
    os << gentor::to_string(row(r));
  }
  os << "]";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.to_string(); }

IntVector operator*(const IntMatrix& m, const IntVector& v) {
  if (m.cols() != v.size()) throw InvalidInput("matrix-vector product: dimension mismatch");
  IntVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (v[j] != 0 && m(i, j) != 0) out[i] += m(i, j) * v[j];
  return out;
}

IntVector add(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InvalidInput("vector sum: dimension mismatch");
  IntVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

IntVector sub(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InvalidInput("vector difference: dimension mismatch");
  IntVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

IntVector negate(const IntVector& a) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

IntVector scale(const Integer& k, const IntVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = k * v[i];
  return out;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

std::string to_string(const IntVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + "]";
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t integer_rank(const IntMatrix& m) { return smith_normal_form(m).rank; }

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

HermiteDecomposition hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < h.cols() && pivot_row < h.rows(); ++col) {
    // Euclid on the column below pivot_row until a single nonzero remains.
    while (true) {
      std::size_t best = h.rows();
      for (std::size_t r = pivot_row; r < h.rows(); ++r) {
        if (h(r, col) == 0) continue;
        if (best == h.rows() || abs(h(r, col)) < abs(h(best, col))) best = r;
      }
      if (best == h.rows()) break;
      h.swap_rows(pivot_row, best);
      u.swap_rows(pivot_row, best);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < h.rows(); ++r) {
        if (h(r, col) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), h(r, col).get_mpz_t(), h(pivot_row, col).get_mpz_t());
        h.add_row_multiple(r, pivot_row, -q);
        u.add_row_multiple(r, pivot_row, -q);
        if (h(r, col) != 0) done = false;
      }
      if (done) break;
    }
    if (h(pivot_row, col) == 0) continue;
    if (h(pivot_row, col) < 0) {
      h.negate_row(pivot_row);
      u.negate_row(pivot_row);
    }
    const Integer pivot = h(pivot_row, col);
    for (std::size_t r = 0; r < pivot_row; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(r, col).get_mpz_t(), pivot.get_mpz_t());
      h.add_row_multiple(r, pivot_row, -q);
      u.add_row_multiple(r, pivot_row, -q);
    }
    ++pivot_row;
  }
  return {std::move(h), std::move(u)};
}

IntVector SmithDecomposition::diagonal() const {
  const std::size_t k = std::min(d.rows(), d.cols());
  IntVector out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = d(i, i);
  return out;
}

namespace {

struct SmithWork {
  IntMatrix d, u, v, vinv;

  void swap_rows(std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    u.swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    d.swap_cols(a, b);
    v.swap_cols(a, b);
    vinv.swap_rows(a, b);
  }
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    d.add_row_multiple(dst, src, k);
    u.add_row_multiple(dst, src, k);
  }
  // col[dst] += k col[src]; the inverse update is row[src] -= k row[dst].
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    d.add_col_multiple(dst, src, k);
    v.add_col_multiple(dst, src, k);
    vinv.add_row_multiple(src, dst, -k);
  }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  SmithWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()),
              IntMatrix::identity(m.cols())};
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t k = std::min(rows, cols);
  std::size_t rank = 0;

  for (std::size_t t = 0; t < k; ++t) {
    bool found_any = false;
    while (true) {
      std::size_t pr = rows, pc = cols;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c) {
          const Integer& x = w.d(r, c);
          if (x == 0) continue;
          if (pr == rows || abs(x) < abs(w.d(pr, pc))) {
            pr = r;
            pc = c;
          }
        }
      if (pr == rows) break;
      found_any = true;
      w.swap_rows(t, pr);
      w.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (w.d(r, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), w.d(r, t).get_mpz_t(), w.d(t, t).get_mpz_t());
        w.add_row(r, t, -q);
        if (w.d(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (w.d(t, c) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), w.d(t, c).get_mpz_t(), w.d(t, t).get_mpz_t());
        w.add_col(c, t, -q);
        if (w.d(t, c) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into the pivot row and repeat.
      bool divides = true;
      for (std::size_t r = t + 1; r < rows && divides; ++r)
        for (std::size_t c = t + 1; c < cols; ++c) {
          if (w.d(r, c) == 0) continue;
          if (!mpz_divisible_p(w.d(r, c).get_mpz_t(), w.d(t, t).get_mpz_t())) {
            w.add_row(t, r, 1);
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (!found_any) break;
    if (w.d(t, t) < 0) {
      w.d.negate_row(t);
      w.u.negate_row(t);
    }
    ++rank;
  }
  return {std::move(w.u), std::move(w.d), std::move(w.v), std::move(w.vinv), rank};
}

std::optional<IntVector> solve_integer_linear(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw InvalidInput("solve_integer_linear: dimension mismatch");
  const SmithDecomposition s = smith_normal_form(m);
  const IntVector ub = s.u * b;
  IntVector y(m.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < s.rank) {
      if (!mpz_divisible_p(ub[i].get_mpz_t(), s.d(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), ub[i].get_mpz_t(), s.d(i, i).get_mpz_t());
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return s.v * y;
}

const Integer& Order::value() const {
  if (!value_) throw InvalidInput("order is infinite");
  return *value_;
}

std::string Order::to_string() const { return value_ ? value_->get_str() : "inf"; }

Integer AbelianStructure::torsion_exponent() const {
  return invariant_factors_.empty() ? Integer(1) : invariant_factors_.back();
}

Integer AbelianStructure::torsion_order() const {
  Integer out = 1;
  for (const auto& d : invariant_factors_) out *= d;
  return out;
}

void AbelianStructure::reduce_coordinates(IntVector& coords) const {
  for (std::size_t i = 0; i < invariant_factors_.size(); ++i)
    mpz_fdiv_r(coords[i].get_mpz_t(), coords[i].get_mpz_t(), invariant_factors_[i].get_mpz_t());
}

IntVector AbelianStructure::canonical(const IntVector& v) const {
  IntVector coords = to_canonical_ * v;
  reduce_coordinates(coords);
  return coords;
}

IntVector AbelianStructure::lift(const IntVector& coords) const { return section_ * coords; }

bool AbelianStructure::equivalent(const IntVector& a, const IntVector& b) const {
  return canonical(a) == canonical(b);
}

Order AbelianStructure::order(const IntVector& v) const {
  const IntVector coords = canonical(v);
  const std::size_t t = invariant_factors_.size();
  for (std::size_t i = t; i < coords.size(); ++i)
    if (coords[i] != 0) return Order::infinite();
  Integer result = 1;
  for (std::size_t i = 0; i < t; ++i) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), coords[i].get_mpz_t(), invariant_factors_[i].get_mpz_t());
    result = lcm(result, Integer(invariant_factors_[i] / g));
  }
  return Order::finite(result);
}

std::string AbelianStructure::describe() const {
  std::string s;
  for (const auto& d : invariant_factors_) {
    if (!s.empty()) s += " x ";
    s += "C" + d.get_str();
  }
  for (std::size_t i = 0; i < free_rank_; ++i) {
    if (!s.empty()) s += " x ";
    s += "Z";
  }
  return s.empty() ? "1" : s;
}

AbelianStructure cokernel_structure(const IntMatrix& relations, std::size_t generators) {
  if (relations.cols() != generators)
    throw InvalidInput("cokernel_structure: relation width differs from generator count");
  const SmithDecomposition s = smith_normal_form(relations);
  // A row vector v maps to coordinates v * V, i.e. column coordinates V^T v.
  const IntMatrix vt = s.v.transpose();
  const IntMatrix vinv_t = s.v_inverse.transpose();

  AbelianStructure out;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (s.d(i, i) == 1) continue;
    out.invariant_factors_.push_back(s.d(i, i));
    keep.push_back(i);
  }
  for (std::size_t i = s.rank; i < generators; ++i) keep.push_back(i);
  out.free_rank_ = generators - s.rank;

  out.to_canonical_ = IntMatrix(keep.size(), generators);
  out.section_ = IntMatrix(generators, keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k)
    for (std::size_t j = 0; j < generators; ++j) {
      out.to_canonical_(k, j) = vt(keep[k], j);
      out.section_(j, k) = vinv_t(j, keep[k]);
    }
  return out;
}

Order element_order_in_cokernel(const AbelianStructure& s, const IntVector& v) {
  if (v.size() != s.generator_count()) throw InvalidInput("element_order_in_cokernel: dimension mismatch");
  return s.order(v);
}

}  // namespace gentor
