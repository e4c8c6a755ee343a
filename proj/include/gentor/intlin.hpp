#pragma once

// Exact integer linear algebra over arbitrary-precision integers.
//
// Conventions: relations are rows, generators are columns, and a finitely
// generated abelian group is the cokernel Z^c / rowspace(R).

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gentor {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  void append_row(const IntVector& row);

  IntMatrix transpose() const;
  bool is_zero() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

IntVector operator*(const IntMatrix& m, const IntVector& v);
IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector negate(const IntVector& a);
IntVector scale(const Integer& k, const IntVector& v);
bool is_zero(const IntVector& v);
std::string to_string(const IntVector& v);

/// Exact determinant (fraction-free Bareiss elimination). Square input only.
Integer determinant(const IntMatrix& m);
std::size_t integer_rank(const IntMatrix& m);

struct HermiteDecomposition {
  IntMatrix h;  // row-style Hermite form
  IntMatrix u;  // unimodular, u * M = h
};

/// Row-style Hermite normal form: pivots positive, entries above each pivot
/// reduced into [0, pivot).
HermiteDecomposition hermite_normal_form(const IntMatrix& m);

struct SmithDecomposition {
  IntMatrix u;          // rows x rows, unimodular
  IntMatrix d;          // rows x cols, diagonal
  IntMatrix v;          // cols x cols, unimodular
  IntMatrix v_inverse;  // v^{-1}, maintained alongside v
  std::size_t rank = 0;

  /// d_1, ..., d_min(rows, cols) (zeros included).
  IntVector diagonal() const;
};

/// U * M * V = D with d_i | d_{i+1}, all d_i >= 0. Pivot is the first
/// minimal-absolute-value nonzero entry in row-major order.
SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Some x with M x = b over Z, or nullopt when no integer solution exists.
std::optional<IntVector> solve_integer_linear(const IntMatrix& m, const IntVector& b);

/// Order of an element of a finitely generated abelian group.
class Order {
 public:
  static Order infinite() { return Order(); }
  static Order finite(Integer k) { return Order(std::move(k)); }

  bool is_finite() const { return value_.has_value(); }
  const Integer& value() const;  // throws on infinite order

  friend bool operator==(const Order&, const Order&) = default;
  std::string to_string() const;

 private:
  Order() = default;
  explicit Order(Integer k) : value_(std::move(k)) {}
  std::optional<Integer> value_;
};

/// Z^c / rowspace(R) in canonical coordinates: one coordinate per
/// invariant factor (reduced modulo it), then the free coordinates.
class AbelianStructure {
 public:
  AbelianStructure() = default;

  const IntVector& invariant_factors() const { return invariant_factors_; }
  std::size_t free_rank() const { return free_rank_; }
  std::size_t generator_count() const { return to_canonical_.cols(); }
  std::size_t coordinate_count() const { return invariant_factors_.size() + free_rank_; }
  bool is_finite() const { return free_rank_ == 0; }
  /// Exponent of the torsion subgroup (1 when it is trivial).
  Integer torsion_exponent() const;
  Integer torsion_order() const;

  /// (t + f) x c matrix sending generator-exponent vectors to coordinates.
  const IntMatrix& to_canonical() const { return to_canonical_; }
  /// c x (t + f) matrix sending coordinates back to a representative.
  const IntMatrix& section() const { return section_; }

  IntVector canonical(const IntVector& v) const;
  IntVector lift(const IntVector& coords) const;
  /// Reduce already-canonical coordinates modulo the invariant factors.
  void reduce_coordinates(IntVector& coords) const;
  bool equivalent(const IntVector& a, const IntVector& b) const;
  Order order(const IntVector& v) const;

  std::string describe() const;  // e.g. "C4 x C4 x Z"

 private:
  friend AbelianStructure cokernel_structure(const IntMatrix& relations, std::size_t generators);

  IntVector invariant_factors_;
  std::size_t free_rank_ = 0;
  IntMatrix to_canonical_;
  IntMatrix section_;
};

/// Structure of Z^generators / rowspace(relations). `relations` may have
/// zero rows; its column count must then equal `generators`.
AbelianStructure cokernel_structure(const IntMatrix& relations, std::size_t generators);
inline AbelianStructure cokernel_structure(const IntMatrix& relations) {
  return cokernel_structure(relations, relations.cols());
}

Order element_order_in_cokernel(const AbelianStructure& s, const IntVector& v);

Integer lcm(const Integer& a, const Integer& b);

}  // namespace gentor
