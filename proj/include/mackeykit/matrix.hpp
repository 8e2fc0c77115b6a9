#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace mackeykit {

using Integer = mpz_class;
using Vector = std::vector<Integer>;

/// Representative of `a` modulo `m` in [0, m); `m == 0` leaves `a` unchanged.
Integer reduce_mod(const Integer& a, const Integer& m);

/// Dense integer matrix, row-major.  Homomorphisms Z^n -> Z^m act on column
/// vectors, so a map A -> B is stored as (gens of B) x (gens of A).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& cols);
  static Matrix hstack(const Matrix& left, const Matrix& right);
  static Matrix vstack(const Matrix& top, const Matrix& bottom);
  static Matrix block_diagonal(const std::vector<Matrix>& blocks);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  void set_column(std::size_t c, const Vector& v);
  void add_to_column(std::size_t c, const Vector& v);

  bool is_zero() const;
  bool is_identity() const;
  Matrix transpose() const;
  Matrix select_rows(const std::vector<std::size_t>& indices) const;
  Matrix select_columns(const std::vector<std::size_t>& indices) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  void add_block(std::size_t r0, std::size_t c0, const Matrix& b, const Integer& scale = 1);

  Matrix operator*(const Matrix& other) const;
  Vector operator*(const Vector& v) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix operator*(const Integer& s) const;
  Matrix& operator+=(const Matrix& other);
  bool operator==(const Matrix& other) const;

  std::vector<std::vector<long>> to_longs() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// (A (x) B) with row index i * B.rows() + p and column j * B.cols() + q.
Matrix kronecker(const Matrix& a, const Matrix& b);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Integer& s, const Vector& a);
bool is_zero(const Vector& v);

enum Transform : unsigned {
  kNoTransform = 0,
  kLeft = 1,
  kLeftInverse = 2,
  kRight = 4,
};

/// U * A * V = diag(diagonal).  Nonzero entries come first and form a
/// divisibility chain.  Only the requested transforms are populated.
struct SmithForm {
  std::vector<Integer> diagonal;
  std::size_t rank = 0;
  Matrix left;
  Matrix left_inverse;
  Matrix right;
};

SmithForm smith_normal_form(const Matrix& a, unsigned transforms);

/// Columns form a basis of the integer kernel {x : A x = 0}.
Matrix kernel_basis(const Matrix& a);

/// Integer solutions of A x = b, with the Smith form computed once.
class IntegerSolver {
 public:
  explicit IntegerSolver(const Matrix& a);
  std::optional<Vector> solve(const Vector& b) const;
  /// Kernel basis of A (columns).
  Matrix kernel() const;
  std::size_t rank() const { return smith_.rank; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  SmithForm smith_;
};

std::optional<Vector> solve(const Matrix& a, const Vector& b);

}  // namespace mackeykit
