#include "mackeykit/matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace mackeykit {

Integer reduce_mod(const Integer& a, const Integer& m) {
  if (m == 0) return a;
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("from_rows: row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& cols) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
  return m;
}

Matrix Matrix::hstack(const Matrix& left, const Matrix& right) {
  if (left.rows_ != right.rows_) throw std::invalid_argument("hstack: row mismatch");
  Matrix m(left.rows_, left.cols_ + right.cols_);
  m.set_block(0, 0, left);
  m.set_block(0, left.cols_, right);
  return m;
}

Matrix Matrix::vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols_ != bottom.cols_) throw std::invalid_argument("vstack: column mismatch");
  Matrix m(top.rows_ + bottom.rows_, top.cols_);
  m.set_block(0, 0, top);
  m.set_block(top.rows_, 0, bottom);
  return m;
}

Matrix Matrix::block_diagonal(const std::vector<Matrix>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows_;
    c += b.cols_;
  }
  Matrix m(r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows_;
    c += b.cols_;
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_column(std::size_t c, const Vector& v) {
  if (v.size() != rows_) throw std::invalid_argument("set_column: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

void Matrix::add_to_column(std::size_t c, const Vector& v) {
  if (v.size() != rows_) throw std::invalid_argument("add_to_column: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) += v[r];
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& indices) const {
  Matrix m(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(indices[i], c);
  return m;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& indices) const {
  Matrix m(rows_, indices.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < indices.size(); ++i) m(r, i) = (*this)(r, indices[i]);
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block out of range");
  Matrix m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
  return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("set_block out of range");
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& b, const Integer& scale) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("add_block out of range");
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) += scale * b(r, c);
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  Matrix m(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        const Integer& b = other(k, c);
        if (b != 0) m(r, c) += a * b;
      }
    }
  return m;
}

Vector Matrix::operator*(const Vector& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
  Vector out(rows_, Integer(0));
  for (std::size_t k = 0; k < cols_; ++k) {
    if (v[k] == 0) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Integer& a = (*this)(r, k);
      if (a != 0) out[r] += a * v[k];
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
  Matrix m = *this;
  m += other;
  return m;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
  Matrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] -= other.data_[i];
  return m;
}

Matrix Matrix::operator*(const Integer& s) const {
  Matrix m = *this;
  for (auto& x : m.data_) x *= s;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

bool Matrix::operator==(const Matrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

std::vector<std::vector<long>> Matrix::to_longs() const {
  std::vector<std::vector<long>> out(rows_, std::vector<long>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!(*this)(r, c).fits_slong_p()) throw std::overflow_error("matrix entry does not fit in long");
      out[r][c] = (*this)(r, c).get_si();
    }
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ',';
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ',';
      os << (*this)(r, c);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) out(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return out;
}

Vector zero_vector(std::size_t n) { return Vector(n, Integer(0)); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n, Integer(0));
  v.at(i) = 1;
  return v;
}

Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector sum: length mismatch");
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector difference: length mismatch");
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

Vector operator*(const Integer& s, const Vector& a) {
  Vector out = a;
  for (auto& x : out) x *= s;
  return out;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

namespace {

// Elimination state.  Row operations on A are mirrored on U (same op) and on
// U^-1 (inverse op applied to columns); column operations are mirrored on V.
class SmithWorker {
 public:
  SmithWorker(const Matrix& a, unsigned transforms)
      : a_(a), m_(a.rows()), n_(a.cols()), want_(transforms) {
    if (want_ & kLeft) u_ = Matrix::identity(m_);
    if (want_ & kLeftInverse) uinv_ = Matrix::identity(m_);
    if (want_ & kRight) v_ = Matrix::identity(n_);
  }

  SmithForm run() {
    std::size_t t = 0;
    while (t < m_ && t < n_) {
      if (!pivot(t)) break;
      for (;;) {
        bool dirty = clear_column(t);
        dirty = clear_row(t) || dirty;
        if (dirty) continue;
        // Divisibility: every remaining entry must be a multiple of the pivot.
        std::size_t bad_r = m_;
        for (std::size_t r = t + 1; r < m_ && bad_r == m_; ++r)
          for (std::size_t c = t + 1; c < n_; ++c)
            if (a_(r, c) != 0 && !mpz_divisible_p(a_(r, c).get_mpz_t(), a_(t, t).get_mpz_t())) {
              bad_r = r;
              break;
            }
        if (bad_r == m_) break;
        add_row(t, bad_r, 1);
      }
      if (a_(t, t) < 0) negate_row(t);
      ++t;
    }
    SmithForm out;
    out.rank = t;
    std::size_t d = std::min(m_, n_);
    out.diagonal.assign(d, Integer(0));
    for (std::size_t i = 0; i < t; ++i) out.diagonal[i] = a_(i, i);
    out.left = std::move(u_);
    out.left_inverse = std::move(uinv_);
    out.right = std::move(v_);
    return out;
  }

 private:
  // Moves the smallest nonzero entry of the trailing block to (t, t).
  bool pivot(std::size_t t) {
    std::size_t br = m_, bc = n_;
    for (std::size_t r = t; r < m_; ++r)
      for (std::size_t c = t; c < n_; ++c) {
        const Integer& x = a_(r, c);
        if (x == 0) continue;
        if (br == m_ || mpz_cmpabs(x.get_mpz_t(), a_(br, bc).get_mpz_t()) < 0) {
          br = r;
          bc = c;
          if (abs(x) == 1) goto found;
        }
      }
    if (br == m_) return false;
  found:
    swap_rows(t, br);
    swap_cols(t, bc);
    return true;
  }

  // Reduces column t below the pivot; returns true if the pivot changed.
  bool clear_column(std::size_t t) {
    bool changed = false;
    for (std::size_t r = t + 1; r < m_; ++r) {
      if (a_(r, t) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a_(r, t).get_mpz_t(), a_(t, t).get_mpz_t());
      add_row(r, t, -q);
      if (a_(r, t) != 0) {
        swap_rows(t, r);
        changed = true;
        r = t;  // restart the sweep with the smaller pivot
      }
    }
    return changed;
  }

  bool clear_row(std::size_t t) {
    bool changed = false;
    for (std::size_t c = t + 1; c < n_; ++c) {
      if (a_(t, c) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a_(t, c).get_mpz_t(), a_(t, t).get_mpz_t());
      add_col(c, t, -q);
      if (a_(t, c) != 0) {
        swap_cols(t, c);
        changed = true;
        c = t;
      }
    }
    return changed;
  }

  // row dst += q * row src
  void add_row(std::size_t dst, std::size_t src, const Integer& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < n_; ++c)
      if (a_(src, c) != 0) a_(dst, c) += q * a_(src, c);
    if (want_ & kLeft)
      for (std::size_t c = 0; c < m_; ++c)
        if (u_(src, c) != 0) u_(dst, c) += q * u_(src, c);
    if (want_ & kLeftInverse)
      for (std::size_t r = 0; r < m_; ++r)
        if (uinv_(r, dst) != 0) uinv_(r, src) -= q * uinv_(r, dst);
  }

  // col dst += q * col src
  void add_col(std::size_t dst, std::size_t src, const Integer& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < m_; ++r)
      if (a_(r, src) != 0) a_(r, dst) += q * a_(r, src);
    if (want_ & kRight)
      for (std::size_t r = 0; r < n_; ++r)
        if (v_(r, src) != 0) v_(r, dst) += q * v_(r, src);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < n_; ++c) std::swap(a_(i, c), a_(j, c));
    if (want_ & kLeft)
      for (std::size_t c = 0; c < m_; ++c) std::swap(u_(i, c), u_(j, c));
    if (want_ & kLeftInverse)
      for (std::size_t r = 0; r < m_; ++r) std::swap(uinv_(r, i), uinv_(r, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < m_; ++r) std::swap(a_(r, i), a_(r, j));
    if (want_ & kRight)
      for (std::size_t r = 0; r < n_; ++r) std::swap(v_(r, i), v_(r, j));
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < n_; ++c) a_(i, c) = -a_(i, c);
    if (want_ & kLeft)
      for (std::size_t c = 0; c < m_; ++c) u_(i, c) = -u_(i, c);
    if (want_ & kLeftInverse)
      for (std::size_t r = 0; r < m_; ++r) uinv_(r, i) = -uinv_(r, i);
  }

  Matrix a_;
  std::size_t m_, n_;
  unsigned want_;
  Matrix u_, uinv_, v_;
};

}  // namespace

SmithForm smith_normal_form(const Matrix& a, unsigned transforms) {
  return SmithWorker(a, transforms).run();
}

Matrix kernel_basis(const Matrix& a) {
  SmithForm s = smith_normal_form(a, kRight);
  std::vector<std::size_t> idx;
  for (std::size_t c = s.rank; c < a.cols(); ++c) idx.push_back(c);
  return s.right.select_columns(idx);
}

IntegerSolver::IntegerSolver(const Matrix& a)
    : rows_(a.rows()), cols_(a.cols()), smith_(smith_normal_form(a, kLeft | kRight)) {}

std::optional<Vector> IntegerSolver::solve(const Vector& b) const {
  if (b.size() != rows_) throw std::invalid_argument("solve: right-hand side length mismatch");
  Vector ub = smith_.left * b;
  Vector y(cols_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i < smith_.rank) {
      const Integer& d = smith_.diagonal[i];
      if (!mpz_divisible_p(ub[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      y[i] = ub[i] / d;
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return smith_.right * y;
}

Matrix IntegerSolver::kernel() const {
  std::vector<std::size_t> idx;
  for (std::size_t c = smith_.rank; c < cols_; ++c) idx.push_back(c);
  return smith_.right.select_columns(idx);
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) { return IntegerSolver(a).solve(b); }

}  // namespace mackeykit
