#include "rfx/matrix.hpp"

#include <functional>
#include <map>

#include "rfx/error.hpp"

namespace rfx {

Matrix::Matrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, Polynomial(ring_)) {}

Matrix Matrix::identity(const RingPtr& ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Polynomial::constant(ring, 1);
  return m;
}

Matrix Matrix::from_rows(const RingPtr& ring, const std::vector<std::vector<Polynomial>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  Matrix m(ring, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw Error("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) {
      if (!same_ring(rows[i][j].ring(), ring)) throw Error("matrix entry in the wrong ring");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Matrix Matrix::column_vector(const RingPtr& ring, const std::vector<Polynomial>& entries) {
  Matrix m(ring, entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
  return m;
}

Matrix Matrix::row_vector(const RingPtr& ring, const std::vector<Polynomial>& entries) {
  Matrix m(ring, 1, entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(0, i) = entries[i];
  return m;
}

Matrix Matrix::parse(const RingPtr& ring, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Polynomial>> p;
  for (const auto& r : rows) {
    p.emplace_back();
    for (const auto& s : r) p.back().push_back(parse_polynomial(ring, s));
  }
  return from_rows(ring, p);
}

Matrix Matrix::column(std::size_t j) const { return column_range(j, j + 1); }

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
  Matrix m(ring_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix m(ring_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

Matrix Matrix::column_range(std::size_t from, std::size_t to) const {
  Matrix m(ring_, rows_, to - from);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = from; j < to; ++j) m(i, j - from) = (*this)(i, j);
  return m;
}

Matrix Matrix::row_range(std::size_t from, std::size_t to) const {
  Matrix m(ring_, to - from, cols_);
  for (std::size_t i = from; i < to; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i - from, j) = (*this)(i, j);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& p : data_)
    if (!p.is_zero()) return false;
  return true;
}

bool Matrix::column_is_zero(std::size_t j) const {
  for (std::size_t i = 0; i < rows_; ++i)
    if (!(*this)(i, j).is_zero()) return false;
  return true;
}

Matrix Matrix::operator*(const Matrix& b) const {
  if (cols_ != b.rows_) throw Error("matrix size mismatch in product");
  if (!same_ring(ring_, b.ring_)) throw Error("matrices over different rings");
  Matrix m(ring_, rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) m(i, j) += a * b(k, j);
    }
  return m;
}

Matrix Matrix::operator+(const Matrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw Error("matrix size mismatch in sum");
  Matrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] += b.data_[i];
  return m;
}

Matrix Matrix::operator-(const Matrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw Error("matrix size mismatch in difference");
  Matrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] -= b.data_[i];
  return m;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& p : m.data_) p = -p;
  return m;
}

Matrix Matrix::scaled(const Polynomial& f) const {
  Matrix m = *this;
  for (auto& p : m.data_) p = p * f;
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::vector<std::vector<std::string>> Matrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).to_string());
  return out;
}

std::string Matrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ", ";
      s += (*this)(i, j).to_string();
    }
    s += "]";
  }
  return s + "]";
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error("row count mismatch in horizontal concatenation");
  Matrix m(a.ring(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

Matrix vconcat(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw Error("column count mismatch in vertical concatenation");
  Matrix m(a.ring(), a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) m(a.rows() + i, j) = b(i, j);
  }
  return m;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix m(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix m(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

Matrix substitute(const Matrix& m, const RingPtr& target, std::span<const Polynomial> images) {
  Matrix r(target, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = substitute(m(i, j), target, images);
  return r;
}

Matrix transfer(const Matrix& m, const RingPtr& target) {
  Matrix r(target, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = transfer(m(i, j), target);
  return r;
}

namespace {

// Laplace expansion along the first selected row with memoization over column subsets.
Polynomial det_rec(const Matrix& m, std::size_t row, std::vector<std::size_t>& cols,
                   std::map<std::vector<std::size_t>, Polynomial>& memo) {
  if (cols.empty()) return Polynomial::constant(m.ring(), 1);
  auto it = memo.find(cols);
  if (it != memo.end()) return it->second;
  Polynomial acc(m.ring());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const auto& a = m(row, cols[k]);
    if (a.is_zero()) continue;
    std::vector<std::size_t> rest;
    for (std::size_t t = 0; t < cols.size(); ++t)
      if (t != k) rest.push_back(cols[t]);
    Polynomial sub = det_rec(m, row + 1, rest, memo);
    if (k % 2) acc -= a * sub;
    else acc += a * sub;
  }
  memo.emplace(cols, acc);
  return acc;
}

}  // namespace

Polynomial determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
  std::vector<std::size_t> cols(m.cols());
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
  std::map<std::vector<std::size_t>, Polynomial> memo;
  return det_rec(m, 0, cols, memo);
}

namespace {

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

std::vector<Polynomial> minors(const Matrix& m, std::size_t k) {
  std::vector<Polynomial> out;
  if (k == 0) {
    out.push_back(Polynomial::constant(m.ring(), 1));
    return out;
  }
  if (k > m.rows() || k > m.cols()) return out;
  std::vector<std::vector<std::size_t>> rs, cs;
  subsets(m.rows(), k, rs);
  subsets(m.cols(), k, cs);
  for (const auto& r : rs) {
    Matrix sub = m.select_rows(r);
    for (const auto& c : cs) out.push_back(determinant(sub.select_columns(c)));
  }
  return out;
}

}  // namespace rfx
