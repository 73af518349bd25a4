#pragma once

#include <string>
#include <vector>

#include "rfx/polynomial.hpp"

namespace rfx {

// Dense matrix of polynomials, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(RingPtr ring, std::size_t rows, std::size_t cols);
  static Matrix identity(const RingPtr& ring, std::size_t n);
  static Matrix from_rows(const RingPtr& ring, const std::vector<std::vector<Polynomial>>& rows);
  static Matrix column_vector(const RingPtr& ring, const std::vector<Polynomial>& entries);
  static Matrix row_vector(const RingPtr& ring, const std::vector<Polynomial>& entries);
  static Matrix parse(const RingPtr& ring, const std::vector<std::vector<std::string>>& rows);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Polynomial& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  Matrix column(std::size_t j) const;
  Matrix select_columns(const std::vector<std::size_t>& idx) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;
  Matrix column_range(std::size_t from, std::size_t to) const;
  Matrix row_range(std::size_t from, std::size_t to) const;
  Matrix transpose() const;
  bool is_zero() const;
  bool column_is_zero(std::size_t j) const;

  Matrix operator*(const Matrix& b) const;
  Matrix operator+(const Matrix& b) const;
  Matrix operator-(const Matrix& b) const;
  Matrix operator-() const;
  Matrix scaled(const Polynomial& f) const;

  friend bool operator==(const Matrix& a, const Matrix& b);

  // Row-major entries as polynomial strings.
  std::vector<std::vector<std::string>> to_strings() const;
  std::string to_string() const;

 private:
  RingPtr ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Polynomial> data_;
};

Matrix hconcat(const Matrix& a, const Matrix& b);
Matrix vconcat(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const Matrix& a, const Matrix& b);
Matrix kronecker(const Matrix& a, const Matrix& b);
Matrix substitute(const Matrix& m, const RingPtr& target, std::span<const Polynomial> images);
Matrix transfer(const Matrix& m, const RingPtr& target);
Polynomial determinant(const Matrix& m);
// All k×k minors (row subsets × column subsets, lexicographic).
std::vector<Polynomial> minors(const Matrix& m, std::size_t k);

}  // namespace rfx
