#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ptk/config.hpp"

namespace ptk {

/// Dense row-major matrix; just enough for the small systems used here.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<double> multiply(std::span<const double> x) const;
  double norm_inf() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// LU factorization with partial pivoting, PA = LU.
class LuFactorization {
 public:
  explicit LuFactorization(Matrix a, const NumericConfig& cfg = {});

  std::size_t size() const { return lu_.rows(); }
  std::vector<double> solve(std::span<const double> b) const;
  /// Solves A^T x = b.
  std::vector<double> solve_transposed(std::span<const double> b) const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
};

/// Solves Ax = b by pivoted elimination plus one step of iterative
/// refinement. Throws NumericalFailure for a numerically singular A.
std::vector<double> solve_dense(const Matrix& a, std::span<const double> b,
                                const NumericConfig& cfg = {});

}  // namespace ptk
