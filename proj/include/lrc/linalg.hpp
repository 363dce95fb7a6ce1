#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lrc/gf.hpp"

namespace lrc::linalg {

/// Dense matrix over a finite field, row-major, value-semantic. The field is
/// borrowed and must outlive the matrix.
class Matrix {
 public:
  Matrix() = default;  // empty placeholder; any operation requires a real field
  Matrix(const gf::Field& f, std::size_t rows, std::size_t cols)
      : f_(&f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  static Matrix identity(const gf::Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  const gf::Field& field() const { return *f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  gf::Elem& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  gf::Elem at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  const gf::Elem* row(std::size_t r) const { return a_.data() + r * cols_; }
  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  Matrix transpose() const;
  Matrix submatrix_cols(const std::vector<std::size_t>& cols) const;

 private:
  const gf::Field* f_ = nullptr;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<gf::Elem> a_;
};

Matrix mul(const Matrix& a, const Matrix& b);
std::vector<gf::Elem> mul_vec(const std::vector<gf::Elem>& v, const Matrix& m);  // v * m

struct RrefResult {
  Matrix m;
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form; preserves the row space.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Solves a x = b (x a column vector). Deterministic: free variables are set
/// to zero. Returns nullopt when inconsistent. Throws on dimension mismatch.
std::optional<std::vector<gf::Elem>> solve(const Matrix& a, const std::vector<gf::Elem>& b);

/// Rows of the result form a canonical basis of {v : m v^T = 0}.
Matrix kernel_basis(const Matrix& m);

gf::Elem determinant(const Matrix& m);

struct SubmatrixSweep {
  bool all_invertible = false;
  std::vector<std::size_t> first_failure;  // column subset, empty when all pass
  std::uint64_t checked = 0;
};

/// Tests every r x r column-submatrix of an r x n matrix for invertibility,
/// in lexicographic column-subset order, short-circuiting on the first
/// failure. Refuses when C(n, r) exceeds the budget.
SubmatrixSweep all_rxr_submatrices_invertible(const Matrix& m, std::uint64_t budget = 10000000);

/// C(n, k) with saturation at 2^63-1.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace lrc::linalg
