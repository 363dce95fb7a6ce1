#include "lrc/linalg.hpp"

#include <algorithm>

namespace lrc::linalg {

using gf::Elem;

Matrix Matrix::transpose() const {
  Matrix t(*f_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Matrix Matrix::submatrix_cols(const std::vector<std::size_t>& cols) const {
  Matrix s(*f_, rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) s.at(r, j) = at(r, cols[j]);
  return s;
}

Matrix mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) fail(errc::dimension_mismatch, "matrix product shapes");
  const gf::Field& f = a.field();
  Matrix r(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Elem aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        r.at(i, j) = f.add(r.at(i, j), f.mul(aik, b.at(k, j)));
    }
  return r;
}

std::vector<Elem> mul_vec(const std::vector<Elem>& v, const Matrix& m) {
  if (v.size() != m.rows()) fail(errc::dimension_mismatch, "vector-matrix product shapes");
  const gf::Field& f = m.field();
  std::vector<Elem> r(m.cols(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      r[j] = f.add(r[j], f.mul(v[i], m.at(i, j)));
  }
  return r;
}

RrefResult rref(const Matrix& in) {
  const gf::Field& f = in.field();
  Matrix m = in;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(row, j));
    Elem inv = f.inv(m.at(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) = f.mul(m.at(row, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row) continue;
      Elem c = m.at(i, col);
      if (c == 0) continue;
      for (std::size_t j = col; j < m.cols(); ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(c, m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), pivots.size(), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

std::optional<std::vector<Elem>> solve(const Matrix& a, const std::vector<Elem>& b) {
  if (a.rows() != b.size()) fail(errc::dimension_mismatch, "solve: rhs length");
  const gf::Field& f = a.field();
  Matrix aug(f, a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  RrefResult rr = rref(aug);
  for (std::size_t p : rr.pivots)
    if (p == a.cols()) return std::nullopt;  // pivot in the rhs column
  std::vector<Elem> x(a.cols(), 0);
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) x[rr.pivots[i]] = rr.m.at(i, a.cols());
  return x;
}

Matrix kernel_basis(const Matrix& m) {
  const gf::Field& f = m.field();
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : rr.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix k(f, free_cols.size(), m.cols());
  for (std::size_t i = 0; i < free_cols.size(); ++i) {
    std::size_t fc = free_cols[i];
    k.at(i, fc) = 1;
    for (std::size_t r = 0; r < rr.pivots.size(); ++r)
      k.at(i, rr.pivots[r]) = f.neg(rr.m.at(r, fc));
  }
  return k;
}

gf::Elem determinant(const Matrix& in) {
  if (in.rows() != in.cols()) fail(errc::dimension_mismatch, "determinant of non-square");
  const gf::Field& f = in.field();
  Matrix m = in;
  Elem det = 1;
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m.at(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      det = f.neg(det);
    }
    det = f.mul(det, m.at(col, col));
    Elem inv = f.inv(m.at(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      Elem c = f.mul(m.at(i, col), inv);
      if (c == 0) continue;
      for (std::size_t j = col; j < n; ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(c, m.at(col, j)));
    }
  }
  return det;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n-k+i) / i, guarding overflow with saturation
    std::uint64_t num = n - k + i;
    if (r > (std::uint64_t(1) << 62) / std::max<std::uint64_t>(num, 1)) return std::uint64_t(1) << 62;
    r = r * num / i;
  }
  return r;
}

SubmatrixSweep all_rxr_submatrices_invertible(const Matrix& m, std::uint64_t budget) {
  const std::size_t r = m.rows(), n = m.cols();
  if (r > n) fail(errc::dimension_mismatch, "needs rows <= cols");
  if (binomial(n, r) > budget)
    fail(errc::budget_exceeded, "column-subset count exceeds the sweep budget");
  SubmatrixSweep out;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    ++out.checked;
    if (determinant(m.submatrix_cols(idx)) == 0) {
      out.all_invertible = false;
      out.first_failure = idx;
      return out;
    }
    // next lexicographic combination
    std::size_t i = r;
    while (i > 0) {
      --i;
      if (idx[i] != i + n - r) {
        ++idx[i];
        for (std::size_t j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) {
        out.all_invertible = true;
        return out;
      }
    }
  }
}

}  // namespace lrc::linalg
