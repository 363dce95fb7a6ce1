#include <random>

#include "doctest.h"
#include "lrc/linalg.hpp"

using namespace lrc;
using gf::Elem;
using gf::Field;
using linalg::Matrix;

TEST_CASE("rref basics") {
  Field f = Field::make(5, 1);
  SUBCASE("identity is its own rref") {
    Matrix id = Matrix::identity(f, 3);
    auto rr = linalg::rref(id);
    CHECK(rr.rank == 3);
    CHECK(rr.m == id);
  }
  SUBCASE("zero matrix") {
    Matrix z(f, 3, 4);
    auto rr = linalg::rref(z);
    CHECK(rr.rank == 0);
    CHECK(rr.m == z);
  }
  SUBCASE("rref is idempotent and rank(m) == rank(m^T) on random matrices") {
    Field f25 = Field::make(5, 2);
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::uint64_t> d(0, 24);
    for (int it = 0; it < 30; ++it) {
      Matrix m(f25, 4, 7);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 7; ++j) m.at(i, j) = static_cast<Elem>(d(rng));
      auto rr = linalg::rref(m);
      auto rr2 = linalg::rref(rr.m);
      CHECK(rr2.m == rr.m);
      CHECK(linalg::rank(m) == linalg::rank(m.transpose()));
    }
  }
}

TEST_CASE("solve") {
  Field f = Field::make(5, 2);
  SUBCASE("identity system") {
    Matrix id = Matrix::identity(f, 4);
    std::vector<Elem> b{3, 1, 4, 2};
    auto x = linalg::solve(id, b);
    REQUIRE(x.has_value());
    CHECK(*x == b);
  }
  SUBCASE("singular homogeneous system returns zero") {
    Matrix m(f, 2, 3);
    m.at(0, 0) = 1;
    m.at(1, 0) = 2;
    std::vector<Elem> b{0, 0};
    auto x = linalg::solve(m, b);
    REQUIRE(x.has_value());
    CHECK(*x == std::vector<Elem>{0, 0, 0});
  }
  SUBCASE("random invertible 6x6 over GF(25): residual is zero") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint64_t> d(0, 24);
    for (int it = 0; it < 10; ++it) {
      Matrix a(f, 6, 6);
      do {
        for (std::size_t i = 0; i < 6; ++i)
          for (std::size_t j = 0; j < 6; ++j) a.at(i, j) = static_cast<Elem>(d(rng));
      } while (linalg::rank(a) < 6);
      std::vector<Elem> b(6);
      for (auto& v : b) v = static_cast<Elem>(d(rng));
      auto x = linalg::solve(a, b);
      REQUIRE(x.has_value());
      for (std::size_t i = 0; i < 6; ++i) {
        Elem acc = 0;
        for (std::size_t j = 0; j < 6; ++j) acc = f.add(acc, f.mul(a.at(i, j), (*x)[j]));
        CHECK(acc == b[i]);
      }
    }
  }
  SUBCASE("inconsistent system") {
    Matrix m(f, 2, 1);
    m.at(0, 0) = 1;
    m.at(1, 0) = 1;
    std::vector<Elem> b{1, 2};
    CHECK(!linalg::solve(m, b).has_value());
  }
  SUBCASE("dimension mismatch") {
    Matrix m(f, 2, 2);
    std::vector<Elem> b{1};
    CHECK_THROWS_AS(linalg::solve(m, b), error);
  }
}

TEST_CASE("kernel basis") {
  Field f = Field::make(3, 1);
  Matrix m(f, 1, 3);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(0, 2) = 1;
  Matrix k = linalg::kernel_basis(m);
  CHECK(k.rows() == 2);
  for (std::size_t i = 0; i < k.rows(); ++i) {
    Elem acc = 0;
    for (std::size_t j = 0; j < 3; ++j) acc = f.add(acc, f.mul(m.at(0, j), k.at(i, j)));
    CHECK(acc == 0);
  }
}

TEST_CASE("all r x r submatrices invertible") {
  Field f = Field::make(5, 2);
  SUBCASE("Vandermonde rows at distinct points pass") {
    std::vector<Elem> xs{1, 2, 3, 4, 7, 12};
    Matrix m(f, 3, xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
      m.at(0, j) = 1;
      m.at(1, j) = xs[j];
      m.at(2, j) = f.mul(xs[j], xs[j]);
    }
    auto sweep = linalg::all_rxr_submatrices_invertible(m);
    CHECK(sweep.all_invertible);
    CHECK(sweep.checked == linalg::binomial(6, 3));
  }
  SUBCASE("a repeated column fails and reports the pair") {
    Matrix m(f, 2, 4);
    for (std::size_t j = 0; j < 4; ++j) {
      m.at(0, j) = 1;
      m.at(1, j) = static_cast<Elem>(j == 3 ? 1 : j + 1);  // col 3 duplicates col 0
    }
    auto sweep = linalg::all_rxr_submatrices_invertible(m);
    CHECK(!sweep.all_invertible);
    CHECK(sweep.first_failure == std::vector<std::size_t>{0, 3});
  }
  SUBCASE("budget guard") {
    Matrix m(f, 10, 40);
    CHECK_THROWS_WITH_AS(linalg::all_rxr_submatrices_invertible(m, 1000),
                         doctest::Contains("BudgetExceeded"), error);
  }
}

TEST_CASE("determinant") {
  Field f = Field::make(7, 1);
  Matrix m(f, 2, 2);
  m.at(0, 0) = 3;
  m.at(0, 1) = 1;
  m.at(1, 0) = 2;
  m.at(1, 1) = 5;
  // 3*5 - 1*2 = 13 = 6 mod 7
  CHECK(linalg::determinant(m) == 6);
  CHECK(linalg::determinant(Matrix::identity(f, 5)) == 1);
}
