#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "lrc/gf.hpp"

using namespace lrc;
using gf::Elem;
using gf::Field;

namespace {

Field f25_paper() { return Field::make(5, 2, std::vector<std::uint32_t>{2, 4, 1}); }

}  // namespace

TEST_CASE("make_field basics") {
  SUBCASE("F_25 with the u^2+4u+2 modulus") {
    Field f = f25_paper();
    CHECK(f.q() == 25);
    Elem u = f.from_coeffs({0, 1});
    // u^2 = -4u - 2 = u + 3 over GF(5)
    CHECK(f.mul(u, u) == f.from_coeffs({3, 1}));
    // u is a generator, as in the worked example
    CHECK(f.mul_order(u) == 24);
    CHECK(f.primitive() == u);
  }
  SUBCASE("GF(7) primitive is 3") {
    Field f = Field::make(7, 1);
    CHECK(f.primitive() == 3);
    for (Elem a = 2; a < 7; ++a) {
      if (a == 3) break;
      CHECK(f.mul_order(a) < 6);  // exhaustive order check of 2..6
    }
  }
  SUBCASE("degree-1 override x+1 is accepted") {
    Field f = Field::make(2, 1, std::vector<std::uint32_t>{1, 1});
    CHECK(f.q() == 2);
    CHECK(f.add(1, 1) == 0);
  }
  SUBCASE("reducible override rejected") {
    // x^2 + 1 = (x+2)(x+3) over GF(5)
    CHECK_THROWS_WITH_AS(Field::make(5, 2, std::vector<std::uint32_t>{1, 0, 1}),
                         doctest::Contains("ReducibleModulus"), error);
  }
  SUBCASE("non-prime characteristic rejected") {
    CHECK_THROWS_AS(Field::make(6, 1), error);
  }
}

TEST_CASE("field axioms hold on random triples") {
  std::mt19937_64 rng(12345);
  for (auto [p, s] : {std::pair<int, int>{2, 2}, {5, 2}, {2, 6}, {3, 4}, {7, 2}, {2, 1}}) {
    Field f = Field::make(p, s);
    std::uniform_int_distribution<std::uint64_t> d(0, f.q() - 1);
    for (int it = 0; it < 1000; ++it) {
      Elem a = static_cast<Elem>(d(rng)), b = static_cast<Elem>(d(rng)), c = static_cast<Elem>(d(rng));
      CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.sub(f.add(a, b), b) == a);
      if (a != 0) CHECK(f.mul(f.inv(a), a) == 1);
    }
  }
}

TEST_CASE("inv(a)*a == 1 for 100 random nonzero a in F_25") {
  Field f = f25_paper();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> d(1, 24);
  for (int i = 0; i < 100; ++i) {
    Elem a = static_cast<Elem>(d(rng));
    CHECK(f.mul(f.inv(a), a) == 1);
  }
}

TEST_CASE("frobenius is additive and fixes exactly GF(p)") {
  for (auto [p, s] : {std::pair<int, int>{2, 2}, {3, 2}, {2, 4}, {3, 3}}) {
    Field f = Field::make(p, s);
    std::size_t fixed = 0;
    for (Elem a = 0; a < f.q(); ++a) {
      if (f.frobenius(a) == a) ++fixed;
      for (Elem b = 0; b < f.q(); ++b)
        if (a < 8 || b < 8)  // keep the exhaustive part small
          CHECK(f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b)));
    }
    CHECK(fixed == static_cast<std::size_t>(p));
  }
}

TEST_CASE("trace to subfield") {
  SUBCASE("Tr_{4/2}") {
    Field f4 = Field::make(2, 2);
    Field f2 = Field::make(2, 1);
    gf::SubfieldMap m(f4, f2);
    CHECK(m.trace(0) == 0);
    // Tr(w) = w + w^2 = 1 for a generator w of GF(4)
    Elem w = f4.primitive();
    CHECK(m.trace(w) == 1);
  }
  SUBCASE("kernel size of the trace is q^{s-c} over F_9 -> F_3") {
    Field f9 = Field::make(3, 2);
    Field f3 = Field::make(3, 1);
    gf::SubfieldMap m(f9, f3);
    std::size_t zeros = 0;
    std::set<Elem> image;
    for (Elem a = 0; a < 9; ++a) {
      Elem t = m.trace(a);
      image.insert(t);
      if (t == 0) ++zeros;
    }
    CHECK(zeros == 3);       // q^{s-c} = 3
    CHECK(image.size() == 3);  // surjective
  }
  SUBCASE("trace is GF(p^c)-linear, exhaustively for q <= 81") {
    Field f81 = Field::make(3, 4);
    Field f9 = Field::make(3, 2);
    gf::SubfieldMap m(f81, f9);
    for (Elem a = 0; a < 81; a += 5)
      for (Elem b = 0; b < 81; b += 7) {
        CHECK(m.trace(f81.add(a, b)) == f9.add(m.trace(a), m.trace(b)));
        Elem c = m.embed(f9.from_coeffs({2, 1}));
        CHECK(m.trace(f81.mul(c, a)) == f9.mul(f9.from_coeffs({2, 1}), m.trace(a)));
      }
  }
  SUBCASE("embedding then trace multiplies by s/c") {
    Field f16 = Field::make(2, 4);
    Field f4 = Field::make(2, 2);
    gf::SubfieldMap m(f16, f4);
    for (Elem a = 0; a < 4; ++a) {
      // s/c = 2, and 2x = 0 in characteristic 2
      CHECK(m.trace(m.embed(a)) == f4.mul(f4.from_int(2), a));
    }
    Field f81 = Field::make(3, 4);
    Field f9 = Field::make(3, 2);
    gf::SubfieldMap m2(f81, f9);
    for (Elem a = 0; a < 9; ++a) CHECK(m2.trace(m2.embed(a)) == f9.mul(f9.from_int(2), a));
  }
  SUBCASE("non-dividing degree errors") {
    Field f8 = Field::make(2, 3);
    Field f4 = Field::make(2, 2);
    CHECK_THROWS_AS(gf::SubfieldMap(f8, f4), error);
  }
}

TEST_CASE("nth roots of unity") {
  SUBCASE("cube roots in GF(4)") {
    Field f4 = Field::make(2, 2);
    auto r = gf::nth_roots_of_unity(f4, 3);
    REQUIRE(r.size() == 3);
    for (Elem z : r) CHECK(f4.pow(z, 3) == 1);
    CHECK(std::count(r.begin(), r.end(), 1) == 1);
  }
  SUBCASE("M = 1") {
    Field f = Field::make(5, 1);
    auto r = gf::nth_roots_of_unity(f, 1);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == 1);
  }
  SUBCASE("4th roots in GF(9) closed under multiplication") {
    Field f9 = Field::make(3, 2);
    auto r = gf::nth_roots_of_unity(f9, 4);
    REQUIRE(r.size() == 4);
    for (Elem a : r)
      for (Elem b : r)
        CHECK(std::find(r.begin(), r.end(), f9.mul(a, b)) != r.end());
  }
  SUBCASE("non-dividing order errors") {
    Field f4 = Field::make(2, 2);
    CHECK_THROWS_AS(gf::nth_roots_of_unity(f4, 2), error);
  }
}

TEST_CASE("quadratic nonresidue") {
  SUBCASE("GF(3) -> 2") {
    Field f = Field::make(3, 1);
    CHECK(gf::quadratic_nonresidue(f) == 2);
  }
  SUBCASE("GF(9) -> the primitive element, and it has no square root") {
    Field f9 = Field::make(3, 2);
    Elem g = gf::quadratic_nonresidue(f9);
    CHECK(g == f9.primitive());
    std::set<Elem> squares;
    for (Elem a = 0; a < 9; ++a) squares.insert(f9.mul(a, a));
    CHECK(squares.count(g) == 0);
  }
  SUBCASE("characteristic 2 errors") {
    Field f = Field::make(2, 4);
    CHECK_THROWS_WITH_AS(gf::quadratic_nonresidue(f), doctest::Contains("EvenCharacteristic"),
                         error);
  }
}

TEST_CASE("sqrt and is_square") {
  for (auto [p, s] : {std::pair<int, int>{5, 2}, {3, 2}, {2, 4}, {7, 1}}) {
    Field f = Field::make(p, s);
    for (Elem a = 0; a < f.q(); ++a) {
      auto r = f.sqrt(a);
      if (r) CHECK(f.mul(*r, *r) == a);
      CHECK(r.has_value() == f.is_square(a));
    }
  }
}
