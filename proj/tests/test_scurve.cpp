#include <algorithm>
#include <set>

#include "doctest.h"
#include "lrc/scurve.hpp"

using namespace lrc;
using gf::Elem;
using gf::Field;
using scurve::SCPlace;
using scurve::SuperellipticCurve;

namespace {

SuperellipticCurve y2_x5px(const Field& f, Elem gamma = 1) {
  // gamma y^2 = x^5 + x
  return SuperellipticCurve::make(f, 2, {0, 1, 0, 0, 0, 1}, gamma);
}

}  // namespace

TEST_CASE("construction invariants") {
  Field f25 = Field::make(5, 2);
  SUBCASE("genus and basic getters") {
    auto c = y2_x5px(f25);
    CHECK(c.M() == 2);
    CHECK(c.N() == 5);
    CHECK(c.genus() == 2);
    CHECK(c.hyperelliptic());
  }
  SUBCASE("gcd(M, N) = 1 enforced") {
    CHECK_THROWS_AS(SuperellipticCurve::make(f25, 5, {0, 1, 0, 0, 0, 1}), error);
  }
  SUBCASE("gcd(M, p) = 1 enforced") {
    CHECK_THROWS_AS(SuperellipticCurve::make(f25, 10, {0, 1, 0, 1}), error);
  }
  SUBCASE("gcd(f, f') = 1 enforced") {
    // f = x^5 has f' = 0 in characteristic 5; gcd != 1
    CHECK_THROWS_AS(SuperellipticCurve::make(f25, 2, {0, 0, 0, 0, 0, 1}), error);
  }
}

TEST_CASE("place enumeration") {
  SUBCASE("y^3 = x^2 + x over GF(4) has 9 places") {
    Field f4 = Field::make(2, 2);
    auto c = SuperellipticCurve::make(f4, 3, {0, 1, 1});
    auto pl = scurve::enumerate_places(c);
    CHECK(pl.size() == 9);  // q + qbar(qbar-1) sqrt(q) + 1 = 4 + 4 + 1
    CHECK(pl.front() == SCPlace::infinity());
  }
  SUBCASE("y^2 = x^5 + x over GF(25) has 46 places (the Hasse-Weil maximum)") {
    Field f25 = Field::make(5, 2);
    auto c = y2_x5px(f25);
    auto pl = scurve::enumerate_places(c);
    // q + 1 + 2g sqrt(q) = 25 + 1 + 20
    CHECK(pl.size() == 46);
  }
  SUBCASE("every enumerated place satisfies the equation") {
    Field f9 = Field::make(3, 2);
    auto c = SuperellipticCurve::make(f9, 4, {0, 1, 0, 1});  // y^4 = x^3 + x
    auto pl = scurve::enumerate_places(c);
    CHECK(pl.size() == 28);  // Hermitian count q + qbar(qbar-1) sqrt(q) + 1 = 9 + 18 + 1
    for (const auto& p : pl) CHECK(c.contains(p));
  }
}

TEST_CASE("maximality classification") {
  SUBCASE("y^2 = x^5 + x is maximal over GF(25)") {
    Field f25 = Field::make(5, 2);
    auto r = scurve::maximality_check(y2_x5px(f25));
    CHECK(r.cls == scurve::MaxClass::maximal);
    CHECK(r.count == 46);
  }
  SUBCASE("y^2 = x^5 + x is minimal over GF(625), and its twist is maximal") {
    Field f625 = Field::make(5, 4);
    auto r = scurve::maximality_check(y2_x5px(f625));
    CHECK(r.cls == scurve::MaxClass::minimal);
    CHECK(r.count == 625 + 1 - 100);
    Elem gamma = gf::quadratic_nonresidue(f625);
    auto rt = scurve::maximality_check(y2_x5px(f625, gamma));
    CHECK(rt.cls == scurve::MaxClass::maximal);
    CHECK(rt.count == 625 + 1 + 100);
  }
  SUBCASE("non-square field reports count only") {
    Field f5 = Field::make(5, 1);
    auto r = scurve::maximality_check(y2_x5px(f5));
    CHECK(r.cls == scurve::MaxClass::non_square_field);
    CHECK(r.count > 0);
  }
}

TEST_CASE("hyperelliptic conjugation") {
  Field f25 = Field::make(5, 2);
  auto c = y2_x5px(f25);
  auto pl = scurve::enumerate_places(c);
  SUBCASE("iota fixes Weierstrass-type points and infinity") {
    CHECK(scurve::hyperelliptic_conjugate(c, SCPlace::affine(0, 0)) == SCPlace::affine(0, 0));
    CHECK(scurve::hyperelliptic_conjugate(c, SCPlace::infinity()) == SCPlace::infinity());
  }
  SUBCASE("iota is an involution on all places") {
    for (const auto& p : pl) {
      auto q = scurve::hyperelliptic_conjugate(c, p);
      CHECK(c.contains(q));
      CHECK(scurve::hyperelliptic_conjugate(c, q) == p);
    }
  }
  SUBCASE("reduced predicate flags conjugate pairs") {
    SCPlace p;
    for (const auto& q : pl)
      if (!q.inf && q.y != 0) {
        p = q;
        break;
      }
    auto pbar = scurve::hyperelliptic_conjugate(c, p);
    CHECK(!scurve::reduced_affine_tuple(c, {p, pbar}));
    CHECK(scurve::reduced_affine_tuple(c, {p, SCPlace::infinity()}));
  }
  SUBCASE("M != 2 is rejected") {
    Field f4 = Field::make(2, 2);
    auto c3 = SuperellipticCurve::make(f4, 3, {0, 1, 1});
    CHECK_THROWS_WITH_AS(scurve::hyperelliptic_conjugate(c3, SCPlace::infinity()),
                         doctest::Contains("NotHyperelliptic"), error);
  }
}

TEST_CASE("x-translation orbits") {
  Field f25 = Field::make(5, 2);
  auto c = y2_x5px(f25);
  // kernel = the 5 roots of z^5 + z = 0 in F_25
  std::vector<Elem> kernel;
  for (Elem z = 0; z < 25; ++z)
    if (f25.add(f25.pow(z, 5), z) == 0) kernel.push_back(z);
  REQUIRE(kernel.size() == 5);
  SUBCASE("9 orbits of size 5 cover the 45 affine places") {
    auto orbits = scurve::x_translation_orbits(c, kernel);
    CHECK(orbits.size() == 9);
    std::size_t covered = 0;
    for (const auto& o : orbits) {
      CHECK(o.size() == 5);
      covered += o.size();
      // constant y, pairwise distinct x
      std::set<Elem> xs;
      for (const auto& p : o) {
        CHECK(p.y == o.front().y);
        xs.insert(p.x);
      }
      CHECK(xs.size() == o.size());
    }
    CHECK(covered == 45);
  }
  SUBCASE("kernel must be closed under addition") {
    CHECK_THROWS_WITH_AS(scurve::x_translation_orbits(c, {0, 1}),
                         doctest::Contains("KernelNotClosed"), error);
  }
  SUBCASE("translations must preserve the curve") {
    // {0, 1, 2, 3, 4} is additively closed but z -> z+1 moves x^5 + x
    std::vector<Elem> bad{0, 1, 2, 3, 4};
    CHECK_THROWS_WITH_AS(scurve::x_translation_orbits(c, bad),
                         doctest::Contains("TranslationNotAutomorphism"), error);
  }
}

TEST_CASE("y-scaling orbits on the Hermitian-style curve over GF(9)") {
  Field f9 = Field::make(3, 2);
  auto c = SuperellipticCurve::make(f9, 4, {0, 1, 0, 1});  // y^4 = x^3 + x
  auto roots = gf::nth_roots_of_unity(f9, 4);
  auto r = scurve::y_scaling_orbits(c, roots);
  CHECK(r.excluded.size() == 3);  // y = 0 forces x^3 + x = 0, three roots
  CHECK(r.orbits.size() == 6);    // (27 - 3) / 4
  for (const auto& o : r.orbits) {
    CHECK(o.size() == 4);
    for (const auto& p : o) CHECK(p.x == o.front().x);
  }
  SUBCASE("wrong root list is rejected") {
    CHECK_THROWS_WITH_AS(scurve::y_scaling_orbits(c, {1, 2}), doctest::Contains("WrongRootCount"),
                         error);
  }
  SUBCASE("M not dividing q - 1 is rejected") {
    Field f5 = Field::make(5, 1);
    auto c3 = SuperellipticCurve::make(f5, 3, {1, 1, 1, 0, 1});  // y^3 = quartic, 3 does not divide 4
    CHECK_THROWS_AS(scurve::y_scaling_orbits(c3, {1}), error);
  }
}

TEST_CASE("genus-2 matrix automorphisms") {
  Field f25 = Field::make(5, 2, std::vector<std::uint32_t>{2, 4, 1});
  auto c = y2_x5px(f25);
  Elem u = f25.primitive();
  SUBCASE("identity matrix acts as the identity") {
    auto id = scurve::Genus2Automorphism::make(c, 1, 0, 0, 1);
    for (const auto& p : scurve::enumerate_places(c)) CHECK(id.apply(p) == p);
  }
  SUBCASE("the scalar matrix (-1, 0; 0, -1) is the hyperelliptic involution") {
    Elem m1 = f25.neg(1);
    auto iota = scurve::Genus2Automorphism::make(c, m1, 0, 0, m1);
    for (const auto& p : scurve::enumerate_places(c))
      CHECK(iota.apply(p) == scurve::hyperelliptic_conjugate(c, p));
    CHECK(iota.order() == 2);
  }
  SUBCASE("sigma with matrix (u^3, -1; -1, 0) has order 6 and iota not in <sigma>") {
    Elem alpha = f25.pow(u, 3);
    CHECK(f25.mul(alpha, alpha) == f25.from_int(2));  // alpha^2 = 2
    auto sigma = scurve::Genus2Automorphism::make(c, alpha, f25.neg(1), f25.neg(1), 0);
    CHECK(sigma.order() == 6);
    auto group = scurve::genus2_group_closure(c, {sigma});
    CHECK(group.size() == 6);
    Elem m1 = f25.neg(1);
    auto iota = scurve::Genus2Automorphism::make(c, m1, 0, 0, m1);
    bool contains_iota = false;
    for (const auto& g : group)
      if (g.same_action(iota)) contains_iota = true;
    CHECK(!contains_iota);
  }
}

TEST_CASE("norm-trace curves") {
  SUBCASE("(qbar, s, b, c) = (2, 2, 1, 1): y^3 = x^2 + x over GF(4)") {
    Field f4 = Field::make(2, 2);
    auto c = scurve::norm_trace_curve(f4, 2, 2, 1, 1);
    CHECK(c.M() == 3);
    CHECK(c.N() == 2);
    CHECK(scurve::enumerate_places(c).size() == scurve::norm_trace_count(2, 2, 1, 1));
    CHECK(scurve::norm_trace_count(2, 2, 1, 1) == 9);
  }
  SUBCASE("count formula matches enumeration over a (qbar, s, b, c) grid with q <= 81") {
    struct Case {
      std::uint32_t qbar, s;
      std::uint64_t b;
      std::uint32_t c;
    };
    std::vector<Case> grid{
        {2, 2, 1, 1}, {2, 2, 3, 1}, {3, 2, 1, 1}, {3, 2, 2, 1}, {3, 2, 4, 1},
        {2, 3, 1, 1}, {2, 3, 7, 1}, {2, 4, 1, 1}, {2, 4, 1, 2}, {2, 4, 3, 2},
        {2, 4, 5, 1}, {3, 3, 13, 1}, {2, 6, 7, 2}, {2, 6, 9, 3},
    };
    for (const auto& g : grid) {
      // all grid entries use prime qbar, so GF(qbar^s) = GF(p^s) directly
      Field F = Field::make(g.qbar, g.s);
      CAPTURE(g.qbar);
      CAPTURE(g.s);
      CAPTURE(g.b);
      CAPTURE(g.c);
      auto curve = scurve::norm_trace_curve(F, g.qbar, g.s, g.b, g.c);
      CHECK(scurve::enumerate_places(curve).size() == scurve::norm_trace_count(g.qbar, g.s, g.b, g.c));
    }
  }
}
