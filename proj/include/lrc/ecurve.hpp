#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrc/gf.hpp"

namespace lrc::ecurve {

/// A rational point: the place at infinity O, or an affine point (x, y).
struct ECPoint {
  bool inf = true;
  gf::Elem x = 0, y = 0;

  static ECPoint infinity() { return ECPoint{}; }
  static ECPoint affine(gf::Elem x, gf::Elem y) { return ECPoint{false, x, y}; }
  bool operator==(const ECPoint& o) const {
    return inf == o.inf && (inf || (x == o.x && y == o.y));
  }
  bool operator<(const ECPoint& o) const {
    if (inf != o.inf) return inf;  // O sorts first
    if (x != o.x) return x < o.x;
    return y < o.y;
  }
};

/// y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6, nonsingular.
class WeierstrassCurve {
 public:
  static WeierstrassCurve make(const gf::Field& f, gf::Elem a1, gf::Elem a2, gf::Elem a3,
                               gf::Elem a4, gf::Elem a6);

  const gf::Field& field() const { return *f_; }
  gf::Elem a1() const { return a1_; }
  gf::Elem a2() const { return a2_; }
  gf::Elem a3() const { return a3_; }
  gf::Elem a4() const { return a4_; }
  gf::Elem a6() const { return a6_; }

  bool contains(const ECPoint& p) const;
  ECPoint neg(const ECPoint& p) const;  // the elliptic involution [-1]
  ECPoint add(const ECPoint& p, const ECPoint& q) const;
  ECPoint sub(const ECPoint& p, const ECPoint& q) const { return add(p, neg(q)); }
  ECPoint scalar_mul(std::int64_t m, const ECPoint& p) const;

 private:
  WeierstrassCurve() = default;
  const gf::Field* f_ = nullptr;
  gf::Elem a1_ = 0, a2_ = 0, a3_ = 0, a4_ = 0, a6_ = 0;
};

/// All rational points, O first then affine points sorted by (x, y) code.
/// Guarded at q <= 2^20; the count satisfies the Hasse-Weil bound.
std::vector<ECPoint> enumerate_points(const WeierstrassCurve& c);

/// Sorted point list with index lookup; the common substrate of the
/// automorphism and orbit machinery.
class PointTable {
 public:
  explicit PointTable(const WeierstrassCurve& c);
  const WeierstrassCurve& curve() const { return c_; }
  const std::vector<ECPoint>& points() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  const ECPoint& operator[](std::size_t i) const { return pts_[i]; }
  std::size_t index_of(const ECPoint& p) const;  // throws point_not_on_curve

 private:
  WeierstrassCurve c_;  // by value; the curve only borrows the field
  std::vector<ECPoint> pts_;
};

/// An automorphism of E over F_q, carried as an executable permutation of the
/// rational points (its action on places), validated at construction.
struct ECAutomorphism {
  enum class Kind { translation, fixing_o, composite };
  Kind kind = Kind::composite;
  std::string desc;
  std::vector<std::uint32_t> perm;  // index map over a PointTable

  bool operator==(const ECAutomorphism& o) const { return perm == o.perm; }
  bool is_identity() const {
    for (std::size_t i = 0; i < perm.size(); ++i)
      if (perm[i] != i) return false;
    return true;
  }
};

ECAutomorphism identity_map(const PointTable& t);
ECAutomorphism translation_map(const PointTable& t, const ECPoint& by);
/// x' = xs * x, y' = ys * y + yx * x + yc; must fix O and preserve the curve.
ECAutomorphism fixing_o_linear(const PointTable& t, gf::Elem xs, gf::Elem ys, gf::Elem yx,
                               gf::Elem yc, const std::string& desc);
ECAutomorphism elliptic_involution(const PointTable& t);
/// a after b (i.e. apply b first).
ECAutomorphism compose(const ECAutomorphism& a, const ECAutomorphism& b);
int automorphism_order(const PointTable& t, const ECAutomorphism& a);

/// Closure of the generators under composition; throws when the cap is hit.
std::vector<ECAutomorphism> group_closure(const PointTable& t,
                                          std::vector<ECAutomorphism> gens,
                                          std::size_t cap = 4096);

/// True iff sigma(Q) in H for all sigma in A and Q in H, i.e. T_H . A is a
/// group of order |A| |H|. Verifies that H is a subgroup and A is closed.
bool check_TH_A_subgroup(const PointTable& t, const std::vector<ECPoint>& H,
                         const std::vector<ECAutomorphism>& A);

/// The |H| * |A| maps {tau_Q . alpha}; verified closed under composition.
std::vector<ECAutomorphism> product_group_TH_A(const PointTable& t,
                                               const std::vector<ECPoint>& H,
                                               const std::vector<ECAutomorphism>& A);

/// (Z/n1) x (Z/n2) with n1 | n2, verified by an exhaustive bijection check.
struct ECGroupStructure {
  std::uint64_t n1 = 1, n2 = 1;
  ECPoint gen1, gen2;  // gen1 meaningful only when n1 > 1
};
ECGroupStructure group_structure(const PointTable& t);

std::uint64_t point_order(const PointTable& t, const ECPoint& p);

/// A verified subgroup of order exactly h. When h = h0^2 and the structure is
/// Z/n x Z/n with h0 | n this is the h0-torsion {P : [h0]P = O}.
std::vector<ECPoint> subgroup_of_order(const PointTable& t, const ECGroupStructure& st,
                                       std::uint64_t h);

struct Orbit {
  std::vector<std::uint32_t> members;  // ascending point indices
  std::uint32_t ramification_index = 1;  // |G| / orbit size
};
/// Partition of all rational points into G-orbits, ordered by minimal member.
std::vector<Orbit> orbits(const PointTable& t, const std::vector<ECAutomorphism>& G);

/// True iff sum(a) = sum(b) under the group law: the divisor-class criterion
/// for sum(a_i) ~ sum(b_i) on an elliptic curve.
bool divisor_class_sum_equal(const WeierstrassCurve& c, const std::vector<ECPoint>& a,
                             const std::vector<ECPoint>& b);

struct ConditionCheck {
  bool holds = false;
  std::size_t violating_group = 0;          // 1-based when !holds
  std::vector<std::size_t> violating_subset;  // indices into that group
};
/// Brute-force check of the tail condition: the (delta-1)-fold sum of
/// P_{r+1..r+delta-1} avoids every (delta-1)-subset sum from each group.
ConditionCheck condition_13_14_check(const WeierstrassCurve& c,
                                     const std::vector<ECPoint>& defining_list,
                                     const std::vector<std::vector<ECPoint>>& groups,
                                     std::size_t r, std::size_t delta,
                                     std::uint64_t budget = 10000000);

/// Smallest-coefficient curve over f with exactly target_count rational
/// points, searching y^2 = x^3 + a2 x^2 + a4 x + a6 (odd characteristic).
WeierstrassCurve search_curve_with_count(const gf::Field& f, std::uint64_t target_count,
                                         std::uint64_t attempt_cap = 200000);

}  // namespace lrc::ecurve
