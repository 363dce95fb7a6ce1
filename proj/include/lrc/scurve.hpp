#pragma once

#include <cstdint>
#include <vector>

#include "lrc/gf.hpp"

namespace lrc::scurve {

/// A rational place: the unique place at infinity, or an affine place (x, y).
struct SCPlace {
  bool inf = true;
  gf::Elem x = 0, y = 0;

  static SCPlace infinity() { return SCPlace{}; }
  static SCPlace affine(gf::Elem x, gf::Elem y) { return SCPlace{false, x, y}; }
  bool operator==(const SCPlace& o) const {
    return inf == o.inf && (inf || (x == o.x && y == o.y));
  }
  bool operator<(const SCPlace& o) const {
    if (inf != o.inf) return inf;
    if (x != o.x) return x < o.x;
    return y < o.y;
  }
};

/// gamma y^M = f(x) with deg f = N, gcd(M, N) = 1, gcd(M, p) = 1 and
/// gcd(f, f') = 1. Genus (M-1)(N-1)/2, one place at infinity.
class SuperellipticCurve {
 public:
  static SuperellipticCurve make(const gf::Field& f, std::uint32_t M,
                                 std::vector<gf::Elem> f_coeffs, gf::Elem gamma = 1);

  const gf::Field& field() const { return *f_; }
  std::uint32_t M() const { return M_; }
  std::uint32_t N() const { return static_cast<std::uint32_t>(fc_.size() - 1); }
  std::uint64_t genus() const { return std::uint64_t(M_ - 1) * (N() - 1) / 2; }
  gf::Elem gamma() const { return gamma_; }
  const std::vector<gf::Elem>& f_coeffs() const { return fc_; }

  gf::Elem eval_f(gf::Elem x) const;
  bool contains(const SCPlace& p) const;
  bool hyperelliptic() const { return M_ == 2 && f_->p() != 2; }

 private:
  SuperellipticCurve() = default;
  const gf::Field* f_ = nullptr;
  std::uint32_t M_ = 0;
  std::vector<gf::Elem> fc_;  // f_coeffs[i] multiplies x^i
  gf::Elem gamma_ = 1;
};

/// P_inf plus all affine solutions, sorted (P_inf first).
std::vector<SCPlace> enumerate_places(const SuperellipticCurve& c);

enum class MaxClass { maximal, minimal, neither, non_square_field };
struct MaximalityReport {
  MaxClass cls = MaxClass::neither;
  std::uint64_t count = 0;
};
/// Compares the place count against q + 1 +- 2g sqrt(q) when q is a square;
/// otherwise reports the count only.
MaximalityReport maximality_check(const SuperellipticCurve& c);

/// The hyperelliptic involution iota on M = 2 curves: (x, y) -> (x, -y).
SCPlace hyperelliptic_conjugate(const SuperellipticCurve& c, const SCPlace& p);

/// True iff no two affine entries of the tuple are hyperelliptic conjugates
/// of each other (the reduced-affine-part predicate for divisors).
bool reduced_affine_tuple(const SuperellipticCurve& c, const std::vector<SCPlace>& places);

/// Orbits of x -> x + kappa for kappa in the kernel (an additive set of roots
/// of f(z + kappa) = f(z)); each orbit has constant y and |kernel| distinct x.
std::vector<std::vector<SCPlace>> x_translation_orbits(const SuperellipticCurve& c,
                                                       const std::vector<gf::Elem>& kernel);

/// Orbits of x -> zeta x (y fixed) for zeta in the given root-of-unity list;
/// places with x = 0 are excluded and reported.
struct CoordScalingOrbits {
  std::vector<std::vector<SCPlace>> orbits;
  std::vector<SCPlace> excluded;
};
CoordScalingOrbits x_scaling_orbits(const SuperellipticCurve& c,
                                    const std::vector<gf::Elem>& roots);

/// Orbits of y -> zeta y (x fixed) for the M-th roots of unity; places with
/// y = 0 are excluded and reported.
CoordScalingOrbits y_scaling_orbits(const SuperellipticCurve& c,
                                    const std::vector<gf::Elem>& roots);

/// A genus-2 automorphism given by a nonsingular matrix (a, b; c, d):
/// x -> (a x + b) / (c x + d), y -> (ad - bc) y / (c x + d)^3.
/// Validated exhaustively against the place set at construction.
class Genus2Automorphism {
 public:
  static Genus2Automorphism make(const SuperellipticCurve& c, gf::Elem a, gf::Elem b, gf::Elem cc,
                                 gf::Elem d);
  SCPlace apply(const SCPlace& p) const;
  gf::Elem a() const { return a_; }
  gf::Elem b() const { return b_; }
  gf::Elem c() const { return c_; }
  gf::Elem d() const { return d_; }
  int order() const;  // by iterated application over the place set
  bool same_action(const Genus2Automorphism& o) const;

 private:
  Genus2Automorphism() = default;
  const SuperellipticCurve* curve_ = nullptr;
  gf::Elem a_ = 1, b_ = 0, c_ = 0, d_ = 1;
  std::vector<SCPlace> places_;  // cached for validation / order computation
};

/// Closure of the generators under composition (matrix product), capped.
std::vector<Genus2Automorphism> genus2_group_closure(const SuperellipticCurve& c,
                                                     std::vector<Genus2Automorphism> gens,
                                                     std::size_t cap = 240);

/// The modified Norm-Trace curve y^M = Tr_{qbar^s/qbar^c}(x) over F = GF(qbar^s)
/// with M = (qbar^s - 1) / (b (qbar - 1)).
SuperellipticCurve norm_trace_curve(const gf::Field& F, std::uint32_t qbar, std::uint32_t s,
                                    std::uint64_t b, std::uint32_t c);

/// Closed-form rational point count of the modified Norm-Trace curve.
std::uint64_t norm_trace_count(std::uint32_t qbar, std::uint32_t s, std::uint64_t b,
                               std::uint32_t c);

}  // namespace lrc::scurve
