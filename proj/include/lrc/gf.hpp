#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lrc/error.hpp"

namespace lrc::gf {

/// An element of a finite field, stored as a canonical code
/// sum_i c_i * p^i for polynomial-basis coordinates (c_0, ..., c_{s-1}).
using Elem = std::uint32_t;

/// Exact arithmetic in GF(p^s) on a polynomial basis with an explicit monic
/// irreducible modulus. Elements are canonical codes; equality of elements is
/// equality of codes. Log/antilog (and, for small fields, addition) tables are
/// precomputed from genuine polynomial arithmetic as a pure optimization.
class Field {
 public:
  /// Builds GF(p^s). The modulus defaults to the lexicographically smallest
  /// monic irreducible of degree s (ordered by the code of its coefficient
  /// vector); an override must be monic, degree s and irreducible. The
  /// designated primitive element is the smallest-code generator of the
  /// multiplicative group.
  static Field make(std::uint32_t p, std::uint32_t s,
                    std::optional<std::vector<std::uint32_t>> modulus_override = std::nullopt);

  std::uint32_t p() const { return p_; }
  std::uint32_t s() const { return s_; }
  std::uint64_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }  // c_0..c_s, monic
  Elem primitive() const { return primitive_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }

  Elem from_coeffs(const std::vector<std::uint32_t>& c) const;
  std::vector<std::uint32_t> to_coeffs(Elem a) const;
  /// Embeds an integer via the prime subfield (n mod p).
  Elem from_int(std::uint64_t n) const { return static_cast<Elem>(n % p_); }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    return add_slow(a, b);
  }
  Elem neg(Elem a) const { return neg_table_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const {
    if (a == 0) fail(errc::division_by_zero, "inverse of zero");
    return exp_[(q_ - 1) - log_[a]];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  /// Square-and-multiply; negative exponents invert first (a must be nonzero then).
  Elem pow(Elem a, std::int64_t e) const;
  Elem frobenius(Elem a) const { return pow(a, p_); }

  /// Multiplicative order; a must be nonzero.
  std::uint64_t mul_order(Elem a) const;

  bool is_square(Elem a) const;
  /// Any y with y^2 = a, if one exists.
  std::optional<Elem> sqrt(Elem a) const;

 private:
  Field() = default;
  Elem add_slow(Elem a, Elem b) const;
  void build_tables();

  std::uint32_t p_ = 0, s_ = 0;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Elem primitive_ = 0;
  std::vector<Elem> exp_, log_, neg_table_, add_table_;
  std::vector<std::uint64_t> qm1_prime_factors_;
};

/// Embedding of GF(p^c) into GF(p^s) for c | s, with trace and norm maps down.
class SubfieldMap {
 public:
  /// Requires small.p == big.p and small.s | big.s.
  SubfieldMap(const Field& big, const Field& small);

  Elem embed(Elem a_small) const;
  bool in_subfield(Elem a_big) const { return back_.count(a_big) != 0; }
  /// Inverse of embed; the argument must lie in the embedded subfield.
  Elem project(Elem a_big) const;
  /// Tr_{p^s/p^c}(a) = sum of a^{(p^c)^i}, returned in the small field.
  Elem trace(Elem a_big) const;
  Elem norm(Elem a_big) const;
  /// Trace without projecting (value inside the big field).
  Elem trace_in_big(Elem a_big) const;

 private:
  const Field* big_;
  const Field* small_;
  Elem root_;  // image of the small field's generator u in the big field
  std::unordered_map<Elem, Elem> back_;
};

/// Convenience wrapper of SubfieldMap::trace for a one-off computation.
Elem trace_to_subfield(const Field& big, Elem x, const Field& small);

/// The M distinct solutions of z^M = 1; requires M | q - 1. Sorted by code.
std::vector<Elem> nth_roots_of_unity(const Field& f, std::uint64_t M);

/// Deterministic quadratic non-residue (the designated primitive element);
/// requires odd characteristic.
Elem quadratic_nonresidue(const Field& f);

}  // namespace lrc::gf
