#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lrc/ecurve.hpp"
#include "lrc/gf.hpp"
#include "lrc/scurve.hpp"

namespace lrc::funcspace {

/// Truncated Laurent series: coefficients of t^lo .. t^{hi-1}; coefficients at
/// exponents >= hi are unknown (precision bound).
struct Series {
  int lo = 0;
  int hi = 0;
  std::vector<gf::Elem> c;  // c[i] is the coefficient of t^{lo+i}

  gf::Elem coeff(int e) const {
    if (e < lo || e >= hi) return 0;
    return c[static_cast<std::size_t>(e - lo)];
  }
  /// Smallest exponent with a nonzero coefficient, or hi when zero to precision.
  int valuation() const {
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) return lo + static_cast<int>(i);
    return hi;
  }
};

struct Place {
  bool inf = true;
  gf::Elem x = 0, y = 0;
  bool ram_x = false;  // v_P(x - x(P)) equals the x-degree of the fiber
  bool operator==(const Place& o) const {
    return inf == o.inf && (inf || (x == o.x && y == o.y));
  }
};

/// Bivariate polynomial with y-degree below the curve's y-degree:
/// coeff[b] is the x-polynomial multiplying y^b.
struct BiPoly {
  std::vector<std::vector<gf::Elem>> coeff;
  static BiPoly constant(gf::Elem v) { return BiPoly{{{v}}}; }
  bool is_zero() const;
};

/// A function on the curve as a quotient of two BiPolys.
struct CurveFunction {
  BiPoly num;
  BiPoly den = BiPoly::constant(1);
};

struct Value {
  bool pole = false;
  gf::Elem v = 0;
  bool operator==(const Value& o) const { return pole == o.pole && (pole || v == o.v); }
};

/// Uniform plane-model view over both supported curve families:
/// Phi(x, y) = y^ydeg + sum_b phi_b(x) y^b = 0, with coordinate pole orders
/// (wx, wy) at the unique infinite place and the rational places enumerated in
/// the same order as the source module (infinity first).
class CurveView {
 public:
  static CurveView weierstrass(const ecurve::WeierstrassCurve& c);
  static CurveView superelliptic(const scurve::SuperellipticCurve& c);

  const gf::Field& field() const { return *f_; }
  int ydeg() const { return ydeg_; }
  long wx() const { return wx_; }
  long wy() const { return wy_; }
  long genus() const { return genus_; }
  const std::vector<Place>& places() const { return places_; }
  std::size_t index_of(const Place& p) const;

  /// Local expansions of the coordinate functions x and y at a place, to
  /// absolute t-precision `order` in a fixed uniformizer.
  struct XY {
    Series x, y;
  };
  XY expand_at(std::size_t place_idx, int order) const;

  gf::Elem phi_y_at(gf::Elem x, gf::Elem y) const;  // dPhi/dy
  gf::Elem phi_x_at(gf::Elem x, gf::Elem y) const;  // dPhi/dx

 private:
  const gf::Field* f_ = nullptr;
  int ydeg_ = 0;
  long wx_ = 0, wy_ = 0, genus_ = 0;
  bool weier_ = false;
  std::vector<std::vector<gf::Elem>> phi_;  // phi_[b], b < ydeg
  std::vector<Place> places_;
};

/// Formal sum of places by view index; normalized (sorted, no zeros).
class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(std::vector<std::pair<std::size_t, int>> support);
  static Divisor from_list(const std::vector<std::size_t>& places);  // multiplicity 1 each

  const std::vector<std::pair<std::size_t, int>>& support() const { return supp_; }
  int at(std::size_t place_idx) const;
  long degree() const;
  Divisor plus(std::size_t place_idx, int mult) const;
  /// true iff this(P) <= other(P) everywhere
  bool dominated_by(const Divisor& other) const;

 private:
  std::vector<std::pair<std::size_t, int>> supp_;
};

Value evaluate(const CurveView& view, const CurveFunction& fn, std::size_t place_idx);
long valuation(const CurveView& view, const CurveFunction& fn, std::size_t place_idx);
/// First `order` coefficients of fn at the place, in the fixed uniformizer.
Series local_expansion(const CurveView& view, const CurveFunction& fn, std::size_t place_idx,
                       int order);

struct RrOptions {
  int max_expansion_order = 8;
};

/// Shared ambient space for the Riemann-Roch spaces of all divisors dominated
/// by dmax: candidate functions are g / U for a fixed x-polynomial denominator
/// U covering the positive finite part of dmax and g ranging over monomials
/// x^a y^b (b < ydeg) within the induced infinity pole bound.
class RrContext {
 public:
  RrContext(const CurveView& view, const Divisor& dmax, RrOptions opts = {});

  const CurveView& view() const { return *view_; }
  const Divisor& dmax() const { return dmax_; }
  std::size_t ambient_dim() const { return monomials_.size(); }

  /// Canonical (echelon-ordered) basis of L(d) as coefficient vectors over the
  /// ambient monomials; requires d dominated by dmax.
  std::vector<std::vector<gf::Elem>> basis_coords(const Divisor& d) const;
  CurveFunction function_from_coords(const std::vector<gf::Elem>& coords) const;
  /// Coefficient vector of the constant function 1 (i.e., of U itself).
  std::vector<gf::Elem> coords_of_one() const;

 private:
  const CurveView* view_;
  Divisor dmax_;
  RrOptions opts_;
  std::vector<gf::Elem> u_;                     // denominator, univariate in x
  std::vector<std::pair<long, long>> monomials_;  // (a, b), ascending pole order
  std::vector<long> pole_order_;                // wx a + wy b per monomial
  long u_pole_ = 0;                             // pole order of U at infinity
  struct FiberPlace {
    std::size_t idx;
    long e;     // v_P(x - alpha)
    long u_val;  // v_P(U)
  };
  std::vector<FiberPlace> fiber_places_;
};

struct FunctionBasis {
  Divisor d;
  std::vector<CurveFunction> fns;
  std::vector<std::vector<gf::Elem>> coords;  // over the context's monomials
  std::vector<std::vector<Value>> evals;      // evals[i][place]
};

/// Basis of L(d), dimension-checked against the Riemann-Roch count, with
/// evaluation caches over all rational places and a zero-count sanity check.
FunctionBasis rr_basis(const CurveView& view, const Divisor& d, RrOptions opts = {});

/// The ladder w_0 = 1, w_1, ..., w_{r-1} built from the ordered defining list:
/// each w_i lies in L(P_1 + ... + P_{j+1}) \ L(P_1 + ... + P_j) at the j-th
/// nonempty increment. Genus 1 demands all of the first r-1 steps nonempty;
/// genus 2 demands exactly r-1 nonempty steps among the first r.
struct Ladder {
  std::vector<CurveFunction> w;
  std::vector<std::vector<Value>> evals;  // evals[i][place]
};
Ladder ladder_functions(const RrContext& ctx, const std::vector<std::size_t>& defining_list,
                        std::size_t r);

/// A nonconstant function z in L(d_inf) whose evaluation is constant on every
/// given orbit (orbits meeting the pole support are skipped) and takes
/// pairwise-distinct values across the included orbits.
struct InvariantZ {
  CurveFunction fn;
  std::vector<Value> evals;  // over all places
};
InvariantZ invariant_generator_z(const RrContext& ctx, const Divisor& d_inf,
                                 const std::vector<std::vector<std::size_t>>& orbits);

}  // namespace lrc::funcspace
