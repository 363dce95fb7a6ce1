#include "lrc/funcspace.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lrc/linalg.hpp"

namespace lrc::funcspace {

using gf::Elem;
using gf::Field;

namespace {

// ---------- truncated Laurent series arithmetic ----------

Series s_make(int lo, int hi) {
  Series s;
  s.lo = lo;
  s.hi = std::max(lo, hi);
  s.c.assign(static_cast<std::size_t>(s.hi - s.lo), 0);
  return s;
}

Series s_const(const Field&, Elem v, int prec) {
  Series s = s_make(0, prec);
  if (!s.c.empty()) s.c[0] = v;
  return s;
}

Series s_add(const Field& f, const Series& a, const Series& b) {
  int lo = std::min(a.lo, b.lo), hi = std::min(a.hi, b.hi);
  Series r = s_make(lo, hi);
  for (int e = lo; e < hi; ++e)
    r.c[static_cast<std::size_t>(e - lo)] = f.add(a.coeff(e), b.coeff(e));
  return r;
}

Series s_neg(const Field& f, const Series& a) {
  Series r = a;
  for (auto& v : r.c) v = f.neg(v);
  return r;
}

Series s_scale(const Field& f, const Series& a, Elem k) {
  Series r = a;
  for (auto& v : r.c) v = f.mul(v, k);
  return r;
}

Series s_mul(const Field& f, const Series& a, const Series& b) {
  int lo = a.lo + b.lo;
  int hi = std::min(a.lo + b.hi, b.lo + a.hi);
  Series r = s_make(lo, hi);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      int e = a.lo + static_cast<int>(i) + b.lo + static_cast<int>(j);
      if (e >= hi) break;
      r.c[static_cast<std::size_t>(e - lo)] = f.add(r.c[static_cast<std::size_t>(e - lo)],
                                                    f.mul(a.c[i], b.c[j]));
    }
  }
  return r;
}

Series s_shift(const Series& a, int e) {
  Series r = a;
  r.lo += e;
  r.hi += e;
  return r;
}

// multiplicative inverse; the input must be nonzero within its precision
Series s_inv(const Field& f, const Series& a) {
  int v = a.valuation();
  if (v >= a.hi) fail(errc::order_too_large, "cannot invert a series that is zero to precision");
  int n = a.hi - v;
  std::vector<Elem> u(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = a.coeff(v + i);
  std::vector<Elem> b(static_cast<std::size_t>(n), 0);
  Elem u0i = f.inv(u[0]);
  b[0] = u0i;
  for (int k = 1; k < n; ++k) {
    Elem acc = 0;
    for (int j = 1; j <= k; ++j)
      acc = f.add(acc, f.mul(u[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(k - j)]));
    b[static_cast<std::size_t>(k)] = f.neg(f.mul(u0i, acc));
  }
  Series r;
  r.lo = -v;
  r.hi = -v + n;
  r.c = std::move(b);
  return r;
}

Series s_pow_int(const Field& f, const Series& a, long e) {
  Series base = a;
  if (e < 0) {
    base = s_inv(f, a);
    e = -e;
  }
  // precision window of a repeated product keeps the window width of base
  Series r = s_const(f, 1, base.hi - base.lo);
  r = s_shift(r, 0);
  while (e) {
    if (e & 1) r = s_mul(f, r, base);
    base = s_mul(f, base, base);
    e >>= 1;
  }
  return r;
}

Series eval_xpoly_series(const Field& f, const std::vector<Elem>& poly, const Series& x,
                         int prec_hint) {
  Series acc = s_const(f, 0, prec_hint);
  for (std::size_t i = poly.size(); i-- > 0;) {
    acc = s_mul(f, acc, x);
    acc = s_add(f, acc, s_const(f, poly[i], prec_hint));
  }
  return acc;
}

Elem eval_xpoly(const Field& f, const std::vector<Elem>& poly, Elem x) {
  Elem acc = 0;
  for (std::size_t i = poly.size(); i-- > 0;) acc = f.add(f.mul(acc, x), poly[i]);
  return acc;
}

std::vector<Elem> xpoly_derivative(const Field& f, const std::vector<Elem>& a) {
  std::vector<Elem> d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(f.mul(f.from_int(i), a[i]));
  return d;
}

void ext_gcd(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return;
  }
  long x1, y1;
  ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
}

Elem int_to_elem(const Field& f, long v) {
  long p = static_cast<long>(f.p());
  long m = ((v % p) + p) % p;
  return f.from_int(static_cast<std::uint64_t>(m));
}

}  // namespace

// ---------- BiPoly ----------

bool BiPoly::is_zero() const {
  for (const auto& row : coeff)
    for (Elem v : row)
      if (v != 0) return false;
  return true;
}

namespace {

Elem eval_bipoly(const Field& f, const BiPoly& b, Elem x, Elem y) {
  Elem acc = 0;
  for (std::size_t bb = b.coeff.size(); bb-- > 0;)
    acc = f.add(f.mul(acc, y), eval_xpoly(f, b.coeff[bb], x));
  return acc;
}

Series eval_bipoly_series(const Field& f, const BiPoly& b, const Series& x, const Series& y,
                          int prec_hint) {
  Series acc = s_const(f, 0, prec_hint);
  for (std::size_t bb = b.coeff.size(); bb-- > 0;) {
    acc = s_mul(f, acc, y);
    acc = s_add(f, acc, eval_xpoly_series(f, b.coeff[bb], x, prec_hint));
  }
  return acc;
}

// pole order of a BiPoly at the infinite place: max over monomials of a*wx+b*wy
// (the monomial orders are pairwise distinct, so the extremal one carries the
// leading coefficient)
struct InfLead {
  bool zero = true;
  long pole = 0;
  Elem lead = 0;
};
InfLead inf_lead(const BiPoly& p, long wx, long wy) {
  InfLead out;
  for (std::size_t b = 0; b < p.coeff.size(); ++b)
    for (std::size_t a = 0; a < p.coeff[b].size(); ++a) {
      if (p.coeff[b][a] == 0) continue;
      long pole = static_cast<long>(a) * wx + static_cast<long>(b) * wy;
      if (out.zero || pole > out.pole) {
        out.zero = false;
        out.pole = pole;
        out.lead = p.coeff[b][a];
      }
    }
  return out;
}

}  // namespace

// ---------- CurveView ----------

CurveView CurveView::weierstrass(const ecurve::WeierstrassCurve& c) {
  CurveView v;
  const Field& f = c.field();
  v.f_ = &f;
  v.ydeg_ = 2;
  v.wx_ = 2;
  v.wy_ = 3;
  v.genus_ = 1;
  v.weier_ = true;
  // Phi = y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6)
  v.phi_.resize(2);
  v.phi_[1] = {c.a3(), c.a1()};
  v.phi_[0] = {f.neg(c.a6()), f.neg(c.a4()), f.neg(c.a2()), f.neg(1)};
  for (const auto& p : ecurve::enumerate_points(c)) {
    Place pl;
    if (p.inf) {
      pl = Place{};
    } else {
      pl.inf = false;
      pl.x = p.x;
      pl.y = p.y;
      pl.ram_x = (v.phi_y_at(p.x, p.y) == 0);
    }
    v.places_.push_back(pl);
  }
  return v;
}

CurveView CurveView::superelliptic(const scurve::SuperellipticCurve& c) {
  CurveView v;
  const Field& f = c.field();
  v.f_ = &f;
  v.ydeg_ = static_cast<int>(c.M());
  v.wx_ = static_cast<long>(c.M());
  v.wy_ = static_cast<long>(c.N());
  v.genus_ = static_cast<long>(c.genus());
  v.weier_ = false;
  // Phi = y^M - f(x)/gamma
  v.phi_.resize(c.M());
  Elem gi = f.inv(c.gamma());
  std::vector<Elem> F;
  for (Elem coeff : c.f_coeffs()) F.push_back(f.mul(coeff, gi));
  v.phi_[0].resize(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) v.phi_[0][i] = f.neg(F[i]);
  for (const auto& p : scurve::enumerate_places(c)) {
    Place pl;
    if (p.inf) {
      pl = Place{};
    } else {
      pl.inf = false;
      pl.x = p.x;
      pl.y = p.y;
      pl.ram_x = (c.M() > 1 && p.y == 0);
    }
    v.places_.push_back(pl);
  }
  return v;
}

std::size_t CurveView::index_of(const Place& p) const {
  for (std::size_t i = 0; i < places_.size(); ++i)
    if (places_[i] == p) return i;
  fail(errc::unsupported_place, "place not found in view");
}

Elem CurveView::phi_y_at(Elem x, Elem y) const {
  const Field& f = *f_;
  Elem acc = f.mul(f.from_int(ydeg_), f.pow(y, ydeg_ - 1));
  for (std::size_t b = 1; b < phi_.size(); ++b)
    acc = f.add(acc, f.mul(f.mul(f.from_int(b), eval_xpoly(f, phi_[b], x)), f.pow(y, b - 1)));
  return acc;
}

Elem CurveView::phi_x_at(Elem x, Elem y) const {
  const Field& f = *f_;
  Elem acc = 0;
  for (std::size_t b = 0; b < phi_.size(); ++b) {
    auto d = xpoly_derivative(f, phi_[b]);
    acc = f.add(acc, f.mul(eval_xpoly(f, d, x), f.pow(y, b)));
  }
  return acc;
}

namespace {

Series view_phi_series(const CurveView& v, const std::vector<std::vector<Elem>>& phi,
                       const Series& x, const Series& y, int prec) {
  const Field& f = v.field();
  Series acc = s_pow_int(f, y, v.ydeg());
  for (std::size_t b = 0; b < phi.size(); ++b) {
    Series term = s_mul(f, eval_xpoly_series(f, phi[b], x, prec), s_pow_int(f, y, b));
    acc = s_add(f, acc, term);
  }
  return acc;
}

}  // namespace

CurveView::XY CurveView::expand_at(std::size_t place_idx, int order) const {
  const Field& f = *f_;
  if (order < 1) order = 1;
  const Place& p = places_.at(place_idx);
  XY out;
  if (!p.inf) {
    if (!p.ram_x) {
      // x = alpha + t, solve for y by coefficient lifting
      Series X = s_make(0, order);
      if (order >= 1) X.c[0] = p.x;
      if (order >= 2) X.c[1] = 1;
      Series Y = s_make(0, order);
      Y.c[0] = p.y;
      Elem fy = phi_y_at(p.x, p.y);
      if (fy == 0) fail(errc::unsupported_place, "expected place unramified over x");
      Elem fyi = f.inv(fy);
      for (int k = 1; k < order; ++k) {
        Series res = view_phi_series(*this, phi_, X, Y, k + 1);
        Elem r = res.coeff(k);
        Y.c[static_cast<std::size_t>(k)] = f.neg(f.mul(fyi, r));
      }
      out.x = X;
      out.y = Y;
      return out;
    }
    // y = beta + t, solve for x
    Series Y = s_make(0, order);
    if (order >= 1) Y.c[0] = p.y;
    if (order >= 2) Y.c[1] = 1;
    Series X = s_make(0, order);
    X.c[0] = p.x;
    Elem fx = phi_x_at(p.x, p.y);
    if (fx == 0) fail(errc::unsupported_place, "singular point (internal)");
    Elem fxi = f.inv(fx);
    for (int k = 1; k < order; ++k) {
      Series res = view_phi_series(*this, phi_, X, Y, k + 1);
      Elem r = res.coeff(k);
      X.c[static_cast<std::size_t>(k)] = f.neg(f.mul(fxi, r));
    }
    out.x = X;
    out.y = Y;
    return out;
  }
  // the infinite place
  if (weier_) {
    // z = -x/y, w = -1/y: w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3
    int H = order + 8;
    Elem a3v = phi_[1].empty() ? 0 : phi_[1][0];
    Elem a1v = phi_[1].size() > 1 ? phi_[1][1] : 0;
    Elem a2v = f.neg(phi_[0].size() > 2 ? phi_[0][2] : 0);
    Elem a4v = f.neg(phi_[0].size() > 1 ? phi_[0][1] : 0);
    Elem a6v = f.neg(phi_[0].empty() ? 0 : phi_[0][0]);
    Series z = s_make(0, H);
    if (H >= 2) z.c[1] = 1;
    Series w = s_make(0, H);
    for (int it = 0; it < H + 2; ++it) {
      Series w2 = s_mul(f, w, w);
      Series w3 = s_mul(f, w2, w);
      Series nxt = s_mul(f, z, s_mul(f, z, z));
      nxt = s_add(f, nxt, s_scale(f, s_mul(f, z, w), a1v));
      nxt = s_add(f, nxt, s_scale(f, s_mul(f, s_mul(f, z, z), w), a2v));
      nxt = s_add(f, nxt, s_scale(f, w2, a3v));
      nxt = s_add(f, nxt, s_scale(f, s_mul(f, z, w2), a4v));
      nxt = s_add(f, nxt, s_scale(f, w3, a6v));
      // keep the full window
      Series fixed = s_make(0, H);
      for (int e = 0; e < H; ++e) fixed.c[static_cast<std::size_t>(e)] = nxt.coeff(e);
      w = fixed;
    }
    Series y = s_neg(f, s_inv(f, w));
    Series x = s_neg(f, s_mul(f, z, y));
    // truncate to the requested precision bound
    auto clip = [&](const Series& s) {
      Series r = s;
      if (r.hi > order) {
        r.c.resize(static_cast<std::size_t>(std::max(0, order - r.lo)));
        r.hi = order;
      }
      return r;
    };
    out.x = clip(x);
    out.y = clip(y);
    return out;
  }
  // superelliptic: joint coefficient lifting for x = t^{-M} xi, y = t^{-N} eta
  const long M = wx_, N = wy_;
  long A, B;
  ext_gcd(M, N, A, B);  // A*M + B*N = 1
  std::vector<Elem> F(phi_[0].size());
  for (std::size_t i = 0; i < F.size(); ++i) F[i] = f.neg(phi_[0][i]);  // y^M = F(x)
  Elem FN = F.back();
  int H = order + static_cast<int>(M + N) + 2;
  Series xi = s_make(0, H), eta = s_make(0, H);
  xi.c[0] = f.pow(FN, -B);
  eta.c[0] = f.pow(FN, A);
  // constant Jacobian of (G1, G2) at t = 0
  Elem xi0 = xi.c[0], eta0 = eta.c[0];
  Elem j11 = f.neg(f.mul(f.mul(int_to_elem(f, N), FN), f.pow(xi0, N - 1)));
  Elem j12 = f.mul(int_to_elem(f, M), f.pow(eta0, static_cast<std::int64_t>(M - 1)));
  Elem j21 = f.mul(f.mul(int_to_elem(f, A), f.pow(xi0, static_cast<std::int64_t>(A - 1))),
                   f.pow(eta0, static_cast<std::int64_t>(B)));
  Elem j22 = f.mul(f.mul(int_to_elem(f, B), f.pow(xi0, static_cast<std::int64_t>(A))),
                   f.pow(eta0, static_cast<std::int64_t>(B - 1)));
  Elem det = f.sub(f.mul(j11, j22), f.mul(j12, j21));
  if (det == 0) fail(errc::unsupported_place, "singular lifting system at infinity (internal)");
  Elem deti = f.inv(det);
  for (int k = 1; k < H; ++k) {
    // G1 = eta^M - sum_j F_j t^{M(N-j)} xi^j
    Series g1 = s_pow_int(f, eta, M);
    for (std::size_t j = 0; j < F.size(); ++j) {
      if (F[j] == 0) continue;
      Series term = s_scale(f, s_pow_int(f, xi, static_cast<long>(j)), F[j]);
      term = s_shift(term, static_cast<int>(M) * static_cast<int>(N - static_cast<long>(j)));
      g1 = s_add(f, g1, s_neg(f, term));
    }
    // G2 = xi^A eta^B - 1
    Series g2 = s_mul(f, s_pow_int(f, xi, A), s_pow_int(f, eta, B));
    g2 = s_add(f, g2, s_const(f, f.neg(1), H));
    Elem r1 = g1.coeff(k), r2 = g2.coeff(k);
    if (r1 == 0 && r2 == 0) continue;
    // solve J * (dxi, deta) = -(r1, r2)
    Elem dxi = f.mul(deti, f.sub(f.mul(j12, r2), f.mul(j22, r1)));
    Elem deta = f.mul(deti, f.sub(f.mul(j21, r1), f.mul(j11, r2)));
    xi.c[static_cast<std::size_t>(k)] = f.add(xi.c[static_cast<std::size_t>(k)], dxi);
    eta.c[static_cast<std::size_t>(k)] = f.add(eta.c[static_cast<std::size_t>(k)], deta);
  }
  Series X = s_shift(xi, static_cast<int>(-M));
  Series Y = s_shift(eta, static_cast<int>(-N));
  // defensive: the pair must satisfy the curve equation to precision
  Series chk = view_phi_series(*this, phi_, X, Y, order);
  if (chk.valuation() < std::min(order, chk.hi))
    fail(errc::unsupported_place, "infinite-place expansion inconsistent (internal)");
  auto clip = [&](const Series& s) {
    Series r = s;
    if (r.hi > order) {
      r.c.resize(static_cast<std::size_t>(std::max(0, order - r.lo)));
      r.hi = order;
    }
    return r;
  };
  out.x = clip(X);
  out.y = clip(Y);
  return out;
}

// ---------- Divisor ----------

Divisor::Divisor(std::vector<std::pair<std::size_t, int>> support) {
  std::map<std::size_t, int> m;
  for (auto [p, n] : support) m[p] += n;
  for (auto [p, n] : m)
    if (n != 0) supp_.emplace_back(p, n);
}

Divisor Divisor::from_list(const std::vector<std::size_t>& places) {
  std::vector<std::pair<std::size_t, int>> s;
  for (auto p : places) s.emplace_back(p, 1);
  return Divisor(std::move(s));
}

int Divisor::at(std::size_t place_idx) const {
  for (auto [p, n] : supp_)
    if (p == place_idx) return n;
  return 0;
}

long Divisor::degree() const {
  long d = 0;
  for (auto [p, n] : supp_) d += n;
  return d;
}

Divisor Divisor::plus(std::size_t place_idx, int mult) const {
  auto s = supp_;
  s.emplace_back(place_idx, mult);
  return Divisor(std::move(s));
}

bool Divisor::dominated_by(const Divisor& other) const {
  for (auto [p, n] : supp_)
    if (n > other.at(p)) return false;
  return true;
}

// ---------- evaluation ----------

namespace {

Series fn_series_at(const CurveView& view, const CurveFunction& fn, std::size_t idx, int order) {
  const Field& f = view.field();
  for (int prec = order + 8; prec <= order + 64; prec += 16) {
    auto xy = view.expand_at(idx, prec);
    Series sn = eval_bipoly_series(f, fn.num, xy.x, xy.y, prec);
    Series sd = eval_bipoly_series(f, fn.den, xy.x, xy.y, prec);
    if (sd.valuation() >= sd.hi) continue;  // denominator zero to precision; retry deeper
    if (sn.valuation() >= sn.hi && !fn.num.is_zero()) continue;
    Series q = s_mul(f, sn, s_inv(f, sd));
    if (q.hi < order) continue;
    if (q.hi > order) {
      q.c.resize(static_cast<std::size_t>(std::max(0, order - q.lo)));
      q.hi = order;
    }
    return q;
  }
  fail(errc::order_too_large, "series quotient needs more precision than the cap");
}

}  // namespace

Value evaluate(const CurveView& view, const CurveFunction& fn, std::size_t place_idx) {
  const Field& f = view.field();
  const Place& p = view.places()[place_idx];
  if (fn.num.is_zero()) return Value{false, 0};
  if (p.inf) {
    InfLead n = inf_lead(fn.num, view.wx(), view.wy());
    InfLead d = inf_lead(fn.den, view.wx(), view.wy());
    if (d.zero) fail(errc::unsupported_place, "zero denominator polynomial");
    long v = d.pole - n.pole;  // valuation of fn at infinity
    if (v < 0) return Value{true, 0};
    if (v > 0) return Value{false, 0};
    return Value{false, f.div(n.lead, d.lead)};
  }
  Elem nv = eval_bipoly(f, fn.num, p.x, p.y);
  Elem dv = eval_bipoly(f, fn.den, p.x, p.y);
  if (dv != 0) return Value{false, f.div(nv, dv)};
  if (nv != 0) return Value{true, 0};
  Series q = fn_series_at(view, fn, place_idx, 1);
  int v = q.valuation();
  if (v < 0) return Value{true, 0};
  if (v >= q.hi) {
    // deeper look
    q = fn_series_at(view, fn, place_idx, 8);
    v = q.valuation();
    if (v >= q.hi) fail(errc::order_too_large, "function vanishes beyond the precision cap");
  }
  if (v > 0) return Value{false, 0};
  return Value{false, q.coeff(0)};
}

long valuation(const CurveView& view, const CurveFunction& fn, std::size_t place_idx) {
  const Place& p = view.places()[place_idx];
  if (fn.num.is_zero()) fail(errc::unsupported_place, "valuation of the zero function");
  if (p.inf) {
    InfLead n = inf_lead(fn.num, view.wx(), view.wy());
    InfLead d = inf_lead(fn.den, view.wx(), view.wy());
    if (d.zero) fail(errc::unsupported_place, "zero denominator polynomial");
    return d.pole - n.pole;
  }
  for (int order = 8; order <= 64; order *= 2) {
    Series q = fn_series_at(view, fn, place_idx, order);
    int v = q.valuation();
    if (v < q.hi) return v;
  }
  fail(errc::order_too_large, "valuation beyond the precision cap");
}

Series local_expansion(const CurveView& view, const CurveFunction& fn, std::size_t place_idx,
                       int order) {
  if (order > 64) fail(errc::order_too_large, "expansion order cap is 64");
  return fn_series_at(view, fn, place_idx, order);
}

// ---------- RrContext ----------

RrContext::RrContext(const CurveView& view, const Divisor& dmax, RrOptions opts)
    : view_(&view), dmax_(dmax), opts_(opts) {
  const Field& f = view.field();
  // group the finite support by x-value
  std::map<Elem, std::vector<std::size_t>> fibers;  // x-value -> support place idx
  for (auto [idx, n] : dmax.support()) {
    if (view.places()[idx].inf) continue;
    fibers[view.places()[idx].x].push_back(idx);
  }
  u_ = {1};
  for (auto& [alpha, holders] : fibers) {
    // all rational places over x = alpha, with their e = v(x - alpha)
    std::vector<std::pair<std::size_t, long>> fiber;
    long esum = 0;
    for (std::size_t i = 0; i < view.places().size(); ++i) {
      const Place& pl = view.places()[i];
      if (pl.inf || pl.x != alpha) continue;
      long e = pl.ram_x ? view.wx() : 1;
      fiber.emplace_back(i, e);
      esum += e;
    }
    if (esum != view.ydeg())
      fail(errc::unsupported_place, "fiber over a support x-value has non-rational places");
    long k = 0;
    for (auto [idx, e] : fiber) {
      int n = dmax.at(idx);
      if (n > 0) k = std::max(k, (static_cast<long>(n) + e - 1) / e);
    }
    if (k > 0) {
      // multiply u by (x - alpha)^k
      for (long i = 0; i < k; ++i) {
        std::vector<Elem> nu(u_.size() + 1, 0);
        for (std::size_t j = 0; j < u_.size(); ++j) {
          nu[j + 1] = f.add(nu[j + 1], u_[j]);
          nu[j] = f.add(nu[j], f.mul(f.neg(alpha), u_[j]));
        }
        u_ = std::move(nu);
      }
    }
    for (auto [idx, e] : fiber) fiber_places_.push_back(FiberPlace{idx, e, e * k});
  }
  u_pole_ = view.wx() * static_cast<long>(u_.size() - 1);
  // infinity is always index 0 in our views
  long bmax = dmax.at(0) + u_pole_;
  for (long b = 0; b < view.ydeg(); ++b)
    for (long a = 0;; ++a) {
      long pole = a * view.wx() + b * view.wy();
      if (pole > bmax) break;
      monomials_.emplace_back(a, b);
      pole_order_.push_back(pole);
    }
  // sort by pole order (orders are pairwise distinct)
  std::vector<std::size_t> order_idx(monomials_.size());
  for (std::size_t i = 0; i < order_idx.size(); ++i) order_idx[i] = i;
  std::sort(order_idx.begin(), order_idx.end(),
            [&](std::size_t a, std::size_t b) { return pole_order_[a] < pole_order_[b]; });
  std::vector<std::pair<long, long>> ms;
  std::vector<long> ps;
  for (std::size_t i : order_idx) {
    ms.push_back(monomials_[i]);
    ps.push_back(pole_order_[i]);
  }
  monomials_ = std::move(ms);
  pole_order_ = std::move(ps);
}

std::vector<std::vector<Elem>> RrContext::basis_coords(const Divisor& d) const {
  const CurveView& view = *view_;
  const Field& f = view.field();
  if (!d.dominated_by(dmax_)) fail(errc::unsupported_place, "divisor exceeds the context bound");
  for (auto [idx, n] : d.support()) {
    if (view.places()[idx].inf) continue;
    bool covered = std::any_of(fiber_places_.begin(), fiber_places_.end(),
                               [&](const FiberPlace& fp) { return fp.idx == idx; });
    if (!covered) fail(errc::unsupported_place, "divisor support outside the context fibers");
  }
  if (monomials_.empty()) return {};
  const long bd = d.at(0) + u_pole_;
  std::vector<std::vector<Elem>> rows;
  for (std::size_t j = 0; j < monomials_.size(); ++j)
    if (pole_order_[j] > bd) {
      std::vector<Elem> row(monomials_.size(), 0);
      row[j] = 1;
      rows.push_back(std::move(row));
    }
  for (const auto& fp : fiber_places_) {
    long req = fp.u_val - d.at(fp.idx);
    if (req <= 0) continue;
    if (req > opts_.max_expansion_order)
      fail(errc::order_too_large, "required vanishing order exceeds the expansion cap");
    auto xy = view.expand_at(fp.idx, static_cast<int>(req));
    // powers of x and y series
    long max_a = 0, max_b = 0;
    for (auto [a, b] : monomials_) {
      max_a = std::max(max_a, a);
      max_b = std::max(max_b, b);
    }
    std::vector<Series> xp(static_cast<std::size_t>(max_a + 1)), yp(static_cast<std::size_t>(max_b + 1));
    xp[0] = s_const(f, 1, static_cast<int>(req));
    for (long a = 1; a <= max_a; ++a) xp[static_cast<std::size_t>(a)] = s_mul(f, xp[static_cast<std::size_t>(a - 1)], xy.x);
    yp[0] = s_const(f, 1, static_cast<int>(req));
    for (long b = 1; b <= max_b; ++b) yp[static_cast<std::size_t>(b)] = s_mul(f, yp[static_cast<std::size_t>(b - 1)], xy.y);
    for (long m = 0; m < req; ++m) {
      std::vector<Elem> row(monomials_.size(), 0);
      bool nonzero = false;
      for (std::size_t j = 0; j < monomials_.size(); ++j) {
        auto [a, b] = monomials_[j];
        Series s = s_mul(f, xp[static_cast<std::size_t>(a)], yp[static_cast<std::size_t>(b)]);
        Elem cm = s.coeff(static_cast<int>(m));
        row[j] = cm;
        if (cm != 0) nonzero = true;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  linalg::Matrix m(f, rows.size(), monomials_.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < monomials_.size(); ++j) m.at(i, j) = rows[i][j];
  linalg::Matrix k = rows.empty() ? linalg::Matrix::identity(f, monomials_.size())
                                  : linalg::kernel_basis(m);
  std::vector<std::vector<Elem>> basis;
  for (std::size_t i = 0; i < k.rows(); ++i) {
    std::vector<Elem> v(monomials_.size());
    for (std::size_t j = 0; j < monomials_.size(); ++j) v[j] = k.at(i, j);
    basis.push_back(std::move(v));
  }
  // dimension sanity against Riemann-Roch
  const long deg = d.degree();
  const long g = view.genus();
  const long dim = static_cast<long>(basis.size());
  if (deg < 0 && dim != 0) fail(errc::dimension_mismatch, "L(D) nonzero for deg < 0");
  if (deg >= 2 * g - 1 && dim != deg + 1 - g)
    fail(errc::dimension_mismatch, "dim L(D) != deg + 1 - g at deg >= 2g-1");
  if (deg >= 0 && (dim < std::max<long>(0, deg + 1 - g) || dim > deg + 1))
    fail(errc::dimension_mismatch, "dim L(D) outside the Riemann bounds");
  return basis;
}

CurveFunction RrContext::function_from_coords(const std::vector<Elem>& coords) const {
  CurveFunction fn;
  long max_a = 0, max_b = 0;
  for (std::size_t j = 0; j < monomials_.size(); ++j) {
    if (coords[j] == 0) continue;
    max_a = std::max(max_a, monomials_[j].first);
    max_b = std::max(max_b, monomials_[j].second);
  }
  fn.num.coeff.assign(static_cast<std::size_t>(max_b + 1),
                      std::vector<Elem>(static_cast<std::size_t>(max_a + 1), 0));
  for (std::size_t j = 0; j < monomials_.size(); ++j) {
    if (coords[j] == 0) continue;
    auto [a, b] = monomials_[j];
    fn.num.coeff[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = coords[j];
  }
  fn.den.coeff = {u_};
  return fn;
}

std::vector<Elem> RrContext::coords_of_one() const {
  std::vector<Elem> v(monomials_.size(), 0);
  for (std::size_t a = 0; a < u_.size(); ++a) {
    if (u_[a] == 0) continue;
    bool found = false;
    for (std::size_t j = 0; j < monomials_.size(); ++j)
      if (monomials_[j].first == static_cast<long>(a) && monomials_[j].second == 0) {
        v[j] = u_[a];
        found = true;
        break;
      }
    if (!found) fail(errc::unsupported_place, "constant 1 is outside the ambient space");
  }
  return v;
}

// ---------- rr_basis ----------

FunctionBasis rr_basis(const CurveView& view, const Divisor& d, RrOptions opts) {
  RrContext ctx(view, d, opts);
  FunctionBasis out;
  out.d = d;
  out.coords = ctx.basis_coords(d);
  for (const auto& c : out.coords) out.fns.push_back(ctx.function_from_coords(c));
  for (const auto& fn : out.fns) {
    std::vector<Value> ev;
    for (std::size_t i = 0; i < view.places().size(); ++i) ev.push_back(evaluate(view, fn, i));
    out.evals.push_back(std::move(ev));
  }
  // sanity: poles confined to the allowed support; zero count bounded by deg D
  const long deg = d.degree();
  for (std::size_t i = 0; i < out.fns.size(); ++i) {
    long zeros = 0;
    for (std::size_t pidx = 0; pidx < view.places().size(); ++pidx) {
      const Value& v = out.evals[i][pidx];
      if (v.pole && d.at(pidx) <= 0)
        fail(errc::dimension_mismatch, "basis function has a pole outside D");
      if (!v.pole && v.v == 0) ++zeros;
    }
    if (deg >= 0 && zeros > deg)
      fail(errc::dimension_mismatch, "basis function vanishes at more than deg D places");
  }
  return out;
}

// ---------- ladder ----------

namespace {

// echelon membership helper
struct Span {
  linalg::Matrix m;
  std::size_t rank = 0;
  explicit Span(const Field& f, std::size_t cols) : m(f, 0, cols) {}
  void reset(const Field& f, const std::vector<std::vector<Elem>>& rows, std::size_t cols) {
    linalg::Matrix t(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) t.at(i, j) = rows[i][j];
    auto rr = linalg::rref(t);
    m = rr.m;
    rank = rr.rank;
  }
  bool contains(const Field& f, const std::vector<Elem>& v) const {
    std::vector<Elem> w = v;
    for (std::size_t r = 0; r < rank; ++r) {
      std::size_t piv = 0;
      while (piv < m.cols() && m.at(r, piv) == 0) ++piv;
      if (piv == m.cols()) continue;
      Elem c = w[piv];
      if (c == 0) continue;
      for (std::size_t j = piv; j < m.cols(); ++j) w[j] = f.sub(w[j], f.mul(c, m.at(r, j)));
    }
    return std::all_of(w.begin(), w.end(), [](Elem e) { return e == 0; });
  }
};

}  // namespace

Ladder ladder_functions(const RrContext& ctx, const std::vector<std::size_t>& defining_list,
                        std::size_t r) {
  const CurveView& view = ctx.view();
  const Field& f = view.field();
  const long g = view.genus();
  if (g != 1 && g != 2) fail(errc::ladder_gap_mismatch, "ladders support genus 1 and 2 only");
  Ladder out;
  std::vector<std::vector<Elem>> w_coords;
  w_coords.push_back(ctx.coords_of_one());
  if (r >= 2) {
    if (defining_list.size() < r + 1)
      fail(errc::ladder_gap_mismatch, "defining list too short for the requested r");
    std::vector<std::size_t> prefix(defining_list.begin(), defining_list.begin() + 1);
    auto cur = ctx.basis_coords(Divisor::from_list(prefix));
    Span span(f, ctx.ambient_dim());
    span.reset(f, cur, ctx.ambient_dim());
    std::size_t harvested = 0, steps = 0, empty_steps = 0;
    const std::size_t max_steps = (g == 1) ? r - 1 : r;
    for (std::size_t i = 1; i <= max_steps && harvested < r - 1; ++i) {
      prefix.push_back(defining_list[i]);
      auto nxt = ctx.basis_coords(Divisor::from_list(prefix));
      ++steps;
      if (nxt.size() == cur.size()) {
        ++empty_steps;
        if (g == 1)
          fail(errc::ladder_gap_mismatch, "empty increment on a genus-1 ladder");
        if (empty_steps > 1)
          fail(errc::ladder_gap_mismatch, "more than one empty increment on a genus-2 ladder");
        cur = nxt;
        continue;
      }
      if (nxt.size() != cur.size() + 1)
        fail(errc::ladder_gap_mismatch, "increment grew by more than one dimension");
      bool found = false;
      for (const auto& cand : nxt) {
        if (span.contains(f, cand)) continue;
        w_coords.push_back(cand);
        found = true;
        break;
      }
      if (!found) fail(errc::ladder_gap_mismatch, "no new vector found despite dimension growth");
      ++harvested;
      cur = nxt;
      span.reset(f, cur, ctx.ambient_dim());
    }
    if (harvested != r - 1)
      fail(errc::ladder_gap_mismatch, "ladder ended before harvesting r-1 functions");
  }
  for (const auto& c : w_coords) {
    CurveFunction fn = ctx.function_from_coords(c);
    std::vector<Value> ev;
    for (std::size_t i = 0; i < view.places().size(); ++i) ev.push_back(evaluate(view, fn, i));
    out.w.push_back(std::move(fn));
    out.evals.push_back(std::move(ev));
  }
  return out;
}

// ---------- invariant z ----------

InvariantZ invariant_generator_z(const RrContext& ctx, const Divisor& d_inf,
                                 const std::vector<std::vector<std::size_t>>& orbits) {
  const CurveView& view = ctx.view();
  const Field& f = view.field();
  bool all_singleton = std::all_of(orbits.begin(), orbits.end(),
                                   [](const auto& o) { return o.size() <= 1; });
  if (all_singleton) {
    // trivial group: the invariance constraint is vacuous; return x
    CurveFunction fn;
    fn.num.coeff = {{0, 1}};
    InvariantZ out;
    out.fn = fn;
    for (std::size_t i = 0; i < view.places().size(); ++i)
      out.evals.push_back(evaluate(view, out.fn, i));
    return out;
  }
  auto basis = ctx.basis_coords(d_inf);
  if (basis.size() < 2) fail(errc::no_invariant_found, "L(D_inf) has no nonconstant functions");
  std::vector<CurveFunction> bf;
  std::vector<std::vector<Value>> bev;
  for (const auto& c : basis) {
    CurveFunction fn = ctx.function_from_coords(c);
    std::vector<Value> ev;
    for (std::size_t i = 0; i < view.places().size(); ++i) ev.push_back(evaluate(view, fn, i));
    bf.push_back(std::move(fn));
    bev.push_back(std::move(ev));
  }
  std::set<std::size_t> pole_support;
  for (auto [idx, n] : d_inf.support())
    if (n > 0) pole_support.insert(idx);
  std::vector<std::size_t> usable_orbits;
  std::vector<std::vector<Elem>> rows;
  for (std::size_t oi = 0; oi < orbits.size(); ++oi) {
    const auto& orb = orbits[oi];
    bool touches_pole = std::any_of(orb.begin(), orb.end(),
                                    [&](std::size_t p) { return pole_support.count(p) != 0; });
    if (touches_pole) continue;
    usable_orbits.push_back(oi);
    for (std::size_t j = 1; j < orb.size(); ++j) {
      std::vector<Elem> row(basis.size());
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const Value &v0 = bev[i][orb[0]], &vj = bev[i][orb[j]];
        if (v0.pole || vj.pole)
          fail(errc::no_invariant_found, "basis function has a pole on an orbit (internal)");
        row[i] = f.sub(v0.v, vj.v);
      }
      rows.push_back(std::move(row));
    }
  }
  linalg::Matrix m(f, rows.size(), basis.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) m.at(i, j) = rows[i][j];
  linalg::Matrix k = rows.empty() ? linalg::Matrix::identity(f, basis.size())
                                  : linalg::kernel_basis(m);
  for (std::size_t ki = 0; ki < k.rows(); ++ki) {
    std::vector<Elem> combo(ctx.ambient_dim(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (k.at(ki, i) == 0) continue;
      for (std::size_t j = 0; j < ctx.ambient_dim(); ++j)
        combo[j] = f.add(combo[j], f.mul(k.at(ki, i), basis[i][j]));
    }
    CurveFunction fn = ctx.function_from_coords(combo);
    std::vector<Value> ev;
    for (std::size_t i = 0; i < view.places().size(); ++i) ev.push_back(evaluate(view, fn, i));
    // nonconstant over the orbit places?
    bool constant = true;
    std::optional<Elem> first;
    for (std::size_t oi : usable_orbits)
      for (std::size_t p : orbits[oi]) {
        if (!first)
          first = ev[p].v;
        else if (ev[p].v != *first)
          constant = false;
      }
    if (constant) continue;
    // constant within each orbit, pairwise distinct across orbits
    bool ok = true;
    std::set<Elem> seen;
    for (std::size_t oi : usable_orbits) {
      const auto& orb = orbits[oi];
      Elem v0 = ev[orb[0]].v;
      for (std::size_t p : orb)
        if (ev[p].pole || ev[p].v != v0) ok = false;
      if (!seen.insert(v0).second) ok = false;
      if (!ok) break;
    }
    if (!ok) continue;
    InvariantZ out;
    out.fn = std::move(fn);
    out.evals = std::move(ev);
    return out;
  }
  fail(errc::no_invariant_found, "no orbit-constant separating function in L(D_inf)");
}

}  // namespace lrc::funcspace
