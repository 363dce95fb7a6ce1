#include "lrc/scurve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace lrc::scurve {

using gf::Elem;
using gf::Field;

namespace {

constexpr std::uint64_t kEnumerationGuard = 1u << 20;

std::uint64_t isqrt_u64(std::uint64_t n) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void trim(std::vector<Elem>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<Elem> poly_derivative(const Field& f, const std::vector<Elem>& a) {
  std::vector<Elem> d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(f.mul(f.from_int(i), a[i]));
  trim(d);
  return d;
}

std::vector<Elem> poly_mod(const Field& f, std::vector<Elem> a, const std::vector<Elem>& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  Elem lead_inv = f.inv(b.back());
  while (a.size() > db) {
    Elem c = f.mul(a.back(), lead_inv);
    std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
    trim(a);
    if (a.empty()) break;
  }
  return a;
}

std::vector<Elem> poly_gcd(const Field& f, std::vector<Elem> a, std::vector<Elem> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = poly_mod(f, std::move(a), b);
    std::swap(a, b);
  }
  return a;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// f(x + kappa) coefficients, by the in-place Horner shift
std::vector<Elem> poly_shift(const Field& f, std::vector<Elem> a, Elem kappa) {
  if (a.empty()) return a;
  const std::size_t n = a.size() - 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = n; j-- > i;) a[j] = f.add(a[j], f.mul(kappa, a[j + 1]));
  return a;
}

}  // namespace

SuperellipticCurve SuperellipticCurve::make(const Field& f, std::uint32_t M,
                                            std::vector<Elem> f_coeffs, Elem gamma) {
  trim(f_coeffs);
  if (M < 1 || f_coeffs.size() < 2) fail(errc::invalid_curve, "need M >= 1 and deg f >= 1");
  if (gamma == 0) fail(errc::invalid_curve, "gamma must be nonzero");
  std::uint32_t N = static_cast<std::uint32_t>(f_coeffs.size() - 1);
  if (gcd_u64(M, N) != 1) fail(errc::invalid_curve, "gcd(M, N) must be 1");
  if (gcd_u64(M, f.p()) != 1) fail(errc::invalid_curve, "gcd(M, char) must be 1");
  auto fp = poly_derivative(f, f_coeffs);
  auto g = poly_gcd(f, f_coeffs, fp);
  if (g.size() != 1) fail(errc::invalid_curve, "gcd(f, f') must be 1");
  SuperellipticCurve c;
  c.f_ = &f;
  c.M_ = M;
  c.fc_ = std::move(f_coeffs);
  c.gamma_ = gamma;
  return c;
}

Elem SuperellipticCurve::eval_f(Elem x) const {
  const Field& f = *f_;
  Elem acc = 0;
  for (std::size_t i = fc_.size(); i-- > 0;) acc = f.add(f.mul(acc, x), fc_[i]);
  return acc;
}

bool SuperellipticCurve::contains(const SCPlace& p) const {
  if (p.inf) return true;
  return f_->mul(gamma_, f_->pow(p.y, M_)) == eval_f(p.x);
}

std::vector<SCPlace> enumerate_places(const SuperellipticCurve& c) {
  const Field& f = c.field();
  if (f.q() > kEnumerationGuard) fail(errc::field_too_large, "x-sweep guard");
  // one representative root of y^M = v per attainable v, plus the root-of-unity
  // cosets to expand it
  std::vector<Elem> rep(f.q(), static_cast<Elem>(f.q()));
  for (std::uint64_t y = 0; y < f.q(); ++y) {
    Elem v = f.pow(static_cast<Elem>(y), c.M());
    if (rep[v] == static_cast<Elem>(f.q()) || y < rep[v]) rep[v] = static_cast<Elem>(y);
  }
  std::uint64_t g = gcd_u64(c.M(), f.q() - 1);
  auto rou = gf::nth_roots_of_unity(f, g);
  std::vector<SCPlace> out;
  out.push_back(SCPlace::infinity());
  for (std::uint64_t xi = 0; xi < f.q(); ++xi) {
    Elem x = static_cast<Elem>(xi);
    Elem v = f.div(c.eval_f(x), c.gamma());
    if (v == 0) {
      out.push_back(SCPlace::affine(x, 0));
      continue;
    }
    if (rep[v] == static_cast<Elem>(f.q())) continue;
    for (Elem z : rou) out.push_back(SCPlace::affine(x, f.mul(rep[v], z)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

MaximalityReport maximality_check(const SuperellipticCurve& c) {
  MaximalityReport r;
  r.count = enumerate_places(c).size();
  const std::uint64_t q = c.field().q();
  std::uint64_t sq = isqrt_u64(q);
  if (sq * sq != q) {
    r.cls = MaxClass::non_square_field;
    return r;
  }
  std::uint64_t span = 2 * c.genus() * sq;
  if (r.count == q + 1 + span)
    r.cls = MaxClass::maximal;
  else if (r.count == q + 1 - span)
    r.cls = MaxClass::minimal;
  else
    r.cls = MaxClass::neither;
  return r;
}

SCPlace hyperelliptic_conjugate(const SuperellipticCurve& c, const SCPlace& p) {
  if (!c.hyperelliptic()) fail(errc::not_hyperelliptic, "conjugation needs M = 2 and odd char");
  if (p.inf) return p;
  return SCPlace::affine(p.x, c.field().neg(p.y));
}

bool reduced_affine_tuple(const SuperellipticCurve& c, const std::vector<SCPlace>& places) {
  for (std::size_t i = 0; i < places.size(); ++i)
    for (std::size_t j = i + 1; j < places.size(); ++j) {
      if (places[i].inf || places[j].inf) continue;
      if (hyperelliptic_conjugate(c, places[i]) == places[j]) return false;
    }
  return true;
}

std::vector<std::vector<SCPlace>> x_translation_orbits(const SuperellipticCurve& c,
                                                       const std::vector<Elem>& kernel) {
  const Field& f = c.field();
  std::set<Elem> ks(kernel.begin(), kernel.end());
  if (ks.size() != kernel.size() || !ks.count(0)) fail(errc::kernel_not_closed, "kernel malformed");
  for (Elem a : kernel)
    for (Elem b : kernel)
      if (!ks.count(f.add(a, b))) fail(errc::kernel_not_closed, "kernel not closed under addition");
  for (Elem kappa : kernel) {
    auto shifted = poly_shift(f, c.f_coeffs(), kappa);
    if (shifted != c.f_coeffs())
      fail(errc::translation_not_automorphism, "f(x + kappa) differs from f(x)");
  }
  auto places = enumerate_places(c);
  std::set<SCPlace> seen;
  std::vector<std::vector<SCPlace>> orbits;
  for (const auto& p : places) {
    if (p.inf || seen.count(p)) continue;
    std::vector<SCPlace> orb;
    for (Elem kappa : kernel) orb.push_back(SCPlace::affine(f.add(p.x, kappa), p.y));
    std::sort(orb.begin(), orb.end());
    for (const auto& m : orb) seen.insert(m);
    orbits.push_back(std::move(orb));
  }
  std::sort(orbits.begin(), orbits.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return orbits;
}

namespace {

CoordScalingOrbits scaling_orbits(const SuperellipticCurve& c, const std::vector<Elem>& roots,
                                  bool scale_y) {
  const Field& f = c.field();
  CoordScalingOrbits out;
  auto places = enumerate_places(c);
  std::set<SCPlace> seen;
  for (const auto& p : places) {
    if (p.inf || seen.count(p)) continue;
    Elem moving = scale_y ? p.y : p.x;
    if (moving == 0) {
      out.excluded.push_back(p);
      continue;
    }
    std::vector<SCPlace> orb;
    for (Elem z : roots)
      orb.push_back(scale_y ? SCPlace::affine(p.x, f.mul(z, p.y))
                            : SCPlace::affine(f.mul(z, p.x), p.y));
    std::sort(orb.begin(), orb.end());
    for (const auto& m : orb) {
      if (!c.contains(m)) fail(errc::image_off_curve, "scaling image off curve");
      seen.insert(m);
    }
    orb.erase(std::unique(orb.begin(), orb.end()), orb.end());
    if (orb.size() != roots.size()) fail(errc::wrong_root_count, "orbit shorter than root count");
    out.orbits.push_back(std::move(orb));
  }
  std::sort(out.orbits.begin(), out.orbits.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace

CoordScalingOrbits x_scaling_orbits(const SuperellipticCurve& c, const std::vector<Elem>& roots) {
  const Field& f = c.field();
  for (Elem z : roots) {
    // f(z x) must equal f(x) coefficientwise
    std::vector<Elem> scaled(c.f_coeffs().size());
    Elem zp = 1;
    for (std::size_t i = 0; i < scaled.size(); ++i) {
      scaled[i] = f.mul(c.f_coeffs()[i], zp);
      zp = f.mul(zp, z);
    }
    if (scaled != c.f_coeffs())
      fail(errc::translation_not_automorphism, "x-scaling does not preserve the curve");
  }
  return scaling_orbits(c, roots, false);
}

CoordScalingOrbits y_scaling_orbits(const SuperellipticCurve& c, const std::vector<Elem>& roots) {
  const Field& f = c.field();
  if ((f.q() - 1) % c.M() != 0) fail(errc::wrong_root_count, "M does not divide q - 1");
  auto expected = gf::nth_roots_of_unity(f, c.M());
  std::vector<Elem> sorted = roots;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != expected) fail(errc::wrong_root_count, "list is not the M-th roots of unity");
  return scaling_orbits(c, roots, true);
}

Genus2Automorphism Genus2Automorphism::make(const SuperellipticCurve& c, Elem a, Elem b, Elem cc,
                                            Elem d) {
  if (c.M() != 2 || c.N() != 5 || c.field().p() == 2)
    fail(errc::not_genus2, "matrix automorphisms are for genus-2 curves y^2 = quintic");
  const Field& f = c.field();
  if (f.sub(f.mul(a, d), f.mul(b, cc)) == 0) fail(errc::not_genus2, "matrix is singular");
  Genus2Automorphism g;
  g.curve_ = &c;
  g.a_ = a;
  g.b_ = b;
  g.c_ = cc;
  g.d_ = d;
  g.places_ = enumerate_places(c);
  std::set<SCPlace> image;
  for (const auto& p : g.places_) {
    SCPlace q = g.apply(p);
    if (!c.contains(q)) fail(errc::image_off_curve, "image violates the curve equation");
    image.insert(q);
  }
  if (image.size() != g.places_.size()) fail(errc::image_off_curve, "map not injective on places");
  return g;
}

SCPlace Genus2Automorphism::apply(const SCPlace& p) const {
  const Field& f = curve_->field();
  Elem det = f.sub(f.mul(a_, d_), f.mul(b_, c_));
  if (p.inf) {
    if (c_ == 0) return SCPlace::infinity();
    // x -> a/c; the y-image function has a zero at infinity
    return SCPlace::affine(f.div(a_, c_), 0);
  }
  Elem den = f.add(f.mul(c_, p.x), d_);
  if (den == 0) return SCPlace::infinity();
  Elem x2 = f.div(f.add(f.mul(a_, p.x), b_), den);
  Elem y2 = f.div(f.mul(det, p.y), f.mul(den, f.mul(den, den)));
  return SCPlace::affine(x2, y2);
}

int Genus2Automorphism::order() const {
  std::vector<SCPlace> cur = places_;
  for (int k = 1; k <= 1000; ++k) {
    bool all_fixed = true;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      cur[i] = apply(cur[i]);
      if (!(cur[i] == places_[i])) all_fixed = false;
    }
    if (all_fixed) return k;
  }
  fail(errc::not_genus2, "automorphism order not found (cap)");
}

bool Genus2Automorphism::same_action(const Genus2Automorphism& o) const {
  for (const auto& p : places_)
    if (!(apply(p) == o.apply(p))) return false;
  return true;
}

std::vector<Genus2Automorphism> genus2_group_closure(const SuperellipticCurve& c,
                                                     std::vector<Genus2Automorphism> gens,
                                                     std::size_t cap) {
  const Field& f = c.field();
  std::vector<Genus2Automorphism> g{Genus2Automorphism::make(c, 1, 0, 0, 1)};
  auto known = [&](const Genus2Automorphism& a) {
    return std::any_of(g.begin(), g.end(),
                       [&](const Genus2Automorphism& b) { return a.same_action(b); });
  };
  std::vector<Genus2Automorphism> frontier = gens;
  while (!frontier.empty()) {
    Genus2Automorphism a = frontier.back();
    frontier.pop_back();
    if (known(a)) continue;
    g.push_back(a);
    if (g.size() > cap) fail(errc::cap_exceeded, "genus-2 closure exceeds cap");
    for (const auto& b : g) {
      // matrix product a * b
      Elem na = f.add(f.mul(a.a(), b.a()), f.mul(a.b(), b.c()));
      Elem nb = f.add(f.mul(a.a(), b.b()), f.mul(a.b(), b.d()));
      Elem nc = f.add(f.mul(a.c(), b.a()), f.mul(a.d(), b.c()));
      Elem nd = f.add(f.mul(a.c(), b.b()), f.mul(a.d(), b.d()));
      frontier.push_back(Genus2Automorphism::make(c, na, nb, nc, nd));
      Elem ma = f.add(f.mul(b.a(), a.a()), f.mul(b.b(), a.c()));
      Elem mb = f.add(f.mul(b.a(), a.b()), f.mul(b.b(), a.d()));
      Elem mc = f.add(f.mul(b.c(), a.a()), f.mul(b.d(), a.c()));
      Elem md = f.add(f.mul(b.c(), a.b()), f.mul(b.d(), a.d()));
      frontier.push_back(Genus2Automorphism::make(c, ma, mb, mc, md));
    }
  }
  return g;
}

SuperellipticCurve norm_trace_curve(const Field& F, std::uint32_t qbar, std::uint32_t s,
                                    std::uint64_t b, std::uint32_t c) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < s; ++i) q *= qbar;
  if (F.q() != q) fail(errc::invalid_curve, "field size must be qbar^s");
  if (c == 0 || s % c != 0) fail(errc::invalid_curve, "c must divide s");
  std::uint64_t ratio = (q - 1) / (qbar - 1);
  if (b == 0 || ratio % b != 0) fail(errc::invalid_curve, "b must divide (qbar^s-1)/(qbar-1)");
  std::uint64_t M = ratio / b;
  // f(x) = x^{qbar^{s-c}} + x^{qbar^{s-2c}} + ... + x
  std::uint64_t N = 1;
  for (std::uint32_t i = 0; i < s - c; ++i) N *= qbar;
  std::vector<Elem> fc(N + 1, 0);
  std::uint64_t e = 1;
  for (std::uint32_t i = 0; i * c < s; ++i) {
    fc[e] = 1;
    std::uint64_t step = 1;
    for (std::uint32_t j = 0; j < c; ++j) step *= qbar;
    e *= step;
  }
  return SuperellipticCurve::make(F, static_cast<std::uint32_t>(M), std::move(fc), 1);
}

std::uint64_t norm_trace_count(std::uint32_t qbar, std::uint32_t s, std::uint64_t b,
                               std::uint32_t c) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < s; ++i) q *= qbar;
  std::uint64_t qc = 1;
  for (std::uint32_t i = 0; i < c; ++i) qc *= qbar;
  std::uint64_t ratio_c = (qc - 1) / (qbar - 1);
  std::uint64_t g = gcd_u64(b, ratio_c);
  return g * ((q - 1) / b) * (q / qc) + q / qc + 1;
}

}  // namespace lrc::scurve
