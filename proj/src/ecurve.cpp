#include "lrc/ecurve.hpp"

#include "lrc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace lrc::ecurve {

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

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

WeierstrassCurve WeierstrassCurve::make(const Field& f, Elem a1, Elem a2, Elem a3, Elem a4,
                                        Elem a6) {
  WeierstrassCurve c;
  c.f_ = &f;
  c.a1_ = a1;
  c.a2_ = a2;
  c.a3_ = a3;
  c.a4_ = a4;
  c.a6_ = a6;
  // discriminant of the Weierstrass model
  auto I = [&](std::uint64_t n) { return f.from_int(n); };
  Elem b2 = f.add(f.mul(a1, a1), f.mul(I(4), a2));
  Elem b4 = f.add(f.mul(I(2), a4), f.mul(a1, a3));
  Elem b6 = f.add(f.mul(a3, a3), f.mul(I(4), a6));
  Elem b8 = f.add(f.add(f.mul(f.mul(a1, a1), a6), f.mul(I(4), f.mul(a2, a6))),
                  f.add(f.sub(f.mul(a2, f.mul(a3, a3)), f.mul(f.mul(a1, a3), a4)),
                        f.neg(f.mul(a4, a4))));
  Elem disc = f.sub(f.sub(f.neg(f.mul(f.mul(b2, b2), b8)), f.mul(I(8), f.mul(b4, f.mul(b4, b4)))),
                    f.sub(f.mul(I(27), f.mul(b6, b6)), f.mul(I(9), f.mul(b2, f.mul(b4, b6)))));
  if (disc == 0) fail(errc::singular_curve, "Weierstrass discriminant vanishes");
  return c;
}

bool WeierstrassCurve::contains(const ECPoint& p) const {
  if (p.inf) return true;
  const Field& f = *f_;
  Elem lhs = f.add(f.mul(p.y, p.y), f.add(f.mul(f.mul(a1_, p.x), p.y), f.mul(a3_, p.y)));
  Elem x2 = f.mul(p.x, p.x);
  Elem rhs = f.add(f.mul(x2, p.x), f.add(f.mul(a2_, x2), f.add(f.mul(a4_, p.x), a6_)));
  return lhs == rhs;
}

ECPoint WeierstrassCurve::neg(const ECPoint& p) const {
  if (p.inf) return p;
  const Field& f = *f_;
  return ECPoint::affine(p.x, f.sub(f.neg(p.y), f.add(f.mul(a1_, p.x), a3_)));
}

ECPoint WeierstrassCurve::add(const ECPoint& p, const ECPoint& q) const {
  const Field& f = *f_;
  if (p.inf) return q;
  if (q.inf) return p;
  if (q == neg(p)) return ECPoint::infinity();
  Elem lambda;
  if (p.x != q.x) {
    lambda = f.div(f.sub(q.y, p.y), f.sub(q.x, p.x));
  } else {
    // doubling; the denominator is nonzero since q != -p
    Elem num = f.add(f.sub(f.add(f.mul(f.from_int(3), f.mul(p.x, p.x)),
                                 f.mul(f.from_int(2), f.mul(a2_, p.x))),
                           f.mul(a1_, p.y)),
                     a4_);
    Elem den = f.add(f.mul(f.from_int(2), p.y), f.add(f.mul(a1_, p.x), a3_));
    lambda = f.div(num, den);
  }
  Elem x3 = f.sub(f.sub(f.add(f.mul(lambda, lambda), f.mul(a1_, lambda)), a2_), f.add(p.x, q.x));
  Elem y3 = f.sub(f.sub(f.mul(lambda, f.sub(p.x, x3)), p.y), f.add(f.mul(a1_, x3), a3_));
  return ECPoint::affine(x3, y3);
}

ECPoint WeierstrassCurve::scalar_mul(std::int64_t m, const ECPoint& p) const {
  ECPoint base = p;
  if (m < 0) {
    base = neg(base);
    m = -m;
  }
  ECPoint acc = ECPoint::infinity();
  std::uint64_t e = static_cast<std::uint64_t>(m);
  while (e) {
    if (e & 1) acc = add(acc, base);
    base = add(base, base);
    e >>= 1;
  }
  return acc;
}

std::vector<ECPoint> enumerate_points(const WeierstrassCurve& c) {
  const Field& f = c.field();
  if (f.q() > kEnumerationGuard) fail(errc::field_too_large, "x-sweep guard");
  std::vector<ECPoint> pts;
  pts.push_back(ECPoint::infinity());
  if (f.p() == 2) {
    // Artin-Schreier: y^2 + h(x) y = g(x) with h = a1 x + a3.
    // Precompute w -> w^2 + w representative solutions once.
    std::vector<Elem> as_root(f.q(), static_cast<Elem>(f.q()));
    for (std::uint64_t w = 0; w < f.q(); ++w) {
      Elem img = f.add(f.mul(static_cast<Elem>(w), static_cast<Elem>(w)), static_cast<Elem>(w));
      if (as_root[img] == static_cast<Elem>(f.q()) || w < as_root[img])
        as_root[img] = static_cast<Elem>(w);
    }
    for (std::uint64_t xi = 0; xi < f.q(); ++xi) {
      Elem x = static_cast<Elem>(xi);
      Elem h = f.add(f.mul(c.a1(), x), c.a3());
      Elem x2 = f.mul(x, x);
      Elem g = f.add(f.mul(x2, x), f.add(f.mul(c.a2(), x2), f.add(f.mul(c.a4(), x), c.a6())));
      if (h == 0) {
        Elem y = *f.sqrt(g);  // squaring is bijective in char 2
        pts.push_back(ECPoint::affine(x, y));
      } else {
        // y = h w turns the equation into w^2 + w = g / h^2
        Elem ch = f.div(g, f.mul(h, h));
        if (as_root[ch] != static_cast<Elem>(f.q())) {
          Elem w0 = as_root[ch];
          pts.push_back(ECPoint::affine(x, f.mul(h, w0)));
          pts.push_back(ECPoint::affine(x, f.mul(h, f.add(w0, 1))));
        }
      }
    }
  } else {
    for (std::uint64_t xi = 0; xi < f.q(); ++xi) {
      Elem x = static_cast<Elem>(xi);
      Elem h = f.add(f.mul(c.a1(), x), c.a3());
      Elem x2 = f.mul(x, x);
      Elem g = f.add(f.mul(x2, x), f.add(f.mul(c.a2(), x2), f.add(f.mul(c.a4(), x), c.a6())));
      // (2y + h)^2 = h^2 + 4g
      Elem disc = f.add(f.mul(h, h), f.mul(f.from_int(4), g));
      auto r = f.sqrt(disc);
      if (!r) continue;
      Elem inv2 = f.inv(f.from_int(2));
      if (*r == 0) {
        pts.push_back(ECPoint::affine(x, f.mul(inv2, f.neg(h))));
      } else {
        pts.push_back(ECPoint::affine(x, f.mul(inv2, f.sub(*r, h))));
        pts.push_back(ECPoint::affine(x, f.mul(inv2, f.sub(f.neg(*r), h))));
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  // Hasse-Weil sanity
  std::uint64_t n = pts.size(), q = f.q();
  std::uint64_t bound = 2 * isqrt_u64(q);
  std::uint64_t lo = q + 1 - bound, hi = q + 1 + bound;
  if (n < lo || n > hi) fail(errc::point_not_on_curve, "point count violates Hasse-Weil (internal)");
  return pts;
}

PointTable::PointTable(const WeierstrassCurve& c) : c_(c), pts_(enumerate_points(c)) {}

std::size_t PointTable::index_of(const ECPoint& p) const {
  auto it = std::lower_bound(pts_.begin(), pts_.end(), p);
  if (it == pts_.end() || !(*it == p)) fail(errc::point_not_on_curve, "point not in table");
  return static_cast<std::size_t>(it - pts_.begin());
}

namespace {

ECAutomorphism from_point_map(const PointTable& t, ECAutomorphism::Kind kind,
                              const std::string& desc,
                              const std::function<ECPoint(const ECPoint&)>& fn) {
  ECAutomorphism a;
  a.kind = kind;
  a.desc = desc;
  a.perm.resize(t.size());
  std::vector<bool> seen(t.size(), false);
  for (std::size_t i = 0; i < t.size(); ++i) {
    ECPoint img = fn(t[i]);
    if (!t.curve().contains(img)) fail(errc::point_not_on_curve, desc + ": image off curve");
    std::size_t j = t.index_of(img);
    if (seen[j]) fail(errc::point_not_on_curve, desc + ": not injective on points");
    seen[j] = true;
    a.perm[i] = static_cast<std::uint32_t>(j);
  }
  return a;
}

}  // namespace

ECAutomorphism identity_map(const PointTable& t) {
  ECAutomorphism a;
  a.kind = ECAutomorphism::Kind::composite;
  a.desc = "id";
  a.perm.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) a.perm[i] = static_cast<std::uint32_t>(i);
  return a;
}

ECAutomorphism translation_map(const PointTable& t, const ECPoint& by) {
  const WeierstrassCurve& c = t.curve();
  return from_point_map(t, ECAutomorphism::Kind::translation, "tau",
                        [&](const ECPoint& p) { return c.add(p, by); });
}

ECAutomorphism fixing_o_linear(const PointTable& t, Elem xs, Elem ys, Elem yx, Elem yc,
                               const std::string& desc) {
  const Field& f = t.curve().field();
  ECAutomorphism a = from_point_map(t, ECAutomorphism::Kind::fixing_o, desc, [&](const ECPoint& p) {
    if (p.inf) return p;
    return ECPoint::affine(f.mul(xs, p.x), f.add(f.mul(ys, p.y), f.add(f.mul(yx, p.x), yc)));
  });
  return a;
}

ECAutomorphism elliptic_involution(const PointTable& t) {
  const WeierstrassCurve& c = t.curve();
  const Field& f = c.field();
  // (x, y) -> (x, -y - a1 x - a3)
  return fixing_o_linear(t, 1, f.neg(1), f.neg(c.a1()), f.neg(c.a3()), "[-1]");
}

ECAutomorphism compose(const ECAutomorphism& a, const ECAutomorphism& b) {
  ECAutomorphism r;
  r.kind = ECAutomorphism::Kind::composite;
  r.desc = a.desc + "*" + b.desc;
  r.perm.resize(a.perm.size());
  for (std::size_t i = 0; i < a.perm.size(); ++i) r.perm[i] = a.perm[b.perm[i]];
  return r;
}

int automorphism_order(const PointTable& t, const ECAutomorphism& a) {
  ECAutomorphism cur = a;
  for (int k = 1; k <= static_cast<int>(4 * t.size()) + 16; ++k) {
    if (cur.is_identity()) return k;
    cur = compose(a, cur);
  }
  fail(errc::selection_failed, "automorphism order not found (internal)");
}

std::vector<ECAutomorphism> group_closure(const PointTable& t, std::vector<ECAutomorphism> gens,
                                          std::size_t cap) {
  std::vector<ECAutomorphism> g{identity_map(t)};
  auto known = [&](const ECAutomorphism& a) {
    return std::any_of(g.begin(), g.end(), [&](const ECAutomorphism& b) { return a == b; });
  };
  std::vector<ECAutomorphism> frontier = gens;
  while (!frontier.empty()) {
    ECAutomorphism a = frontier.back();
    frontier.pop_back();
    if (known(a)) continue;
    g.push_back(a);
    if (g.size() > cap) fail(errc::cap_exceeded, "group closure exceeds cap");
    for (const auto& b : g) {
      frontier.push_back(compose(a, b));
      frontier.push_back(compose(b, a));
    }
  }
  return g;
}

namespace {

bool is_point_subgroup(const WeierstrassCurve& c, const std::vector<ECPoint>& H) {
  std::set<ECPoint> s(H.begin(), H.end());
  if (s.size() != H.size()) return false;
  if (!s.count(ECPoint::infinity())) return false;
  for (const auto& a : H)
    for (const auto& b : H)
      if (!s.count(c.add(a, b))) return false;
  return true;
}

}  // namespace

bool check_TH_A_subgroup(const PointTable& t, const std::vector<ECPoint>& H,
                         const std::vector<ECAutomorphism>& A) {
  const WeierstrassCurve& c = t.curve();
  if (!is_point_subgroup(c, H)) fail(errc::not_a_subgroup, "H is not a subgroup of points");
  // A closed under composition
  for (const auto& a : A)
    for (const auto& b : A) {
      ECAutomorphism ab = compose(a, b);
      if (!std::any_of(A.begin(), A.end(), [&](const ECAutomorphism& x) { return x == ab; }))
        fail(errc::not_a_subgroup, "A is not closed under composition");
    }
  std::set<ECPoint> hs(H.begin(), H.end());
  for (const auto& a : A)
    for (const auto& q : H) {
      ECPoint img = t[a.perm[t.index_of(q)]];
      if (!hs.count(img)) return false;
    }
  return true;
}

std::vector<ECAutomorphism> product_group_TH_A(const PointTable& t, const std::vector<ECPoint>& H,
                                               const std::vector<ECAutomorphism>& A) {
  if (!check_TH_A_subgroup(t, H, A))
    fail(errc::not_a_subgroup, "A does not stabilize H; T_H.A is not a group");
  std::vector<ECAutomorphism> g;
  for (const auto& q : H) {
    ECAutomorphism tq = translation_map(t, q);
    for (const auto& a : A) g.push_back(compose(tq, a));
  }
  // defensive closure check
  auto member = [&](const ECAutomorphism& x) {
    return std::any_of(g.begin(), g.end(), [&](const ECAutomorphism& y) { return x == y; });
  };
  for (const auto& a : g)
    for (const auto& b : g)
      if (!member(compose(a, b))) fail(errc::not_a_subgroup, "product set not closed (internal)");
  return g;
}

std::uint64_t point_order(const PointTable& t, const ECPoint& p) {
  const WeierstrassCurve& c = t.curve();
  std::uint64_t n = t.size();
  std::uint64_t ord = n;
  for (std::uint64_t f : prime_factors_u64(n)) {
    while (ord % f == 0 &&
           c.scalar_mul(static_cast<std::int64_t>(ord / f), p) == ECPoint::infinity())
      ord /= f;
  }
  return ord;
}

ECGroupStructure group_structure(const PointTable& t) {
  const WeierstrassCurve& c = t.curve();
  const std::uint64_t n = t.size();
  if (n > 200000) fail(errc::field_too_large, "group structure brute force guard");
  ECGroupStructure st;
  // n2 = maximal point order (the exponent of the group)
  std::uint64_t n2 = 1;
  ECPoint gen2 = ECPoint::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t o = point_order(t, t[i]);
    if (o > n2) {
      n2 = o;
      gen2 = t[i];
    }
  }
  std::uint64_t n1 = n / n2;
  if (n1 * n2 != n) fail(errc::selection_failed, "group exponent does not divide order (internal)");
  st.n1 = n1;
  st.n2 = n2;
  st.gen2 = gen2;
  st.gen1 = ECPoint::infinity();
  if (n1 == 1) {
    // cyclic; verify gen2 generates everything
    std::set<ECPoint> seen;
    ECPoint cur = ECPoint::infinity();
    for (std::uint64_t i = 0; i < n2; ++i) {
      seen.insert(cur);
      cur = c.add(cur, gen2);
    }
    if (seen.size() != n) fail(errc::selection_failed, "cyclic verification failed (internal)");
    return st;
  }
  // find gen1 of order n1 with <gen1> independent of <gen2>
  for (std::size_t i = 0; i < n; ++i) {
    const ECPoint& p = t[i];
    if (point_order(t, p) != n1) continue;
    std::set<ECPoint> seen;
    ECPoint pi = ECPoint::infinity();
    bool ok = true;
    for (std::uint64_t a = 0; a < n1 && ok; ++a) {
      ECPoint cur = pi;
      for (std::uint64_t b = 0; b < n2; ++b) {
        if (!seen.insert(cur).second) {
          ok = false;
          break;
        }
        cur = c.add(cur, gen2);
      }
      pi = c.add(pi, p);
    }
    if (ok && seen.size() == n) {
      st.gen1 = p;
      return st;
    }
  }
  fail(errc::selection_failed, "no complement generator found (internal)");
}

std::vector<ECPoint> subgroup_of_order(const PointTable& t, const ECGroupStructure& st,
                                       std::uint64_t h) {
  const WeierstrassCurve& c = t.curve();
  const std::uint64_t n = t.size();
  if (h == 0 || n % h != 0) fail(errc::no_such_subgroup, "h does not divide N(E)");
  if (h == 1) return {ECPoint::infinity()};
  // torsion special case: h = h0^2 with Z/n x Z/n structure
  std::uint64_t h0 = isqrt_u64(h);
  if (h0 * h0 == h && st.n1 == st.n2 && st.n1 % h0 == 0) {
    std::vector<ECPoint> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (c.scalar_mul(static_cast<std::int64_t>(h0), t[i]) == ECPoint::infinity())
        sub.push_back(t[i]);
    if (sub.size() != h) fail(errc::no_such_subgroup, "torsion size mismatch (internal)");
    std::sort(sub.begin(), sub.end());
    return sub;
  }
  // generic: h = d1 * d2 with d1 | n1, d2 | n2
  for (std::uint64_t d1 = 1; d1 <= st.n1; ++d1) {
    if (st.n1 % d1 != 0 || h % d1 != 0) continue;
    std::uint64_t d2 = h / d1;
    if (st.n2 % d2 != 0) continue;
    ECPoint g1 = c.scalar_mul(static_cast<std::int64_t>(st.n1 / d1), st.gen1);
    ECPoint g2 = c.scalar_mul(static_cast<std::int64_t>(st.n2 / d2), st.gen2);
    std::set<ECPoint> sub;
    ECPoint pa = ECPoint::infinity();
    for (std::uint64_t a = 0; a < d1; ++a) {
      ECPoint cur = pa;
      for (std::uint64_t b = 0; b < d2; ++b) {
        sub.insert(cur);
        cur = c.add(cur, g2);
      }
      pa = c.add(pa, g1);
    }
    if (sub.size() == h) return std::vector<ECPoint>(sub.begin(), sub.end());
  }
  fail(errc::no_such_subgroup, "no realizable (d1, d2) factorization");
}

std::vector<Orbit> orbits(const PointTable& t, const std::vector<ECAutomorphism>& G) {
  std::vector<Orbit> out;
  std::vector<bool> seen(t.size(), false);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (seen[i]) continue;
    std::set<std::uint32_t> orb;
    for (const auto& g : G) orb.insert(g.perm[i]);
    Orbit o;
    o.members.assign(orb.begin(), orb.end());
    if (G.size() % o.members.size() != 0)
      fail(errc::not_a_subgroup, "orbit size does not divide |G|");
    o.ramification_index = static_cast<std::uint32_t>(G.size() / o.members.size());
    for (auto m : o.members) seen[m] = true;
    out.push_back(std::move(o));
  }
  return out;
}

bool divisor_class_sum_equal(const WeierstrassCurve& c, const std::vector<ECPoint>& a,
                             const std::vector<ECPoint>& b) {
  ECPoint sa = ECPoint::infinity(), sb = ECPoint::infinity();
  for (const auto& p : a) sa = c.add(sa, p);
  for (const auto& p : b) sb = c.add(sb, p);
  return sa == sb;
}

ConditionCheck condition_13_14_check(const WeierstrassCurve& c,
                                     const std::vector<ECPoint>& defining_list,
                                     const std::vector<std::vector<ECPoint>>& groups,
                                     std::size_t r, std::size_t delta, std::uint64_t budget) {
  if (defining_list.size() != r + delta - 1)
    fail(errc::dimension_mismatch, "defining list length must be r+delta-1");
  const std::size_t e = delta - 1;
  std::uint64_t total = 0;
  for (const auto& g : groups) total += linalg::binomial(g.size(), e);
  if (total > budget) fail(errc::budget_exceeded, "subset-sum count exceeds budget");

  ECPoint tail = ECPoint::infinity();
  for (std::size_t j = r; j < defining_list.size(); ++j) tail = c.add(tail, defining_list[j]);

  ConditionCheck out;
  out.holds = true;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& grp = groups[gi];
    if (e == 0) continue;
    std::vector<std::size_t> idx(e);
    for (std::size_t i = 0; i < e; ++i) idx[i] = i;
    while (true) {
      ECPoint s = ECPoint::infinity();
      for (std::size_t i : idx) s = c.add(s, grp[i]);
      if (s == tail) {
        out.holds = false;
        out.violating_group = gi + 1;
        out.violating_subset = idx;
        return out;
      }
      std::size_t i = e;
      bool done = false;
      while (i > 0) {
        --i;
        if (idx[i] != i + grp.size() - e) {
          ++idx[i];
          for (std::size_t j = i + 1; j < e; ++j) idx[j] = idx[j - 1] + 1;
          break;
        }
        if (i == 0) done = true;
      }
      if (done) break;
    }
  }
  return out;
}

WeierstrassCurve search_curve_with_count(const Field& f, std::uint64_t target_count,
                                         std::uint64_t attempt_cap) {
  if (f.p() == 2) fail(errc::selection_failed, "search supports odd characteristic only");
  std::uint64_t attempts = 0;
  for (std::uint64_t a2 = 0; a2 < f.q(); ++a2)
    for (std::uint64_t a4 = 0; a4 < f.q(); ++a4)
      for (std::uint64_t a6 = 0; a6 < f.q(); ++a6) {
        if (++attempts > attempt_cap) fail(errc::selection_failed, "curve search attempt cap hit");
        try {
          WeierstrassCurve c = WeierstrassCurve::make(f, 0, static_cast<Elem>(a2), 0,
                                                      static_cast<Elem>(a4), static_cast<Elem>(a6));
          if (enumerate_points(c).size() == target_count) return c;
        } catch (const error&) {
          continue;  // singular
        }
      }
  fail(errc::selection_failed, "no curve with the requested count in range");
}

}  // namespace lrc::ecurve
