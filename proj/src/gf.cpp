#include "lrc/gf.hpp"

#include <algorithm>
#include <cstdint>

namespace lrc::gf {

namespace {

constexpr std::uint64_t kMaxFieldSize = 1u << 20;
constexpr std::uint64_t kAddTableMaxQ = 1024;

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// --- raw polynomial arithmetic over GF(p), used only to seed the tables ---

using Poly = std::vector<std::uint32_t>;  // c_0..c_deg

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  trim(r);
  return r;
}

// a mod m, m monic
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    std::uint32_t lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      std::uint64_t sub = std::uint64_t(lead) * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
    if (a.empty()) break;
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  return poly_mod(poly_mul(a, b, p), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  std::uint32_t r = 1;
  std::uint32_t e = p - 2;
  std::uint64_t b = a % p;
  while (e) {
    if (e & 1) r = static_cast<std::uint32_t>(r * b % p);
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b with b made monic on the fly
    std::uint32_t lead_inv = inv_mod_p(b.back(), p);
    Poly bm(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
      bm[i] = static_cast<std::uint32_t>(std::uint64_t(b[i]) * lead_inv % p);
    a = poly_mod(std::move(a), bm, p);
    std::swap(a, b);
  }
  return a;
}

// Rabin irreducibility test for monic f of degree s over GF(p).
bool poly_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t s = f.size() - 1;
  if (s == 0) return false;
  if (s == 1) return true;
  Poly x{0, 1};
  // x^{p^s} == x mod f
  Poly t = x;
  for (std::size_t i = 0; i < s; ++i) t = poly_powmod(t, p, f, p);
  Poly diff = t;
  diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
  diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
  trim(diff);
  if (!diff.empty()) return false;
  // gcd(x^{p^{s/d}} - x, f) == 1 for each prime d | s
  for (std::uint64_t d : prime_factors(s)) {
    std::size_t e = s / d;
    Poly u = x;
    for (std::size_t i = 0; i < e; ++i) u = poly_powmod(u, p, f, p);
    Poly g = u;
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = static_cast<std::uint32_t>((g[1] + p - 1) % p);
    trim(g);
    Poly gc = poly_gcd(g, f, p);
    if (!(gc.size() == 1)) return false;
  }
  return true;
}

}  // namespace

Elem Field::from_coeffs(const std::vector<std::uint32_t>& c) const {
  std::uint64_t code = 0, w = 1;
  for (std::uint32_t i = 0; i < s_; ++i) {
    std::uint32_t ci = i < c.size() ? c[i] % p_ : 0;
    code += ci * w;
    w *= p_;
  }
  return static_cast<Elem>(code);
}

std::vector<std::uint32_t> Field::to_coeffs(Elem a) const {
  std::vector<std::uint32_t> c(s_);
  for (std::uint32_t i = 0; i < s_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Elem Field::add_slow(Elem a, Elem b) const {
  Elem r = 0;
  std::uint64_t w = 1;
  for (std::uint32_t i = 0; i < s_; ++i) {
    std::uint32_t da = (a / w) % p_, db = (b / w) % p_;
    r += static_cast<Elem>(((da + db) % p_) * w);
    w *= p_;
  }
  return r;
}

Elem Field::pow(Elem a, std::int64_t e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  Elem r = 1, base = a;
  std::uint64_t ue = static_cast<std::uint64_t>(e);
  while (ue) {
    if (ue & 1) r = mul(r, base);
    base = mul(base, base);
    ue >>= 1;
  }
  return r;
}

std::uint64_t Field::mul_order(Elem a) const {
  if (a == 0) fail(errc::division_by_zero, "order of zero");
  std::uint64_t ord = q_ - 1;
  for (std::uint64_t f : qm1_prime_factors_) {
    while (ord % f == 0 && pow(a, static_cast<std::int64_t>(ord / f)) == 1) ord /= f;
  }
  return ord;
}

bool Field::is_square(Elem a) const {
  if (a == 0) return true;
  if (p_ == 2) return true;
  return pow(a, static_cast<std::int64_t>((q_ - 1) / 2)) == 1;
}

std::optional<Elem> Field::sqrt(Elem a) const {
  if (a == 0) return Elem{0};
  if (p_ == 2) {
    // squaring is bijective in characteristic 2
    return pow(a, static_cast<std::int64_t>(q_ / 2));
  }
  if (!is_square(a)) return std::nullopt;
  std::uint64_t la = log_[a];
  if (la % 2 == 0) return exp_[la / 2];
  return exp_[(la + (q_ - 1)) / 2];
}

void Field::build_tables() {
  const std::uint32_t p = p_;
  // exp/log from the designated primitive element, via raw poly arithmetic
  exp_.assign(2 * (q_ - 1), 0);
  log_.assign(q_, 0);
  Poly prim = [&] {
    Poly c;
    Elem a = primitive_;
    for (std::uint32_t i = 0; i < s_; ++i) {
      c.push_back(a % p);
      a /= p;
    }
    trim(c);
    return c;
  }();
  Poly cur{1};
  for (std::uint64_t i = 0; i < q_ - 1; ++i) {
    std::uint64_t code = 0, w = 1;
    for (std::size_t j = 0; j < cur.size(); ++j) {
      code += cur[j] * w;
      w *= p;
    }
    exp_[i] = static_cast<Elem>(code);
    exp_[i + (q_ - 1)] = exp_[i];
    log_[code] = static_cast<Elem>(i);
    cur = poly_mulmod(cur, prim, modulus_, p);
  }
  neg_table_.assign(q_, 0);
  for (std::uint64_t a = 0; a < q_; ++a) {
    Elem r = 0;
    std::uint64_t w = 1, aa = a;
    for (std::uint32_t i = 0; i < s_; ++i) {
      std::uint32_t d = aa % p;
      r += static_cast<Elem>(((p - d) % p) * w);
      w *= p;
      aa /= p;
    }
    neg_table_[a] = r;
  }
  if (p != 2 && q_ <= kAddTableMaxQ) {
    add_table_.assign(q_ * q_, 0);
    for (std::uint64_t a = 0; a < q_; ++a)
      for (std::uint64_t b = 0; b < q_; ++b)
        add_table_[a * q_ + b] = add_slow(static_cast<Elem>(a), static_cast<Elem>(b));
  }
}

Field Field::make(std::uint32_t p, std::uint32_t s,
                  std::optional<std::vector<std::uint32_t>> modulus_override) {
  if (!is_prime_u32(p)) fail(errc::non_prime_characteristic, "p = " + std::to_string(p));
  if (s < 1) fail(errc::non_prime_characteristic, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < s; ++i) {
    q *= p;
    if (q > kMaxFieldSize) fail(errc::field_too_large, "p^s exceeds 2^20");
  }

  Field f;
  f.p_ = p;
  f.s_ = s;
  f.q_ = q;

  if (modulus_override) {
    Poly m = *modulus_override;
    for (auto& c : m) c %= p;
    if (m.size() != s + 1 || m.back() != 1)
      fail(errc::reducible_modulus, "override must be monic of degree s");
    if (!poly_irreducible(m, p)) fail(errc::reducible_modulus, "override is reducible");
    f.modulus_ = m;
  } else {
    // lexicographically smallest monic irreducible of degree s, ordered by the
    // code of (c_0, ..., c_{s-1})
    std::uint64_t lower_count = q;  // p^s choices of lower coefficients
    bool found = false;
    for (std::uint64_t code = 0; code < lower_count && !found; ++code) {
      Poly m(s + 1, 0);
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < s; ++i) {
        m[i] = c % p;
        c /= p;
      }
      m[s] = 1;
      if (poly_irreducible(m, p)) {
        f.modulus_ = m;
        found = true;
      }
    }
    if (!found) fail(errc::reducible_modulus, "no irreducible found (internal)");
  }

  f.qm1_prime_factors_ = prime_factors(q - 1);

  // smallest-code generator of the multiplicative group, by raw arithmetic
  auto raw_order_ok = [&](Elem a) {
    Poly pa;
    {
      Elem aa = a;
      for (std::uint32_t i = 0; i < s; ++i) {
        pa.push_back(aa % p);
        aa /= p;
      }
      trim(pa);
    }
    for (std::uint64_t fac : f.qm1_prime_factors_) {
      Poly r = poly_powmod(pa, (q - 1) / fac, f.modulus_, p);
      if (r.size() == 1 && r[0] == 1) return false;
    }
    return true;
  };
  Elem prim = 0;
  for (std::uint64_t a = 1; a < q; ++a) {
    if (q == 2) { prim = 1; break; }
    if (a == 1) continue;
    if (raw_order_ok(static_cast<Elem>(a))) {
      prim = static_cast<Elem>(a);
      break;
    }
  }
  f.primitive_ = prim;
  f.build_tables();
  return f;
}

SubfieldMap::SubfieldMap(const Field& big, const Field& small) : big_(&big), small_(&small) {
  if (big.p() != small.p()) fail(errc::non_dividing_degree, "different characteristics");
  if (big.s() % small.s() != 0) fail(errc::non_dividing_degree, "subfield degree must divide");
  // image of the small field's generator: a root of the small modulus in the big field,
  // smallest code for determinism
  const auto& m = small.modulus();
  root_ = 0;
  bool found = false;
  for (std::uint64_t a = 0; a < big.q(); ++a) {
    Elem acc = 0, xp = 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
      acc = big.add(acc, big.mul(big.from_int(m[i]), xp));
      xp = big.mul(xp, static_cast<Elem>(a));
    }
    if (acc == 0) {
      root_ = static_cast<Elem>(a);
      found = true;
      break;
    }
  }
  if (!found) fail(errc::non_dividing_degree, "no root of subfield modulus (internal)");
  for (std::uint64_t a = 0; a < small.q(); ++a) {
    Elem img = embed(static_cast<Elem>(a));
    back_.emplace(img, static_cast<Elem>(a));
  }
}

Elem SubfieldMap::embed(Elem a_small) const {
  auto coeffs = small_->to_coeffs(a_small);
  Elem acc = 0, xp = 1;
  for (std::uint32_t i = 0; i < small_->s(); ++i) {
    acc = big_->add(acc, big_->mul(big_->from_int(coeffs[i]), xp));
    xp = big_->mul(xp, root_);
  }
  return acc;
}

Elem SubfieldMap::project(Elem a_big) const {
  auto it = back_.find(a_big);
  if (it == back_.end()) fail(errc::non_dividing_degree, "element not in subfield");
  return it->second;
}

Elem SubfieldMap::trace_in_big(Elem a_big) const {
  const std::uint32_t c = small_->s();
  const std::uint32_t n = big_->s() / c;
  std::uint64_t pc = 1;
  for (std::uint32_t i = 0; i < c; ++i) pc *= big_->p();
  Elem acc = 0, cur = a_big;
  for (std::uint32_t i = 0; i < n; ++i) {
    acc = big_->add(acc, cur);
    cur = big_->pow(cur, static_cast<std::int64_t>(pc));
  }
  return acc;
}

Elem SubfieldMap::trace(Elem a_big) const {
  Elem t = trace_in_big(a_big);
  std::uint64_t pc = 1;
  for (std::uint32_t i = 0; i < small_->s(); ++i) pc *= big_->p();
  if (big_->pow(t, static_cast<std::int64_t>(pc)) != t)
    fail(errc::non_dividing_degree, "trace not fixed by Frobenius^c (internal)");
  return project(t);
}

Elem SubfieldMap::norm(Elem a_big) const {
  const std::uint32_t c = small_->s();
  const std::uint32_t n = big_->s() / c;
  std::uint64_t pc = 1;
  for (std::uint32_t i = 0; i < c; ++i) pc *= big_->p();
  Elem acc = 1, cur = a_big;
  for (std::uint32_t i = 0; i < n; ++i) {
    acc = big_->mul(acc, cur);
    cur = big_->pow(cur, static_cast<std::int64_t>(pc));
  }
  return project(acc);
}

Elem trace_to_subfield(const Field& big, Elem x, const Field& small) {
  SubfieldMap map(big, small);
  return map.trace(x);
}

std::vector<Elem> nth_roots_of_unity(const Field& f, std::uint64_t M) {
  if (M == 0 || (f.q() - 1) % M != 0)
    fail(errc::order_not_dividing, "M must divide q-1");
  std::vector<Elem> roots;
  Elem g = f.pow(f.primitive(), static_cast<std::int64_t>((f.q() - 1) / M));
  Elem cur = 1;
  for (std::uint64_t i = 0; i < M; ++i) {
    roots.push_back(cur);
    cur = f.mul(cur, g);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  if (roots.size() != M) fail(errc::order_not_dividing, "root count mismatch (internal)");
  return roots;
}

Elem quadratic_nonresidue(const Field& f) {
  if (f.p() == 2) fail(errc::even_characteristic, "every element is a square in char 2");
  return f.primitive();
}

}  // namespace lrc::gf
