#include "lrc/recipes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace lrc::recipes {

using gf::Elem;
using gf::Field;

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::shared_ptr<const Field> make_field(std::uint32_t p, std::uint32_t s,
                                        std::optional<std::vector<std::uint32_t>> mod = {}) {
  return std::make_shared<const Field>(Field::make(p, s, std::move(mod)));
}

// converts an ecurve orbit list to plain index vectors
std::vector<std::vector<std::size_t>> orbit_indices(const std::vector<ecurve::Orbit>& os) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& o : os) {
    std::vector<std::size_t> v(o.members.begin(), o.members.end());
    out.push_back(std::move(v));
  }
  return out;
}

void check_view_matches_points(const funcspace::CurveView& view, const ecurve::PointTable& t) {
  if (view.places().size() != t.size())
    fail(errc::dimension_mismatch, "view/point-table size mismatch (internal)");
  for (std::size_t i = 0; i < t.size(); i += std::max<std::size_t>(1, t.size() / 7)) {
    const auto& p = t[i];
    const auto& pl = view.places()[i];
    if (p.inf != pl.inf || (!p.inf && (p.x != pl.x || p.y != pl.y)))
      fail(errc::dimension_mismatch, "view/point-table order mismatch (internal)");
  }
}

struct LadderPlanInputs {
  std::vector<std::size_t> defining_list;            // view indices, ordered
  std::vector<std::vector<std::size_t>> all_orbits;  // z-invariance constraints
  std::vector<std::vector<std::size_t>> used_groups;  // m groups, each r+delta-1 places
};

/// Shared back end of the ladder-based recipes: builds the ladder and the
/// invariant z, assembles evaluation columns, and returns code plus plan data.
std::pair<LrcCode, PlanInfo> assemble_ladder_code(const funcspace::CurveView& view,
                                                  const LadderPlanInputs& in, std::int64_t r,
                                                  std::int64_t delta, std::int64_t t,
                                                  std::int64_t m, std::int64_t ell_formula,
                                                  std::int64_t ell_usable, Provenance prov) {
  const Field& f = view.field();
  auto dfull = funcspace::Divisor::from_list(in.defining_list);
  funcspace::RrContext ctx(view, dfull);
  auto ladder = funcspace::ladder_functions(ctx, in.defining_list, static_cast<std::size_t>(r));
  auto z = funcspace::invariant_generator_z(ctx, dfull, in.all_orbits);

  EvaluationPlan plan;
  plan.r = r;
  plan.delta = delta;
  plan.t = t;
  plan.m = m;
  plan.d_designed = (m - t) * (r + delta - 1);
  plan.designed_optimal = true;
  plan.prov = std::move(prov);
  PlanInfo info;
  info.r = r;
  info.delta = delta;
  info.t = t;
  info.m = m;
  info.ell_formula = ell_formula;
  info.ell_usable = ell_usable;
  for (std::int64_t gi = 0; gi < m; ++gi) {
    const auto& grp = in.used_groups[static_cast<std::size_t>(gi)];
    if (grp.size() != static_cast<std::size_t>(r + delta - 1))
      fail(errc::dimension_mismatch, "group size must be r+delta-1 (internal)");
    Elem gz = 0;
    bool first = true;
    for (std::size_t pidx : grp) {
      EvalColumn col;
      for (std::size_t i = 0; i < ladder.w.size(); ++i) {
        const auto& v = ladder.evals[i][pidx];
        if (v.pole) fail(errc::pole_at_evaluation_place, "ladder function pole at a group place");
        col.w.push_back(v.v);
      }
      const auto& vz = z.evals[pidx];
      if (vz.pole) fail(errc::pole_at_evaluation_place, "z has a pole at a group place");
      col.z = vz.v;
      if (first) {
        gz = vz.v;
        first = false;
      } else if (gz != vz.v) {
        fail(errc::pole_at_evaluation_place, "z not constant on a repair group (internal)");
      }
      plan.columns.push_back(std::move(col));
    }
    info.group_z.push_back(gz);
  }
  // z must separate the used groups
  std::set<Elem> distinct(info.group_z.begin(), info.group_z.end());
  if (distinct.size() != info.group_z.size())
    fail(errc::pole_at_evaluation_place, "z does not separate the used repair groups");
  LrcCode code = build_code(f, plan);
  return {std::move(code), std::move(info)};
}

/// Direct monomial plan for the coordinate-orbit families (x^i or y^i local
/// functions, the other coordinate as z).
std::pair<LrcCode, PlanInfo> assemble_monomial_code(
    const Field& f, const std::vector<std::vector<scurve::SCPlace>>& used_groups, bool local_in_x,
    std::int64_t r, std::int64_t delta, std::int64_t t, std::int64_t m, std::int64_t d_designed,
    bool optimal, std::int64_t ell_formula, std::int64_t ell_usable, Provenance prov) {
  EvaluationPlan plan;
  plan.r = r;
  plan.delta = delta;
  plan.t = t;
  plan.m = m;
  plan.d_designed = d_designed;
  plan.designed_optimal = optimal;
  plan.prov = std::move(prov);
  PlanInfo info;
  info.r = r;
  info.delta = delta;
  info.t = t;
  info.m = m;
  info.ell_formula = ell_formula;
  info.ell_usable = ell_usable;
  for (std::int64_t gi = 0; gi < m; ++gi) {
    const auto& grp = used_groups[static_cast<std::size_t>(gi)];
    if (grp.size() != static_cast<std::size_t>(r + delta - 1))
      fail(errc::dimension_mismatch, "group size must be r+delta-1 (internal)");
    std::set<Elem> locals;
    Elem gz = 0;
    bool first = true;
    for (const auto& p : grp) {
      if (p.inf) fail(errc::pole_at_evaluation_place, "evaluation places must be affine");
      Elem local = local_in_x ? p.x : p.y;
      Elem zval = local_in_x ? p.y : p.x;
      locals.insert(local);
      EvalColumn col;
      Elem pw = 1;
      for (std::int64_t i = 0; i < r; ++i) {
        col.w.push_back(pw);
        pw = f.mul(pw, local);
      }
      col.z = zval;
      if (first) {
        gz = zval;
        first = false;
      } else if (gz != zval) {
        fail(errc::pole_at_evaluation_place, "z coordinate not constant on a group");
      }
      plan.columns.push_back(std::move(col));
    }
    if (locals.size() != grp.size())
      fail(errc::pole_at_evaluation_place, "local coordinate not distinct within a group");
    info.group_z.push_back(gz);
  }
  std::set<Elem> distinct(info.group_z.begin(), info.group_z.end());
  if (distinct.size() != info.group_z.size())
    fail(errc::pole_at_evaluation_place, "z coordinate does not separate the used groups");
  LrcCode code = build_code(f, plan);
  return {std::move(code), std::move(info)};
}

}  // namespace

std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint64_t q) {
  if (q < 2) fail(errc::parameter_out_of_range, "q must be a prime power >= 2");
  std::uint64_t p = q;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  std::uint32_t e = 0;
  std::uint64_t n = q;
  while (n > 1) {
    if (n % p != 0) fail(errc::parameter_out_of_range, "q is not a prime power");
    n /= p;
    ++e;
  }
  return {static_cast<std::uint32_t>(p), e};
}

LrcCode build_code(const Field& f, const EvaluationPlan& plan) {
  const std::int64_t r = plan.r, delta = plan.delta, t = plan.t, m = plan.m;
  const std::int64_t group_size = r + delta - 1;
  const std::int64_t n = m * group_size;
  const std::int64_t k = t * r + 1;
  if (static_cast<std::int64_t>(plan.columns.size()) != n)
    fail(errc::dimension_mismatch, "column count must be m (r+delta-1)");
  linalg::Matrix gen(f, static_cast<std::size_t>(k), static_cast<std::size_t>(n));
  for (std::int64_t col = 0; col < n; ++col) {
    const EvalColumn& ec = plan.columns[static_cast<std::size_t>(col)];
    if (static_cast<std::int64_t>(ec.w.size()) != r)
      fail(errc::dimension_mismatch, "column ladder length must be r");
    Elem zp = 1;
    for (std::int64_t j = 0; j < t; ++j) {
      for (std::int64_t i = 0; i < r; ++i)
        gen.at(static_cast<std::size_t>(j * r + i), static_cast<std::size_t>(col)) =
            f.mul(ec.w[static_cast<std::size_t>(i)], zp);
      zp = f.mul(zp, ec.z);
    }
    gen.at(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(col)) = zp;  // w_0 z^t
  }
  if (linalg::rank(gen) != static_cast<std::size_t>(k))
    fail(errc::rank_deficient, "generator rank differs from t r + 1");
  LrcCode code;
  code.n = n;
  code.k = k;
  code.d_designed = plan.d_designed;
  code.r = r;
  code.delta = delta;
  code.designed_optimal = plan.designed_optimal;
  code.generator = std::move(gen);
  for (std::int64_t g = 0; g < m; ++g)
    code.groups.emplace_back(static_cast<std::size_t>(g * group_size),
                             static_cast<std::size_t>((g + 1) * group_size));
  code.prov = plan.prov;
  return code;
}

// ---------- section-3 family with G = T_H <[-1]> ----------

namespace {

struct EffInvolutionPrepared {
  std::shared_ptr<const Field> field;
  std::shared_ptr<const ecurve::WeierstrassCurve> curve;
  std::shared_ptr<ecurve::PointTable> table;
  std::vector<ecurve::ECPoint> defining_points;      // ordered list, tail = selected pair
  std::vector<std::vector<std::size_t>> all_orbits;  // point/view indices
  std::vector<std::vector<std::size_t>> usable_groups;
  std::int64_t N = 0, ell = 0;
  std::string curve_desc;
};

EffInvolutionPrepared prepare_eff_involution(std::uint64_t q, std::uint64_t h) {
  auto [p, e] = factor_prime_power(q);
  if (e % 2 != 0) fail(errc::parameter_out_of_range, "q must be an even power of the characteristic");
  if (h < 3) fail(errc::parameter_out_of_range, "h must be at least 3");
  EffInvolutionPrepared out;
  out.field = make_field(p, e);
  const Field& f = *out.field;
  std::uint64_t sq = isqrt_u64(q);
  std::uint64_t target = (p == 2) ? q + 2 * sq + 1 : q + 2 * sq;
  ecurve::WeierstrassCurve curve = [&] {
    if (p == 2) {
      auto c = ecurve::WeierstrassCurve::make(f, 0, 0, 1, 0, 0);
      if (ecurve::enumerate_points(c).size() == target) {
        out.curve_desc = "y^2+y=x^3";
        return c;
      }
      // fall back to a search over all Weierstrass coefficients
      std::uint64_t attempts = 0;
      for (std::uint64_t a1 = 0; a1 < f.q(); ++a1)
        for (std::uint64_t a3 = 0; a3 < f.q(); ++a3)
          for (std::uint64_t a2 = 0; a2 < f.q(); ++a2)
            for (std::uint64_t a4 = 0; a4 < f.q(); ++a4)
              for (std::uint64_t a6 = 0; a6 < f.q(); ++a6) {
                if (++attempts > 500000)
                  fail(errc::selection_failed, "char-2 curve search cap hit");
                try {
                  auto cc = ecurve::WeierstrassCurve::make(f, static_cast<Elem>(a1),
                                                           static_cast<Elem>(a2),
                                                           static_cast<Elem>(a3),
                                                           static_cast<Elem>(a4),
                                                           static_cast<Elem>(a6));
                  if (ecurve::enumerate_points(cc).size() == target) {
                    out.curve_desc = "searched char-2 curve";
                    return cc;
                  }
                } catch (const error&) {
                }
              }
      fail(errc::selection_failed, "no char-2 curve with the maximal count");
    }
    out.curve_desc = "searched curve with N=q+2sqrt(q)";
    return ecurve::search_curve_with_count(f, target);
  }();
  out.curve = std::make_shared<const ecurve::WeierstrassCurve>(curve);
  out.table = std::make_shared<ecurve::PointTable>(*out.curve);
  out.N = static_cast<std::int64_t>(out.table->size());
  if (out.N % 2 == 0) fail(errc::parameter_out_of_range, "N(E) must be odd for this family");
  if (out.N % static_cast<std::int64_t>(h) != 0)
    fail(errc::parameter_out_of_range, "h must divide N(E)");
  auto st = ecurve::group_structure(*out.table);
  auto H = ecurve::subgroup_of_order(*out.table, st, h);
  auto id = ecurve::identity_map(*out.table);
  auto inv = ecurve::elliptic_involution(*out.table);
  auto G = ecurve::product_group_TH_A(*out.table, H, {id, inv});
  auto os = ecurve::orbits(*out.table, G);
  std::vector<std::vector<std::size_t>> full;
  out.all_orbits = orbit_indices(os);
  for (const auto& o : out.all_orbits)
    if (o.size() == 2 * h) full.push_back(o);
  out.ell = static_cast<std::int64_t>(full.size()) - 1;
  std::int64_t ell_formula = (out.N - static_cast<std::int64_t>(h)) / (2 * static_cast<std::int64_t>(h)) - 1;
  if (out.ell != ell_formula)
    fail(errc::selection_failed, "split fiber count differs from the theorem (internal)");
  if (out.ell < 1) fail(errc::parameter_out_of_range, "ell < 1 leaves no admissible (t, m)");
  // defining orbit = lexicographically first full orbit; select the tail pair
  // from one H-coset, accepting purely on the brute-force condition check
  const auto& defining = full[0];
  std::vector<std::vector<std::size_t>> groups(full.begin() + 1, full.end());
  out.usable_groups = groups;
  const auto& tb = *out.table;
  const auto& c = *out.curve;
  std::vector<std::vector<ecurve::ECPoint>> group_points;
  for (const auto& g : groups) {
    std::vector<ecurve::ECPoint> gp;
    for (auto i : g) gp.push_back(tb[i]);
    group_points.push_back(std::move(gp));
  }
  std::set<ecurve::ECPoint> hs(H.begin(), H.end());
  auto same_coset = [&](std::size_t a, std::size_t b) {
    return hs.count(c.sub(tb[a], tb[b])) != 0;
  };
  const std::size_t r = 2 * h - 2;
  for (std::size_t pass = 0; pass < 2 && out.defining_points.empty(); ++pass) {
    // pass 0: pairs within the coset of defining[0]; pass 1: within the other coset
    std::vector<std::size_t> coset;
    for (auto i : defining)
      if (same_coset(i, defining[0]) == (pass == 0)) coset.push_back(i);
    for (std::size_t a = 0; a < coset.size() && out.defining_points.empty(); ++a)
      for (std::size_t b = 0; b < coset.size(); ++b) {
        if (a == b) continue;
        std::vector<ecurve::ECPoint> list;
        for (auto i : defining)
          if (i != coset[a] && i != coset[b]) list.push_back(tb[i]);
        list.push_back(tb[coset[a]]);
        list.push_back(tb[coset[b]]);
        auto chk = ecurve::condition_13_14_check(c, list, group_points, r, 3);
        if (chk.holds) {
          out.defining_points = list;
          break;
        }
      }
  }
  if (out.defining_points.empty())
    fail(errc::selection_failed, "no tail pair satisfies condition (14); contradicts the theorem");
  return out;
}

}  // namespace

CodeBundle recipe_eff_involution(std::uint64_t q, std::uint64_t h, std::int64_t t, std::int64_t m,
                                 bool variant_r2) {
  auto prep = prepare_eff_involution(q, h);
  const std::int64_t hh = static_cast<std::int64_t>(h);
  std::int64_t r = variant_r2 ? 2 : 2 * hh - 2;
  std::int64_t delta = variant_r2 ? 2 * hh - 1 : 3;
  if (t < 1 || t >= m || m > prep.ell)
    fail(errc::parameter_out_of_range, "need 1 <= t < m <= ell = " + std::to_string(prep.ell));
  std::vector<ecurve::ECPoint> list = prep.defining_points;
  if (variant_r2) std::reverse(list.begin(), list.end());
  // re-verify the side condition for the orientation actually used
  {
    std::vector<std::vector<ecurve::ECPoint>> gp;
    for (const auto& g : prep.usable_groups) {
      std::vector<ecurve::ECPoint> pts;
      for (auto i : g) pts.push_back((*prep.table)[i]);
      gp.push_back(std::move(pts));
    }
    auto chk = ecurve::condition_13_14_check(*prep.curve, list, gp, static_cast<std::size_t>(r),
                                             static_cast<std::size_t>(delta));
    if (!chk.holds) fail(errc::selection_failed, "condition (14) fails for this orientation");
  }
  auto view = funcspace::CurveView::weierstrass(*prep.curve);
  check_view_matches_points(view, *prep.table);
  LadderPlanInputs in;
  for (const auto& pt : list) in.defining_list.push_back(prep.table->index_of(pt));
  in.all_orbits = prep.all_orbits;
  in.used_groups.assign(prep.usable_groups.begin(), prep.usable_groups.begin() + m);
  Provenance prov;
  prov.family = variant_r2 ? "eff-involution-r2" : "eff-involution";
  prov.params = {{"q", static_cast<std::int64_t>(q)},
                 {"h", hh},
                 {"t", t},
                 {"m", m}};
  prov.notes = {prep.curve_desc};
  auto [code, info] = assemble_ladder_code(view, in, r, delta, t, m, prep.ell, prep.ell, prov);
  CodeBundle out;
  out.field = prep.field;
  out.ecurve_model = prep.curve;
  out.code = std::move(code);
  out.plan = std::move(info);
  return out;
}

FamilyInfo info_eff_involution(std::uint64_t q, std::uint64_t h, bool variant_r2) {
  auto prep = prepare_eff_involution(q, h);
  FamilyInfo fi;
  fi.q = q;
  fi.n_places = prep.N;
  fi.r = variant_r2 ? 2 : 2 * static_cast<std::int64_t>(h) - 2;
  fi.delta = variant_r2 ? 2 * static_cast<std::int64_t>(h) - 1 : 3;
  fi.ell_formula = prep.ell;
  fi.ell_usable = prep.ell;
  fi.curve_desc = prep.curve_desc;
  return fi;
}

// ---------- section-3 family with [-1] not in A ----------

namespace {

struct EffNoninvPrepared {
  std::shared_ptr<const Field> field;
  std::shared_ptr<const ecurve::WeierstrassCurve> curve;
  std::shared_ptr<ecurve::PointTable> table;
  std::vector<ecurve::ECPoint> defining_points;
  std::vector<std::vector<std::size_t>> all_orbits;
  std::vector<std::vector<std::size_t>> usable_groups;
  std::int64_t N = 0, ell = 0;
};

EffNoninvPrepared prepare_eff_noninvolution(std::uint64_t q) {
  // q = 4^{2s+1}: a power of 2 with exponent e = 2(2s+1), s >= 1
  auto [p, e] = factor_prime_power(q);
  if (p != 2 || e % 2 != 0 || (e / 2) % 2 == 0 || e < 6)
    fail(errc::parameter_out_of_range, "q must be 4^{2s+1} with s >= 1");
  EffNoninvPrepared out;
  out.field = make_field(2, e);
  const Field& f = *out.field;
  auto curve = ecurve::WeierstrassCurve::make(f, 0, 0, 1, 0, 0);
  out.curve = std::make_shared<const ecurve::WeierstrassCurve>(curve);
  out.table = std::make_shared<ecurve::PointTable>(*out.curve);
  out.N = static_cast<std::int64_t>(out.table->size());
  std::uint64_t sq = isqrt_u64(q);
  if (out.N != static_cast<std::int64_t>(q + 2 * sq + 1))
    fail(errc::not_maximal, "y^2+y=x^3 is not maximal here (internal)");
  const auto& tb = *out.table;
  const auto& c = *out.curve;
  // H = <Q> with Q the common zero of x and y-1; A = <sigma>, sigma: x -> u^2 x
  ecurve::ECPoint Q = ecurve::ECPoint::affine(0, 1);
  if (!(c.scalar_mul(3, Q) == ecurve::ECPoint::infinity()))
    fail(errc::selection_failed, "Q = (0,1) is not 3-torsion (internal)");
  std::vector<ecurve::ECPoint> H{ecurve::ECPoint::infinity(), Q, c.neg(Q)};
  std::sort(H.begin(), H.end());
  Elem u = gf::nth_roots_of_unity(f, 3)[1];
  auto id = ecurve::identity_map(tb);
  auto sigma = ecurve::fixing_o_linear(tb, f.mul(u, u), 1, 0, 0, "x->u^2 x");
  auto sigma2 = ecurve::compose(sigma, sigma);
  std::vector<ecurve::ECAutomorphism> A{id, sigma, sigma2};
  // sanity gates from the construction: sigma fixes Q, [-1] is not in A
  if (!(tb[sigma.perm[tb.index_of(Q)]] == Q))
    fail(errc::selection_failed, "sigma(Q) != Q (internal)");
  auto inv = ecurve::elliptic_involution(tb);
  for (const auto& a : A)
    if (a == inv) fail(errc::involution_in_group, "[-1] must not lie in A");
  if (!ecurve::check_TH_A_subgroup(tb, H, A))
    fail(errc::not_a_subgroup, "A does not stabilize H (internal)");
  auto G = ecurve::product_group_TH_A(tb, H, A);
  auto os = ecurve::orbits(tb, G);
  out.all_orbits = orbit_indices(os);
  for (const auto& o : out.all_orbits)
    if (o.size() == 9) out.usable_groups.push_back(o);
  std::int64_t ell_formula = static_cast<std::int64_t>((q + 2 * sq - 8) / 9);
  out.ell = static_cast<std::int64_t>(out.usable_groups.size());
  if (out.ell != ell_formula)
    fail(errc::selection_failed, "full orbit count differs from the corollary (internal)");
  // defining list: Con(O cap F) = 3 Q + 3 Q' + 3 O with the tail P_{r+1} = P_{r+2} = O
  std::vector<ecurve::ECPoint> affH;
  for (const auto& pH : H)
    if (!pH.inf) affH.push_back(pH);
  std::sort(affH.begin(), affH.end());
  for (const auto& pH : affH)
    for (int i = 0; i < 3; ++i) out.defining_points.push_back(pH);
  for (int i = 0; i < 3; ++i) out.defining_points.push_back(ecurve::ECPoint::infinity());
  // brute-force check of condition (14) for r = 7, delta = 3
  std::vector<std::vector<ecurve::ECPoint>> gp;
  for (const auto& g : out.usable_groups) {
    std::vector<ecurve::ECPoint> pts;
    for (auto i : g) pts.push_back(tb[i]);
    gp.push_back(std::move(pts));
  }
  auto chk = ecurve::condition_13_14_check(c, out.defining_points, gp, 7, 3);
  if (!chk.holds)
    fail(errc::selection_failed, "condition (14) fails with the O,O tail (contradicts the theorem)");
  return out;
}

}  // namespace

CodeBundle recipe_eff_noninvolution(std::uint64_t q, std::int64_t t, std::int64_t m,
                                    bool variant_r2) {
  auto prep = prepare_eff_noninvolution(q);
  std::int64_t r = variant_r2 ? 2 : 7;
  std::int64_t delta = variant_r2 ? 8 : 3;
  if (t < 1 || t >= m || m > prep.ell)
    fail(errc::parameter_out_of_range, "need 1 <= t < m <= ell = " + std::to_string(prep.ell));
  std::vector<ecurve::ECPoint> list = prep.defining_points;
  if (variant_r2) std::reverse(list.begin(), list.end());
  {
    std::vector<std::vector<ecurve::ECPoint>> gp;
    for (const auto& g : prep.usable_groups) {
      std::vector<ecurve::ECPoint> pts;
      for (auto i : g) pts.push_back((*prep.table)[i]);
      gp.push_back(std::move(pts));
    }
    auto chk = ecurve::condition_13_14_check(*prep.curve, list, gp, static_cast<std::size_t>(r),
                                             static_cast<std::size_t>(delta));
    if (!chk.holds) fail(errc::selection_failed, "condition (14) fails for this orientation");
  }
  auto view = funcspace::CurveView::weierstrass(*prep.curve);
  check_view_matches_points(view, *prep.table);
  LadderPlanInputs in;
  for (const auto& pt : list) in.defining_list.push_back(prep.table->index_of(pt));
  in.all_orbits = prep.all_orbits;
  in.used_groups.assign(prep.usable_groups.begin(), prep.usable_groups.begin() + m);
  Provenance prov;
  prov.family = variant_r2 ? "eff-noninvolution-r2" : "eff-noninvolution";
  prov.params = {{"q", static_cast<std::int64_t>(q)}, {"t", t}, {"m", m}};
  prov.notes = {"y^2+y=x^3, H=<(0,1)>, A=<x->u^2 x>"};
  auto [code, info] = assemble_ladder_code(view, in, r, delta, t, m, prep.ell, prep.ell, prov);
  CodeBundle out;
  out.field = prep.field;
  out.ecurve_model = prep.curve;
  out.code = std::move(code);
  out.plan = std::move(info);
  return out;
}

FamilyInfo info_eff_noninvolution(std::uint64_t q, bool variant_r2) {
  auto prep = prepare_eff_noninvolution(q);
  FamilyInfo fi;
  fi.q = q;
  fi.n_places = prep.N;
  fi.r = variant_r2 ? 2 : 7;
  fi.delta = variant_r2 ? 8 : 3;
  fi.ell_formula = prep.ell;
  fi.ell_usable = prep.ell;
  fi.curve_desc = "y^2+y=x^3";
  return fi;
}

// ---------- genus-2 family on y^2 = x^5 + x ----------

namespace {

struct Genus2Prepared {
  std::shared_ptr<const Field> field;
  std::shared_ptr<const scurve::SuperellipticCurve> curve;
  std::vector<std::size_t> defining_list;  // view indices with multiplicity, P_inf last
  std::vector<std::vector<std::size_t>> all_orbits;
  std::vector<std::vector<std::size_t>> usable_groups;
  std::shared_ptr<funcspace::CurveView> view;
  std::int64_t N = 0, ell_formula = 0, ell_usable = 0;
  std::string curve_desc;
};

Genus2Prepared prepare_genus2_43(std::uint64_t q,
                                 std::optional<std::vector<std::uint32_t>> modulus_override) {
  auto [p, e] = factor_prime_power(q);
  if (p == 2) fail(errc::parameter_out_of_range, "odd characteristic required");
  Genus2Prepared out;
  out.field = make_field(p, e, std::move(modulus_override));
  const Field& f = *out.field;
  auto curve = scurve::SuperellipticCurve::make(f, 2, {0, 1, 0, 0, 0, 1});
  out.curve = std::make_shared<const scurve::SuperellipticCurve>(curve);
  out.curve_desc = "y^2=x^5+x";
  // generators of G per the two covered parameter shapes
  std::vector<scurve::Genus2Automorphism> gens;
  bool case_i = (p == 5) && (e % 2 == 0) && ((e / 2) % 2 == 1);
  if (case_i) {
    Elem alpha = 0;
    bool found = false;
    for (std::uint64_t a = 0; a < f.q() && !found; ++a)
      if (f.mul(static_cast<Elem>(a), static_cast<Elem>(a)) == f.from_int(2)) {
        alpha = static_cast<Elem>(a);
        found = true;
      }
    if (!found) fail(errc::selection_failed, "no square root of 2 (internal)");
    gens.push_back(scurve::Genus2Automorphism::make(*out.curve, alpha, f.neg(1), f.neg(1), 0));
  } else {
    // q = qbar^{2s} with s odd and qbar = 5, 15, 21 or 23 mod 24, qbar != 5
    bool ok = false;
    for (std::uint32_t e1 = 1; e1 <= e / 2 && !ok; ++e1) {
      if (e % (2 * e1) != 0) continue;
      std::uint32_t s = e / (2 * e1);
      if (s % 2 == 0) continue;
      std::uint64_t qbar = ipow(p, e1);
      std::uint64_t mod24 = qbar % 24;
      if (qbar == 5 || (mod24 != 5 && mod24 != 15 && mod24 != 21 && mod24 != 23)) continue;
      ok = true;
    }
    if (!ok) fail(errc::parameter_out_of_range, "q fits neither corollary case");
    if ((q - 1) % 8 != 0) fail(errc::parameter_out_of_range, "8 must divide q-1");
    Elem alpha = f.pow(f.primitive(), static_cast<std::int64_t>((q - 1) / 8));
    Elem inv2 = f.inv(f.from_int(2));
    Elem a2 = f.mul(alpha, alpha), a3 = f.mul(a2, alpha);
    gens.push_back(scurve::Genus2Automorphism::make(*out.curve, 0, f.neg(1), f.neg(1), 0));
    gens.push_back(scurve::Genus2Automorphism::make(
        *out.curve, f.mul(inv2, f.sub(a2, 1)), f.mul(inv2, f.sub(alpha, a3)),
        f.mul(inv2, f.sub(a3, alpha)), f.mul(inv2, f.neg(f.add(a2, 1)))));
  }
  auto G = scurve::genus2_group_closure(*out.curve, gens);
  if (G.size() != 6) fail(errc::selection_failed, "|G| != 6 (internal)");
  Elem m1 = f.neg(1);
  auto iota = scurve::Genus2Automorphism::make(*out.curve, m1, 0, 0, m1);
  for (const auto& g : G)
    if (g.same_action(iota)) fail(errc::involution_in_group, "iota must not lie in G");
  auto places = scurve::enumerate_places(*out.curve);
  out.N = static_cast<std::int64_t>(places.size());
  std::uint64_t sq = isqrt_u64(q);
  if (out.N != static_cast<std::int64_t>(q + 1 + 4 * sq)) fail(errc::not_maximal, "curve not maximal");
  if (out.N % 6 == 0) fail(errc::parameter_out_of_range, "|G| divides N(E), excluded");
  out.view = std::make_shared<funcspace::CurveView>(funcspace::CurveView::superelliptic(*out.curve));
  const auto& view = *out.view;
  // G-orbits over the view indices
  auto place_index = [&](const scurve::SCPlace& pl) {
    return pl.inf ? std::size_t{0}
                  : view.index_of(funcspace::Place{false, pl.x, pl.y, curve.M() > 1 && pl.y == 0});
  };
  std::vector<bool> seen(places.size(), false);
  std::vector<std::vector<std::size_t>> orbits;
  for (const auto& pl : places) {
    std::size_t i0 = place_index(pl);
    if (seen[i0]) continue;
    std::set<std::size_t> orb;
    for (const auto& g : G) orb.insert(place_index(g.apply(pl)));
    std::vector<std::size_t> v(orb.begin(), orb.end());
    for (auto i : v) seen[i] = true;
    orbits.push_back(std::move(v));
  }
  std::sort(orbits.begin(), orbits.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  out.all_orbits = orbits;
  // the defining fiber is the orbit of P_inf
  std::vector<std::size_t> inf_orbit;
  for (const auto& o : orbits)
    if (std::find(o.begin(), o.end(), std::size_t{0}) != o.end()) inf_orbit = o;
  if (inf_orbit.empty()) fail(errc::selection_failed, "no orbit contains P_inf (internal)");
  if (6 % inf_orbit.size() != 0) fail(errc::selection_failed, "bad infinite orbit size (internal)");
  std::size_t mult = 6 / inf_orbit.size();
  // condition (C1): P_{r+2} = P_inf goes last
  std::vector<std::size_t> affine_part;
  for (auto i : inf_orbit)
    if (i != 0) affine_part.push_back(i);
  std::sort(affine_part.begin(), affine_part.end());
  for (auto i : affine_part)
    for (std::size_t k = 0; k < mult; ++k) out.defining_list.push_back(i);
  for (std::size_t k = 0; k < mult; ++k) out.defining_list.push_back(0);
  // usable groups: full orbits, disjoint from the defining fiber, reduced (C2)
  std::set<std::size_t> fiber(inf_orbit.begin(), inf_orbit.end());
  for (const auto& o : orbits) {
    if (o.size() != 6) continue;
    bool over_qinf = std::any_of(o.begin(), o.end(), [&](std::size_t i) { return fiber.count(i); });
    if (over_qinf) continue;
    // (C2): no conjugate pair within the orbit
    bool reduced = true;
    std::set<std::pair<Elem, Elem>> members;
    for (auto i : o) members.insert({view.places()[i].x, view.places()[i].y});
    for (auto i : o) {
      const auto& pl = view.places()[i];
      Elem ybar = f.neg(pl.y);
      if (ybar != pl.y && members.count({pl.x, ybar})) reduced = false;
    }
    if (!reduced) continue;
    out.usable_groups.push_back(o);
  }
  out.ell_usable = static_cast<std::int64_t>(out.usable_groups.size());
  std::int64_t num = out.N - 26;
  out.ell_formula = 2 * ((num + 11) / 12) - 1;  // 2 ceil((N - 4|G| - 2) / (2|G|)) - 1
  if (out.ell_usable < out.ell_formula)
    fail(errc::selection_failed, "usable orbit count under the theorem bound (internal)");
  return out;
}

}  // namespace

CodeBundle recipe_genus2_43(std::uint64_t q, std::int64_t t, std::int64_t m,
                            std::optional<std::vector<std::uint32_t>> modulus_override) {
  auto prep = prepare_genus2_43(q, std::move(modulus_override));
  const std::int64_t r = 4, delta = 3;
  if (t < 1 || t >= m || m > prep.ell_usable)
    fail(errc::parameter_out_of_range,
         "need 1 <= t < m <= usable ell = " + std::to_string(prep.ell_usable));
  LadderPlanInputs in;
  in.defining_list = prep.defining_list;
  in.all_orbits = prep.all_orbits;
  in.used_groups.assign(prep.usable_groups.begin(), prep.usable_groups.begin() + m);
  Provenance prov;
  prov.family = "genus2-43";
  prov.params = {{"q", static_cast<std::int64_t>(q)}, {"t", t}, {"m", m}};
  prov.notes = {prep.curve_desc};
  auto [code, info] = assemble_ladder_code(*prep.view, in, r, delta, t, m, prep.ell_formula,
                                           prep.ell_usable, prov);
  CodeBundle out;
  out.field = prep.field;
  out.scurve_model = prep.curve;
  out.code = std::move(code);
  out.plan = std::move(info);
  return out;
}

FamilyInfo info_genus2_43(std::uint64_t q) {
  auto prep = prepare_genus2_43(q, std::nullopt);
  FamilyInfo fi;
  fi.q = q;
  fi.n_places = prep.N;
  fi.r = 4;
  fi.delta = 3;
  fi.ell_formula = prep.ell_formula;
  fi.ell_usable = prep.ell_usable;
  fi.curve_desc = prep.curve_desc;
  return fi;
}

// ---------- hyperelliptic genus-g family ----------

namespace {

struct HyperellPrepared {
  std::shared_ptr<const Field> field;
  std::shared_ptr<const scurve::SuperellipticCurve> curve;
  std::vector<std::vector<scurve::SCPlace>> orbits;
  std::int64_t N = 0, ell = 0;
  std::string curve_desc;
};

HyperellPrepared prepare_hyperell(std::uint64_t g, std::uint64_t q) {
  if (g < 2) fail(errc::parameter_out_of_range, "genus must be at least 2");
  auto [p, e] = factor_prime_power(q);
  if (p == 2) fail(errc::parameter_out_of_range, "odd characteristic required");
  const std::uint64_t deg = 2 * g + 1;
  HyperellPrepared out;
  out.field = make_field(p, e);
  const Field& f = *out.field;
  // case (i): q = (2g+1)^{2s}; case (ii): q = qbar^{2s}, qbar = -1 mod 2g+1
  bool case_i = false;
  std::uint32_t s_exp = 0;
  {
    auto [pp, ee] = factor_prime_power(deg);
    if (pp == p) {
      // q = p^e = (p^ee)^{e/ee}; need e/ee even
      if (e % ee == 0 && (e / ee) % 2 == 0) {
        case_i = true;
        s_exp = (e / ee) / 2;
      }
    }
  }
  std::uint32_t s2 = 0;
  bool case_ii = false;
  if (!case_i) {
    for (std::uint32_t e1 = 1; e1 <= e / 2; ++e1) {
      if (e % (2 * e1) != 0) continue;
      std::uint64_t qbar = ipow(p, e1);
      if ((qbar + 1) % deg != 0) continue;
      case_ii = true;
      s2 = e / (2 * e1);
      // prefer odd s (untwisted curve)
      if (s2 % 2 == 1) break;
    }
    if (!case_ii) fail(errc::parameter_out_of_range, "q fits neither case of the theorem");
  }
  std::vector<Elem> fc(deg + 1, 0);
  fc[deg] = 1;
  bool even_s = case_i ? (s_exp % 2 == 0) : (s2 % 2 == 0);
  Elem gamma = even_s ? gf::quadratic_nonresidue(f) : f.one();
  if (case_i) {
    fc[1] = 1;  // x^{2g+1} + x
    out.curve_desc = even_s ? "gamma y^2 = x^(2g+1)+x" : "y^2 = x^(2g+1)+x";
  } else {
    fc[0] = 1;  // x^{2g+1} + 1
    out.curve_desc = even_s ? "gamma y^2 = x^(2g+1)+1" : "y^2 = x^(2g+1)+1";
  }
  auto curve = scurve::SuperellipticCurve::make(f, 2, fc, gamma);
  out.curve = std::make_shared<const scurve::SuperellipticCurve>(curve);
  auto mr = scurve::maximality_check(*out.curve);
  if (mr.cls != scurve::MaxClass::maximal) fail(errc::not_maximal, "curve failed the maximality check");
  out.N = static_cast<std::int64_t>(mr.count);
  if (case_i) {
    // x-translations by the roots of x^{2g+1} + x
    std::vector<Elem> kernel;
    for (std::uint64_t z = 0; z < f.q(); ++z) {
      Elem ze = static_cast<Elem>(z);
      if (f.add(f.pow(ze, static_cast<std::int64_t>(deg)), ze) == 0) kernel.push_back(ze);
    }
    if (kernel.size() != deg) fail(errc::selection_failed, "kernel size mismatch (internal)");
    out.orbits = scurve::x_translation_orbits(*out.curve, kernel);
  } else {
    auto roots = gf::nth_roots_of_unity(f, deg);
    out.orbits = scurve::x_scaling_orbits(*out.curve, roots).orbits;
  }
  out.ell = static_cast<std::int64_t>(out.orbits.size());
  std::uint64_t sq = isqrt_u64(q);
  std::int64_t formula = static_cast<std::int64_t>((q + 2 * g * sq) / deg);
  if (out.ell != formula)
    fail(errc::selection_failed, "orbit count differs from the floor formula (internal)");
  return out;
}

}  // namespace

CodeBundle recipe_hyperell_genus_g(std::uint64_t g, std::uint64_t q, std::int64_t gprime,
                                   std::int64_t t, std::int64_t m) {
  if (gprime < -(static_cast<std::int64_t>(g) - 1) || gprime > static_cast<std::int64_t>(g) - 1)
    fail(errc::parameter_out_of_range, "need -(g-1) <= g' <= g-1");
  auto prep = prepare_hyperell(g, q);
  const std::int64_t r = static_cast<std::int64_t>(g) + 1 - gprime;
  const std::int64_t delta = static_cast<std::int64_t>(g) + 1 + gprime;
  const std::int64_t deg = 2 * static_cast<std::int64_t>(g) + 1;
  if (t < 1 || t >= m || m > prep.ell)
    fail(errc::parameter_out_of_range, "need 1 <= t < m <= ell = " + std::to_string(prep.ell));
  std::int64_t d_designed = (m - t) * deg + std::min<std::int64_t>(0, 2 * gprime + 1);
  bool optimal = gprime >= 0;
  Provenance prov;
  prov.family = "hyperelliptic";
  prov.params = {{"g", static_cast<std::int64_t>(g)},
                 {"q", static_cast<std::int64_t>(q)},
                 {"gprime", gprime},
                 {"t", t},
                 {"m", m}};
  prov.notes = {prep.curve_desc};
  if (!optimal) prov.notes.push_back("g' < 0: designed distance below the Singleton-type bound");
  std::vector<std::vector<scurve::SCPlace>> used(prep.orbits.begin(), prep.orbits.begin() + m);
  auto [code, info] = assemble_monomial_code(*prep.field, used, /*local_in_x=*/true, r, delta, t, m,
                                             d_designed, optimal, prep.ell, prep.ell, prov);
  CodeBundle out;
  out.field = prep.field;
  out.scurve_model = prep.curve;
  out.code = std::move(code);
  out.plan = std::move(info);
  return out;
}

FamilyInfo info_hyperell_genus_g(std::uint64_t g, std::uint64_t q, std::int64_t gprime) {
  auto prep = prepare_hyperell(g, q);
  FamilyInfo fi;
  fi.q = q;
  fi.n_places = prep.N;
  fi.r = static_cast<std::int64_t>(g) + 1 - gprime;
  fi.delta = static_cast<std::int64_t>(g) + 1 + gprime;
  fi.ell_formula = prep.ell;
  fi.ell_usable = prep.ell;
  fi.curve_desc = prep.curve_desc;
  return fi;
}

// ---------- norm-trace family ----------

namespace {

struct NormTracePrepared {
  std::shared_ptr<const Field> field;
  std::shared_ptr<const scurve::SuperellipticCurve> curve;
  std::vector<std::vector<scurve::SCPlace>> orbits;
  bool m_less_n = true;
  std::int64_t M = 0, N = 0, n_places = 0, ell = 0;
  std::string curve_desc;
};

NormTracePrepared prepare_normtrace(std::uint64_t qbar, std::uint32_t s, std::uint64_t b,
                                    std::uint32_t c) {
  auto [p, e1] = factor_prime_power(qbar);
  if (s < 2) fail(errc::parameter_out_of_range, "s must be at least 2");
  std::uint64_t q = ipow(qbar, s);
  std::uint64_t ratio = (q - 1) / (qbar - 1);
  if (b == 0 || ratio % b != 0 || b == ratio)
    fail(errc::parameter_out_of_range, "b must be a proper divisor of (qbar^s-1)/(qbar-1)");
  if (c == 0 || s % c != 0 || c == s)
    fail(errc::parameter_out_of_range, "c must be a proper divisor of s");
  NormTracePrepared out;
  out.field = make_field(p, e1 * s);
  const Field& f = *out.field;
  auto curve = scurve::norm_trace_curve(f, static_cast<std::uint32_t>(qbar), s, b, c);
  out.curve = std::make_shared<const scurve::SuperellipticCurve>(curve);
  out.M = static_cast<std::int64_t>(curve.M());
  out.N = static_cast<std::int64_t>(curve.N());
  if (out.M == out.N) fail(errc::orientation_degenerate, "M = N has no orientation");
  out.curve_desc = "y^M = Tr(x) with M=" + std::to_string(out.M) + ", N=" + std::to_string(out.N);
  std::uint64_t count = scurve::norm_trace_count(static_cast<std::uint32_t>(qbar), s, b, c);
  if (scurve::enumerate_places(*out.curve).size() != count)
    fail(errc::selection_failed, "closed-form count mismatch (internal)");
  out.n_places = static_cast<std::int64_t>(count);
  out.m_less_n = out.M < out.N;
  std::uint64_t qc = ipow(qbar, c);
  std::uint64_t ratio_c = (qc - 1) / (qbar - 1);
  std::uint64_t gcd_bc = std::__gcd(b, ratio_c);
  std::uint64_t affine_total = gcd_bc * ((q - 1) / b) * (q / qc) + q / qc;
  std::uint64_t affine_nonzero_y = gcd_bc * ((q - 1) / b) * (q / qc);
  if (out.m_less_n) {
    std::vector<Elem> kernel;
    for (std::uint64_t z = 0; z < f.q(); ++z)
      if (out.curve->eval_f(static_cast<Elem>(z)) == 0) kernel.push_back(static_cast<Elem>(z));
    if (kernel.size() != static_cast<std::size_t>(out.N))
      fail(errc::selection_failed, "trace kernel size mismatch (internal)");
    out.orbits = scurve::x_translation_orbits(*out.curve, kernel);
    out.ell = static_cast<std::int64_t>(affine_total / static_cast<std::uint64_t>(out.N));
  } else {
    auto roots = gf::nth_roots_of_unity(f, static_cast<std::uint64_t>(out.M));
    out.orbits = scurve::y_scaling_orbits(*out.curve, roots).orbits;
    out.ell = static_cast<std::int64_t>(affine_nonzero_y / static_cast<std::uint64_t>(out.M));
  }
  if (static_cast<std::int64_t>(out.orbits.size()) != out.ell)
    fail(errc::selection_failed, "orbit count differs from the formula (internal)");
  return out;
}

}  // namespace

CodeBundle recipe_normtrace(std::uint64_t qbar, std::uint32_t s, std::uint64_t b, std::uint32_t c,
                            std::int64_t bprime, std::int64_t t, std::int64_t m) {
  auto prep = prepare_normtrace(qbar, s, b, c);
  const std::int64_t big = prep.m_less_n ? prep.N : prep.M;
  const std::int64_t small = prep.m_less_n ? prep.M : prep.N;
  const std::int64_t rmax = (big - 1) / small + 1;
  if (bprime < 0 || bprime > rmax - 2)
    fail(errc::parameter_out_of_range, "need 0 <= b' <= floor((big-1)/small) - 1");
  const std::int64_t r = rmax - bprime;
  const std::int64_t delta = big + 1 - r;
  if (t < 1 || t >= m || m > prep.ell)
    fail(errc::parameter_out_of_range, "need 1 <= t < m <= ell = " + std::to_string(prep.ell));
  Provenance prov;
  prov.family = "normtrace";
  prov.params = {{"qbar", static_cast<std::int64_t>(qbar)},
                 {"s", static_cast<std::int64_t>(s)},
                 {"b", static_cast<std::int64_t>(b)},
                 {"c", static_cast<std::int64_t>(c)},
                 {"bprime", bprime},
                 {"t", t},
                 {"m", m}};
  prov.notes = {prep.curve_desc, prep.m_less_n ? "orientation M<N" : "orientation M>N"};
  std::vector<std::vector<scurve::SCPlace>> used(prep.orbits.begin(), prep.orbits.begin() + m);
  auto [code, info] =
      assemble_monomial_code(*prep.field, used, /*local_in_x=*/prep.m_less_n, r, delta, t, m,
                             (m - t) * big, true, prep.ell, prep.ell, prov);
  CodeBundle out;
  out.field = prep.field;
  out.scurve_model = prep.curve;
  out.code = std::move(code);
  out.plan = std::move(info);
  return out;
}

FamilyInfo info_normtrace(std::uint64_t qbar, std::uint32_t s, std::uint64_t b, std::uint32_t c,
                          std::int64_t bprime) {
  auto prep = prepare_normtrace(qbar, s, b, c);
  const std::int64_t big = prep.m_less_n ? prep.N : prep.M;
  const std::int64_t small = prep.m_less_n ? prep.M : prep.N;
  FamilyInfo fi;
  fi.q = ipow(qbar, s);
  fi.n_places = prep.n_places;
  fi.r = (big - 1) / small + 1 - bprime;
  fi.delta = big + 1 - fi.r;
  fi.ell_formula = prep.ell;
  fi.ell_usable = prep.ell;
  fi.curve_desc = prep.curve_desc;
  return fi;
}

// ---------- maximal superelliptic family from Hermitian curves ----------

namespace {

struct HermitianPrepared {
  std::shared_ptr<const Field> field;
  std::shared_ptr<const scurve::SuperellipticCurve> curve;
  std::vector<std::vector<scurve::SCPlace>> orbits;
  bool local_in_x = true;
  std::int64_t group_size = 0, n_places = 0, ell = 0;
  std::string curve_desc;
};

HermitianPrepared prepare_hermitian(std::uint64_t qbar, std::uint32_t s, std::uint64_t b) {
  auto [p, e1] = factor_prime_power(qbar);
  if (s < 1) fail(errc::parameter_out_of_range, "s must be at least 1");
  if (b == 0 || (qbar + 1) % b != 0 || b == qbar + 1)
    fail(errc::parameter_out_of_range, "b must be a proper divisor of qbar + 1");
  std::uint64_t q = ipow(qbar, 2 * s);
  HermitianPrepared out;
  out.field = make_field(p, e1 * 2 * s);
  const Field& f = *out.field;
  const std::uint64_t sq = isqrt_u64(q);
  const std::uint64_t M = (qbar + 1) / b;
  const bool even_s = (s % 2 == 0);
  if (b > 1) {
    std::vector<Elem> fc(qbar + 1, 0);
    fc[qbar] = 1;
    fc[1] = 1;  // x^qbar + x
    Elem gamma = 1;
    if (even_s) {
      if (!(p != 2 && b == (qbar + 1) / 2))
        fail(errc::even_s_without_twist, "even s needs the odd-qbar quadratic twist");
      gamma = gf::quadratic_nonresidue(f);
      out.curve_desc = "gamma y^2 = x^qbar + x";
    } else {
      out.curve_desc = "y^(qbar+1)/b = x^qbar + x";
    }
    auto curve = scurve::SuperellipticCurve::make(f, static_cast<std::uint32_t>(M), fc, gamma);
    out.curve = std::make_shared<const scurve::SuperellipticCurve>(curve);
    auto mr = scurve::maximality_check(*out.curve);
    if (mr.cls != scurve::MaxClass::maximal) fail(errc::not_maximal, "curve failed maximality");
    out.n_places = static_cast<std::int64_t>(mr.count);
    std::vector<Elem> kernel;
    for (std::uint64_t z = 0; z < f.q(); ++z) {
      Elem ze = static_cast<Elem>(z);
      if (f.add(f.pow(ze, static_cast<std::int64_t>(qbar)), ze) == 0) kernel.push_back(ze);
    }
    if (kernel.size() != qbar) fail(errc::selection_failed, "additive kernel size (internal)");
    out.orbits = scurve::x_translation_orbits(*out.curve, kernel);
    out.local_in_x = true;
    out.group_size = static_cast<std::int64_t>(qbar);
    std::int64_t formula =
        static_cast<std::int64_t>((q + (M - 1) * (qbar - 1) * sq) / qbar);
    out.ell = static_cast<std::int64_t>(out.orbits.size());
    if (out.ell != formula) fail(errc::selection_failed, "ell formula mismatch (internal)");
    return out;
  }
  // b = 1: y^{qbar+1} = x^qbar + x (+ eta twist for qbar = 2, even s)
  std::vector<Elem> fc(qbar + 1, 0);
  fc[qbar] = 1;
  fc[1] = 1;
  if (even_s) {
    if (qbar != 2) fail(errc::even_s_without_twist, "even s with b = 1 needs qbar = 2");
    // eta outside {a^2 + a}: smallest such element
    std::set<Elem> image;
    for (std::uint64_t a = 0; a < f.q(); ++a)
      image.insert(f.add(f.mul(static_cast<Elem>(a), static_cast<Elem>(a)), static_cast<Elem>(a)));
    Elem eta = 0;
    bool found = false;
    for (std::uint64_t a = 0; a < f.q() && !found; ++a)
      if (!image.count(static_cast<Elem>(a))) {
        eta = static_cast<Elem>(a);
        found = true;
      }
    if (!found) fail(errc::selection_failed, "no Artin-Schreier nonimage (internal)");
    fc[0] = eta;
    out.curve_desc = "y^3 = x^2 + x + eta";
  } else {
    out.curve_desc = "y^(qbar+1) = x^qbar + x";
  }
  auto curve = scurve::SuperellipticCurve::make(f, static_cast<std::uint32_t>(qbar + 1), fc, 1);
  out.curve = std::make_shared<const scurve::SuperellipticCurve>(curve);
  auto mr = scurve::maximality_check(*out.curve);
  if (mr.cls != scurve::MaxClass::maximal) fail(errc::not_maximal, "curve failed maximality");
  out.n_places = static_cast<std::int64_t>(mr.count);
  auto roots = gf::nth_roots_of_unity(f, qbar + 1);
  out.orbits = scurve::y_scaling_orbits(*out.curve, roots).orbits;
  out.local_in_x = false;
  out.group_size = static_cast<std::int64_t>(qbar + 1);
  std::int64_t formula = static_cast<std::int64_t>((q + qbar * (qbar - 1) * sq) / (qbar + 1));
  out.ell = static_cast<std::int64_t>(out.orbits.size());
  if (out.ell != formula) fail(errc::selection_failed, "ell formula mismatch (internal)");
  return out;
}

}  // namespace

CodeBundle recipe_hermitian(std::uint64_t qbar, std::uint32_t s, std::uint64_t b,
                            std::int64_t bprime, std::int64_t t, std::int64_t m) {
  auto prep = prepare_hermitian(qbar, s, b);
  std::int64_t r, delta;
  if (b > 1) {
    if (bprime < 0 || bprime > static_cast<std::int64_t>(b) - 2)
      fail(errc::parameter_out_of_range, "need 0 <= b' <= b - 2");
    r = static_cast<std::int64_t>(b) - bprime;
    delta = static_cast<std::int64_t>(qbar) + 1 - r;
  } else {
    if (bprime != 0) fail(errc::parameter_out_of_range, "b = 1 admits only b' = 0");
    r = 2;
    delta = static_cast<std::int64_t>(qbar);
  }
  if (t < 1 || t >= m || m > prep.ell)
    fail(errc::parameter_out_of_range, "need 1 <= t < m <= ell = " + std::to_string(prep.ell));
  Provenance prov;
  prov.family = "hermitian";
  prov.params = {{"qbar", static_cast<std::int64_t>(qbar)},
                 {"s", static_cast<std::int64_t>(s)},
                 {"b", static_cast<std::int64_t>(b)},
                 {"bprime", bprime},
                 {"t", t},
                 {"m", m}};
  prov.notes = {prep.curve_desc};
  std::vector<std::vector<scurve::SCPlace>> used(prep.orbits.begin(), prep.orbits.begin() + m);
  auto [code, info] =
      assemble_monomial_code(*prep.field, used, prep.local_in_x, r, delta, t, m,
                             (m - t) * prep.group_size, true, prep.ell, prep.ell, prov);
  CodeBundle out;
  out.field = prep.field;
  out.scurve_model = prep.curve;
  out.code = std::move(code);
  out.plan = std::move(info);
  return out;
}

FamilyInfo info_hermitian(std::uint64_t qbar, std::uint32_t s, std::uint64_t b,
                          std::int64_t bprime) {
  auto prep = prepare_hermitian(qbar, s, b);
  FamilyInfo fi;
  fi.q = ipow(qbar, 2 * s);
  fi.n_places = prep.n_places;
  if (b > 1) {
    fi.r = static_cast<std::int64_t>(b) - bprime;
    fi.delta = static_cast<std::int64_t>(qbar) + 1 - fi.r;
  } else {
    fi.r = 2;
    fi.delta = static_cast<std::int64_t>(qbar);
  }
  fi.ell_formula = prep.ell;
  fi.ell_usable = prep.ell;
  fi.curve_desc = prep.curve_desc;
  return fi;
}

}  // namespace lrc::recipes
