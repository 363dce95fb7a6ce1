#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lrc/ecurve.hpp"
#include "lrc/funcspace.hpp"
#include "lrc/gf.hpp"
#include "lrc/linalg.hpp"
#include "lrc/scurve.hpp"

namespace lrc::recipes {

struct Provenance {
  std::string family;
  std::vector<std::pair<std::string, std::int64_t>> params;
  std::vector<std::string> notes;
};

struct LrcCode {
  std::int64_t n = 0, k = 0, d_designed = 0, r = 0, delta = 0;
  bool designed_optimal = true;  // Singleton defect 0 expected for the designed d
  linalg::Matrix generator;      // k x n, columns grouped contiguously
  std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end) ranges
  Provenance prov;
};

/// One evaluation place: the local ladder values w_0..w_{r-1} and the
/// group-constant function z at that place.
struct EvalColumn {
  std::vector<gf::Elem> w;
  gf::Elem z = 0;
};

/// The (w_i z^j) evaluation grid plus parameters; build_code turns it into a
/// generator matrix with verified rank t*r + 1.
struct EvaluationPlan {
  std::vector<EvalColumn> columns;  // m * (r + delta - 1), grouped contiguously
  std::int64_t r = 0, delta = 0, t = 0, m = 0;
  std::int64_t d_designed = 0;
  bool designed_optimal = true;
  Provenance prov;
};

struct PlanInfo {
  std::int64_t r = 0, delta = 0, t = 0, m = 0;
  std::int64_t ell_formula = 0;  // the paper's guaranteed group count
  std::int64_t ell_usable = 0;   // verified usable group count
  std::vector<gf::Elem> group_z;  // z value of each used group
};

struct CodeBundle {
  std::shared_ptr<const gf::Field> field;
  std::shared_ptr<const ecurve::WeierstrassCurve> ecurve_model;
  std::shared_ptr<const scurve::SuperellipticCurve> scurve_model;
  LrcCode code;
  PlanInfo plan;
};

LrcCode build_code(const gf::Field& f, const EvaluationPlan& plan);

/// Elliptic family with G = T_H<[-1]> (order 2h): an optimal (2h-2, 3)-LRC, or
/// the reversed-list (2, 2h-1) variant. q = p^{2s}; the curve is y^2 + y = x^3
/// in characteristic 2 and a searched curve with N = q + 2 sqrt(q) otherwise.
CodeBundle recipe_eff_involution(std::uint64_t q, std::uint64_t h, std::int64_t t, std::int64_t m,
                                 bool variant_r2 = false);

/// Elliptic family on y^2 + y = x^3 over GF(4^{2s+1}) with G = T_H <sigma>,
/// |G| = 9: an optimal (7, 3)-LRC or the reversed (2, 8) variant.
CodeBundle recipe_eff_noninvolution(std::uint64_t q, std::int64_t t, std::int64_t m,
                                    bool variant_r2 = false);

/// Genus-2 family on y^2 = x^5 + x with |G| = 6: an optimal (4, 3)-LRC.
CodeBundle recipe_genus2_43(std::uint64_t q, std::int64_t t, std::int64_t m,
                            std::optional<std::vector<std::uint32_t>> modulus_override = std::nullopt);

/// Hyperelliptic genus-g family: optimal (g+1-g', g+1+g')-LRCs for g' >= 0,
/// with the weaker designed bound (flagged non-optimal) for g' < 0.
CodeBundle recipe_hyperell_genus_g(std::uint64_t g, std::uint64_t q, std::int64_t gprime,
                                   std::int64_t t, std::int64_t m);

/// Modified Norm-Trace family (both orientations M < N and M > N).
CodeBundle recipe_normtrace(std::uint64_t qbar, std::uint32_t s, std::uint64_t b, std::uint32_t c,
                            std::int64_t bprime, std::int64_t t, std::int64_t m);

/// Maximal superelliptic family from Hermitian curves, b | qbar + 1 proper.
CodeBundle recipe_hermitian(std::uint64_t qbar, std::uint32_t s, std::uint64_t b,
                            std::int64_t bprime, std::int64_t t, std::int64_t m);

/// q = p^e for prime p; errors when q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint64_t q);

/// Family summary for the CLI "info" subcommand: parameter ranges and counts,
/// computed without assembling a generator matrix.
struct FamilyInfo {
  std::uint64_t q = 0;
  std::int64_t n_places = 0;
  std::int64_t r = 0, delta = 0;
  std::int64_t ell_formula = 0, ell_usable = 0;
  std::string curve_desc;
};
FamilyInfo info_eff_involution(std::uint64_t q, std::uint64_t h, bool variant_r2 = false);
FamilyInfo info_eff_noninvolution(std::uint64_t q, bool variant_r2 = false);
FamilyInfo info_genus2_43(std::uint64_t q);
FamilyInfo info_hyperell_genus_g(std::uint64_t g, std::uint64_t q, std::int64_t gprime);
FamilyInfo info_normtrace(std::uint64_t qbar, std::uint32_t s, std::uint64_t b, std::uint32_t c,
                          std::int64_t bprime);
FamilyInfo info_hermitian(std::uint64_t qbar, std::uint32_t s, std::uint64_t b,
                          std::int64_t bprime);

}  // namespace lrc::recipes
