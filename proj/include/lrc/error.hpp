#pragma once

#include <stdexcept>
#include <string>

namespace lrc {

enum class errc {
  // gf
  non_prime_characteristic,
  reducible_modulus,
  field_too_large,
  division_by_zero,
  non_dividing_degree,
  order_not_dividing,
  even_characteristic,
  // linalg
  dimension_mismatch,
  budget_exceeded,
  // ecurve
  singular_curve,
  point_not_on_curve,
  no_such_subgroup,
  not_a_subgroup,
  selection_failed,
  // scurve
  invalid_curve,
  not_hyperelliptic,
  kernel_not_closed,
  translation_not_automorphism,
  wrong_root_count,
  not_genus2,
  image_off_curve,
  // funcspace
  unsupported_place,
  order_too_large,
  cap_exceeded,
  ladder_gap_mismatch,
  no_invariant_found,
  // recipes
  parameter_out_of_range,
  pole_at_evaluation_place,
  rank_deficient,
  involution_in_group,
  not_maximal,
  orientation_degenerate,
  even_s_without_twist,
  // verify
  certificate_failed,
  // repairsim
  length_mismatch,
  // cli / artifact
  bad_artifact,
  io_error,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
 public:
  error(errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::non_prime_characteristic: return "NonPrimeCharacteristic";
    case errc::reducible_modulus: return "ReducibleModulus";
    case errc::field_too_large: return "FieldTooLarge";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::non_dividing_degree: return "NonDividingDegree";
    case errc::order_not_dividing: return "OrderNotDividing";
    case errc::even_characteristic: return "EvenCharacteristic";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::singular_curve: return "SingularCurve";
    case errc::point_not_on_curve: return "PointNotOnCurve";
    case errc::no_such_subgroup: return "NoSuchSubgroup";
    case errc::not_a_subgroup: return "NotASubgroup";
    case errc::selection_failed: return "SelectionFailed";
    case errc::invalid_curve: return "InvalidCurve";
    case errc::not_hyperelliptic: return "NotHyperelliptic";
    case errc::kernel_not_closed: return "KernelNotClosed";
    case errc::translation_not_automorphism: return "TranslationNotAutomorphism";
    case errc::wrong_root_count: return "WrongRootCount";
    case errc::not_genus2: return "NotGenus2";
    case errc::image_off_curve: return "ImageOffCurve";
    case errc::unsupported_place: return "UnsupportedPlace";
    case errc::order_too_large: return "OrderTooLarge";
    case errc::cap_exceeded: return "CapExceeded";
    case errc::ladder_gap_mismatch: return "LadderGapMismatch";
    case errc::no_invariant_found: return "NoInvariantFound";
    case errc::parameter_out_of_range: return "ParameterOutOfRange";
    case errc::pole_at_evaluation_place: return "PoleAtEvaluationPlace";
    case errc::rank_deficient: return "RankDeficient";
    case errc::involution_in_group: return "InvolutionInGroup";
    case errc::not_maximal: return "NotMaximal";
    case errc::orientation_degenerate: return "OrientationDegenerate";
    case errc::even_s_without_twist: return "EvenSWithoutTwist";
    case errc::certificate_failed: return "CertificateFailed";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::bad_artifact: return "BadArtifact";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

}  // namespace lrc
