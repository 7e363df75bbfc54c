#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pstkit/rational.hpp"

namespace pst {

enum class ConditionFailure {
  none,
  irrational,   ///< a ratio that must be rational is not
  wrong_class,  ///< rational, but in the wrong parity class
  precondition  ///< structural hypothesis failed (not regular, not circulant, ...)
};

std::string_view to_string(ConditionFailure f) noexcept;

struct CheckedRatio {
  std::string name;
  double value = 0.0;
  std::optional<RationalClass> rational;
};

/// Outcome of one of the closed-form sufficiency checks.
struct ConditionReport {
  bool holds = false;
  ConditionFailure failure = ConditionFailure::none;
  /// The quantity that decided the outcome, e.g. the set t*Spec(G) in units of pi.
  std::string witness;
  std::string detail;
  std::vector<CheckedRatio> ratios;
  std::optional<ExactTime> time;
  /// Integer-form variant of the same condition, where the check defines one.
  std::optional<bool> integer_form;
};

/// True when x lies within 1e-9 * (1 + |x|) of an integer multiple of `unit`.
bool near_multiple(double x, double unit);

/// Ratio reconstructed with the default bounds; the class is empty when the
/// value is not recognised as rational.
CheckedRatio check_ratio(std::string name, double value);

}  // namespace pst
