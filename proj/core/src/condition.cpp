#include "pstkit/condition.hpp"

#include <cmath>

namespace pst {

std::string_view to_string(ConditionFailure f) noexcept {
  switch (f) {
    case ConditionFailure::none: return "none";
    case ConditionFailure::irrational: return "irrational";
    case ConditionFailure::wrong_class: return "wrong-class";
    case ConditionFailure::precondition: return "precondition";
  }
  return "?";
}

bool near_multiple(double x, double unit) {
  const double q = x / unit;
  return std::abs(x - std::round(q) * unit) <= 1e-9 * (1.0 + std::abs(x));
}

CheckedRatio check_ratio(std::string name, double value) {
  CheckedRatio r;
  r.name = std::move(name);
  r.value = value;
  if (const auto pq = rational_reconstruct(value)) r.rational = classify_rational(pq->first, pq->second);
  return r;
}

}  // namespace pst
