#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pstkit/rational.hpp"

namespace pst {

/// Exact solution of a phase-alignment system.
///
/// Given integers m_j (eigenvalues divided by a common real scale r) and
/// required signs s_j in {0,1}, find the smallest t > 0 with
///
///   e^{-i t r m_j} = (-1)^{s_j} * e^{-i t r m_ref}   for every j,
///
/// i.e. tau * (m_j - m_ref) = s_j xor s_ref (mod 2) where t = tau * pi / r.
/// Writing g = gcd of the differences, tau * g must be an integer c. With c odd
/// the parities are those of (m_j - m_ref)/g; with c even they all vanish. So
/// tau = 1/g when those parities match the targets, tau = 2/g when every target
/// is 0, and there is no solution otherwise.
struct PhaseSolution {
  bool feasible = false;
  std::size_t reference = 0;
  std::vector<std::int64_t> deltas;
  std::vector<int> targets;
  std::int64_t gcd = 0;
  Rational tau;
  /// First index whose parity contradicts its target when infeasible.
  std::optional<std::size_t> witness;
  std::string trace;
};

PhaseSolution solve_phase_alignment(std::span<const std::int64_t> values, std::span<const int> signs,
                                    std::size_t reference = 0);

/// Direct check of the congruences for a candidate tau (tau * delta_j must be
/// an integer of parity target_j).
bool satisfies_phase_alignment(std::span<const std::int64_t> values, std::span<const int> signs,
                               const Rational& tau, std::size_t reference = 0);

/// values[j] - values[reference] = unit * steps[j] with integer steps.
struct Commensuration {
  double unit = 0.0;
  std::size_t reference = 0;
  std::vector<std::int64_t> steps;
};

/// Expresses the differences as integer multiples of one real unit. The unit
/// starts as the smallest nonzero gap and is divided by the lcm of the
/// denominators recovered by rational_reconstruct. nullopt when some ratio is
/// not recognised as rational (the values are incommensurate).
std::optional<Commensuration> commensurate(std::span<const double> values, std::size_t reference = 0);

}  // namespace pst
