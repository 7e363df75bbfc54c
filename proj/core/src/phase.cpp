#include "pstkit/phase.hpp"

#include <cmath>
#include <sstream>

#include "pstkit/error.hpp"

namespace pst {

namespace {

void check_shapes(std::span<const std::int64_t> values, std::span<const int> signs, std::size_t reference) {
  if (values.size() != signs.size()) fail(Errc::invalid_argument, "phase system: value/sign count mismatch");
  if (values.empty() || reference >= values.size()) {
    fail(Errc::invalid_argument, "phase system: reference index out of range");
  }
  for (int s : signs) {
    if (s != 0 && s != 1) fail(Errc::invalid_argument, "phase system: signs must be 0 or 1");
  }
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ')';
  return out.str();
}

}  // namespace

PhaseSolution solve_phase_alignment(std::span<const std::int64_t> values, std::span<const int> signs,
                                    std::size_t reference) {
  check_shapes(values, signs, reference);
  PhaseSolution sol;
  sol.reference = reference;
  const std::int64_t ref_value = values[reference];
  const int ref_sign = signs[reference];
  bool any_odd_target = false;
  for (std::size_t j = 0; j < values.size(); ++j) {
    sol.deltas.push_back(values[j] - ref_value);
    sol.targets.push_back(signs[j] ^ ref_sign);
    sol.gcd = gcd64(sol.gcd, sol.deltas.back());
    any_odd_target = any_odd_target || sol.targets.back() == 1;
  }

  std::ostringstream trace;
  trace << "differences " << join(sol.deltas) << ", parity targets " << join(sol.targets);
  if (sol.gcd == 0) {
    // Every value equals the reference: the phases never separate.
    sol.feasible = !any_odd_target;
    if (sol.feasible) {
      sol.tau = Rational(0);
      trace << "; all values coincide, t = 0 already aligns";
    } else {
      sol.witness = 0;
      for (std::size_t j = 0; j < sol.targets.size(); ++j) {
        if (sol.targets[j] == 1) {
          sol.witness = j;
          break;
        }
      }
      trace << "; all values coincide, so an odd target can never be met";
    }
    sol.trace = trace.str();
    return sol;
  }

  trace << "; g = " << sol.gcd << ", tau*g must be an integer c";
  if (!any_odd_target) {
    sol.feasible = true;
    sol.tau = Rational(2, sol.gcd);
    trace << "; all targets even, c = 2 gives tau = " << sol.tau.str();
    sol.trace = trace.str();
    return sol;
  }

  std::vector<int> odd_parities;
  for (std::int64_t d : sol.deltas) odd_parities.push_back(static_cast<int>((d / sol.gcd) % 2 != 0));
  trace << "; odd c gives parities " << join(odd_parities) << ", even c gives all 0";
  for (std::size_t j = 0; j < odd_parities.size(); ++j) {
    if (odd_parities[j] != sol.targets[j]) {
      sol.witness = j;
      break;
    }
  }
  if (!sol.witness) {
    sol.feasible = true;
    sol.tau = Rational(1, sol.gcd);
    trace << "; c = 1 matches, tau = " << sol.tau.str();
  } else {
    const std::size_t w = *sol.witness;
    trace << "; index " << w << " needs parity " << sol.targets[w] << " but odd c gives " << odd_parities[w]
          << " and some target is odd, so no c works";
  }
  sol.trace = trace.str();
  return sol;
}

bool satisfies_phase_alignment(std::span<const std::int64_t> values, std::span<const int> signs,
                               const Rational& tau, std::size_t reference) {
  check_shapes(values, signs, reference);
  for (std::size_t j = 0; j < values.size(); ++j) {
    const Rational x = tau * Rational(values[j] - values[reference]);
    if (!x.is_integer()) return false;
    const int parity = static_cast<int>(x.num() % 2 != 0);
    if (parity != (signs[j] ^ signs[reference])) return false;
  }
  return true;
}

std::optional<Commensuration> commensurate(std::span<const double> values, std::size_t reference) {
  if (values.empty() || reference >= values.size()) {
    fail(Errc::invalid_argument, "commensurate: reference index out of range");
  }
  double gap = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      const double d = std::abs(values[i] - values[j]);
      if (d > 0.0 && (gap == 0.0 || d < gap)) gap = d;
    }
  }
  Commensuration c;
  c.reference = reference;
  if (gap == 0.0) {
    c.unit = 1.0;
    c.steps.assign(values.size(), 0);
    return c;
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> ratios;
  std::int64_t den_lcm = 1;
  for (double v : values) {
    const auto pq = rational_reconstruct((v - values[reference]) / gap);
    if (!pq) return std::nullopt;
    ratios.push_back(*pq);
    den_lcm = lcm64(den_lcm, pq->second);
    if (den_lcm > 1000000) return std::nullopt;
  }
  c.unit = gap / static_cast<double>(den_lcm);
  for (const auto& [p, q] : ratios) c.steps.push_back(p * (den_lcm / q));
  return c;
}

}  // namespace pst
