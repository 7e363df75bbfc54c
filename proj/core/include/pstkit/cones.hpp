#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pstkit/condition.hpp"
#include "pstkit/graph.hpp"
#include "pstkit/phase.hpp"
#include "pstkit/spectral.hpp"

namespace pst {

// ---- double cones ---------------------------------------------------------

struct DoubleConeSpec {
  Graph base;
  int b = 0;           ///< 0: apexes not adjacent, 1: apexes joined by a unit edge
  double alpha = 1.0;  ///< cone edge (apex, u) has weight alpha * x0[u]
};

/// Apexes at 0 and 1, base vertices after them.
Graph double_cone(const DoubleConeSpec& spec);

/// Closed-form apex-to-apex amplitude for a base with top eigenvalue lambda0:
///
///   1/2 { e^{-it l+} [cos(t D) + i (l-/D) sin(t D)] - e^{itb} },
///
/// l+- = (lambda0 +- b)/2, D = sqrt(l-^2 + 2 alpha^2). The last term is the
/// antisymmetric apex mode with eigenvalue -b; it reduces to -1 when b = 0.
Amplitude double_cone_fidelity(double lambda0, int b, double alpha, double t);

/// PST iff (l+ + b)/D lies in Q01 or Q10, at t = q pi / D for the reduced p/q.
/// With b = 0 the ratio is l+/D.
ConditionReport double_cone_pst_condition(double lambda0, int b, double alpha);

// ---- glued double cones ---------------------------------------------------

/// K1 + G1 o G2 + K1 with the copies of G joined through `connection`.
/// Layout: apex A = 0, G1 on 1..n, G2 on n+1..2n, apex B = 2n+1.
Graph glued_double_cone(const Graph& g1, const Graph& g2, const Graph& connection);

/// (n, k, gamma) = (15 * 4^(a-2), 3 * 2^(a-1), 4 * 2^(a-1)).
struct GluedFamilyMember {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t gamma = 0;
};
GluedFamilyMember glued_cone_family(int a);

/// Graph for family member a using G = Circ(n, {1..k/2}) and
/// C = Circ(n, {1..gamma/2}).
Graph glued_cone_family_graph(int a);

/// Exact: k+- = (k +- gamma)/2, D+-^2 = k+-^2 + n. Holds when D+/D- is in
/// Q01 or Q10 and gamma/D+ or gamma/D- is in Q01. The reported time is the
/// smallest t solving the phase equations behind the condition.
ConditionReport glued_cone_pst_condition(std::int64_t n, std::int64_t k, std::int64_t gamma);

/// Eigenvalues alpha+- = k+ +- D+, beta+- = k- +- D- and the apex weights
/// 1/L+-^2, 1/M+-^2 that enter the apex-to-apex amplitude.
struct GluedConeEigendata {
  double alpha_plus = 0, alpha_minus = 0, beta_plus = 0, beta_minus = 0;
  double w_alpha_plus = 0, w_alpha_minus = 0, w_beta_plus = 0, w_beta_minus = 0;
};
GluedConeEigendata glued_cone_eigendata(double n, double k, double gamma);
Amplitude glued_cone_fidelity(double n, double k, double gamma, double t);

// ---- cylindrical cones ----------------------------------------------------

/// K1 + G1 + H + G2 + K1 with consecutive layers fully joined.
/// Layout: A = 0, G1, H, G2, B = last.
Graph cylindrical_cone(const Graph& g1, const Graph& middle, const Graph& g2);

/// Machine-checkable argument that K1 + G1 + K̄m + G2 + K1 (G1, G2 k-regular
/// on n vertices) has no PST. Antipodal PST needs
///   t (k/2 +- D) in (2Z+1) pi  and  t (k/2 +- G) in 2Z pi,
/// D^2 = k^2/4 + n, G^2 = k^2/4 + (2m+1) n.
struct CylindricalProof {
  std::int64_t n = 0, k = 0, m = 0;
  std::int64_t disc_delta = 0;  ///< k^2 + 4n = (2D)^2 when D is rational
  std::int64_t disc_gamma = 0;  ///< k^2 + 4(2m+1)n = (2G)^2 when G is rational
  bool delta_rational = false;
  bool gamma_rational = false;
  /// The five walk eigenvalues (lambda+-, mu+-, 0) scaled to integers: by 2
  /// when D and G are rational, by 1/sqrt(n) in the commensurate k = 0 case.
  /// Empty when they are incommensurate.
  std::vector<std::int64_t> scaled_eigenvalues;
  std::optional<PhaseSolution> phase;
  /// Every route ended in a contradiction (the expected outcome).
  bool contradiction = false;
  std::vector<std::string> steps;
};

CylindricalProof cylindrical_no_pst_check(std::int64_t n, std::int64_t k, std::int64_t m);

// ---- weighted P4 ----------------------------------------------------------

/// Path 0-1-2-3 with edge weights (1, gamma, 1) and loops kappa on 1 and 2.
Graph weighted_p4(double gamma, double kappa);

/// D+- = sqrt((kappa +- gamma)^2 + 4) / 2.
///   kappa != 0: D+/D- in Q01 u Q10 and {gamma/D+, gamma/D-} meets Q01 u Q11.
///   kappa == 0: {gamma/D+, gamma/D-} inside Q11, or inside Q10.
ConditionReport p4_pst_condition(double gamma, double kappa);

}  // namespace pst
