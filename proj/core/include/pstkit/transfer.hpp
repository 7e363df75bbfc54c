#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pstkit/graph.hpp"
#include "pstkit/rational.hpp"
#include "pstkit/spectral.hpp"

namespace pst {

struct FidelitySeries {
  std::vector<double> times;
  std::vector<std::complex<double>> amplitudes;
  VertexId source;
  VertexId target;
};

/// `steps` evenly spaced points on [0, t_max], both ends included (steps >= 2).
FidelitySeries fidelity_series(const Graph& g, VertexId a, VertexId b, double t_max, std::size_t steps);

/// Header `t,re,im,abs`, one row per time, 17 significant digits.
std::string to_csv(const FidelitySeries& s);

struct ScanResult {
  double time = 0.0;
  double fidelity = 0.0;
};

/// Maximum of |F| over `steps` points on [0, t_max]. Each grid-local maximum
/// within 1e-3 of the grid peak is refined by golden-section search on its two
/// neighbouring cells; refined values within 1e-9 of the best count as ties,
/// and ties go to the earliest time. The grid is split across `threads`
/// workers (0 = hardware concurrency).
ScanResult max_fidelity_scan(const TransferKernel& kernel, double t_max, std::size_t steps, int refine_iters,
                             unsigned threads = 0);
ScanResult max_fidelity_scan(const Graph& g, VertexId a, VertexId b, double t_max, std::size_t steps,
                             int refine_iters, unsigned threads = 0);

/// Thresholds for reading a numeric maximum.
enum class NumericReading { pst, inconclusive, no };
inline constexpr double kNumericPst = 1.0 - 1e-8;
inline constexpr double kNumericNo = 1.0 - 1e-3;
NumericReading read_numeric(double max_fidelity) noexcept;
std::string_view to_string(NumericReading r) noexcept;

/// Sign of E_j|b> relative to E_j|a> for one supported eigenspace.
struct ClusterSign {
  std::size_t cluster = 0;
  double eigenvalue = 0.0;
  int sign = 0;  ///< 0: E_j a = E_j b, 1: E_j a = -E_j b
};

/// Signs over the eigenspaces that see a or b, or nullopt when some
/// eigenspace has E_j a != +-E_j b (within `tol`).
std::optional<std::vector<ClusterSign>> strong_cospectrality(const Graph& g, VertexId a, VertexId b,
                                                            double tol = 1e-8);

enum class Verdict { yes, no, unknown };
std::string_view to_string(Verdict v) noexcept;

struct PstCertificate {
  Verdict verdict = Verdict::unknown;
  std::optional<ExactTime> time;
  /// Cluster indices (descending eigenvalue order) with nonzero weight at a.
  std::vector<std::size_t> support;
  std::vector<double> support_eigenvalues;
  std::vector<int> signs;
  std::string reason;
  /// |F(t*)| when a time was found.
  std::optional<double> confirmed_fidelity;

  double time_num() const noexcept;
};

/// Exact decision for spectra whose supported eigenvalues are commensurate:
/// strong cospectrality, then the phase-alignment system on the eigenvalue
/// differences. A yes is confirmed numerically before it is returned.
PstCertificate pst_certificate(const Graph& g, VertexId a, VertexId b);

}  // namespace pst
