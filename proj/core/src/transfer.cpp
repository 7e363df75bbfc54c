#include "pstkit/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "pstkit/error.hpp"
#include "pstkit/graph_io.hpp"
#include "pstkit/phase.hpp"

namespace pst {

namespace {

constexpr double kTieBand = 1e-9;
constexpr double kCandidateBand = 1e-3;
constexpr std::size_t kMaxCandidates = 256;

double grid_time(double t_max, std::size_t steps, std::size_t i) {
  return t_max * static_cast<double>(i) / static_cast<double>(steps - 1);
}

void check_grid(double t_max, std::size_t steps) {
  if (steps < 2) fail(Errc::invalid_argument, "a time grid needs at least 2 points");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) fail(Errc::invalid_argument, "t_max must be positive");
}

// Golden-section search for the maximum of |F| on [lo, hi].
ScanResult golden_max(const TransferKernel& k, double lo, double hi, int iters) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = k.at(x1).magnitude();
  double f2 = k.at(x2).magnitude();
  for (int i = 0; i < iters; ++i) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = k.at(x1).magnitude();
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = k.at(x2).magnitude();
    }
  }
  return f1 >= f2 ? ScanResult{x1, f1} : ScanResult{x2, f2};
}

// d|F|^2/dt.
double slope(const TransferKernel& k, double t) {
  double re = 0.0, im = 0.0, dre = 0.0, dim = 0.0;
  const auto& f = k.frequencies();
  const auto& c = k.coefficients();
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double cs = std::cos(t * f[j]);
    const double sn = std::sin(t * f[j]);
    re += c[j] * cs;
    im -= c[j] * sn;
    dre -= c[j] * f[j] * sn;
    dim -= c[j] * f[j] * cs;
  }
  return 2.0 * (re * dre + im * dim);
}

// |F| is flat at a maximum, so golden section stalls near sqrt(eps) in t.
// Bisecting the sign change of the slope pins the time down to rounding.
ScanResult polish(const TransferKernel& k, double lo, double hi, ScanResult r) {
  if (!(slope(k, lo) > 0.0 && slope(k, hi) < 0.0)) return r;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (slope(k, mid) > 0.0 ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);
  const double f = k.at(t).magnitude();
  return f >= r.fidelity - 1e-15 ? ScanResult{t, f} : r;
}

}  // namespace

FidelitySeries fidelity_series(const Graph& g, VertexId a, VertexId b, double t_max, std::size_t steps) {
  check_grid(t_max, steps);
  const auto d = eigendecompose(g);
  const TransferKernel kernel(d, g.vertex(a.index), g.vertex(b.index));
  FidelitySeries s;
  s.source = a;
  s.target = b;
  s.times.reserve(steps);
  s.amplitudes.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = grid_time(t_max, steps, i);
    s.times.push_back(t);
    s.amplitudes.push_back(kernel.at(t).value());
  }
  return s;
}

std::string to_csv(const FidelitySeries& s) {
  std::string out = "t,re,im,abs\n";
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    const auto z = s.amplitudes[i];
    out += format_real(s.times[i]) + ',' + format_real(z.real()) + ',' + format_real(z.imag()) + ',' +
           format_real(std::abs(z)) + '\n';
  }
  return out;
}

ScanResult max_fidelity_scan(const TransferKernel& kernel, double t_max, std::size_t steps, int refine_iters,
                             unsigned threads) {
  check_grid(t_max, steps);
  if (refine_iters < 0) fail(Errc::invalid_argument, "refine_iters must be non-negative");
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, steps / 4096)));

  std::vector<double> values(steps);
  auto scan_chunk = [&](unsigned w) {
    const std::size_t lo = steps * w / workers;
    const std::size_t hi = steps * (w + 1) / workers;
    for (std::size_t i = lo; i < hi; ++i) values[i] = kernel.at(grid_time(t_max, steps, i)).magnitude();
  };
  if (workers == 1) {
    scan_chunk(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan_chunk, w);
  }
  const auto peak_it = std::max_element(values.begin(), values.end());
  const auto peak_index = static_cast<std::size_t>(peak_it - values.begin());
  if (refine_iters == 0) return {grid_time(t_max, steps, peak_index), *peak_it};

  // Refine every grid-local maximum that comes close to the peak; a coarse grid
  // can rank two exact revivals in the wrong order.
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < steps && candidates.size() < kMaxCandidates; ++i) {
    const bool left_ok = i == 0 || values[i] >= values[i - 1];
    const bool right_ok = i + 1 == steps || values[i] >= values[i + 1];
    if (left_ok && right_ok && values[i] >= *peak_it - kCandidateBand) candidates.push_back(i);
  }
  if (std::find(candidates.begin(), candidates.end(), peak_index) == candidates.end()) {
    candidates.push_back(peak_index);
  }
  std::vector<ScanResult> refined;
  double top = -1.0;
  for (std::size_t i : candidates) {
    const double lo = grid_time(t_max, steps, i == 0 ? 0 : i - 1);
    const double hi = grid_time(t_max, steps, std::min(steps - 1, i + 1));
    ScanResult r = polish(kernel, lo, hi, golden_max(kernel, lo, hi, refine_iters));
    if (values[i] > r.fidelity) r = {grid_time(t_max, steps, i), values[i]};
    top = std::max(top, r.fidelity);
    refined.push_back(r);
  }
  ScanResult result = refined.front();
  result.time = std::numeric_limits<double>::infinity();
  for (const auto& r : refined) {
    if (r.fidelity >= top - kTieBand && r.time < result.time) result = r;
  }
  return result;
}

ScanResult max_fidelity_scan(const Graph& g, VertexId a, VertexId b, double t_max, std::size_t steps,
                             int refine_iters, unsigned threads) {
  const auto d = eigendecompose(g);
  return max_fidelity_scan(TransferKernel(d, g.vertex(a.index), g.vertex(b.index)), t_max, steps, refine_iters,
                           threads);
}

NumericReading read_numeric(double max_fidelity) noexcept {
  if (max_fidelity >= kNumericPst) return NumericReading::pst;
  if (max_fidelity >= kNumericNo) return NumericReading::inconclusive;
  return NumericReading::no;
}

std::string_view to_string(NumericReading r) noexcept {
  switch (r) {
    case NumericReading::pst: return "numeric PST";
    case NumericReading::inconclusive: return "inconclusive (possible pretty-good transfer)";
    case NumericReading::no: return "no";
  }
  return "?";
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

double PstCertificate::time_num() const noexcept {
  return time ? time->value() : std::numeric_limits<double>::quiet_NaN();
}

namespace {

struct CospectralityScan {
  std::vector<ClusterSign> signs;
  std::optional<std::size_t> failed_cluster;
  double failed_eigenvalue = 0.0;
};

CospectralityScan scan_cospectrality(const EigenDecomposition& d, VertexId a, VertexId b, double tol) {
  const auto proj = spectral_projectors(d);
  CospectralityScan out;
  const auto ia = static_cast<Eigen::Index>(a.index);
  const auto ib = static_cast<Eigen::Index>(b.index);
  for (std::size_t j = 0; j < proj.groups.size(); ++j) {
    const auto& grp = proj.groups[j];
    const Vector ea = grp.projector.col(ia);
    const Vector eb = grp.projector.col(ib);
    if (ea.norm() <= tol && eb.norm() <= tol) continue;
    if ((ea - eb).norm() <= tol) {
      out.signs.push_back({j, grp.eigenvalue, 0});
    } else if ((ea + eb).norm() <= tol) {
      out.signs.push_back({j, grp.eigenvalue, 1});
    } else {
      out.failed_cluster = j;
      out.failed_eigenvalue = grp.eigenvalue;
      return out;
    }
  }
  return out;
}

}  // namespace

std::optional<std::vector<ClusterSign>> strong_cospectrality(const Graph& g, VertexId a, VertexId b, double tol) {
  g.vertex(a.index);
  g.vertex(b.index);
  auto scan = scan_cospectrality(eigendecompose(g), a, b, tol);
  if (scan.failed_cluster) return std::nullopt;
  return std::move(scan.signs);
}

PstCertificate pst_certificate(const Graph& g, VertexId a, VertexId b) {
  g.vertex(a.index);
  g.vertex(b.index);
  if (a == b) fail(Errc::invalid_argument, "certificate needs two distinct vertices");
  PstCertificate cert;
  const auto d = eigendecompose(g);
  const auto scan = scan_cospectrality(d, a, b, 1e-8);
  if (scan.failed_cluster) {
    cert.verdict = Verdict::no;
    cert.reason = "not strongly cospectral: E_j a != +-E_j b for the eigenspace at " +
                  format_real(scan.failed_eigenvalue);
    return cert;
  }
  std::vector<double> eig;
  for (const auto& cs : scan.signs) {
    cert.support.push_back(cs.cluster);
    cert.support_eigenvalues.push_back(cs.eigenvalue);
    cert.signs.push_back(cs.sign);
    eig.push_back(cs.eigenvalue);
  }

  const auto comm = commensurate(eig);
  if (!comm) {
    cert.verdict = Verdict::no;
    cert.reason =
        "supported eigenvalues are incommensurate (some difference ratio is irrational), so no t > 0 makes "
        "every t*(lambda_j - lambda_0) a multiple of pi";
    return cert;
  }
  const auto sol = solve_phase_alignment(comm->steps, cert.signs);
  std::ostringstream reason;
  reason << "eigenvalues = " << format_real(eig.front()) << " + " << format_real(comm->unit) << " * steps; "
         << sol.trace;
  if (!sol.feasible) {
    cert.verdict = Verdict::no;
    cert.reason = "parity obstruction: " + reason.str();
    return cert;
  }
  cert.time = exact_time(sol.tau, comm->unit);
  const double t = sol.tau.to_double() * std::numbers::pi / comm->unit;
  const double f = fidelity(d, a, b, t).magnitude();
  cert.confirmed_fidelity = f;
  if (f >= kNumericPst) {
    cert.verdict = Verdict::yes;
    reason << "; |F(t*)| = " << format_real(f);
  } else {
    cert.verdict = Verdict::unknown;
    cert.time.reset();
    reason << "; numeric check failed at the solved time, |F| = " << format_real(f);
  }
  cert.reason = reason.str();
  return cert;
}

}  // namespace pst
