#include "pstkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pstkit/error.hpp"

namespace pst {

namespace {

void check_invariants(const Matrix& a, const EigenDecomposition& d) {
  const auto n = static_cast<double>(a.rows());
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1.0);
  const Matrix& v = d.eigenvectors;
  const double residual =
      (a - v * d.eigenvalues.asDiagonal() * v.transpose()).cwiseAbs().maxCoeff();
  if (residual > 1e-10 * n * scale) {
    fail(Errc::numeric_failure, "eigendecomposition residual " + std::to_string(residual) +
                                    " exceeds tolerance");
  }
  const Matrix gram = v.transpose() * v - Matrix::Identity(a.rows(), a.rows());
  const double ortho = gram.cwiseAbs().maxCoeff();
  if (ortho > 1e-10) {
    fail(Errc::numeric_failure, "eigenvectors not orthonormal (" + std::to_string(ortho) + ")");
  }
}

}  // namespace

EigenDecomposition eigendecompose(const Matrix& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    fail(Errc::invalid_argument, "eigendecompose needs a non-empty square matrix");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    fail(Errc::numeric_failure, "symmetric eigensolver did not converge");
  }
  // Eigen returns ascending order.
  EigenDecomposition d;
  d.source_dim = static_cast<std::size_t>(a.rows());
  d.eigenvalues = solver.eigenvalues().reverse();
  d.eigenvectors = solver.eigenvectors().rowwise().reverse();
  check_invariants(a, d);
  return d;
}

EigenDecomposition eigendecompose(const Graph& g) { return eigendecompose(g.adjacency()); }

Eigen::VectorXcd evolve(const EigenDecomposition& d, double t, VertexId src) {
  const auto s = static_cast<Eigen::Index>(src.index);
  if (src.index >= d.source_dim) fail(Errc::invalid_argument, "source vertex out of range");
  const Matrix& v = d.eigenvectors;
  Eigen::VectorXcd coeff(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    coeff(k) = std::polar(1.0, -t * d.eigenvalues(k)) * v(s, k);
  }
  return v.cast<std::complex<double>>() * coeff;
}

Amplitude fidelity(const EigenDecomposition& d, VertexId a, VertexId b, double t) {
  if (a.index >= d.source_dim || b.index >= d.source_dim) {
    fail(Errc::invalid_argument, "vertex out of range");
  }
  const auto ia = static_cast<Eigen::Index>(a.index);
  const auto ib = static_cast<Eigen::Index>(b.index);
  std::complex<double> sum = 0.0;
  for (Eigen::Index k = 0; k < d.eigenvalues.size(); ++k) {
    // Product written so that swapping a and b gives the same bits.
    const double c = d.eigenvectors(ia, k) * d.eigenvectors(ib, k);
    sum += std::polar(1.0, -t * d.eigenvalues(k)) * c;
  }
  return {sum.real(), sum.imag()};
}

double default_group_tolerance(const EigenDecomposition& d) {
  return 1e-8 * std::max(1.0, d.eigenvalues.cwiseAbs().maxCoeff());
}

SpectralProjectors spectral_projectors(const EigenDecomposition& d, double group_tol) {
  if (!(group_tol > 0.0)) fail(Errc::invalid_argument, "grouping tolerance must be positive");
  SpectralProjectors out;
  out.tolerance = group_tol;
  const Eigen::Index n = d.eigenvalues.size();
  const Matrix& v = d.eigenvectors;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && d.eigenvalues(end - 1) - d.eigenvalues(end) <= group_tol) ++end;
    const double diameter = d.eigenvalues(start) - d.eigenvalues(end - 1);
    if (diameter > 10.0 * group_tol) {
      fail(Errc::ambiguous_degeneracy, "eigenvalue cluster near " + std::to_string(d.eigenvalues(start)) +
                                           " spans " + std::to_string(diameter));
    }
    ProjectorGroup grp;
    grp.eigenvalue = d.eigenvalues.segment(start, end - start).mean();
    grp.projector = Matrix::Zero(n, n);
    for (Eigen::Index k = start; k < end; ++k) {
      grp.columns.push_back(static_cast<std::size_t>(k));
      grp.projector.noalias() += v.col(k) * v.col(k).transpose();
    }
    out.groups.push_back(std::move(grp));
    start = end;
  }
  return out;
}

SpectralProjectors spectral_projectors(const EigenDecomposition& d) {
  return spectral_projectors(d, default_group_tolerance(d));
}

std::vector<double> spectrum(const Graph& g) {
  const auto d = eigendecompose(g);
  return {d.eigenvalues.data(), d.eigenvalues.data() + d.eigenvalues.size()};
}

bool is_integral(const Graph& g, double tol) {
  const auto s = spectrum(g);
  return std::all_of(s.begin(), s.end(), [tol](double x) { return std::abs(x - std::round(x)) <= tol; });
}

PerronPair perron_vector(const Graph& g) {
  if (!g.is_nonnegative()) fail(Errc::invalid_argument, "Perron vector needs nonnegative weights");
  if (!g.is_connected()) fail(Errc::not_connected, "Perron vector needs a connected graph");
  const auto d = eigendecompose(g);
  if (d.eigenvalues.size() > 1 && d.eigenvalues(0) - d.eigenvalues(1) <= 1e-10) {
    fail(Errc::not_simple, "top eigenvalue is not simple");
  }
  PerronPair p;
  p.eigenvalue = d.eigenvalues(0);
  p.vector = d.eigenvectors.col(0);
  if (p.vector.sum() < 0.0) p.vector = -p.vector;
  if ((p.vector.array() <= 0.0).any()) {
    fail(Errc::numeric_failure, "top eigenvector is not entrywise positive");
  }
  return p;
}

TransferKernel::TransferKernel(const EigenDecomposition& d, VertexId a, VertexId b) {
  if (a.index >= d.source_dim || b.index >= d.source_dim) {
    fail(Errc::invalid_argument, "vertex out of range");
  }
  const auto ia = static_cast<Eigen::Index>(a.index);
  const auto ib = static_cast<Eigen::Index>(b.index);
  for (Eigen::Index k = 0; k < d.eigenvalues.size(); ++k) {
    const double c = d.eigenvectors(ia, k) * d.eigenvectors(ib, k);
    if (c == 0.0) continue;
    freq_.push_back(d.eigenvalues(k));
    coef_.push_back(c);
  }
}

Amplitude TransferKernel::at(double t) const noexcept {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < freq_.size(); ++k) {
    const double phase = t * freq_[k];
    re += coef_[k] * std::cos(phase);
    im -= coef_[k] * std::sin(phase);
  }
  return {re, im};
}

}  // namespace pst
