#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "pstkit/graph.hpp"

namespace pst {

/// Eigenvalues sorted descending; column k of `eigenvectors` belongs to
/// eigenvalue k. Reconstruction and orthonormality are checked on creation.
struct EigenDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;
  std::size_t source_dim = 0;
};

EigenDecomposition eigendecompose(const Graph& g);
EigenDecomposition eigendecompose(const Matrix& symmetric);

/// Complex amplitude <b| e^{-itA} |a>.
struct Amplitude {
  double re = 0.0;
  double im = 0.0;

  std::complex<double> value() const noexcept { return {re, im}; }
  double magnitude() const noexcept { return std::abs(value()); }
};

/// e^{-itA} |src>.
Eigen::VectorXcd evolve(const EigenDecomposition& d, double t, VertexId src);
Amplitude fidelity(const EigenDecomposition& d, VertexId a, VertexId b, double t);

/// One eigenspace: the member columns of the decomposition and E_j = sum u u^T.
struct ProjectorGroup {
  double eigenvalue = 0.0;
  std::vector<std::size_t> columns;
  Matrix projector;

  std::size_t rank() const noexcept { return columns.size(); }
};

struct SpectralProjectors {
  std::vector<ProjectorGroup> groups;
  double tolerance = 0.0;
};

/// 1e-8 * max(1, |lambda|_max).
double default_group_tolerance(const EigenDecomposition& d);

/// Single-linkage clustering of eigenvalues at `group_tol`; a cluster wider
/// than 10 * group_tol raises ambiguous-degeneracy.
SpectralProjectors spectral_projectors(const EigenDecomposition& d, double group_tol);
SpectralProjectors spectral_projectors(const EigenDecomposition& d);

/// Descending.
std::vector<double> spectrum(const Graph& g);
bool is_integral(const Graph& g, double tol = 1e-8);

struct PerronPair {
  double eigenvalue = 0.0;
  Vector vector;
};

/// Top eigenpair of a connected nonnegative graph with an entrywise positive,
/// unit-norm eigenvector.
PerronPair perron_vector(const Graph& g);

/// Precomputed sum_k c_k e^{-it lambda_k} for a fixed vertex pair; cheap to
/// evaluate at many times. Terms whose coefficient is exactly zero are dropped.
class TransferKernel {
 public:
  TransferKernel(const EigenDecomposition& d, VertexId a, VertexId b);

  Amplitude at(double t) const noexcept;

  const std::vector<double>& frequencies() const noexcept { return freq_; }
  const std::vector<double>& coefficients() const noexcept { return coef_; }

 private:
  std::vector<double> freq_;
  std::vector<double> coef_;
};

}  // namespace pst
