#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pstkit/graph.hpp"

namespace oracle {

/// e^{-itA} by Taylor series with scaling and squaring. Shares no code with
/// the eigendecomposition route.
Eigen::MatrixXcd expm_walk(const Eigen::MatrixXd& a, double t);

/// <b| e^{-itA} |a> from expm_walk.
std::complex<double> amplitude(const pst::Graph& g, std::size_t a, std::size_t b, double t);

/// Hop distances from `source` by plain BFS on the nonzero pattern (loops ignored).
std::vector<int> bfs(const Eigen::MatrixXd& a, std::size_t source);

/// count[u][j] = neighbours of u inside `cell` j (0/1 graphs).
std::vector<std::vector<int>> cell_counts(const Eigen::MatrixXd& a, const std::vector<int>& cell_of, int cells);

/// Closed forms for two small walks.
inline double weak_k2_k4_magnitude(double t) { return std::abs(std::sin(t) * std::sin(t) * std::sin(t)); }
inline double c4_antipodal_magnitude(double t) { return std::abs((std::cos(2.0 * t) - 1.0) / 2.0); }

/// Erdos-Renyi-style graph with optional random weights and loops.
struct RandomGraphOptions {
  std::size_t min_order = 2;
  std::size_t max_order = 24;
  double edge_probability = 0.4;
  bool weighted = false;
  bool loops = false;
};
pst::Graph random_graph(std::uint64_t seed, const RandomGraphOptions& opt = {});

/// The corpus used by every property test.
inline constexpr std::uint64_t kCorpusSeed = 0x5eed2011;
inline constexpr std::size_t kCorpusSize = 120;
std::vector<pst::Graph> corpus();

}  // namespace oracle
