#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pstkit/graph.hpp"

namespace pst {

using Cells = std::vector<std::vector<std::size_t>>;

/// Cells plus d[j][k]: the (constant) total edge weight from any vertex of
/// cell j into cell k. On 0/1 graphs that is the neighbour count.
struct EquitablePartition {
  Cells cells;
  Matrix degrees;
  std::vector<std::size_t> cell_of;
};

/// Degree matrix when `cells` is equitable, nullopt otherwise. Throws
/// invalid-argument when the cells overlap, miss a vertex or are empty.
/// Weighted sums are compared at 1e-10 * (1 + max|w|).
std::optional<EquitablePartition> is_equitable(const Graph& g, const Cells& cells);

/// V_j = vertices at distance j from a, if equitable. With `require_antipode`
/// the last cell must be a single vertex. Throws not-connected.
std::optional<EquitablePartition> distance_partition(const Graph& g, VertexId a, bool require_antipode);

/// Coarsest equitable partition refining `initial`, by repeated splitting on
/// weight-into-cell signatures. Cells are ordered by their smallest vertex.
EquitablePartition coarsest_equitable_refinement(const Graph& g, const Cells& initial);

struct QuotientGraph {
  Graph graph;
  std::vector<std::size_t> cell_map;
};

/// B[j][k] = sqrt(d[j][k] d[k][j]) (carrying the common sign for negative
/// weights), B[j][j] = d[j][j]. Throws non-equitable.
QuotientGraph quotient_symmetrized(const Graph& g, const Cells& cells);
QuotientGraph quotient_symmetrized(const Graph& g, const EquitablePartition& p);

/// n x m matrix with column j equal to the normalised indicator of cell j.
Matrix normalized_characteristic_matrix(const EquitablePartition& p, std::size_t n);

struct CollapseReport {
  EquitablePartition partition;
  QuotientGraph quotient;
  double max_deviation = 0.0;
};

/// max over `times` of | |F_G(a,b,t)| - |F_quotient(0,last,t)| | for the
/// distance partition from a. Throws partition-failure unless that partition
/// is equitable and ends in the singleton {b}.
CollapseReport collapse_fidelity_check(const Graph& g, VertexId a, VertexId b, std::span<const double> times);

/// Same comparison for caller-chosen cells in which a and b are singletons.
CollapseReport collapse_fidelity_check(const Graph& g, const Cells& cells, VertexId a, VertexId b,
                                       std::span<const double> times);

/// A 4-vertex weighted path written as scale * P4(middle; loop).
struct ScaledP4 {
  double scale = 0.0;
  double middle = 0.0;
  double loop = 0.0;
};

/// Recognises scale * P4(middle; loop), normalising by the outer edge weight.
/// The walk on it at time t equals the walk on P4(middle; loop) at scale * t.
std::optional<ScaledP4> as_scaled_p4(const Graph& q, double tol = 1e-12);

/// "cell <j>: v v v" lines.
std::string format_partition(const Cells& cells);

}  // namespace pst
