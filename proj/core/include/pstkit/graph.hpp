#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace pst {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Index of a vertex inside a particular Graph.
struct VertexId {
  std::size_t index = 0;

  constexpr VertexId() = default;
  constexpr explicit VertexId(std::size_t i) : index(i) {}

  friend constexpr bool operator==(VertexId, VertexId) = default;
  friend constexpr auto operator<=>(VertexId, VertexId) = default;
};

/// Weighted undirected graph stored as a dense symmetric adjacency matrix.
///
/// Diagonal entries are self-loop weights. The matrix must be exactly
/// symmetric; construction rejects anything else. Graphs are immutable once
/// built, so they can be shared freely between threads.
class Graph {
 public:
  explicit Graph(Matrix adjacency, std::vector<std::string> labels = {});

  std::size_t order() const noexcept { return static_cast<std::size_t>(adj_.rows()); }
  const Matrix& adjacency() const noexcept { return adj_; }
  double weight(std::size_t u, std::size_t v) const { return adj_(check(u), check(v)); }

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Label of `v`, or its decimal index when the graph is unlabeled.
  std::string label(std::size_t v) const;
  std::optional<VertexId> find_label(std::string_view label) const;

  /// Checked conversion; throws invalid-argument when `index >= order()`.
  VertexId vertex(std::size_t index) const { return VertexId(check(index)); }

  bool has_loops() const noexcept;
  /// True when every entry is 0 or 1.
  bool is_unweighted() const noexcept;
  bool is_nonnegative() const noexcept;
  bool is_connected() const;
  double max_abs_weight() const noexcept;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::size_t check(std::size_t v) const;

  Matrix adj_;
  std::vector<std::string> labels_;
};

// Constructors. All of them return exactly symmetric matrices.

Graph make_complete(std::size_t n);
Graph make_empty(std::size_t n);
/// Path on `loops.size()` vertices; `weights[i]` joins vertex i and i+1.
Graph make_path(std::span<const double> weights, std::span<const double> loops);
/// Unweighted, loop-free path P_n.
Graph make_path(std::size_t n);
Graph make_cycle(std::size_t n);
/// Circ(n, S): j ~ k iff (k - j) mod n lies in S or in n - S. 0 is rejected.
Graph make_circulant(std::size_t n, std::span<const std::size_t> connection_set);
/// Q_d with binary-string labels; vertex i is labelled by i written MSB first.
Graph make_hypercube(std::size_t d);
/// Identity connection (one loop of weight 1 per vertex).
Graph make_identity(std::size_t n);
/// All-ones matrix J_n (K_n plus unit loops).
Graph make_all_ones(std::size_t n);

Graph complement(const Graph& g);
/// Disjoint union of g and h plus every edge between them; g's vertices first.
Graph join(const Graph& g, const Graph& h);
/// c * A_G with labels preserved.
Graph scaled(const Graph& g, double factor);

/// Common row sum when all rows agree (within a relative 1e-12), else nullopt.
std::optional<double> is_regular(const Graph& g);
/// True when A[j][k] depends only on (k - j) mod n, compared exactly.
bool is_circulant(const Graph& g);

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Hop counts along nonzero off-diagonal entries; kUnreachable between components.
std::vector<std::vector<std::size_t>> distance_matrix(const Graph& g);
std::vector<std::size_t> distances_from(const Graph& g, VertexId source);

}  // namespace pst
