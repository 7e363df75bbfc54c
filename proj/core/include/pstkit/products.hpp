#pragma once

#include "pstkit/condition.hpp"
#include "pstkit/graph.hpp"
#include "pstkit/spectral.hpp"

namespace pst {

enum class ProductKind { cartesian, weak, lexicographic, generalized_lexicographic };

std::string_view to_string(ProductKind k) noexcept;

// Vertex (g, h) of every product sits at index g * |V_H| + h.

/// A_G (x) I + I (x) A_H.
Graph cartesian(const Graph& g, const Graph& h);
/// A_G (x) A_H.
Graph weak(const Graph& g, const Graph& h);
/// A_G (x) J + I (x) A_H.
Graph lexicographic(const Graph& g, const Graph& h);
/// A_G (x) A_C + I (x) A_H. C and H must have the same order; they need not
/// commute for construction.
Graph generalized_lexicographic(const Graph& g, const Graph& c, const Graph& h);

/// Index of (g, h) in a product whose second factor has order `h_order`.
inline std::size_t product_index(std::size_t g, std::size_t h, std::size_t h_order) noexcept {
  return g * h_order + h;
}

/// Largest entry of |AB - BA|.
double commutator_residual(const Matrix& a, const Matrix& b);

/// Orthonormal basis diagonalising both A_H and A_C. Column l of `vectors`
/// has eigenvalue mu[l] for H and gamma[l] for C.
struct CommonEigenbasis {
  Matrix vectors;
  Vector mu;
  Vector gamma;
};

/// Throws non-commuting-connection when [A_H, A_C] exceeds 1e-10 * n * max|entry|^2.
CommonEigenbasis common_eigenbasis(const Graph& h, const Graph& c);

/// Double spectral sum for the weak product, evaluated from the factors only.
Amplitude weak_fidelity(const EigenDecomposition& g, const EigenDecomposition& h, VertexId g1, VertexId h1,
                        VertexId g2, VertexId h2, double t);

/// Spectral sum for G_C[H] with eigenvalues lambda_k * gamma_l + mu_l.
Amplitude generalized_lexicographic_fidelity(const EigenDecomposition& g, const CommonEigenbasis& hc,
                                             VertexId g1, VertexId h1, VertexId g2, VertexId h2, double t);

/// (i) every t_G * lambda(G) is a multiple of pi, (ii) H is circulant with odd
/// integer eigenvalues. Under both, G x H transfers (g1,0) -> (g2,0) at t_G.
ConditionReport check_weak_pst_condition(const Graph& g, double t_g, const Graph& h);

/// H regular (so it commutes with K_m) and t * |V_H| * Spec(G) inside 2 pi Z.
ConditionReport check_lexico_clique_condition(const Graph& g, const Graph& h, double t);

/// H regular and t_H * |V_H| * Spec(G) inside 2 pi Z. When G is integral,
/// `integer_form` reports k_H * |V_H| * Spec(G) inside 4Z, the form the
/// condition takes when time is measured for the walk on A_H / k_H.
ConditionReport check_std_lexico_condition(const Graph& g, const Graph& h, double t_h);

}  // namespace pst
