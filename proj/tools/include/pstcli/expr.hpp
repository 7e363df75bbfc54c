#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pstkit/graph.hpp"

namespace pstcli {

/// Syntax error with the byte offset where parsing stopped.
class ExprError : public std::runtime_error {
 public:
  ExprError(std::size_t offset, const std::string& what);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A real literal: its value and the canonical text it was written as.
struct Real {
  double value = 0.0;
  std::string text;
};

/// Atom (`K:4`, `circ:15:1,2,4`, `file:g.txt`) or operator application.
struct Expr {
  std::string head;
  std::size_t offset = 0;
  std::vector<std::size_t> ints;  ///< atom parameters
  std::string path;               ///< file atoms
  std::vector<Expr> args;
  std::vector<Real> reals;                            ///< positional reals (scale)
  std::vector<std::pair<std::string, Real>> params;  ///< named reals (b=, alpha=, w=, loop=)

  bool is_atom() const noexcept;
};

Expr parse_expr(std::string_view text);

/// Real expression: numbers, pi, sqrt(...), + - * / and parentheses.
Real parse_real(std::string_view text);

/// Canonical text; parse(print(e)) prints back to the same string.
std::string print_expr(const Expr& e);

pst::Graph eval_expr(const Expr& e);
pst::Graph eval_expr(std::string_view text);

}  // namespace pstcli
