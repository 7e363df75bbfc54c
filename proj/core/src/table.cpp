#include "pstkit/table.hpp"

#include <cmath>
#include <numbers>

#include "pstkit/cones.hpp"
#include "pstkit/graph_io.hpp"
#include "pstkit/products.hpp"

namespace pst {

namespace {

constexpr double kScanTmax = 200.0;
constexpr std::size_t kScanSteps = 200001;
constexpr int kRefine = 60;

double magnitude_at(const Graph& g, std::size_t a, std::size_t b, double t) {
  return fidelity(eigendecompose(g), VertexId{a}, VertexId{b}, t).magnitude();
}

Verdict from_numeric(double f) {
  switch (read_numeric(f)) {
    case NumericReading::pst: return Verdict::yes;
    case NumericReading::no: return Verdict::no;
    case NumericReading::inconclusive: return Verdict::unknown;
  }
  return Verdict::unknown;
}

TableRow certificate_row(std::string family, std::string instance, Verdict expected, const Graph& g,
                         std::size_t a, std::size_t b) {
  const auto cert = pst_certificate(g, VertexId{a}, VertexId{b});
  TableRow row{std::move(family), std::move(instance), expected, cert.verdict, "certificate", "", 0.0, cert.reason};
  if (cert.time) {
    row.time = cert.time->str();
    row.fidelity = cert.confirmed_fidelity.value_or(0.0);
  }
  return row;
}

TableRow scan_row(std::string family, std::string instance, Verdict expected, const Graph& g, std::size_t a,
                  std::size_t b, std::string note) {
  const auto s = max_fidelity_scan(g, VertexId{a}, VertexId{b}, kScanTmax, kScanSteps, kRefine);
  TableRow row{std::move(family), std::move(instance), expected, from_numeric(s.fidelity), "scan [0,200]", "",
               s.fidelity, std::move(note)};
  row.note += (row.note.empty() ? "" : "; ") + std::string("max at t = ") + format_real(s.time);
  return row;
}

TableRow double_cone_row() {
  const Graph base = scaled(make_complete(3), std::numbers::sqrt2);
  const double alpha = std::sqrt(3.0);
  const auto rep = double_cone_pst_condition(2.0 * std::numbers::sqrt2, 0, alpha);
  TableRow row{"{K2bar,K2}+G (weighted)", "K2bar + sqrt2*K3, alpha = sqrt3", Verdict::yes,
               rep.holds ? Verdict::yes : Verdict::no, "double cone condition", "", 0.0, rep.witness};
  if (rep.time) {
    row.time = rep.time->str();
    row.fidelity = magnitude_at(double_cone({base, 0, alpha}), 0, 1, rep.time->value());
    if (row.fidelity < kNumericPst) row.observed = Verdict::unknown;
  }
  return row;
}

TableRow glued_row() {
  const std::size_t g_set[] = {1, 2, 4};
  const std::size_t c_set[] = {1, 2, 4, 7};
  const Graph g = make_circulant(15, g_set);
  const Graph cone = glued_double_cone(g, g, make_circulant(15, c_set));
  const auto rep = glued_cone_pst_condition(15, 6, 8);
  TableRow row{"K1+G o G+K1", "(n,k,gamma) = (15,6,8), Circ(15,{1,2,4}), C = Circ(15,{1,2,4,7})", Verdict::yes,
               rep.holds ? Verdict::yes : Verdict::no, "glued cone condition", "", 0.0, rep.witness};
  if (rep.time) {
    row.time = rep.time->str();
    row.fidelity = magnitude_at(cone, 0, cone.order() - 1, rep.time->value());
    if (row.fidelity < kNumericPst) row.observed = Verdict::unknown;
  }
  return row;
}

TableRow half_join_row() {
  const Graph k3 = make_complete(3);
  const Graph cone = glued_double_cone(k3, k3, make_all_ones(3));
  return scan_row("K1+G+G+K1", "K1+K3+K3+K1", Verdict::no, cone, 0, cone.order() - 1, "");
}

TableRow cylindrical_row() {
  const Graph k3 = make_complete(3);
  const Graph cone = cylindrical_cone(k3, make_empty(2), k3);
  const auto proof = cylindrical_no_pst_check(3, 2, 2);
  auto row = scan_row("K1+G+Kbar_m+G+K1", "(n,k,m) = (3,2,2)", Verdict::no, cone, 0, cone.order() - 1,
                      proof.contradiction ? "parity contradiction" : "parity argument inconclusive");
  return row;
}

}  // namespace

std::vector<TableRow> pst_table() {
  std::vector<TableRow> rows;
  rows.push_back(double_cone_row());
  rows.push_back(certificate_row("P_n, n >= 4", "P5 ends", Verdict::no, make_path(5), 0, 4));
  rows.push_back(glued_row());
  rows.push_back(half_join_row());
  rows.push_back(cylindrical_row());
  rows.push_back(certificate_row("Q_n", "Q4 antipodes", Verdict::yes, make_hypercube(4), 0, 15));
  rows.push_back(certificate_row("Q_2n x ODD", "Q2 x K4, (0,0) -> (3,0)", Verdict::yes,
                                 weak(make_hypercube(2), make_complete(4)), 0, 12));
  rows.push_back(certificate_row("Integral[Q_n]", "K2[Q2], (0,0) -> (0,3)", Verdict::yes,
                                 lexicographic(make_complete(2), make_hypercube(2)), 0, 3));
  return rows;
}

}  // namespace pst
