#include "pstcli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pstcli/expr.hpp"
#include "pstkit/cones.hpp"
#include "pstkit/error.hpp"
#include "pstkit/graph_io.hpp"
#include "pstkit/partitions.hpp"
#include "pstkit/products.hpp"
#include "pstkit/table.hpp"
#include "pstkit/transfer.hpp"

namespace pstcli {

namespace {

using nlohmann::json;

// Thrown for bad flag values that CLI11 cannot see (vertex names, reals).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string expr;
  std::string from;
  std::string to;
  std::string tmax = "2*pi";
  std::size_t steps = 1000;
  std::string out;
  std::string format;
  bool pi_units = false;
};

double real_flag(const std::string& text, const std::string& flag) {
  try {
    return parse_real(text).value;
  } catch (const ExprError& e) {
    throw UsageError("--" + flag + ": " + e.what());
  }
}

double time_flag(const std::string& text, const std::string& flag, bool pi_units) {
  const double t = real_flag(text, flag);
  return pi_units ? t * std::numbers::pi : t;
}

pst::Graph graph_flag(const std::string& text, const std::string& flag) {
  if (text.empty()) throw UsageError("--" + flag + " is required");
  Expr e;
  try {
    e = parse_expr(text);
  } catch (const ExprError& err) {
    throw UsageError("--" + flag + ": " + err.what());
  }
  return eval_expr(e);
}

pst::VertexId vertex_flag(const pst::Graph& g, const std::string& text, const std::string& flag) {
  if (text.empty()) throw UsageError("--" + flag + " is required");
  if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    std::size_t idx = 0;
    std::istringstream in(text);
    if ((in >> idx) && idx < g.order()) return pst::VertexId{idx};
  }
  if (const auto v = g.find_label(text)) return *v;
  throw UsageError("--" + flag + ": no vertex '" + text + "' in a graph of order " + std::to_string(g.order()));
}

json exact_time_json(const std::optional<pst::ExactTime>& t) {
  if (!t) return nullptr;
  return {{"a", t->a}, {"b", t->b}, {"scale", t->scale}, {"radicand", t->radicand}, {"text", t->str()}};
}

json time_num_json(const std::optional<pst::ExactTime>& t) {
  if (!t) return nullptr;
  return t->value();
}

json report_json(const pst::ConditionReport& r) {
  json ratios = json::array();
  for (const auto& c : r.ratios) {
    json j = {{"name", c.name}, {"value", c.value}};
    if (c.rational) {
      j["p"] = c.rational->p;
      j["q"] = c.rational->q;
      j["class"] = std::string(pst::to_string(c.rational->tag));
    } else {
      j["class"] = nullptr;
    }
    ratios.push_back(std::move(j));
  }
  json out = {{"holds", r.holds},
              {"failure", std::string(pst::to_string(r.failure))},
              {"witness", r.witness},
              {"detail", r.detail},
              {"ratios", ratios},
              {"time_num", time_num_json(r.time)},
              {"time_exact", exact_time_json(r.time)}};
  out["integer_form"] = r.integer_form ? json(*r.integer_form) : json(nullptr);
  return out;
}

json certificate_json(const pst::PstCertificate& c) {
  return {{"verdict", std::string(pst::to_string(c.verdict))},
          {"time_num", time_num_json(c.time)},
          {"time_exact", exact_time_json(c.time)},
          {"support", c.support},
          {"support_eigenvalues", c.support_eigenvalues},
          {"signs", c.signs},
          {"reason", c.reason},
          {"fidelity_at_time", c.confirmed_fidelity ? json(*c.confirmed_fidelity) : json(nullptr)}};
}

json matrix_json(const pst::Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Writes next to the target and renames, so readers never see a partial file.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::random_device rd;
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) pst::fail(pst::Errc::io_error, "cannot write " + tmp.string());
    f << text;
    f.close();
    if (!f) pst::fail(pst::Errc::io_error, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    pst::fail(pst::Errc::io_error, "cannot move output into " + path);
  }
}

void require_format(const std::string& format, std::initializer_list<std::string_view> allowed) {
  for (auto a : allowed) {
    if (format == a) return;
  }
  std::string list;
  for (auto a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
  throw UsageError("--format must be one of " + list);
}

// ---- subcommands ----

std::string cmd_build(const Common& c) {
  require_format(c.format.empty() ? "text" : c.format, {"text", "json"});
  const auto g = graph_flag(c.expr, "expr");
  if (c.format != "json") return pst::serialize_graph(g);
  json j = {{"n", g.order()}, {"adjacency", matrix_json(g.adjacency())}};
  j["labels"] = g.has_labels() ? json(g.labels()) : json(nullptr);
  return dump(j);
}

std::string cmd_spectrum(const Common& c) {
  const std::string format = c.format.empty() ? "json" : c.format;
  require_format(format, {"csv", "json"});
  const auto g = graph_flag(c.expr, "expr");
  const auto d = pst::eigendecompose(g);
  if (format == "csv") {
    std::string s = "index,eigenvalue\n";
    for (Eigen::Index k = 0; k < d.eigenvalues.size(); ++k) {
      s += std::to_string(k) + "," + pst::format_real(d.eigenvalues(k)) + "\n";
    }
    return s;
  }
  const auto proj = pst::spectral_projectors(d);
  json groups = json::array();
  for (const auto& grp : proj.groups) groups.push_back({{"eigenvalue", grp.eigenvalue}, {"rank", grp.rank()}});
  std::vector<double> eig(d.eigenvalues.data(), d.eigenvalues.data() + d.eigenvalues.size());
  return dump({{"n", g.order()}, {"eigenvalues", eig}, {"groups", groups}, {"integral", pst::is_integral(g)}});
}

std::string cmd_fidelity(const Common& c) {
  const std::string format = c.format.empty() ? "csv" : c.format;
  require_format(format, {"csv", "json"});
  const auto g = graph_flag(c.expr, "expr");
  const auto a = vertex_flag(g, c.from, "from");
  const auto b = vertex_flag(g, c.to, "to");
  const auto s = pst::fidelity_series(g, a, b, time_flag(c.tmax, "tmax", c.pi_units), c.steps);
  if (format == "csv") return pst::to_csv(s);
  json re = json::array(), im = json::array(), ab = json::array();
  for (const auto& z : s.amplitudes) {
    re.push_back(z.real());
    im.push_back(z.imag());
    ab.push_back(std::abs(z));
  }
  return dump({{"source", a.index}, {"target", b.index}, {"t", s.times}, {"re", re}, {"im", im}, {"abs", ab}});
}

std::string cmd_scan(const Common& c, int refine) {
  require_format(c.format.empty() ? "json" : c.format, {"json"});
  const auto g = graph_flag(c.expr, "expr");
  const auto a = vertex_flag(g, c.from, "from");
  const auto b = vertex_flag(g, c.to, "to");
  const double tmax = time_flag(c.tmax, "tmax", c.pi_units);
  const auto r = pst::max_fidelity_scan(g, a, b, tmax, c.steps, refine);
  return dump({{"source", a.index},
               {"target", b.index},
               {"t_max", tmax},
               {"steps", c.steps},
               {"t_star", r.time},
               {"fmax", r.fidelity},
               {"reading", std::string(pst::to_string(pst::read_numeric(r.fidelity)))}});
}

std::string cmd_certify(const Common& c) {
  require_format(c.format.empty() ? "json" : c.format, {"json"});
  const auto g = graph_flag(c.expr, "expr");
  const auto cert = pst::pst_certificate(g, vertex_flag(g, c.from, "from"), vertex_flag(g, c.to, "to"));
  return dump(certificate_json(cert));
}

std::string cmd_collapse(const Common& c) {
  require_format(c.format.empty() ? "json" : c.format, {"json"});
  const auto g = graph_flag(c.expr, "expr");
  const auto a = vertex_flag(g, c.from, "from");
  const auto b = vertex_flag(g, c.to, "to");
  const double tmax = time_flag(c.tmax, "tmax", c.pi_units);
  if (c.steps < 2) throw UsageError("--steps must be at least 2");
  std::vector<double> times(c.steps);
  for (std::size_t i = 0; i < c.steps; ++i) times[i] = tmax * static_cast<double>(i) / static_cast<double>(c.steps - 1);
  const auto rep = pst::collapse_fidelity_check(g, a, b, times);
  json j = {{"cells", rep.partition.cells},
            {"degrees", matrix_json(rep.partition.degrees)},
            {"quotient", matrix_json(rep.quotient.graph.adjacency())},
            {"max_deviation", rep.max_deviation}};
  if (const auto p4 = pst::as_scaled_p4(rep.quotient.graph, 1e-9)) {
    j["scaled_p4"] = {{"scale", p4->scale}, {"middle", p4->middle}, {"loop", p4->loop}};
  } else {
    j["scaled_p4"] = nullptr;
  }
  return dump(j);
}

struct ConditionArgs {
  std::string g, h, t = "", lambda0, alpha = "1", gamma, kappa = "0";
  int b = 0;
  std::int64_t n = 0, k = 0, m = 0, gam = 0;
};

std::string cmd_condition(const std::string& which, const ConditionArgs& a, const Common& c) {
  require_format(c.format.empty() ? "json" : c.format, {"json"});
  auto need = [](const std::string& v, const char* flag) {
    if (v.empty()) throw UsageError(std::string("--") + flag + " is required");
    return v;
  };
  if (which == "weak" || which == "lex-clique" || which == "lex-std") {
    const auto g = graph_flag(a.g, "g");
    const auto h = graph_flag(a.h, "h");
    const double t = time_flag(need(a.t, "t"), "t", c.pi_units);
    if (which == "weak") return dump(report_json(pst::check_weak_pst_condition(g, t, h)));
    if (which == "lex-clique") return dump(report_json(pst::check_lexico_clique_condition(g, h, t)));
    return dump(report_json(pst::check_std_lexico_condition(g, h, t)));
  }
  if (which == "doublecone") {
    const double alpha = real_flag(a.alpha, "alpha");
    double lambda0 = 0.0;
    if (!a.lambda0.empty()) {
      lambda0 = real_flag(a.lambda0, "lambda0");
    } else {
      lambda0 = pst::perron_vector(graph_flag(need(c.expr, "expr or --lambda0"), "expr")).eigenvalue;
    }
    return dump(report_json(pst::double_cone_pst_condition(lambda0, a.b, alpha)));
  }
  if (which == "gluedcone") return dump(report_json(pst::glued_cone_pst_condition(a.n, a.k, a.gam)));
  if (which == "p4") {
    return dump(report_json(pst::p4_pst_condition(real_flag(need(a.gamma, "gamma"), "gamma"),
                                                  real_flag(a.kappa, "kappa"))));
  }
  const auto proof = pst::cylindrical_no_pst_check(a.n, a.k, a.m);
  json j = {{"n", proof.n},
            {"k", proof.k},
            {"m", proof.m},
            {"disc_delta", proof.disc_delta},
            {"disc_gamma", proof.disc_gamma},
            {"delta_rational", proof.delta_rational},
            {"gamma_rational", proof.gamma_rational},
            {"scaled_eigenvalues", proof.scaled_eigenvalues},
            {"contradiction", proof.contradiction},
            {"steps", proof.steps}};
  if (proof.phase) {
    j["phase"] = {{"feasible", proof.phase->feasible}, {"trace", proof.phase->trace}};
  } else {
    j["phase"] = nullptr;
  }
  return dump(j);
}

std::string table_text(const std::vector<pst::TableRow>& rows) {
  std::ostringstream s;
  s << std::left << std::setw(26) << "family" << std::setw(10) << "expected" << std::setw(10) << "observed"
    << std::setw(22) << "time" << std::setw(20) << "|F|" << "instance\n";
  for (const auto& r : rows) {
    s << std::setw(26) << r.family << std::setw(10) << pst::to_string(r.expected) << std::setw(10)
      << pst::to_string(r.observed) << std::setw(22) << (r.time.empty() ? "-" : r.time) << std::setw(20)
      << pst::format_real(r.fidelity) << r.instance << (r.matches() ? "" : "  MISMATCH") << '\n';
  }
  return s.str();
}

json table_json(const std::vector<pst::TableRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"family", r.family},
                   {"instance", r.instance},
                   {"expected", std::string(pst::to_string(r.expected))},
                   {"observed", std::string(pst::to_string(r.observed))},
                   {"matches", r.matches()},
                   {"method", r.method},
                   {"time", r.time.empty() ? json(nullptr) : json(r.time)},
                   {"fidelity", r.fidelity},
                   {"note", r.note}});
  }
  return arr;
}

void add_graph_flags(CLI::App* sub, Common& c, bool vertices, bool times) {
  sub->add_option("--expr", c.expr, "graph expression")->required();
  if (vertices) {
    sub->add_option("--from", c.from, "source vertex (index or label)")->required();
    sub->add_option("--to", c.to, "target vertex (index or label)")->required();
  }
  if (times) {
    sub->add_option("--tmax", c.tmax, "end of the time window")->capture_default_str();
    sub->add_option("--steps", c.steps, "grid points, both ends included")->capture_default_str();
    sub->add_flag("--pi-units", c.pi_units, "time arguments are multiples of pi");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continuous-time quantum walks and perfect state transfer on graphs", "pst"};
  app.require_subcommand(1);
  Common c;
  int refine = 60;
  std::string which;
  ConditionArgs ca;

  auto* build = app.add_subcommand("build", "build a graph and print it in the graph file format");
  add_graph_flags(build, c, false, false);
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues and eigenspace ranks");
  add_graph_flags(spectrum, c, false, false);
  auto* fid = app.add_subcommand("fidelity", "amplitude <b|exp(-itA)|a> on a time grid");
  add_graph_flags(fid, c, true, true);
  auto* scan = app.add_subcommand("scan", "maximum |F| over a time grid with local refinement");
  add_graph_flags(scan, c, true, true);
  scan->add_option("--refine", refine, "golden-section iterations")->capture_default_str();
  auto* certify = app.add_subcommand("certify", "exact perfect state transfer certificate");
  add_graph_flags(certify, c, true, false);
  auto* collapse = app.add_subcommand("collapse", "distance-partition quotient and fidelity comparison");
  add_graph_flags(collapse, c, true, true);
  auto* cond = app.add_subcommand("condition", "closed-form sufficient conditions");
  cond->set_help_flag("--help", "print this help");
  cond->add_option("which", which, "weak | lex-clique | lex-std | doublecone | gluedcone | cylcone | p4")
      ->required()
      ->check(CLI::IsMember({"weak", "lex-clique", "lex-std", "doublecone", "gluedcone", "cylcone", "p4"}));
  cond->add_option("--g", ca.g, "left factor G");
  cond->add_option("--h", ca.h, "right factor H");
  cond->add_option("--t", ca.t, "PST time of the relevant factor");
  cond->add_option("--expr", c.expr, "double cone base (its Perron value is used as lambda0)");
  cond->add_option("--lambda0", ca.lambda0, "top eigenvalue of the double cone base");
  cond->add_option("--b", ca.b, "apex edge (0 or 1)")->check(CLI::Range(0, 1));
  cond->add_option("--alpha", ca.alpha, "cone weight");
  cond->add_option("--n", ca.n, "base order");
  cond->add_option("--k", ca.k, "base degree");
  cond->add_option("--gamma", ca.gamma, "gamma (glued cone: connection degree; p4: middle weight)");
  cond->add_option("--m", ca.m, "middle empty layer size");
  cond->add_option("--kappa", ca.kappa, "p4 loop weight");
  cond->add_flag("--pi-units", c.pi_units, "--t is a multiple of pi");
  auto* table = app.add_subcommand("table", "reproduce the known-results table");

  for (auto* sub : {build, spectrum, fid, scan, certify, collapse, cond, table}) {
    sub->add_option("--out", c.out, "write output to this path (atomically)");
    sub->add_option("--format", c.format, "csv | json (text for build and table)");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    std::string text;
    int code = kExitOk;
    if (*build) {
      text = cmd_build(c);
    } else if (*spectrum) {
      text = cmd_spectrum(c);
    } else if (*fid) {
      text = cmd_fidelity(c);
    } else if (*scan) {
      text = cmd_scan(c, refine);
    } else if (*certify) {
      text = cmd_certify(c);
    } else if (*collapse) {
      text = cmd_collapse(c);
    } else if (*cond) {
      if (which == "gluedcone") {
        std::int64_t gam = 0;
        std::istringstream in(ca.gamma);
        if (!(in >> gam) || !in.eof()) throw UsageError("--gamma must be an integer for gluedcone");
        ca.gam = gam;
      }
      text = cmd_condition(which, ca, c);
    } else {
      const std::string format = c.format.empty() ? "text" : c.format;
      require_format(format, {"text", "json"});
      const auto rows = pst::pst_table();
      text = format == "json" ? dump(table_json(rows)) : table_text(rows);
      if (!std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.matches(); })) code = kExitDomain;
    }
    emit(text, c.out, out);
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pst::Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace pstcli
