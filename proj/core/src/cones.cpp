#include "pstkit/cones.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "pstkit/error.hpp"
#include "pstkit/graph_io.hpp"
#include "pstkit/products.hpp"

namespace pst {

namespace {

constexpr double kPi = std::numbers::pi;

bool in_class(const CheckedRatio& r, std::initializer_list<ParityClass> classes) {
  if (!r.rational) return false;
  for (ParityClass c : classes) {
    if (r.rational->tag == c) return true;
  }
  return false;
}

std::string describe(const CheckedRatio& r) {
  if (!r.rational) return r.name + " = " + format_real(r.value) + " (irrational)";
  return r.name + " = " + std::to_string(r.rational->p) + "/" + std::to_string(r.rational->q) + " in " +
         std::string(to_string(r.rational->tag));
}

CheckedRatio exact_ratio(std::string name, const Rational& value) {
  CheckedRatio r;
  r.name = std::move(name);
  r.value = value.to_double();
  r.rational = classify(value);
  return r;
}

CheckedRatio irrational_ratio(std::string name, double value) {
  CheckedRatio r;
  r.name = std::move(name);
  r.value = value;
  return r;
}

// Phase solve for the four-eigenvalue walks (alpha+-, beta+- with signs
// 0,0,1,1) shared by the glued cone and P4(gamma; kappa).
std::optional<ExactTime> four_mode_time(const std::vector<double>& eig, std::string& note) {
  const std::vector<int> signs = {0, 0, 1, 1};
  const auto comm = commensurate(eig);
  if (!comm) {
    note = "eigenvalues are incommensurate, no common phase time";
    return std::nullopt;
  }
  const auto sol = solve_phase_alignment(comm->steps, signs);
  note = "phase system: " + sol.trace;
  if (!sol.feasible) return std::nullopt;
  return exact_time(sol.tau, comm->unit);
}

Matrix block_ones(Eigen::Index rows, Eigen::Index cols) { return Matrix::Ones(rows, cols); }

}  // namespace

// ---- double cones ---------------------------------------------------------

Graph double_cone(const DoubleConeSpec& spec) {
  if (spec.b != 0 && spec.b != 1) fail(Errc::invalid_argument, "apex edge indicator b must be 0 or 1");
  if (!(spec.alpha > 0.0) || !std::isfinite(spec.alpha)) fail(Errc::invalid_argument, "alpha must be positive");
  const auto perron = perron_vector(spec.base);
  const auto n = static_cast<Eigen::Index>(spec.base.order());
  Matrix a = Matrix::Zero(n + 2, n + 2);
  a(0, 1) = a(1, 0) = spec.b;
  const Vector cone = spec.alpha * perron.vector;
  a.block(0, 2, 1, n) = cone.transpose();
  a.block(1, 2, 1, n) = cone.transpose();
  a.block(2, 0, n, 1) = cone;
  a.block(2, 1, n, 1) = cone;
  a.bottomRightCorner(n, n) = spec.base.adjacency();
  std::vector<std::string> labels;
  if (spec.base.has_labels()) {
    labels = {"A", "B"};
    for (const auto& l : spec.base.labels()) labels.push_back(l);
  }
  return Graph(std::move(a), std::move(labels));
}

Amplitude double_cone_fidelity(double lambda0, int b, double alpha, double t) {
  if (b != 0 && b != 1) fail(Errc::invalid_argument, "apex edge indicator b must be 0 or 1");
  const double lp = 0.5 * (lambda0 + b);
  const double lm = 0.5 * (lambda0 - b);
  const double delta = std::sqrt(lm * lm + 2.0 * alpha * alpha);
  const std::complex<double> sym =
      std::polar(1.0, -t * lp) * std::complex<double>(std::cos(t * delta), lm / delta * std::sin(t * delta));
  const std::complex<double> f = 0.5 * (sym - std::polar(1.0, t * b));
  return {f.real(), f.imag()};
}

ConditionReport double_cone_pst_condition(double lambda0, int b, double alpha) {
  if (b != 0 && b != 1) fail(Errc::invalid_argument, "apex edge indicator b must be 0 or 1");
  if (!(alpha > 0.0)) fail(Errc::invalid_argument, "alpha must be positive");
  ConditionReport rep;
  const double lp = 0.5 * (lambda0 + b);
  const double lm = 0.5 * (lambda0 - b);
  const double delta = std::sqrt(lm * lm + 2.0 * alpha * alpha);
  const auto ratio = check_ratio(b == 0 ? "l+/D" : "(l+ + b)/D", (lp + b) / delta);
  rep.ratios.push_back(ratio);
  rep.witness = describe(ratio) + ", D = " + format_real(delta);
  if (!ratio.rational) {
    rep.failure = ConditionFailure::irrational;
    rep.detail = "ratio is not rational";
  } else if (!in_class(ratio, {ParityClass::Q01, ParityClass::Q10})) {
    rep.failure = ConditionFailure::wrong_class;
    rep.detail = "ratio lies in Q11; the sine and apex phases cannot align";
  } else {
    rep.holds = true;
    rep.time = exact_time(Rational(ratio.rational->q), delta);
    rep.detail = "ratio in Q01 u Q10, PST at t = q*pi/D = " + rep.time->str();
  }
  return rep;
}

// ---- glued double cones ---------------------------------------------------

Graph glued_double_cone(const Graph& g1, const Graph& g2, const Graph& connection) {
  const std::size_t n = g1.order();
  if (g2.order() != n || connection.order() != n) {
    fail(Errc::invalid_argument, "G1, G2 and the connection must have the same order");
  }
  const auto k1 = is_regular(g1);
  const auto k2 = is_regular(g2);
  if (!k1 || !k2 || *k1 != *k2) fail(Errc::invalid_argument, "G1 and G2 must be regular of the same degree");
  const Matrix& c = connection.adjacency();
  if (!connection.is_unweighted()) fail(Errc::invalid_argument, "connection must be a 0/1 matrix");
  const Vector rows = c.rowwise().sum();
  if ((rows.array() != rows(0)).any()) {
    fail(Errc::invalid_argument, "connection does not have a constant row sum");
  }
  for (const Graph* g : {&g1, &g2}) {
    const double r = commutator_residual(g->adjacency(), c);
    if (r > 1e-10) fail(Errc::non_commuting, "connection does not commute with G (" + format_real(r) + ")");
  }
  const auto m = static_cast<Eigen::Index>(n);
  Matrix a = Matrix::Zero(2 * m + 2, 2 * m + 2);
  a.block(0, 1, 1, m) = block_ones(1, m);
  a.block(1, 0, m, 1) = block_ones(m, 1);
  a.block(2 * m + 1, m + 1, 1, m) = block_ones(1, m);
  a.block(m + 1, 2 * m + 1, m, 1) = block_ones(m, 1);
  a.block(1, 1, m, m) = g1.adjacency();
  a.block(m + 1, m + 1, m, m) = g2.adjacency();
  a.block(1, m + 1, m, m) = c;
  a.block(m + 1, 1, m, m) = c.transpose();
  return Graph(std::move(a));
}

GluedFamilyMember glued_cone_family(int a) {
  if (a < 2) fail(Errc::invalid_argument, "glued cone family starts at a = 2");
  if (a > 20) fail(Errc::invalid_size, "glued cone family member too large");
  GluedFamilyMember f;
  f.n = 15 * (std::int64_t{1} << (2 * (a - 2)));
  f.k = 3 * (std::int64_t{1} << (a - 1));
  f.gamma = 4 * (std::int64_t{1} << (a - 1));
  return f;
}

Graph glued_cone_family_graph(int a) {
  const auto f = glued_cone_family(a);
  if (f.n > 2000) fail(Errc::invalid_size, "glued cone family member too large for dense storage");
  std::vector<std::size_t> g_set(static_cast<std::size_t>(f.k / 2));
  std::vector<std::size_t> c_set(static_cast<std::size_t>(f.gamma / 2));
  std::iota(g_set.begin(), g_set.end(), 1);
  std::iota(c_set.begin(), c_set.end(), 1);
  const auto n = static_cast<std::size_t>(f.n);
  const Graph g = make_circulant(n, g_set);
  return glued_double_cone(g, g, make_circulant(n, c_set));
}

ConditionReport glued_cone_pst_condition(std::int64_t n, std::int64_t k, std::int64_t gamma) {
  if (n < 1 || k < 0 || gamma < 0) fail(Errc::invalid_argument, "glued cone needs n >= 1, k >= 0, gamma >= 0");
  ConditionReport rep;
  // 2 D+- = sqrt((k +- gamma)^2 + 4n).
  const std::int64_t np = (k + gamma) * (k + gamma) + 4 * n;
  const std::int64_t nm = (k - gamma) * (k - gamma) + 4 * n;
  const auto sp = exact_sqrt(Rational(np));
  const auto sm = exact_sqrt(Rational(nm));
  const Rational kp(k + gamma, 2), km(k - gamma, 2);
  rep.witness = "4 D+^2 = " + std::to_string(np) + ", 4 D-^2 = " + std::to_string(nm);
  if (!sp || !sm) {
    const double dp = 0.5 * std::sqrt(static_cast<double>(np));
    const double dm = 0.5 * std::sqrt(static_cast<double>(nm));
    rep.ratios.push_back(check_ratio("D+/D-", dp / dm));
    rep.ratios.push_back(irrational_ratio(!sp ? "gamma/D+" : "gamma/D-", gamma / (!sp ? dp : dm)));
    rep.failure = ConditionFailure::irrational;
    rep.detail = std::string(!sp ? "D+" : "D-") + "^2 is not the square of a rational";
    return rep;
  }
  const Rational dp = *sp / Rational(2), dm = *sm / Rational(2);
  const auto r_delta = exact_ratio("D+/D-", dp / dm);
  const auto r_plus = exact_ratio("gamma/D+", Rational(gamma) / dp);
  const auto r_minus = exact_ratio("gamma/D-", Rational(gamma) / dm);
  rep.ratios = {r_delta, r_plus, r_minus};
  rep.witness += "; " + describe(r_delta) + ", " + describe(r_plus) + ", " + describe(r_minus);

  // Phase equations for the two weight classes, solved exactly.
  const std::vector<Rational> eig = {kp + dp, kp - dp, km + dm, km - dm};
  std::int64_t den = 1;
  for (const auto& e : eig) den = lcm64(den, e.den());
  std::vector<std::int64_t> scaled;
  for (const auto& e : eig) scaled.push_back((e * Rational(den)).num());
  const std::vector<int> signs = {0, 0, 1, 1};
  const auto sol = solve_phase_alignment(scaled, signs);

  const bool ok_delta = in_class(r_delta, {ParityClass::Q01, ParityClass::Q10});
  const bool ok_gamma = in_class(r_plus, {ParityClass::Q01}) || in_class(r_minus, {ParityClass::Q01});
  if (ok_delta && ok_gamma) {
    rep.holds = true;
    rep.detail = "D+/D- in Q01 u Q10 and gamma/D+- meets Q01";
    if (sol.feasible) {
      rep.time = exact_time(sol.tau, 1.0 / static_cast<double>(den));
      rep.detail += "; smallest time " + rep.time->str();
    } else {
      rep.detail += "; phase system unexpectedly infeasible: " + sol.trace;
    }
  } else {
    rep.failure = ConditionFailure::wrong_class;
    rep.detail = !ok_delta ? "D+/D- is not in Q01 u Q10" : "neither gamma/D+ nor gamma/D- is in Q01";
    rep.detail += std::string("; phase system ") + (sol.feasible ? "feasible anyway" : "infeasible");
  }
  return rep;
}

GluedConeEigendata glued_cone_eigendata(double n, double k, double gamma) {
  GluedConeEigendata e;
  const double kp = 0.5 * (k + gamma), km = 0.5 * (k - gamma);
  const double dp = std::sqrt(kp * kp + n), dm = std::sqrt(km * km + n);
  e.alpha_plus = kp + dp;
  e.alpha_minus = kp - dp;
  e.beta_plus = km + dm;
  e.beta_minus = km - dm;
  auto weight = [n](double x) { return n / (2.0 * (n + x * x)); };
  e.w_alpha_plus = weight(e.alpha_plus);
  e.w_alpha_minus = weight(e.alpha_minus);
  e.w_beta_plus = weight(e.beta_plus);
  e.w_beta_minus = weight(e.beta_minus);
  return e;
}

Amplitude glued_cone_fidelity(double n, double k, double gamma, double t) {
  const auto e = glued_cone_eigendata(n, k, gamma);
  const std::complex<double> f = e.w_alpha_plus * std::polar(1.0, -t * e.alpha_plus) +
                                 e.w_alpha_minus * std::polar(1.0, -t * e.alpha_minus) -
                                 e.w_beta_plus * std::polar(1.0, -t * e.beta_plus) -
                                 e.w_beta_minus * std::polar(1.0, -t * e.beta_minus);
  return {f.real(), f.imag()};
}

// ---- cylindrical cones ----------------------------------------------------

Graph cylindrical_cone(const Graph& g1, const Graph& middle, const Graph& g2) {
  const auto n1 = static_cast<Eigen::Index>(g1.order());
  const auto m = static_cast<Eigen::Index>(middle.order());
  const auto n2 = static_cast<Eigen::Index>(g2.order());
  const Eigen::Index total = 2 + n1 + m + n2;
  const Eigen::Index o1 = 1, om = 1 + n1, o2 = 1 + n1 + m, ob = total - 1;
  Matrix a = Matrix::Zero(total, total);
  a.block(0, o1, 1, n1).setOnes();
  a.block(o1, 0, n1, 1).setOnes();
  a.block(o1, o1, n1, n1) = g1.adjacency();
  a.block(o1, om, n1, m).setOnes();
  a.block(om, o1, m, n1).setOnes();
  a.block(om, om, m, m) = middle.adjacency();
  a.block(om, o2, m, n2).setOnes();
  a.block(o2, om, n2, m).setOnes();
  a.block(o2, o2, n2, n2) = g2.adjacency();
  a.block(o2, ob, n2, 1).setOnes();
  a.block(ob, o2, 1, n2).setOnes();
  return Graph(std::move(a));
}

CylindricalProof cylindrical_no_pst_check(std::int64_t n, std::int64_t k, std::int64_t m) {
  if (n < 1 || k < 0 || k >= n || m < 1) {
    fail(Errc::invalid_argument, "cylindrical cone needs n >= 1, 0 <= k < n, m >= 1");
  }
  CylindricalProof p;
  p.n = n;
  p.k = k;
  p.m = m;
  p.disc_delta = k * k + 4 * n;
  p.disc_gamma = k * k + 4 * (2 * m + 1) * n;
  const auto sd = exact_sqrt(Rational(p.disc_delta));
  const auto sg = exact_sqrt(Rational(p.disc_gamma));
  p.delta_rational = sd.has_value();
  p.gamma_rational = sg.has_value();
  const Rational kt(k, 2);

  auto& s = p.steps;
  s.push_back("apex-visible eigenvalues: lambda+- = k/2 +- D, mu+- = k/2 +- G and 0, with (2D)^2 = " +
              std::to_string(p.disc_delta) + ", (2G)^2 = " + std::to_string(p.disc_gamma));
  s.push_back("unit fidelity needs t(k/2 +- D) in (2Z+1)pi and t(k/2 +- G) in 2Z pi");

  if (!p.delta_rational || !p.gamma_rational) {
    const std::string which = !p.delta_rational ? "D" : "G";
    const std::int64_t disc = !p.delta_rational ? p.disc_delta : p.disc_gamma;
    if (k != 0) {
      s.push_back("t(lambda+ + lambda-) = tk and t(lambda+ - lambda-) = 2tD are multiples of pi, as are tk and 2tG;"
                  " with k != 0 both D/k and G/k must be rational");
      s.push_back(std::to_string(disc) + " is not a perfect square, so " + which +
                  " is irrational: contradiction");
      p.contradiction = true;
      return p;
    }
    // k = 0: lambda = +-sqrt(n), mu = +-sqrt((2m+1)n), commensurate iff 2m+1 is a square.
    const std::int64_t odd = 2 * m + 1;
    const std::int64_t r = isqrt(odd);
    if (r * r != odd) {
      s.push_back("k = 0: G/D = sqrt(" + std::to_string(odd) +
                  ") is irrational, so tD and tG cannot both be multiples of pi for t > 0: contradiction");
      p.contradiction = true;
      return p;
    }
    p.scaled_eigenvalues = {1, -1, r, -r, 0};
    const std::vector<int> signs = {1, 1, 0, 0, 0};
    p.phase = solve_phase_alignment(p.scaled_eigenvalues, signs, 4);
    s.push_back("k = 0: eigenvalues are sqrt(n) * (1, -1, " + std::to_string(r) + ", " + std::to_string(-r) +
                ", 0); " + p.phase->trace);
    p.contradiction = !p.phase->feasible;
    return p;
  }

  const Rational d = *sd / Rational(2), g = *sg / Rational(2);
  s.push_back("D = " + d.str() + ", G = " + g.str() + " are rational");

  // The four quotients must all lie in Q10 (odd over even).
  const std::pair<Rational, Rational> quotients[] = {
      {kt + d, kt + g}, {kt - d, kt - g}, {kt + d, kt - g}, {kt - d, kt + g}};
  const char* names[] = {"(k/2+D)/(k/2+G)", "(k/2-D)/(k/2-G)", "(k/2+D)/(k/2-G)", "(k/2-D)/(k/2+G)"};
  bool quotient_contradiction = false;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto cls = classify(quotients[i].first / quotients[i].second);
    if (cls.tag != ParityClass::Q10 && !quotient_contradiction) {
      quotient_contradiction = true;
      s.push_back(std::string(names[i]) + " = " + std::to_string(cls.p) + "/" + std::to_string(cls.q) + " lies in " +
                  std::string(to_string(cls.tag)) + ", not Q10: contradiction");
    }
  }

  // Parity case split on (k/2, n), with halving while both are even.
  if (k % 2 != 0) {
    s.push_back("k odd: k/2 is not an integer, so the (k/2, n) parity split does not apply; the quotient classes and the"
                " phase system settle it");
  } else {
    std::int64_t kk = k / 2, nn = n;
    Rational dd = d, gg = g;
    for (int level = 0; level < 64; ++level) {
      const bool k_even = kk % 2 == 0, n_even = nn % 2 == 0;
      if (k_even && n_even) {
        if (nn % 4 != 0) {
          s.push_back("k/2 = " + std::to_string(kk) + " even, n = " + std::to_string(nn) +
                      " = 2 mod 4 makes D^2 = 2 mod 4, impossible");
          break;
        }
        s.push_back("k/2 = " + std::to_string(kk) + ", n = " + std::to_string(nn) +
                    " both even: halve to k/2 = " + std::to_string(kk / 2) + ", n = " + std::to_string(nn / 4) +
                    ", D = " + (dd / Rational(2)).str() + ", G = " + (gg / Rational(2)).str());
        kk /= 2;
        nn /= 4;
        dd = dd / Rational(2);
        gg = gg / Rational(2);
        continue;
      }
      std::string c = "k/2 = " + std::to_string(kk) + (k_even ? " even" : " odd") + ", n = " + std::to_string(nn) +
                      (n_even ? " even" : " odd");
      c += !n_even ? ": the quotients lie in Q11" : ": one quotient has numerator and denominator = 2 mod 4, so lies in Q11";
      s.push_back(c);
      break;
    }
  }

  // Exact phase system on 2 * eigenvalue, reference = the zero mode.
  const Rational two(2);
  p.scaled_eigenvalues = {((kt + d) * two).num(), ((kt - d) * two).num(), ((kt + g) * two).num(),
                          ((kt - g) * two).num(), 0};
  const std::vector<int> signs = {1, 1, 0, 0, 0};
  p.phase = solve_phase_alignment(p.scaled_eigenvalues, signs, 4);
  s.push_back("phase system on 2*eigenvalues: " + p.phase->trace);
  p.contradiction = quotient_contradiction && !p.phase->feasible;
  if (quotient_contradiction != !p.phase->feasible) {
    s.push_back("quotient test and phase system disagree");
  }
  return p;
}

// ---- weighted P4 ----------------------------------------------------------

Graph weighted_p4(double gamma, double kappa) {
  const double w[] = {1.0, gamma, 1.0};
  const double loops[] = {0.0, kappa, kappa, 0.0};
  return make_path(w, loops);
}

ConditionReport p4_pst_condition(double gamma, double kappa) {
  if (!std::isfinite(gamma) || !std::isfinite(kappa) || gamma == 0.0) {
    fail(Errc::invalid_argument, "P4 needs a finite nonzero middle weight and finite loop weight");
  }
  ConditionReport rep;
  const double dp = 0.5 * std::sqrt((kappa + gamma) * (kappa + gamma) + 4.0);
  const double dm = 0.5 * std::sqrt((kappa - gamma) * (kappa - gamma) + 4.0);
  const auto r_plus = check_ratio("gamma/D+", gamma / dp);
  const auto r_minus = check_ratio("gamma/D-", gamma / dm);

  if (kappa == 0.0) {
    rep.ratios = {r_plus, r_minus};
    rep.witness = "case kappa = 0: " + describe(r_plus) + ", " + describe(r_minus);
    if (!r_plus.rational || !r_minus.rational) {
      rep.failure = ConditionFailure::irrational;
      rep.detail = "gamma/D is not rational";
      return rep;
    }
    const bool all11 = in_class(r_plus, {ParityClass::Q11}) && in_class(r_minus, {ParityClass::Q11});
    const bool all10 = in_class(r_plus, {ParityClass::Q10}) && in_class(r_minus, {ParityClass::Q10});
    if (!all11 && !all10) {
      rep.failure = ConditionFailure::wrong_class;
      rep.detail = "gamma/D lies in Q01";
      return rep;
    }
    // t*gamma = p*pi (p odd) and t*D = q*pi.
    rep.holds = true;
    rep.time = exact_time(Rational(r_plus.rational->p), gamma);
    rep.detail = std::string("case kappa = 0, gamma/D in ") + (all11 ? "Q11" : "Q10") + ", PST at t = p*pi/gamma = " +
                 rep.time->str();
    return rep;
  }

  const auto r_delta = check_ratio("D+/D-", dp / dm);
  rep.ratios = {r_delta, r_plus, r_minus};
  rep.witness = "case kappa != 0: " + describe(r_delta) + ", " + describe(r_plus) + ", " + describe(r_minus);
  std::string note;
  const auto time = four_mode_time({0.5 * (kappa + gamma) + dp, 0.5 * (kappa + gamma) - dp,
                                    0.5 * (kappa - gamma) + dm, 0.5 * (kappa - gamma) - dm},
                                   note);
  if (!r_delta.rational || (!r_plus.rational && !r_minus.rational)) {
    rep.failure = ConditionFailure::irrational;
    rep.detail = "required ratio is not rational; " + note;
    return rep;
  }
  const bool ok_delta = in_class(r_delta, {ParityClass::Q01, ParityClass::Q10});
  const bool ok_gamma = in_class(r_plus, {ParityClass::Q01, ParityClass::Q11}) ||
                        in_class(r_minus, {ParityClass::Q01, ParityClass::Q11});
  if (!ok_delta || !ok_gamma) {
    rep.failure = ConditionFailure::wrong_class;
    rep.detail = std::string(!ok_delta ? "D+/D- is not in Q01 u Q10" : "neither gamma/D+- is in Q01 u Q11") + "; " +
                 note;
    return rep;
  }
  rep.holds = true;
  rep.time = time;
  rep.detail = "case kappa != 0 conditions met; " + note;
  return rep;
}

}  // namespace pst
