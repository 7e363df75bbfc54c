#include "pstkit/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <numeric>

#include "pstkit/error.hpp"
#include "pstkit/graph_io.hpp"

namespace pst {

namespace {

__extension__ typedef __int128 i128;

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    fail(Errc::numeric_failure, "rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

Rational make(i128 num, i128 den);

}  // namespace

Rational rational_from_lowest_terms(std::int64_t num, std::int64_t den) {
  return Rational(Rational::Raw{}, num, den);
}

namespace {

Rational make(i128 num, i128 den) {
  if (den == 0) fail(Errc::invalid_argument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return rational_from_lowest_terms(narrow(num), narrow(den));
}

}  // namespace

std::string_view to_string(ParityClass c) noexcept {
  switch (c) {
    case ParityClass::Q01: return "Q01";
    case ParityClass::Q10: return "Q10";
    case ParityClass::Q11: return "Q11";
  }
  return "?";
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return narrow(gcd128(a, b)); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  const i128 g = gcd128(a, b);
  i128 l = static_cast<i128>(a) / g * b;
  if (l < 0) l = -l;
  return narrow(l);
}

RationalClass classify_rational(std::int64_t p, std::int64_t q) {
  if (q == 0) fail(Errc::invalid_argument, "classify_rational: zero denominator");
  return classify(Rational(p, q));
}

RationalClass classify(const Rational& r) {
  RationalClass c;
  c.p = r.num();
  c.q = r.den();
  const bool p_odd = (c.p % 2) != 0;
  const bool q_odd = (c.q % 2) != 0;
  c.tag = p_odd ? (q_odd ? ParityClass::Q11 : ParityClass::Q10) : ParityClass::Q01;
  return c;
}

Rational::Rational(std::int64_t num, std::int64_t den) { *this = make(num, den); }

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
              static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return make(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) fail(Errc::invalid_argument, "division by zero rational");
  return make(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

Rational Rational::operator-() const { return make(-static_cast<i128>(num_), den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const i128 l = static_cast<i128>(a.num_) * b.den_;
  const i128 r = static_cast<i128>(b.num_) * a.den_;
  return l <=> r;
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) fail(Errc::invalid_argument, "isqrt of a negative number");
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (s > 0 && static_cast<i128>(s) * s > n) --s;
  while (static_cast<i128>(s + 1) * (s + 1) <= n) ++s;
  return s;
}

std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r.num() < 0) return std::nullopt;
  const std::int64_t sn = isqrt(r.num());
  const std::int64_t sd = isqrt(r.den());
  if (sn * sn != r.num() || sd * sd != r.den()) return std::nullopt;
  return Rational(sn, sd);
}

std::optional<std::pair<std::int64_t, std::int64_t>> rational_reconstruct(double x, std::int64_t max_den,
                                                                          double tol) {
  if (!std::isfinite(x) || max_den < 1 || !(tol > 0.0)) return std::nullopt;
  const double bound = tol * (1.0 + std::abs(x));
  const double significance = std::sqrt(tol);
  const bool negative = x < 0.0;
  const double y = std::abs(x);
  if (y > 9e15) return std::nullopt;

  // Convergents h/k of the continued fraction of y.
  i128 h_prev = 0, h = 1;
  i128 k_prev = 1, k = 0;
  double rest = y;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_f = std::floor(rest);
    if (a_f > 9e15) break;
    const auto a = static_cast<i128>(a_f);
    const i128 h_next = a * h + h_prev;
    const i128 k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    const double approx = static_cast<double>(h) / static_cast<double>(k);
    const double err = std::abs(y - approx);
    const double kk = static_cast<double>(k);
    if (err <= bound && err * kk * kk <= significance) {
      const auto p = static_cast<std::int64_t>(h);
      return std::pair{negative ? -p : p, static_cast<std::int64_t>(k)};
    }
    const double frac = rest - a_f;
    if (frac <= 0.0) break;
    rest = 1.0 / frac;
  }
  return std::nullopt;
}

double ExactTime::value() const noexcept {
  return static_cast<double>(a) * std::numbers::pi / static_cast<double>(b) * scale;
}

std::string ExactTime::str() const {
  std::string s = (a == 1 ? std::string() : std::to_string(a) + "*") + "pi";
  if (radicand > 1) {
    const std::string root = "sqrt(" + std::to_string(radicand) + ")";
    if (a % radicand == 0) {
      // a/(b sqrt R) = (a/R) sqrt R / b
      const Rational c(a / radicand, b);
      std::string r = (c.num() == 1 ? std::string() : std::to_string(c.num()) + "*") + root + "*pi";
      if (c.den() != 1) r += "/" + std::to_string(c.den());
      return r;
    }
    s += b == 1 ? "/" + root : "/(" + std::to_string(b) + "*" + root + ")";
    return s;
  }
  if (b != 1) s += "/" + std::to_string(b);
  if (scale != 1.0) s += "*" + format_real(scale);
  return s;
}

ExactTime exact_time(const Rational& coefficient, double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) fail(Errc::invalid_argument, "time rate must be positive");
  if (const auto r = rational_reconstruct(rate)) {
    const Rational folded = coefficient / Rational(r->first, r->second);
    return {folded.num(), folded.den(), 1.0, 1};
  }
  if (const auto sq = rational_reconstruct(rate * rate)) {
    // rate = sqrt(u/v) = s*sqrt(R)/v with R squarefree.
    std::int64_t rest = narrow(static_cast<i128>(sq->first) * sq->second);
    std::int64_t s = 1;
    for (std::int64_t f = 2; f * f <= rest; ++f) {
      while (rest % (f * f) == 0) {
        rest /= f * f;
        s *= f;
      }
    }
    const Rational folded = coefficient * Rational(sq->second, s);
    if (rest == 1) return {folded.num(), folded.den(), 1.0, 1};
    return {folded.num(), folded.den(), 1.0 / std::sqrt(static_cast<double>(rest)), rest};
  }
  return {coefficient.num(), coefficient.den(), 1.0 / rate, 1};
}

}  // namespace pst
