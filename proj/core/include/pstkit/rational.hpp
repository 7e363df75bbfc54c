#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace pst {

/// Parity class of a reduced fraction p/q: (p mod 2, q mod 2).
enum class ParityClass { Q01, Q10, Q11 };

std::string_view to_string(ParityClass c) noexcept;

struct RationalClass {
  std::int64_t p = 0;
  std::int64_t q = 1;
  ParityClass tag = ParityClass::Q01;
};

/// Reduces p/q, makes q positive and tags the result. q == 0 is rejected.
RationalClass classify_rational(std::int64_t p, std::int64_t q);

/// Exact rational on 64-bit integers; every operation is overflow-checked and
/// raises numeric-failure instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit from integers
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  struct Raw {};
  Rational(Raw, std::int64_t num, std::int64_t den) : num_(num), den_(den) {}
  friend Rational rational_from_lowest_terms(std::int64_t num, std::int64_t den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

RationalClass classify(const Rational& r);

/// Exact square root when r is the square of a rational, else nullopt.
std::optional<Rational> exact_sqrt(const Rational& r);

/// Largest s with s*s <= n (n >= 0).
std::int64_t isqrt(std::int64_t n);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// Continued-fraction recovery of p/q from a float.
///
/// Returns the first convergent with q <= max_den and
/// |x - p/q| <= tol * (1 + |x|) that is also "significant": its error times q^2
/// must be at most sqrt(tol). Without the second test every real number has an
/// accepted convergent once q^2 exceeds 1/tol, so irrationals such as 1/sqrt(7)
/// would be misreported as rational.
std::optional<std::pair<std::int64_t, std::int64_t>> rational_reconstruct(double x,
                                                                          std::int64_t max_den = 1000000,
                                                                          double tol = 1e-9);

/// A time of the form (a/b) * pi * scale.
struct ExactTime {
  std::int64_t a = 0;
  std::int64_t b = 1;
  double scale = 1.0;
  /// Squarefree R when scale = 1/sqrt(R), else 1.
  std::int64_t radicand = 1;

  double value() const noexcept;
  /// "a*pi/b", "a*pi/(b*sqrt(R))", or "a*pi/b*scale" for other scales.
  std::string str() const;
};

/// t = coefficient * pi / rate, folded into exact form when the rate is
/// rational or the square root of a rational; otherwise scale = 1/rate.
ExactTime exact_time(const Rational& coefficient, double rate);

}  // namespace pst
