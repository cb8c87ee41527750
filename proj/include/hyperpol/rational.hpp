#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace hyperpol {

// Exact rational with a positive denominator, always in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_integer() const { return den_ == 1; }

  // Largest integer not above the value.
  std::int64_t floor() const;
  // Nearest integer; exact halves go to the even neighbour.
  std::int64_t round_half_even() const;
  // Representative in [0, m) for a positive integer modulus m.
  Rational mod(std::int64_t m) const;

  // "p/q", or "p" when q == 1.
  std::string to_string() const;
  // Accepts "p", "p/q" and "-p/q".
  static Rational parse(const std::string& text);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace hyperpol
