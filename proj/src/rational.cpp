#include "hyperpol/rational.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace hyperpol {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::round_half_even() const {
  const std::int64_t lo = floor();
  const Rational frac = *this - Rational(lo);
  const Rational half(1, 2);
  if (frac < half) return lo;
  if (frac > half) return lo + 1;
  return lo % 2 == 0 ? lo : lo + 1;
}

Rational Rational::mod(std::int64_t m) const {
  if (m <= 0) throw std::invalid_argument("rational modulus must be positive");
  const Rational q = *this / Rational(m);
  return *this - Rational(q.floor() * m);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  std::size_t used = 0;
  try {
    if (slash == std::string::npos) {
      const std::int64_t n = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Rational(n);
    }
    const std::string a = text.substr(0, slash);
    const std::string b = text.substr(slash + 1);
    std::size_t used_b = 0;
    const std::int64_t n = std::stoll(a, &used);
    const std::int64_t d = std::stoll(b, &used_b);
    if (used != a.size() || used_b != b.size()) throw std::invalid_argument(text);
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) { return Rational(a.num_ * b.num_, a.den_ * b.den_); }

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return a.num_ * b.den_ <=> b.num_ * a.den_;
}

}  // namespace hyperpol
