#include "nbr/rational.hpp"

#include <cctype>

#include "nbr/errors.hpp"

namespace nbr {

namespace {

mpz_class to_mpz(std::int64_t v) {
  if constexpr (sizeof(long) >= sizeof(std::int64_t)) {
    return mpz_class(static_cast<long>(v));
  } else {
    return mpz_class(std::to_string(v));
  }
}

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(std::int64_t value) : value_(to_mpz(value)) {}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw InputError("rational with zero denominator");
  value_ = mpq_class(to_mpz(numerator), to_mpz(denominator));
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto bad = [&] {
    return InputError("malformed rational '" + std::string(text) + "'");
  };
  std::string_view num = text;
  std::string_view den = "1";
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  std::string_view num_digits = num;
  bool negative = false;
  if (!num_digits.empty() && (num_digits[0] == '-' || num_digits[0] == '+')) {
    negative = num_digits[0] == '-';
    num_digits.remove_prefix(1);
  }
  if (!is_digits(num_digits) || !is_digits(den)) throw bad();
  mpz_class n(std::string(num_digits), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw bad();
  if (negative) n = -n;
  return Rational(mpq_class(n, d));
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& other) {
  value_ += other.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& other) {
  value_ -= other.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& other) {
  value_ *= other.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.is_zero()) throw InputError("division by zero");
  value_ /= other.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const Rational& q) {
  return os << q.str();
}

}  // namespace nbr
