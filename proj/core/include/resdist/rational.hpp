#ifndef RESDIST_RATIONAL_HPP
#define RESDIST_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "resdist/error.hpp"

namespace resdist {

using Int = boost::multiprecision::cpp_int;

/// Floor division (truncation toward negative infinity). This is the
/// semantics of the intermediate language's `/` operator.
inline Int floor_div(const Int& a, const Int& b) {
  if (b == 0) fail(ErrKind::DivByZero, "integer division by zero");
  Int q = a / b;          // cpp_int divides toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int floor_mod(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

/// Exact rational, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const Int& n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const Int& num, const Int& den) {
    if (den == 0) fail(ErrKind::DivByZero, "rational with zero denominator");
    if (den < 0) v_ = boost::multiprecision::cpp_rational(-num, -den);
    else v_ = boost::multiprecision::cpp_rational(num, den);
  }

  Int numerator() const { return boost::multiprecision::numerator(v_); }
  Int denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

  Rational operator-() const { return Rational(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.v_ == 0) fail(ErrKind::DivByZero, "rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  /// "3/4", or "3" when the denominator is 1.
  std::string str() const {
    std::string s = numerator().str();
    if (!is_integer()) s += "/" + denominator().str();
    return s;
  }

  double to_double() const { return v_.convert_to<double>(); }

  /// Parses "3", "-3", or "3/4". Throws Error(Syntax) on anything else.
  static Rational parse(const std::string& s);

 private:
  explicit Rational(const boost::multiprecision::cpp_rational& v) : v_(v) {}
  boost::multiprecision::cpp_rational v_;
};

/// Decimal rendering with 12 significant digits, for the CSV float column.
std::string to_decimal_12(const Rational& r);

}  // namespace resdist

#endif
