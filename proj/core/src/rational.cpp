#include "resdist/rational.hpp"

#include <cstdio>

namespace resdist {

Rational Rational::parse(const std::string& s) {
  auto parse_int = [](const std::string& t) -> Int {
    if (t.empty()) fail(ErrKind::Syntax, "empty integer literal");
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) fail(ErrKind::Syntax, "bad integer literal '" + t + "'");
    for (; i < t.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(t[i])))
        fail(ErrKind::Syntax, "bad integer literal '" + t + "'");
    return Int(t);
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  Int den = parse_int(s.substr(slash + 1));
  if (den == 0) fail(ErrKind::Syntax, "zero denominator in '" + s + "'");
  return Rational(num, den);
}

std::string to_decimal_12(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", r.to_double());
  return buf;
}

}  // namespace resdist
