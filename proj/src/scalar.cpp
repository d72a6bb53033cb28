#include "achcr/scalar.hpp"

#include <ostream>
#include <sstream>

namespace achcr {

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational string");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt p(s.substr(0, slash));
    BigInt q(s.substr(slash + 1));
    if (q == 0) throw DivisionByZero();
    return Rational(p, q);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("bad rational string: " + s);
  }
}

std::string to_string(const Scalar& s) {
  if (s.im == 0) return to_string(s.re);
  std::string out;
  if (s.re != 0) out = to_string(s.re) + (s.im > 0 ? "+" : "");
  if (s.im == 1)
    out += "i";
  else if (s.im == -1)
    out += "-i";
  else
    out += to_string(s.im) + "i";
  return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << to_string(s);
}

Rational rational_pow(const Rational& x, int k) {
  if (k < 0) {
    if (x == 0) throw DivisionByZero();
    return rational_pow(Rational(1) / x, -k);
  }
  Rational r = 1, b = x;
  while (k > 0) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

}  // namespace achcr
