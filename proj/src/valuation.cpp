#include "padicdyn/valuation.hpp"

#include <cctype>

#include "padicdyn/errors.hpp"

namespace padicdyn {

const Rational& Valuation::value() const {
  if (infinite_) throw DomainError(ErrorKind::InvalidArgument, "infinite valuation has no value");
  return value_;
}

Valuation operator+(const Valuation& x, const Valuation& y) {
  if (x.infinite_ || y.infinite_) return Valuation::infinity();
  return Valuation(Rational(x.value_ + y.value_));
}

bool operator==(const Valuation& x, const Valuation& y) {
  if (x.infinite_ || y.infinite_) return x.infinite_ == y.infinite_;
  return x.value_ == y.value_;
}

std::strong_ordering operator<=>(const Valuation& x, const Valuation& y) {
  if (x.infinite_ || y.infinite_) return x.infinite_ <=> y.infinite_;
  int c = cmp(x.value_, y.value_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Valuation::to_string() const { return infinite_ ? "inf" : format_rational(value_); }

LogRadius operator/(const LogRadius& x, const LogRadius& y) {
  if (y.is_zero()) throw DomainError(ErrorKind::InvalidArgument, "division by the zero radius");
  if (x.is_zero()) return LogRadius::zero();
  return LogRadius(Valuation(Rational(x.v_.value() - y.v_.value())));
}

LogRadius LogRadius::pow(const Rational& q) const {
  if (sgn(q) <= 0) throw DomainError(ErrorKind::InvalidArgument, "radius power must be positive");
  if (is_zero()) return zero();
  return LogRadius(Valuation(Rational(v_.value() * q)));
}

bool LogRadius::is_integral_power() const {
  return !is_zero() && v_.value().get_den() == 1;
}

std::string LogRadius::to_string(unsigned long p) const {
  if (is_zero()) return "0";
  return std::to_string(p) + "^(" + format_rational(exponent()) + ")";
}

LogRadius parse_radius(std::string_view text, unsigned long p) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s == "0") return LogRadius::zero();

  auto caret = s.find('^');
  if (caret != std::string_view::npos) {
    std::string_view base = s.substr(0, caret);
    std::string_view exp = s.substr(caret + 1);
    if (exp.size() >= 2 && exp.front() == '(' && exp.back() == ')')
      exp = exp.substr(1, exp.size() - 2);
    Rational b = parse_rational(base);
    if (b != p)
      throw DomainError(ErrorKind::ParseError,
                        "radius base " + std::string(base) + " does not match p=" + std::to_string(p));
    return LogRadius::power(parse_rational(exp));
  }

  Rational q = parse_rational(s);
  if (sgn(q) <= 0) throw DomainError(ErrorKind::ParseError, "radius must be positive: " + std::string(s));
  // A plain rational must be an exact integral power of p.
  Integer num = q.get_num(), den = q.get_den();
  Integer pz(p);
  long e = 0;
  while (num % pz == 0) { num /= pz; ++e; }
  while (den % pz == 0) { den /= pz; --e; }
  if (num != 1 || den != 1)
    throw DomainError(ErrorKind::ParseError, std::string(s) + " is not a power of " + std::to_string(p));
  return LogRadius::power(Rational(e));
}

}  // namespace padicdyn
