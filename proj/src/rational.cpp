#include "padicdyn/rational.hpp"

#include <cctype>

#include "padicdyn/errors.hpp"

namespace padicdyn {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw DomainError(ErrorKind::ParseError, "not a rational: '" + std::string(text) + "'");
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw DomainError(ErrorKind::ParseError, "zero denominator: '" + std::string(text) + "'");
  Rational q(negative ? Integer(-n) : n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Prime::Prime(unsigned long p) : p_(p) {
  Integer z(p);
  if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 30) == 0)
    throw DomainError(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
}

Integer pow_integer(const Prime& p, unsigned long k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p.value(), k);
  return r;
}

Rational pow_rational(const Prime& p, long k) {
  if (k >= 0) return Rational(pow_integer(p, static_cast<unsigned long>(k)));
  return Rational(Integer(1), pow_integer(p, static_cast<unsigned long>(-k)));
}

}  // namespace padicdyn
