#pragma once
// Independent reference computations. These avoid the library's valuation,
// Newton-polygon and lifting code paths on purpose.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

// val_p by repeated exact division; nullopt for zero.
inline std::optional<long> valuation(const mpq_class& x, unsigned long p) {
  if (x == 0) return std::nullopt;
  mpz_class n = abs(x.get_num()), d = x.get_den();
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  while (d % p == 0) {
    d /= p;
    --v;
  }
  return v;
}

inline mpz_class pow(unsigned long p, unsigned long k) {
  mpz_class r = 1;
  for (unsigned long i = 0; i < k; ++i) r *= p;
  return r;
}

// x mod m for a p-integral rational.
// Extended Euclid by hand; 0 when den is not invertible mod m.
inline mpz_class inverse(const mpz_class& den, const mpz_class& m) {
  mpz_class r0 = m, r1 = den % m, s0 = 0, s1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 != 0) {
    mpz_class qt = r0 / r1, t = r0 - qt * r1;
    r0 = r1;
    r1 = t;
    t = s0 - qt * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) return 0;
  mpz_class inv = s0 % m;
  return inv < 0 ? mpz_class(inv + m) : inv;
}

inline mpz_class reduce(const mpq_class& x, const mpz_class& m) {
  mpz_class inv = inverse(x.get_den(), m);
  mpz_class r = (x.get_num() * inv) % m;
  if (r < 0) r += m;
  return r;
}

// All t in [0, m) with t^2 = u (mod m).
inline std::set<mpz_class> square_roots(const mpz_class& u, const mpz_class& m) {
  std::set<mpz_class> out;
  for (mpz_class t = 0; t < m; ++t)
    if ((t * t - u) % m == 0) out.insert(t);
  return out;
}

// Exponents e_k of r_k = p^e_k with psi(r_{k+1}) = r_k, where psi(r) = |a| r^2 / alpha^2
// on the band alpha^2/|a| < r < alpha, solved step by step from e_0 = e_alpha.
inline std::vector<mpq_class> pre_pole_exponents(const mpq_class& e_alpha, const mpq_class& e_a, unsigned n) {
  std::vector<mpq_class> e{e_alpha};
  for (unsigned k = 0; k < n; ++k) e.push_back((e.back() + 2 * e_alpha - e_a) / 2);
  return e;
}

inline mpq_class canonical_eval(const mpq_class& a, const mpq_class& b, const mpq_class& d, const mpq_class& x) {
  return (a * x * x + b * x) / (x * x + d * x + b);
}

// Quotient rule, written out.
inline mpq_class canonical_derivative(const mpq_class& a, const mpq_class& b, const mpq_class& d,
                                      const mpq_class& x) {
  mpq_class num = a * x * x + b * x, den = x * x + d * x + b;
  return ((2 * a * x + b) * den - num * (2 * x + d)) / (den * den);
}

// Cycle lengths of the permutation that R = num/den induces on units mod p^k,
// read off exact evaluations at the representatives. Coefficients low degree first.
inline std::vector<std::size_t> unit_cycles(const std::vector<mpq_class>& num, const std::vector<mpq_class>& den,
                                            unsigned long p, unsigned k) {
  mpz_class m = pow(p, k);
  auto poly = [](const std::vector<mpq_class>& c, const mpq_class& t) {
    mpq_class s = 0, tp = 1;
    for (const auto& ci : c) {
      s += ci * tp;
      tp *= t;
    }
    return s;
  };
  std::map<mpz_class, mpz_class> perm;
  for (mpz_class t = 1; t < m; ++t) {
    if (t % p == 0) continue;
    perm[t] = reduce(poly(num, mpq_class(t)) / poly(den, mpq_class(t)), m);
  }
  std::set<mpz_class> seen;
  std::vector<std::size_t> out;
  for (const auto& [t, _] : perm) {
    if (seen.count(t)) continue;
    std::size_t n = 0;
    for (mpz_class s = t; !seen.count(s); s = perm.at(s)) {
      seen.insert(s);
      ++n;
    }
    out.push_back(n);
  }
  return out;
}

inline bool single_cycle(const std::vector<std::size_t>& cycles, const mpz_class& units) {
  return cycles.size() == 1 && mpz_class(static_cast<unsigned long>(cycles[0])) == units;
}

// Cycles of the canonical map on S_{p^e}(0), read mod p^k after rescaling x = p^-e t.
inline std::vector<std::size_t> sphere_cycles(const mpq_class& a, const mpq_class& b, const mpq_class& d,
                                              unsigned long p, long e, unsigned k) {
  mpq_class scale = 1;
  for (long i = 0; i < (e < 0 ? -e : e); ++i) scale *= p;
  if (e > 0) scale = 1 / scale;  // p^-e
  mpz_class m = pow(p, k);
  std::map<mpz_class, mpz_class> perm;
  for (mpz_class t = 1; t < m; ++t) {
    if (t % p == 0) continue;
    mpq_class y = canonical_eval(a, b, d, mpq_class(t) * scale) / scale;
    perm[t] = reduce(y, m);
  }
  std::set<mpz_class> seen;
  std::vector<std::size_t> out;
  for (const auto& [t, _] : perm) {
    if (seen.count(t)) continue;
    std::size_t n = 0;
    for (mpz_class s = t; !seen.count(s); s = perm.at(s)) {
      seen.insert(s);
      ++n;
    }
    out.push_back(n);
  }
  return out;
}

}  // namespace oracle
